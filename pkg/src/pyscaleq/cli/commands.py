import logging
from argparse import Namespace
from typing import Any, Dict, Final

from pyscaleq.errors import CostSpecError
from pyscaleq.model import SystemParams
from pyscaleq.optimizer import algorithm1_report, argmin_k, CostSpec
from pyscaleq.simulator import compare, SimConfig, simulate
from pyscaleq.solver import solve
from pyscaleq.variates import DistributionSpec

from .config_file import ConfigFile, DEFAULT_PARAMS, load_config_file, merge, PARAM_NAMES
from .output import emit, to_csv, to_json
from .sweep import CSV_COLUMNS, run_sweep, SweepSpec

log = logging.getLogger('pyscaleq.Cli')


EXIT_OK: Final = 0
EXIT_INVALID: Final = 2
EXIT_NOT_COVERED: Final = 3

METRIC_NAMES: Final = ('L', 'W', 'Wq', 'Pb', 'S')
ALGORITHM1_FLAGS: Final = ('delta', 's_bar', 'wq_bar')
ARGMIN_FLAGS: Final = ('w1', 'w2', 'wq_limit')


def build_params(args: Namespace, config: ConfigFile) -> SystemParams:
    """Flags override the config file which overrides the built-in defaults"""
    flags = {name: getattr(args, 'lambda_' if name == 'lambda' else name) for name in PARAM_NAMES}
    return SystemParams.model_validate(merge(DEFAULT_PARAMS, config.params, flags))


def build_sim_config(args: Namespace, config: ConfigFile) -> SimConfig:
    flags: Dict[str, Any] = {
        'horizon': args.horizon, 'warmup': args.warmup, 'replications': args.replications, 'seed': args.seed,
    }
    for name, flag in (('interarrival', args.arrival_dist), ('service', args.service_dist),
                       ('setup', args.setup_dist)):
        if flag is not None:
            flags[name] = DistributionSpec.parse(flag)
    return SimConfig.model_validate(merge(config.sim, flags))


def _output(args: Namespace, default_format: str, json_obj: Any, csv_columns, csv_records) -> str:
    fmt = args.format or default_format
    text = to_json(json_obj) if fmt == 'json' else to_csv(csv_columns, csv_records)
    emit(text, args.output)
    return text


def run_solve(args: Namespace) -> int:
    config = load_config_file(args.config)
    params = build_params(args, config)
    report = solve(params)

    record = {**params.model_dump(by_alias=True), **report.metrics.as_dict()}
    _output(args, 'json', record, PARAM_NAMES + METRIC_NAMES, [record])
    return EXIT_OK


def run_sweep_cmd(args: Namespace) -> int:
    config = load_config_file(args.config)
    spec = SweepSpec(
        param=args.param, start=args.start, stop=args.stop, step=args.step,
        base=build_params(args, config),
        series_param=args.series_param, series=tuple(args.series or ()),
    )
    records = [row.as_record() for row in run_sweep(spec, args.workers)]
    _output(args, 'csv', records, CSV_COLUMNS, records)
    return EXIT_OK


def build_cost_spec(args: Namespace, config: ConfigFile) -> CostSpec:
    algorithm1 = [name for name in ALGORITHM1_FLAGS if getattr(args, name) is not None]
    argmin = [name for name in ARGMIN_FLAGS if getattr(args, name) is not None]
    if algorithm1 and argmin:
        raise CostSpecError(
            f'Use either --delta/--s-bar/--wq-bar or --w1/--w2/--wq-limit, not both '
            f'(got {", ".join(algorithm1 + argmin)})')
    flags = {name: getattr(args, name) for name in ALGORITHM1_FLAGS + ARGMIN_FLAGS}
    return CostSpec.model_validate(merge(config.cost, flags))


def _optimize_mode(args: Namespace, spec: CostSpec) -> str:
    if any(getattr(args, name) is not None for name in ALGORITHM1_FLAGS):
        return 'algorithm1'
    if any(getattr(args, name) is not None for name in ARGMIN_FLAGS):
        return 'argmin'
    # only the config file
    if spec.has_weights:
        return 'argmin'
    if spec.delta is not None:
        return 'algorithm1'
    raise CostSpecError('Either --delta/--s-bar/--wq-bar or --w1/--w2/--wq-limit is required')


def run_optimize(args: Namespace) -> int:
    config = load_config_file(args.config)
    base = build_params(args, config).without_k()
    spec = build_cost_spec(args, config)

    if _optimize_mode(args, spec) == 'algorithm1':
        result = algorithm1_report(base, spec, workers=args.workers)
    else:
        result = argmin_k(base, spec, workers=args.workers)

    records = [
        {**row.model_dump(), 'selected': row.k == result.k_op}
        for row in result.scan
    ]
    _output(args, 'json', result.model_dump(), ('k', 'Wq', 'S', 'C', 'selected', 'feasible'), records)
    return EXIT_OK


def _estimate_records(result) -> list:
    return [
        {'metric': name, 'mean': result.estimate(name).mean, 'half_width': result.estimate(name).half_width}
        for name in METRIC_NAMES
    ]


def run_simulate(args: Namespace) -> int:
    config = load_config_file(args.config)
    params = build_params(args, config)
    result = simulate(params, build_sim_config(args, config), workers=args.workers)

    _output(args, 'json', result.model_dump(mode='json', by_alias=True),
            ('metric', 'mean', 'half_width'), _estimate_records(result))
    return EXIT_OK


def run_compare(args: Namespace) -> int:
    config = load_config_file(args.config)
    params = build_params(args, config)
    report = compare(solve(params), simulate(params, build_sim_config(args, config), workers=args.workers))

    records = [row.model_dump() for row in report.rows]
    _output(args, 'json', {'rows': records, 'all_covered': report.all_covered},
            ('metric', 'analytical', 'simulated', 'half_width', 'covered', 'gap'), records)

    if args.strict and not report.all_covered:
        log.info('Strict comparison failed')
        return EXIT_NOT_COVERED
    return EXIT_OK


COMMANDS: Final = {
    'solve': run_solve,
    'sweep': run_sweep_cmd,
    'optimize': run_optimize,
    'simulate': run_simulate,
    'compare': run_compare,
}
