import argparse
from pathlib import Path
from typing import List, Optional, Sequence

from pyscaleq.__version__ import __version__
from pyscaleq.errors import SweepSpecError

from .sweep import INTEGER_PARAMS

SWEEP_PARAMS = ('lambda', 'k', 'K', 'n0', 'alpha', 'mu')


def float_list(text: str) -> List[float]:
    try:
        return [float(part) for part in text.split(',') if part.strip()]
    except ValueError:
        raise SweepSpecError(f'Invalid list of values: "{text}"') from None


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument('--config', type=Path, default=None, help='JSON file with the sections params, sim and cost')
    p.add_argument('--format', choices=('json', 'csv'), default=None, help='output format')
    p.add_argument('--output', type=Path, default=None, help='write to this file instead of standard output')
    p.add_argument('--workers', type=int, default=1, help='worker processes')
    p.add_argument('-v', '--verbose', action='count', default=0, help='-v info, -vv debug output on stderr')

    g = p.add_argument_group('model')
    g.add_argument('--lambda', dest='lambda_', type=float, default=None, help='arrival rate')
    g.add_argument('--mu', type=float, default=None, help='service rate per server')
    g.add_argument('--alpha', type=float, default=None, help='setup rate')
    g.add_argument('--n0', type=int, default=None, help='legacy servers')
    g.add_argument('--k', type=int, default=None, help='dynamic instances')
    g.add_argument('--K', type=int, default=None, help='system capacity')
    return p


def _simulation() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group('simulation')
    g.add_argument('--horizon', type=float, default=None, help='simulated seconds per replication')
    g.add_argument('--warmup', type=float, default=None, help='discarded seconds, default 10%% of the horizon')
    g.add_argument('--replications', type=int, default=None)
    g.add_argument('--seed', type=int, default=None)
    g.add_argument('--arrival-dist', default=None, help='family[:param] of the interarrival time')
    g.add_argument('--service-dist', default=None, help='family[:param] of the service time')
    g.add_argument('--setup-dist', default=None, help='family[:param] of the setup time')
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    sim = _simulation()

    parser = argparse.ArgumentParser(
        prog='pyscaleq', allow_abbrev=False,
        description='Capacity planning for a legacy server block with auto scaled instances')
    parser.add_argument('--version', action='version', version=f'%(prog)s {__version__}')
    sub = parser.add_subparsers(dest='command', required=True)

    sub.add_parser('solve', parents=[common], allow_abbrev=False, help='solve one configuration')

    p = sub.add_parser('sweep', parents=[common], allow_abbrev=False, help='solve a grid over one parameter')
    p.add_argument('--param', required=True, choices=SWEEP_PARAMS, help='swept parameter')
    p.add_argument('--from', dest='start', required=True, type=float)
    p.add_argument('--to', dest='stop', required=True, type=float)
    p.add_argument('--step', required=True, type=float,
                   help=f'integer for {", ".join(sorted(INTEGER_PARAMS))}')
    p.add_argument('--series-param', choices=SWEEP_PARAMS, default=None, help='parameter varied per series')
    p.add_argument('--series', type=float_list, default=None, help='comma separated series values')

    p = sub.add_parser('optimize', parents=[common], allow_abbrev=False, help='select the number of instances')
    g = p.add_argument_group('threshold ratio selection')
    g.add_argument('--delta', type=float, default=None, help='weight ratio w2 / w1')
    g.add_argument('--s-bar', type=float, default=None, help='normalizer of S')
    g.add_argument('--wq-bar', type=float, default=None, help='normalizer of Wq')
    g = p.add_argument_group('constrained minimization')
    g.add_argument('--w1', type=float, default=None, help='cost per second of Wq')
    g.add_argument('--w2', type=float, default=None, help='cost per instance')
    g.add_argument('--wq-limit', type=float, default=None, help='upper bound on Wq')

    sub.add_parser('simulate', parents=[common, sim], allow_abbrev=False, help='simulate one configuration')

    p = sub.add_parser('compare', parents=[common, sim], allow_abbrev=False,
                       help='compare solver and simulation')
    p.add_argument('--strict', action='store_true', help='exit with 3 if an interval misses the solver value')
    return parser


def parse_args(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    return build_parser().parse_args(argv)
