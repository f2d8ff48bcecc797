import logging
from typing import List

import pytest

from pyscaleq.model import BaseParams, SystemParams


def pytest_addoption(parser):
    parser.addoption('--run-slow', action='store_true', default=False, help='run long statistical tests')


def pytest_collection_modifyitems(config, items):
    if config.getoption('--run-slow'):
        return None

    skip = pytest.mark.skip(reason='needs --run-slow')
    for item in items:
        if 'slow' in item.keywords:
            item.add_marker(skip)


@pytest.fixture()
def tiny_params() -> SystemParams:
    """Smallest instance with two dynamic instances, 17 states"""
    return SystemParams(lambda_=1.5, mu=1, alpha=0.25, n0=2, k=2, K=7)


@pytest.fixture()
def default_params() -> SystemParams:
    return SystemParams(lambda_=130, mu=1, alpha=0.005, n0=110, k=28, K=250)


@pytest.fixture()
def small_base() -> BaseParams:
    return BaseParams(lambda_=4.5, mu=1, alpha=0.3, n0=3, K=14)


@pytest.fixture(autouse=True)
def ensure_no_errors(caplog):
    caplog.set_level(logging.DEBUG)

    yield None

    log_records: List[logging.LogRecord] = []
    name_indent = 0
    level_indent = 0

    for when in ('setup', 'call', 'teardown'):
        records = caplog.get_records(when)
        if any(x.levelno >= logging.WARNING for x in records):
            for rec in records:
                name_indent = max(name_indent, len(rec.name))
                level_indent = max(level_indent, len(rec.levelname))
            log_records.extend(records)

    if log_records:
        msgs = [
            f'[{rec.name:>{name_indent:d}s}] | {rec.levelname:{level_indent:d}s} | {rec.getMessage()}'
            for rec in log_records
        ]
        pytest.fail('Error in log:\n' + '\n'.join(msgs))
