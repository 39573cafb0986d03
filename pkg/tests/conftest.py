import pathlib
import random

import pytest
from hypothesis import HealthCheck, settings

DEFAULT_SEED = 20240517
DATA = pathlib.Path(__file__).parent / "data"

settings.register_profile("rxnskel", database=None, deadline=None, max_examples=80,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("rxnskel")


def pytest_addoption(parser):
    parser.addoption("--seed", type=int, default=DEFAULT_SEED,
                     help="seed for the randomized tests (hypothesis and sampled suites)")


def pytest_configure(config):
    # --hypothesis-seed, when given, wins over --seed
    if config.getoption("hypothesis_seed", default=None) is None:
        from hypothesis import core
        core.global_force_seed = config.getoption("--seed")


@pytest.fixture
def seed(request):
    return request.config.getoption("--seed")


@pytest.fixture
def rng(seed):
    return random.Random(seed)


@pytest.fixture
def data_dir():
    return DATA


_REPORT_KEY = pytest.StashKey[list]()


@pytest.fixture
def report(request):
    """Record one acceptance line; the lines are repeated in the terminal summary."""
    lines = request.config.stash.setdefault(_REPORT_KEY, [])

    def record(number, ok, detail):
        line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}"
        lines.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_REPORT_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda ln: int(ln.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
