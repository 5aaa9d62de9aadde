import random

import pytest
from hypothesis import settings

settings.register_profile("repro", derandomize=True, deadline=None, max_examples=120)
settings.load_profile("repro")

DEFAULT_SEED = 20240531


def pytest_addoption(parser):
    parser.addoption("--seed", type=int, default=DEFAULT_SEED, help="seed for generated corpora")


@pytest.fixture
def seed(request) -> int:
    return request.config.getoption("--seed")


@pytest.fixture
def rng(seed) -> random.Random:
    return random.Random(seed)


_criteria: dict[int, tuple[str, bool]] = {}


@pytest.fixture
def criterion():
    """Record one acceptance line: ``with criterion(3, "enumeration"): ...``."""
    class _Rec:
        def __init__(self, num, name):
            self.num, self.name = num, name

        def __enter__(self):
            _criteria[self.num] = (self.name, False)
            return self

        def __exit__(self, exc_type, exc, tb):
            _criteria[self.num] = (self.name, exc_type is None)
            print(f"criterion {self.num} [{'PASS' if exc_type is None else 'FAIL'}] {self.name}")
            return False

    return _Rec


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_criteria):
        name, ok = _criteria[num]
        terminalreporter.write_line(f"criterion {num} [{'PASS' if ok else 'FAIL'}] {name}")
