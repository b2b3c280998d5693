import pytest

from fhseq import build_params, build_partition, build_sequence_set, build_tables, correlation_profile

# (p, q) pairs with small L: e = 2, 4 (both parities), 6
SWEEP = [(3, 5), (5, 17), (5, 13), (7, 13)]

_ACCEPTANCE_LINES = []


def record_acceptance(line):
    _ACCEPTANCE_LINES.append(line)


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


class Built:
    def __init__(self, p, q, g=None):
        self.params = build_params(p, q, g)
        self.tables = build_tables(self.params)
        self.partition = build_partition(self.tables)
        self.seqset = build_sequence_set(self.partition)
        self._profile = None

    @property
    def profile(self):
        if self._profile is None:
            self._profile = correlation_profile(self.seqset)
        return self._profile


_CACHE = {}


def built(p, q):
    if (p, q) not in _CACHE:
        _CACHE[(p, q)] = Built(p, q)
    return _CACHE[(p, q)]


@pytest.fixture
def ex1():
    return built(5, 17)


@pytest.fixture(params=SWEEP, ids=lambda pq: f"p{pq[0]}q{pq[1]}")
def sweep(request):
    return built(*request.param)
