import itertools
from fractions import Fraction

import pytest

from qfock.scalar import QParam

EXACT_QS = [Fraction(0), Fraction(1, 2), Fraction(-1, 2), Fraction(3, 10), Fraction(-3, 10)]


@pytest.fixture(params=EXACT_QS, ids=lambda v: f"q={v}")
def q(request):
    return QParam(request.param)


def perm_inversions(perm):
    return sum(1 for i, j in itertools.combinations(range(len(perm)), 2) if perm[i] > perm[j])


def brute_shuffles(n, i):
    """All permutations of 1..n increasing on the first n-i and the last i slots."""
    out = []
    for p in itertools.permutations(range(1, n + 1)):
        head, tail = p[: n - i], p[n - i:]
        if list(head) == sorted(head) and list(tail) == sorted(tail):
            out.append(p)
    return out


_ACCEPTANCE = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(num, title, budget): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when != "call":
        return
    num, title, budget = mark.args
    ok = rep.passed and rep.duration < budget
    _ACCEPTANCE.append((num, title, ok, rep.duration, budget))
    if rep.passed and not ok:
        rep.outcome = "failed"
        rep.longrepr = f"criterion {num} exceeded its runtime budget: {rep.duration:.1f}s >= {budget}s"


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num, title, ok, dur, budget in sorted(_ACCEPTANCE):
        terminalreporter.write_line(
            f"{'PASS' if ok else 'FAIL'}  [{num}] {title}  ({dur:.2f}s, budget {budget}s)"
        )
