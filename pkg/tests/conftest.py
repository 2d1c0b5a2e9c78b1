import random

import pytest
from hypothesis import strategies as st

from matspl.corpus import labeled_matroids, random_matched_pair, random_matroid, random_quotient_pair


def labels(n):
    return [f"e{i}" for i in range(n)]


@st.composite
def matroids(draw, max_n=6):
    n = draw(st.integers(0, max_n))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_matroid(random.Random(seed), labels(n))


@st.composite
def small_labeled(draw, max_n=4):
    n = draw(st.integers(0, max_n))
    return draw(st.sampled_from(labeled_matroids(n)))


@st.composite
def matched_pairs(draw, max_n=7):
    n = draw(st.integers(1, max_n))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_matched_pair(random.Random(seed), labels(n))


@st.composite
def quotient_pairs(draw, max_n=7):
    n = draw(st.integers(0, max_n))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_quotient_pair(random.Random(seed), labels(n))


@pytest.fixture(scope="session")
def corpus5():
    out = []
    for n in range(6):
        out.extend(labeled_matroids(n))
    return out


# acceptance criteria report ----------------------------------------------

_CRITERIA: dict = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    info = getattr(item.function, "criterion", None)
    if info is None or report.when != "call" and not report.failed:
        return
    num, title, budget = info
    if report.when == "call" or num not in _CRITERIA:
        _CRITERIA[num] = (title, budget, report.outcome, report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_CRITERIA):
        title, budget, outcome, secs = _CRITERIA[num]
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {num:2d} {verdict}  {secs:7.2f}s "
                                    f"(budget {budget:g}s)  {title}")
