import pytest

from matspl.verify import CLASS_COUNTS, LABELED_COUNTS, SUITES, Tally, run_suite


@pytest.mark.parametrize("suite", SUITES)
def test_each_suite_passes(suite):
    for seed in (0, 1):
        report = run_suite(suite, n=5, seed=seed, count=10)
        assert report["passed"], report
        props = report["suites"][0]["properties"]
        assert props and all(p.get("checked", 1) > 0 for p in props.values())


def test_all_is_deterministic():
    a = run_suite("all", n=5, seed=3, count=5)
    assert a == run_suite("all", n=5, seed=3, count=5)
    assert [s["suite"] for s in a["suites"]] == list(SUITES)


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suite("bogus")


def test_tally():
    t = Tally("x")
    t.check("p", True)
    t.check("p", False, {"why": 1})
    t.status("q", "cap_exceeded")
    doc = t.to_json()
    assert not t.passed
    assert doc["properties"]["p"] == {"checked": 2, "failed": 1}
    assert doc["failures"] == {"p": {"why": 1}}


def test_known_counts():
    assert LABELED_COUNTS[:4] == (1, 2, 5, 16) and CLASS_COUNTS[4] == 17
