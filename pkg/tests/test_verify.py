import pytest

from mdl.verify import CHECKS, run_check

DESK_RANGES = {
    "prop-betas-johnson": ((4, 8), None),
    "eq17-doubly": ((4, 9), None),
    "ekr": ((5, 9), (2, 3)),
}


@pytest.mark.parametrize("check_id", sorted(CHECKS))
def test_default_sweeps_pass(check_id):
    outcomes = list(run_check(check_id))
    assert outcomes, check_id
    assert all(o.verdict == "PASS" for o in outcomes), [o.line() for o in outcomes if o.verdict != "PASS"]


@pytest.mark.parametrize("check_id,ranges", sorted(DESK_RANGES.items()))
def test_documented_ranges(check_id, ranges):
    outcomes = list(run_check(check_id, *ranges))
    assert outcomes and all(o.verdict == "PASS" for o in outcomes)


def test_size_guard_reports_skips():
    outcomes = list(run_check("prop-gallai", (20, 20), (2, 2)))
    assert [o.verdict for o in outcomes] == ["SKIP"]
    assert "exceed" in outcomes[0].detail


def test_budget_exhaustion_is_a_skip_not_a_failure():
    outcomes = list(run_check("thm-psi-j2", (12, 12), (2, 2), budget=3))
    assert outcomes[0].verdict == "SKIP" and outcomes[0].budget_limited


def test_out_of_scope_parameters_are_ignored():
    assert list(run_check("thm-betas-kneser", (5, 7), (3, 3))) == []


def test_outcome_line():
    o = next(run_check("ekr", (5, 5), (2, 2)))
    assert o.line().startswith("PASS ekr n=5 k=2:")
