"""Named verification suites."""

import pytest

from rackhom.racks import make_cyclic, make_dihedral, make_fr4, parse_rack_spec
from rackhom.verify import SUITES, check_psi, check_r_shift, run_suite


@pytest.mark.parametrize("spec", ["dihedral:3", "dihedral:4", "alexander:2:t^2+t+1", "trivial:2"])
def test_all_suites_pass_on_quandles(spec):
    reports = run_suite(parse_rack_spec(spec), "all", 3)
    assert reports and all(r.passed for r in reports), [r.lines() for r in reports if not r.passed]


def test_fr4_suites():
    reports = run_suite(make_fr4(), "all", 3)
    applicable = [r for r in reports if r.applicable]
    assert all(r.passed for r in applicable)
    assert {r.name for r in reports if not r.applicable} == {"alpha", "r-shift", "splitting"}


def test_cyclic3_suites():
    X = make_cyclic(3)
    assert not run_suite(X, "main-theorem", 3)[0].applicable
    assert not check_psi(X, 2).applicable
    hom = run_suite(X, "homotopy", 2)[0]
    bad = hom.first_failure()
    assert not hom.passed and bad.witness.startswith("tuple (0, 0)")
    assert "opposite sign" not in bad.witness


def test_r_shift_report():
    rep = check_r_shift(make_dihedral(5), 4)
    assert rep.passed and len(rep.checks) == 6


def test_suite_names():
    assert list(SUITES) == ["main-theorem", "splitting", "homotopy", "chain-maps"]
    with pytest.raises(KeyError):
        run_suite(make_dihedral(3), "nope", 2)
