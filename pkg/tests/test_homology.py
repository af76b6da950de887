"""Homology groups, Betti numbers, mod-p dimensions and the verification reports."""

import pytest
from hypothesis import given, strategies as st

from rackhom.chains import build_complex
from rackhom.errors import DegreeOutOfRange, NotAQuandle, NotPrime
from rackhom.homology import (
    AbelianGroupInvariants as G, betti, closed_form_betti, homology, homology_groups,
    mod_p_homology_dim, verify_main_theorem, verify_splitting,
)
from rackhom.racks import make_cyclic, make_dihedral, make_fr4, make_trivial, orbit_partition, parse_rack_spec
from rackhom.smith import rank_mod_p


# --- group values -------------------------------------------------------------

def test_group_parse_and_format():
    g = G.parse("Z^2 ⊕ Z_2^2 ⊕ Z_8^2")
    assert g == G(2, (2, 2, 8, 8)) and str(g) == "Z^2 + Z_2^2 + Z_8^2"
    assert G.parse("Z_2 + Z_4").torsion == (2, 4)
    assert G.parse("Z_6").torsion == (6,) and str(G.parse("Z_6")) == "Z_2 + Z_3"
    assert G.parse("Z_2 + Z_3") == G.parse("Z_6")
    assert G.parse("0").is_trivial() and str(G()) == "0"
    assert str(G(1)) == "Z"
    assert G(0, (1, 1, 3)).torsion == (3,)
    assert (G(1, (2,)) + G(2, (4,))) == G(3, (2, 4))
    assert G(2, (2, 4)).to_json() == {"rank": 2, "factors": [2, 4]}
    with pytest.raises(ValueError):
        G.parse("Q^2")


@given(st.integers(0, 5), st.lists(st.integers(1, 60), max_size=6))
def test_group_text_roundtrip(r, tors):
    g = G(r, tuple(tors))
    assert G.parse(str(g)) == g
    assert all(b % a == 0 for a, b in zip(g.torsion, g.torsion[1:]))


# --- examples -----------------------------------------------------------------

def test_homology_examples():
    assert homology_groups(make_dihedral(4), "Q", 2)[2] == G.parse("Z^2 + Z_2^2")
    assert homology_groups(make_dihedral(3), "Q", 3)[3] == G.parse("Z_3")
    for m in (1, 2, 3):
        H = homology_groups(make_trivial(m), "R", 3)
        assert [H[n] for n in (1, 2, 3)] == [G.free(m ** n) for n in (1, 2, 3)]


def test_betti_examples():
    cx = build_complex(parse_rack_spec("alexander:3:t^2-1"), "Q", 3)
    assert betti(cx, 2) == 6
    for m in (1, 2, 3):
        cq = build_complex(make_trivial(m), "Q", 4)
        assert [betti(cq, n) for n in (1, 2, 3)] == [m * (m - 1) ** (n - 1) for n in (1, 2, 3)]
    for spec in ("dihedral:4", "dihedral:5", "fr4", "cyclic:3", "alexander:8:t-5"):
        X = parse_rack_spec(spec)
        assert betti(build_complex(X, "R", 2), 1) == orbit_partition(X).count


def test_mod_p_examples():
    cx = build_complex(parse_rack_spec("alexander:9:t-4"), "Q", 3)
    assert mod_p_homology_dim(cx, 2, 2) == 6
    assert mod_p_homology_dim(cx, 2, 3) == 9
    cy = build_complex(parse_rack_spec("alexander:3:t^2-t+1"), "Q", 3)
    assert mod_p_homology_dim(cy, 2, 3) == 1
    ct = build_complex(make_trivial(3), "R", 3)
    for p in (2, 3, 5):
        assert mod_p_homology_dim(ct, 2, p) == 9
    with pytest.raises(NotPrime):
        mod_p_homology_dim(cx, 2, 4)


def test_degree_out_of_range():
    cx = build_complex(make_dihedral(3), "Q", 3)
    homology(cx, 2)
    with pytest.raises(DegreeOutOfRange):
        homology(cx, 3)
    with pytest.raises(DegreeOutOfRange):
        betti(cx, 3)


# --- cross-checks -------------------------------------------------------------

SMALL = ["dihedral:3", "dihedral:4", "dihedral:5", "alexander:2:t^2+t+1", "alexander:4:t-3",
         "trivial:2", "trivial:3", "fr4", "cyclic:3", "alexander:3:t^2-t+1"]


@pytest.mark.parametrize("spec", SMALL)
def test_kernel_and_cokernel_methods_agree(spec):
    X = parse_rack_spec(spec)
    for W in ("RDQL" if X.is_quandle else "R"):
        cx = build_complex(X, W, 4 if X.size <= 4 else 3)
        for n in range(0, cx.max_degree):
            assert homology(cx, n, "kernel") == homology(cx, n, "cokernel"), (W, n)


@pytest.mark.parametrize("spec", SMALL + ["dihedral:6", "alexander:8:t-5", "alexander:9:t-4"])
def test_rational_and_modular_rank_cross_checks(spec):
    from rackhom.homology import _snf
    X = parse_rack_spec(spec)
    for W in ("RDQL" if X.is_quandle else "R"):
        cx = build_complex(X, W, 3)
        for n in (1, 2):
            assert betti(cx, n) == homology(cx, n).free_rank
        for n in (1, 2, 3):
            d = _snf(cx, n).invariant_factors
            for p in (2, 3, 5, 7):
                rp = rank_mod_p(cx.boundary_matrix(n), p)
                assert rp <= len(d)
                assert rp == sum(1 for x in d if x % p)


def test_zero_boundaries_give_free_groups():
    X = make_trivial(3)
    for W, rank in (("R", lambda n: 3 ** n), ("Q", lambda n: 3 * 2 ** (n - 1)),
                    ("D", lambda n: 3 ** n - 3 * 2 ** (n - 1))):
        H = homology_groups(X, W, 3)
        assert all(H[n] == G.free(rank(n)) for n in (1, 2, 3))
        assert all(closed_form_betti(W, 3, n) == rank(n) for n in (1, 2, 3))


# --- theorem reports ----------------------------------------------------------

def test_main_theorem_examples():
    rep = verify_main_theorem(make_dihedral(8), 3)
    assert rep.passed
    h = homology_groups(make_dihedral(8), "Q", 3)[3]
    assert h.free_rank == 2 * 1 ** 2 and all(512 % d == 0 for d in h.torsion)
    na = verify_main_theorem(make_cyclic(3), 3)
    assert not na.applicable and not na.passed and "homogeneous" in na.reason
    fr = verify_main_theorem(make_fr4(), 3)
    assert fr.passed and {c.name.split(" ")[0] for c in fr.checks} >= {"beta^R_1", "beta^R_3"}
    assert all("^Q" not in c.name for c in fr.checks)


@pytest.mark.parametrize("spec", ["dihedral:3", "dihedral:5", "alexander:5:t-2", "trivial:2"])
def test_main_theorem_degree_four_small(spec):
    assert verify_main_theorem(parse_rack_spec(spec), 4).passed


def test_splitting_examples():
    R4 = make_dihedral(4)
    assert homology_groups(R4, "R", 2)[2] == G.parse("Z^4 + Z_2^2")
    assert verify_splitting(R4, 3).passed
    R3 = make_dihedral(3)
    assert homology_groups(R3, "R", 3)[3] == G.parse("Z + Z_3")
    assert homology_groups(make_trivial(2), "D", 2)[2] == G.free(2)
    with pytest.raises(NotAQuandle):
        verify_splitting(make_fr4(), 3)


def test_report_lines():
    rep = verify_main_theorem(make_dihedral(3), 2)
    lines = rep.lines()
    assert lines[0].startswith("main-theorem on R_3")
    assert all(l.strip().startswith("PASS") for l in lines[1:])
    assert rep.first_failure() is None
