"""Homology of rack chain complexes and finitely generated abelian groups."""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache

from sympy import factorint, isprime

from .chains import GradedComplex, build_complex
from .errors import DegreeOutOfRange, NotAQuandle, NotPrime, RackError
from .racks import FiniteRack, orbit_partition
from .smith import SmithForm, invariant_chain, rank_rational, smith_normal_form

__all__ = [
    "AbelianGroupInvariants", "homology", "betti", "mod_p_homology_dim",
    "homology_groups", "closed_form_betti", "Check", "TheoremReport",
    "verify_main_theorem", "verify_splitting",
]


@dataclass(frozen=True)
class AbelianGroupInvariants:
    """Z^free_rank + Z_{d_1} + ... + Z_{d_k} with 2 <= d_1 | d_2 | ... | d_k."""

    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        tors = tuple(d for d in invariant_chain(self.torsion) if d > 1)
        object.__setattr__(self, "torsion", tors)
        if self.free_rank < 0:
            raise ValueError("free rank must be non-negative")

    @classmethod
    def free(cls, rank: int) -> "AbelianGroupInvariants":
        return cls(rank, ())

    @classmethod
    def parse(cls, text: str) -> "AbelianGroupInvariants":
        """Read ``'Z^2 + Z_2^2 + Z_8^2'``-style text (``⊕``/``+`` separators, ``0`` = trivial)."""
        s = text.replace("⊕", "+").replace("ℤ", "Z").replace(" ", "")
        if s in ("0", ""):
            return cls()
        free, tors = 0, []
        for part in s.split("+"):
            m = re.fullmatch(r"Z(?:_(\d+))?(?:\^(\d+))?", part)
            if not m:
                raise ValueError(f"cannot parse group summand {part!r} in {text!r}")
            mult = int(m.group(2) or 1)
            if m.group(1) is None:
                free += mult
            else:
                tors += [int(m.group(1))] * mult
        return cls(free, tuple(tors))

    def __add__(self, other: "AbelianGroupInvariants") -> "AbelianGroupInvariants":
        """Direct sum."""
        return AbelianGroupInvariants(self.free_rank + other.free_rank,
                                      self.torsion + other.torsion)

    def elementary_divisors(self) -> list[int]:
        out = []
        for d in self.torsion:
            out += [p ** e for p, e in factorint(d).items()]
        return sorted(out, key=lambda q: (min(factorint(q)), q))

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __str__(self):
        """Primary-decomposition text, e.g. ``Z^2 + Z_2^8 + Z_8^2``."""
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        for q, k in Counter(self.elementary_divisors()).items():
            parts.append(f"Z_{q}" if k == 1 else f"Z_{q}^{k}")
        return " + ".join(parts) or "0"

    def to_json(self) -> dict:
        return {"rank": self.free_rank, "factors": list(self.torsion)}


# ---------------------------------------------------------------------------


def _snf(complex_: GradedComplex, n: int) -> SmithForm:
    key = ("snf", n)
    if key not in complex_._cache:
        complex_._cache[key] = smith_normal_form(complex_.boundary_matrix(n))
    return complex_._cache[key]


def _check_degree(complex_: GradedComplex, n: int, extra: int = 1):
    if n < 0 or n + extra > complex_.max_degree:
        raise DegreeOutOfRange(
            f"H_{n} needs the complex up to degree {n + extra}, "
            f"but it stops at {complex_.max_degree}")


def homology(complex_: GradedComplex, n: int, method: str = "cokernel") -> AbelianGroupInvariants:
    """H_n = ker d_n / im d_{n+1}.

    ``method="cokernel"`` reads the torsion off the Smith form of d_{n+1}
    alone (the torsion of C_n / im d_{n+1} equals that of H_n because
    C_n / ker d_n is free).  ``method="kernel"`` changes basis with the
    dense transforms of d_n and takes the Smith form of d_{n+1} written in
    kernel coordinates; it is only practical for small complexes.
    """
    _check_degree(complex_, n)
    if method == "cokernel":
        rank_n = _snf(complex_, n).rank if n >= 1 else 0
        up = _snf(complex_, n + 1)
        free = complex_.rank(n) - rank_n - up.rank
        return AbelianGroupInvariants(free, up.torsion)
    if method == "kernel":
        return _homology_via_kernel(complex_, n)
    raise ValueError(f"unknown method {method!r}")


def _homology_via_kernel(complex_: GradedComplex, n: int) -> AbelianGroupInvariants:
    dim = complex_.rank(n)
    if n >= 1:
        sf = smith_normal_form(complex_.boundary_matrix(n), want_transforms=True)
        r, Vi = sf.rank, sf.V_inv
    else:
        r, Vi = 0, [[int(i == j) for j in range(dim)] for i in range(dim)]
    up = complex_.boundary_matrix(n + 1).to_dense()
    cols = len(up[0]) if up else complex_.rank(n + 1)
    # coordinates of im d_{n+1} in the basis given by the columns of V
    coords = [[sum(Vi[i][k] * up[k][j] for k in range(dim)) for j in range(cols)]
              for i in range(dim)]
    if any(coords[i][j] for i in range(r) for j in range(cols)):
        raise AssertionError("image of d_{n+1} is not inside ker d_n")
    restricted = coords[r:]
    sub = smith_normal_form(restricted) if restricted and cols else None
    rank_up = sub.rank if sub else 0
    return AbelianGroupInvariants(dim - r - rank_up, sub.torsion if sub else ())


def betti(complex_: GradedComplex, n: int) -> int:
    """Free rank of H_n from ranks over Q (fraction-free elimination)."""
    _check_degree(complex_, n)
    key = ("qrank", n)
    ranks = complex_._cache.setdefault(key, {})

    def qrank(k):
        if k < 1 or k > complex_.max_degree:
            return 0
        if k not in ranks:
            ranks[k] = rank_rational(complex_.boundary_matrix(k))
        return ranks[k]

    return complex_.rank(n) - qrank(n) - qrank(n + 1)


def mod_p_homology_dim(complex_: GradedComplex, n: int, p: int) -> int:
    """dim H_n(X; Z_p) by universal coefficients."""
    if not isprime(p):
        raise NotPrime(f"{p} is not prime")
    h = homology(complex_, n)
    below = homology(complex_, n - 1).torsion if n >= 1 else ()
    return (h.free_rank + sum(1 for d in h.torsion if d % p == 0)
            + sum(1 for d in below if d % p == 0))


@lru_cache(maxsize=512)
def homology_groups(rack: FiniteRack, variant: str, max_n: int,
                    max_basis: int | None = None) -> tuple[AbelianGroupInvariants, ...]:
    """(H_0, ..., H_max_n) of C^W(rack), building the complex once."""
    cx = build_complex(rack, variant, max_n + 1, max_basis=max_basis)
    return tuple(homology(cx, k) for k in range(max_n + 1))


def _group(rack: FiniteRack, variant: str, n: int) -> AbelianGroupInvariants:
    return homology_groups(rack, variant, n)[n]


def closed_form_betti(variant: str, m: int, n: int) -> int:
    """Betti numbers of a trivial rack with m elements (n >= 1)."""
    if variant == "R":
        return m ** n
    if variant == "Q":
        return m * (m - 1) ** (n - 1)
    if variant == "D":
        return m ** n - m * (m - 1) ** (n - 1)
    raise RackError(f"no closed form for variant {variant!r}")


# ---------------------------------------------------------------------------
# Verification reports


@dataclass
class Check:
    name: str
    passed: bool
    observed: str = ""
    expected: str = ""
    witness: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f"  [{self.witness}]" if self.witness else ""
        return f"{status}  {self.name}: {self.observed} (expected {self.expected}){extra}"


@dataclass
class TheoremReport:
    rack: str
    name: str
    applicable: bool = True
    reason: str = ""
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.applicable and all(c.passed for c in self.checks)

    def first_failure(self) -> Check | None:
        return next((c for c in self.checks if not c.passed), None)

    def lines(self) -> list[str]:
        if not self.applicable:
            return [f"{self.name} on {self.rack}: NotApplicable ({self.reason})"]
        return [f"{self.name} on {self.rack}:"] + ["  " + c.line() for c in self.checks]


def verify_main_theorem(rack: FiniteRack, max_degree: int) -> TheoremReport:
    """Betti numbers equal those of the orbit rack; torsion of H_n is killed by |X|^n."""
    report = TheoremReport(rack.label, "main-theorem")
    part = orbit_partition(rack)
    if not part.homogeneous:
        report.applicable = False
        report.reason = "orbits are not homogeneous"
        return report
    m, size = part.count, rack.size
    variants = ("R", "D", "Q") if rack.is_quandle else ("R",)
    for W in variants:
        for n in range(1, max_degree + 1):
            h = _group(rack, W, n)
            want = closed_form_betti(W, m, n)
            report.checks.append(Check(f"beta^{W}_{n}", h.free_rank == want,
                                       str(h.free_rank), str(want)))
            bad = [d for d in h.torsion if size ** n % d]
            report.checks.append(Check(
                f"torsion of H^{W}_{n} divides |X|^{n} = {size ** n}", not bad,
                str(list(h.torsion)), f"factors dividing {size ** n}",
                witness=f"factor {bad[0]}" if bad else ""))
    return report


def verify_splitting(rack: FiniteRack, max_degree: int) -> TheoremReport:
    """H^R = H^Q + H^D, H^D_2 = Z^m, H^L_3 = Z^(m^2) and the degree-2/3 decompositions."""
    if not rack.is_quandle:
        raise NotAQuandle(f"{rack.label} is not a quandle")
    report = TheoremReport(rack.label, "splitting")
    m = orbit_partition(rack).count

    def add(name, got, want):
        report.checks.append(Check(name, got == want, str(got), str(want)))

    for n in range(1, max_degree + 1):
        add(f"H^R_{n} = H^Q_{n} + H^D_{n}", _group(rack, "R", n),
            _group(rack, "Q", n) + _group(rack, "D", n))
    free = AbelianGroupInvariants.free
    if max_degree >= 2:
        add("H^D_2 = Z^m", _group(rack, "D", 2), free(m))
        add("H^R_2 = H^Q_2 + Z^m", _group(rack, "R", 2), _group(rack, "Q", 2) + free(m))
    if max_degree >= 3:
        add("H^L_3 = Z^(m^2)", _group(rack, "L", 3), free(m * m))
        add("H^R_3 = H^Q_3 + H^Q_2 + Z^(m^2)", _group(rack, "R", 3),
            _group(rack, "Q", 3) + _group(rack, "Q", 2) + free(m * m))
    return report
