"""Cubical chain complexes of a finite rack and the maps between them.

Tuples in X^n are plain Python tuples of ints.  A :class:`FormalChain` is
a finite integer combination of tuples of one degree.  The complexes are

* ``R``: all tuples (rack homology),
* ``D``: tuples with some ``x_i == x_{i+1}`` (degenerate),
* ``Q``: the quotient R/D (quandle homology),
* ``L``: tuples with ``x_i == x_{i+1}`` for some ``i >= 2`` (late degenerate).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

from .errors import (
    DegreeTooLarge,
    DegreeZero,
    IndexOutOfRange,
    NotAQuandle,
    NotHomogeneous,
    RackError,
    ResourceCapExceeded,
)
from .racks import FiniteRack, OrbitPartition, orbit_partition
from .smith import IntegerMatrix

__all__ = [
    "FormalChain", "GradedComplex", "VARIANTS", "degenerate", "late_degenerate",
    "face", "boundary", "boundary_tuple", "build_complex", "basis",
    "alpha", "beta_map", "deg_projection", "phi", "homotopy_D", "psi", "r_shift",
]

VARIANTS = ("R", "D", "Q", "L")
MAX_DEGREE = 6


def degenerate(T) -> bool:
    return any(T[i] == T[i + 1] for i in range(len(T) - 1))


def late_degenerate(T) -> bool:
    return any(T[i] == T[i + 1] for i in range(1, len(T) - 1))


class FormalChain:
    """Integer combination of tuples of a single degree."""

    __slots__ = ("degree", "terms")

    def __init__(self, degree: int, terms=None):
        self.degree = degree
        clean = {}
        for T, c in (terms or {}).items():
            if len(T) != degree:
                raise RackError(f"tuple {T} does not have degree {degree}")
            if c:
                clean[tuple(T)] = int(c)
        self.terms: dict[tuple[int, ...], int] = clean

    @classmethod
    def of(cls, *tuples) -> "FormalChain":
        """Sum of the given tuples, each with coefficient 1."""
        if not tuples:
            raise RackError("FormalChain.of needs at least one tuple")
        acc: dict = {}
        for T in tuples:
            T = tuple(T)
            acc[T] = acc.get(T, 0) + 1
        return cls(len(tuples[0]), acc)

    @classmethod
    def zero(cls, degree: int) -> "FormalChain":
        return cls(degree)

    def _combine(self, other: "FormalChain", sign: int) -> "FormalChain":
        if self.degree != other.degree:
            raise RackError(f"cannot add chains of degree {self.degree} and {other.degree}")
        acc = dict(self.terms)
        for T, c in other.terms.items():
            acc[T] = acc.get(T, 0) + sign * c
        return FormalChain(self.degree, acc)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return FormalChain(self.degree, {T: -c for T, c in self.terms.items()})

    def __rmul__(self, k: int):
        return FormalChain(self.degree, {T: k * c for T, c in self.terms.items()})

    __mul__ = __rmul__

    def __eq__(self, other):
        if not isinstance(other, FormalChain):
            return NotImplemented
        return self.degree == other.degree and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def __iter__(self):
        return iter(sorted(self.terms.items()))

    def __len__(self):
        return len(self.terms)

    def support(self) -> set:
        return set(self.terms)

    def __repr__(self):
        return f"FormalChain({self.degree}, {str(self)!r})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for T, c in sorted(self.terms.items()):
            body = "(" + ",".join(map(str, T)) + ")"
            sign = "-" if c < 0 else "+"
            parts.append((sign, f"{abs(c)} * {body}"))
        out = parts[0][1] if parts[0][0] == "+" else "-" + parts[0][1]
        for sign, text in parts[1:]:
            out += f" {sign} {text}"
        return out


def _apply(degree: int, c: FormalChain, fn) -> FormalChain:
    """Extend a tuple -> dict map linearly over a chain."""
    acc: dict = {}
    for T, k in c.terms.items():
        for S, v in fn(T).items():
            acc[S] = acc.get(S, 0) + k * v
    return FormalChain(degree, acc)


# ---------------------------------------------------------------------------
# Faces and boundary


def face(rack: FiniteRack, T, i: int, eps: int) -> tuple[int, ...]:
    """The cubical face d_i^eps of a tuple (1-based i).

    d_i^0 deletes entry i; d_i^1 also acts on the entries before it by x_i.
    """
    T = tuple(T)
    if not 1 <= i <= len(T):
        raise IndexOutOfRange(f"face index {i} outside 1..{len(T)}")
    if eps not in (0, 1):
        raise RackError("eps must be 0 or 1")
    if eps == 0:
        return T[: i - 1] + T[i:]
    col = rack.columns[T[i - 1]]
    return tuple(col[x] for x in T[: i - 1]) + T[i:]


def boundary_tuple(rack: FiniteRack, T) -> dict[tuple[int, ...], int]:
    """sum_i (-1)^i (d_i^0 - d_i^1)(T) as a tuple -> coefficient dict."""
    acc: dict = {}
    T = tuple(T)
    cols = rack.columns
    for i in range(2, len(T) + 1):  # i = 1 cancels: d_1^0 == d_1^1
        s = -1 if i % 2 else 1
        tail = T[i:]
        f0 = T[: i - 1] + tail
        col = cols[T[i - 1]]
        f1 = tuple(col[x] for x in T[: i - 1]) + tail
        if f0 == f1:
            continue
        acc[f0] = acc.get(f0, 0) + s
        acc[f1] = acc.get(f1, 0) - s
    return {k: v for k, v in acc.items() if v}


def boundary(rack: FiniteRack, c: FormalChain) -> FormalChain:
    if c.degree == 0:
        raise DegreeZero("the boundary is not defined on degree 0")
    return _apply(c.degree - 1, c, lambda T: boundary_tuple(rack, T))


# ---------------------------------------------------------------------------
# Complexes


def basis(rack: FiniteRack, variant: str, n: int) -> list[tuple[int, ...]]:
    """Lexicographically ordered basis of C^W_n."""
    if variant not in VARIANTS:
        raise RackError(f"unknown variant {variant!r}")
    if n == 0:
        return [()] if variant == "R" else []
    tuples = product(range(rack.size), repeat=n)
    if variant == "R":
        return list(tuples)
    if variant == "D":
        return [T for T in tuples if degenerate(T)]
    if variant == "Q":
        return [T for T in tuples if not degenerate(T)]
    return [T for T in tuples if late_degenerate(T)]


def _basis_size(rack: FiniteRack, variant: str, n: int) -> int:
    x = rack.size
    if n == 0:
        return 1 if variant == "R" else 0
    full, nondeg = x ** n, x * (x - 1) ** (n - 1)
    if variant == "R":
        return full
    if variant == "Q":
        return nondeg
    if variant == "D":
        return full - nondeg
    # late degenerate: x_1 free, the rest (x_2..x_n) degenerate
    return 0 if n < 3 else x * (x ** (n - 1) - x * (x - 1) ** (n - 2))


@dataclass
class GradedComplex:
    variant: str
    rack: FiniteRack
    max_degree: int
    bases: list[list[tuple[int, ...]]]
    boundaries: dict[int, IntegerMatrix]
    _cache: dict = field(default_factory=dict, repr=False)

    def rank(self, n: int) -> int:
        """Rank of C_n."""
        return len(self.bases[n]) if 0 <= n <= self.max_degree else 0

    def boundary_matrix(self, n: int) -> IntegerMatrix:
        """Matrix of d_n: C_n -> C_{n-1}; zero outside 1..max_degree."""
        if n in self.boundaries:
            return self.boundaries[n]
        return IntegerMatrix.zeros(self.rank(n - 1), self.rank(n))


def build_complex(rack: FiniteRack, variant: str, max_degree: int,
                  max_basis: int | None = None, degree_cap: int = MAX_DEGREE) -> GradedComplex:
    """Bases and boundary matrices of C^W_n for 0 <= n <= max_degree.

    ``R`` has C_0 spanned by the empty tuple with d_1 = 0; ``D``, ``Q`` and
    ``L`` have C_0 = 0.  ``Q`` boundaries drop degenerate tuples; ``D`` and
    ``L`` boundaries are restrictions, and closure is checked.
    """
    if variant not in VARIANTS:
        raise RackError(f"unknown variant {variant!r}")
    if variant != "R" and not rack.is_quandle:
        raise NotAQuandle(f"variant {variant} needs a quandle; {rack.label} is not one")
    if max_degree < 1:
        raise RackError("max_degree must be at least 1")
    if max_degree > degree_cap:
        raise DegreeTooLarge(f"degree {max_degree} exceeds the cap {degree_cap}")
    if max_basis is not None:
        for n in range(max_degree + 1):
            size = _basis_size(rack, variant, n)
            if size > max_basis:
                raise ResourceCapExceeded(n, size, max_basis)
    bases = [basis(rack, variant, n) for n in range(max_degree + 1)]
    boundaries = {}
    for n in range(1, max_degree + 1):
        target = {T: k for k, T in enumerate(bases[n - 1])}
        entries = {}
        for j, T in enumerate(bases[n]):
            for S, v in boundary_tuple(rack, T).items():
                i = target.get(S)
                if i is None:
                    if variant == "Q" and degenerate(S):
                        continue
                    raise AssertionError(
                        f"C^{variant} is not closed under the boundary: d{T} hits {S}")
                entries[i, j] = v
        boundaries[n] = IntegerMatrix(len(bases[n - 1]), len(bases[n]), entries)
    return GradedComplex(variant, rack, max_degree, bases, boundaries)


# ---------------------------------------------------------------------------
# The splitting map alpha and friends


def _require_quandle(rack: FiniteRack):
    if not rack.is_quandle:
        raise NotAQuandle(f"{rack.label or 'rack'} is not a quandle")


@lru_cache(maxsize=200_000)
def _alpha_tuple(rack: FiniteRack, T: tuple[int, ...]) -> tuple:
    if len(T) <= 1:
        return ((T, 1),)
    head, y, last = T[:-1], T[-1], T[-2]
    acc: dict = {}
    for S, c in _alpha_tuple(rack, head):
        acc[S + (y,)] = acc.get(S + (y,), 0) + c
        acc[S + (last,)] = acc.get(S + (last,), 0) - c
    return tuple((S, c) for S, c in acc.items() if c)


def alpha(rack: FiniteRack, c: FormalChain) -> FormalChain:
    """alpha_1 = id, alpha_{n+1}(x * y) = alpha_n(x) * y - alpha_n(x) * x_n."""
    _require_quandle(rack)
    if c.degree < 1:
        raise DegreeZero("alpha is defined from degree 1")
    return _apply(c.degree, c, lambda T: dict(_alpha_tuple(rack, T)))


def beta_map(rack: FiniteRack, c: FormalChain) -> FormalChain:
    """beta_n(x) = alpha_n(x) * x_n, applied tuple by tuple."""
    _require_quandle(rack)
    if c.degree < 1:
        raise DegreeZero("beta is defined from degree 1")

    def one(T):
        return {S + (T[-1],): v for S, v in _alpha_tuple(rack, T)}

    return _apply(c.degree + 1, c, one)


def deg_projection(rack: FiniteRack, c: FormalChain) -> FormalChain:
    """c - alpha(c): the projection of C^R onto the degenerate subcomplex."""
    return c - alpha(rack, c)


def r_shift(rack: FiniteRack, c: FormalChain) -> FormalChain:
    """r(x_1, ..., x_{n-1}) = (x_1, x_1, x_2, ..., x_{n-1})."""
    _require_quandle(rack)
    if c.degree < 1:
        raise DegreeZero("r is defined on degree >= 1")
    return FormalChain(c.degree + 1, {(T[0],) + T: v for T, v in c.terms.items()})


# ---------------------------------------------------------------------------
# The homotopy operators


@lru_cache(maxsize=256)
def _n_rows(rack: FiniteRack) -> tuple[tuple[tuple[int, int], ...], ...]:
    """For each x, the pairs (z, N(x, z)) with N(x, z) = #{y : x^y = z} > 0."""
    part = orbit_partition(rack)
    return tuple(tuple((z, k) for z, k in enumerate(row) if k) for row in part.N_matrix)


def _acted_prefixes(rack: FiniteRack, prefix) -> list[tuple[tuple, int]]:
    """sum over y in X^k of (x_1^{y_1}, ..., x_k^{y_k}), grouped with multiplicities."""
    rows = _n_rows(rack)
    out = []
    for combo in product(*(rows[x] for x in prefix)):
        mult = 1
        for _, k in combo:
            mult *= k
        out.append((tuple(z for z, _ in combo), mult))
    return out


def _phi_tuple(rack: FiniteRack, j: int, T) -> dict:
    n = len(T)
    if j == 0:
        return {T: 1}
    if j > n:
        scale = rack.size ** (j - n)
        return {S: scale * v for S, v in _phi_tuple(rack, n, T).items()}
    tail = T[j:]
    return {S + tail: k for S, k in _acted_prefixes(rack, T[:j])}


def phi(rack: FiniteRack, j: int, c: FormalChain) -> FormalChain:
    """phi^j: act on the first j entries by every y in X^j and sum.

    For j > n this is |X|^(j-n) phi^n.
    """
    if j < 0:
        raise RackError("j must be non-negative")
    return _apply(c.degree, c, lambda T: _phi_tuple(rack, j, T))


def _D_tuple(rack: FiniteRack, j: int, T) -> dict:
    n = len(T)
    if j > n:
        return {}
    xj, tail = T[j - 1], T[j:]
    acc = {}
    for S, k in _acted_prefixes(rack, T[: j - 1]):
        for y in range(rack.size):
            key = S + (xj, y) + tail
            acc[key] = acc.get(key, 0) + k
    return acc


def homotopy_D(rack: FiniteRack, j: int, c: FormalChain) -> FormalChain:
    """D^j(x) = sum over y in X^j of (x_1^{y_1}, ..., x_{j-1}^{y_{j-1}}, x_j, y_j, x_{j+1}, ...).

    Zero when j exceeds the degree.
    """
    if j < 1:
        raise RackError("D^j needs j >= 1")
    return _apply(c.degree + 1, c, lambda T: _D_tuple(rack, j, T))


def psi(rack: FiniteRack, w, partition: OrbitPartition | None = None) -> FormalChain:
    """psi(w_1, ..., w_n) = (prod N_{w_i}) * sum of all tuples with z_i in orbit w_i."""
    part = partition or orbit_partition(rack)
    if not part.homogeneous:
        raise NotHomogeneous(f"{rack.label or 'rack'} does not have homogeneous orbits")
    w = tuple(w)
    coef = 1
    for o in w:
        coef *= part.N_values[o]
    tuples = product(*(part.orbit_members[o] for o in w))
    return FormalChain(len(w), {T: coef for T in tuples})
