"""Finite racks and quandles: construction, validation, orbits, isomorphisms.

A rack of order ``n`` lives on ``{0, ..., n-1}`` and is stored as its
operation table, ``table[a][b] == a^b``.  The right translation
``f_b: a -> a^b`` is column ``b`` of the table.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

import numpy as np

from .errors import (
    AxiomIIViolation,
    AxiomIViolation,
    GroupTableInvalid,
    NonMonic,
    NonUnitConstantTerm,
    NotCoprime,
    NotDivisibleBy4,
    OutOfRangeEntry,
    RackError,
    UnknownSpec,
)

__all__ = [
    "FiniteRack", "AlexanderPresentation", "OrbitPartition", "RackMorphism",
    "NotIsomorphic", "validate_rack", "make_dihedral", "make_alexander",
    "make_trivial", "make_cyclic", "make_fr4", "make_conjugation",
    "make_builtin", "parse_rack_spec", "parse_polynomial", "format_polynomial",
    "orbit_partition", "homogeneity_report", "orbit_rack",
    "alexander_orbit_count", "find_isomorphism", "prop41_map", "prop42_map",
    "read_rack_table", "format_rack_table", "read_group_table",
]


@dataclass(frozen=True, eq=False)
class FiniteRack:
    """A validated finite rack.  Build instances with :func:`validate_rack`."""

    size: int
    table: tuple[tuple[int, ...], ...]
    is_quandle: bool
    label: str = ""

    def __eq__(self, other):
        if not isinstance(other, FiniteRack):
            return NotImplemented
        return self.table == other.table

    def __hash__(self):
        return hash(self.table)

    def __len__(self):
        return self.size

    def __repr__(self):
        kind = "quandle" if self.is_quandle else "rack"
        return f"<FiniteRack {self.label or '?'}: {kind} of order {self.size}>"

    def op(self, a: int, b: int) -> int:
        """Return ``a^b``."""
        return self.table[a][b]

    @cached_property
    def columns(self) -> tuple[tuple[int, ...], ...]:
        """``columns[b][a] == a^b``, i.e. the permutation f_b as a tuple."""
        return tuple(zip(*self.table))

    @cached_property
    def inverse_columns(self) -> tuple[tuple[int, ...], ...]:
        """``inverse_columns[b][a]`` is the unique c with ``c^b == a``."""
        out = []
        for col in self.columns:
            inv = [0] * self.size
            for a, v in enumerate(col):
                inv[v] = a
            out.append(tuple(inv))
        return tuple(out)

    @cached_property
    def array(self) -> np.ndarray:
        return np.array(self.table, dtype=np.int64).reshape(self.size, self.size)


def validate_rack(table, label: str = "") -> FiniteRack:
    """Check both rack axioms exhaustively and return the rack.

    Raises :class:`OutOfRangeEntry`, :class:`AxiomIViolation` (with the
    offending column ``b``) or :class:`AxiomIIViolation` (with the
    lexicographically first failing triple).
    """
    rows = [list(map(int, row)) for row in table]
    n = len(rows)
    if n == 0:
        raise RackError("a rack must be non-empty")
    for a, row in enumerate(rows):
        if len(row) != n:
            raise RackError(f"row {a} has {len(row)} entries, expected {n}")
        for b, v in enumerate(row):
            if not 0 <= v < n:
                raise OutOfRangeEntry(a, b, v, n)
    T = np.array(rows, dtype=np.int64)
    for b in range(n):
        if len(set(T[:, b].tolist())) != n:
            raise AxiomIViolation(b)
    # (a^b)^c == (a^c)^(b^c)
    lhs = T[T[:, :, None], np.arange(n)[None, None, :]]
    rhs = T[T[:, None, :], T[None, :, :]]
    bad = np.argwhere(lhs != rhs)
    if len(bad):
        a, b, c = (int(v) for v in bad[0])
        raise AxiomIIViolation(a, b, c)
    quandle = all(rows[a][a] == a for a in range(n))
    return FiniteRack(n, tuple(tuple(r) for r in rows), quandle, label)


# ---------------------------------------------------------------------------
# Standard families


def make_dihedral(n: int) -> FiniteRack:
    """The dihedral quandle R_n: a^b = 2b - a mod n."""
    if n < 1:
        raise RackError("dihedral rack needs n >= 1")
    return validate_rack([[(2 * b - a) % n for b in range(n)] for a in range(n)],
                         label=f"R_{n}")


def make_trivial(n: int) -> FiniteRack:
    if n < 1:
        raise RackError("trivial rack needs n >= 1")
    return validate_rack([[a] * n for a in range(n)], label=f"T_{n}")


def make_cyclic(n: int) -> FiniteRack:
    """The cyclic rack C_n: a^b = a + 1 mod n."""
    if n < 1:
        raise RackError("cyclic rack needs n >= 1")
    return validate_rack([[(a + 1) % n] * n for a in range(n)], label=f"C_{n}")


def make_fr4() -> FiniteRack:
    """Four-element non-quandle with homogeneous orbits.

    Elements a, b, c, d are 0, 1, 2, 3; f_a = f_b swaps a and b, f_c = f_d
    is the identity.
    """
    swap = (1, 0, 2, 3)
    ident = (0, 1, 2, 3)
    cols = [swap, swap, ident, ident]
    return validate_rack([[cols[y][x] for y in range(4)] for x in range(4)],
                         label="fr4")


def make_conjugation(mult, label: str = "conj(G)") -> FiniteRack:
    """conj(G) with g^h = h^{-1} g h, from a full Cayley table of G."""
    n = len(mult)
    if n == 0 or any(len(row) != n for row in mult):
        raise GroupTableInvalid("group table must be square and non-empty")
    if any(not 0 <= v < n for row in mult for v in row):
        raise GroupTableInvalid("group table entry out of range")
    M = np.array(mult, dtype=np.int64)
    if not np.array_equal(M[M[:, :, None], np.arange(n)[None, None, :]],
                          M[np.arange(n)[:, None, None], M[None, :, :]]):
        raise GroupTableInvalid("multiplication is not associative")
    ids = [e for e in range(n) if all(mult[e][g] == g and mult[g][e] == g for g in range(n))]
    if not ids:
        raise GroupTableInvalid("no identity element")
    e = ids[0]
    inv = []
    for g in range(n):
        hs = [h for h in range(n) if mult[g][h] == e and mult[h][g] == e]
        if not hs:
            raise GroupTableInvalid(f"element {g} has no inverse")
        inv.append(hs[0])
    return validate_rack([[mult[mult[inv[h]][g]][h] for h in range(n)] for g in range(n)],
                         label=label)


# ---------------------------------------------------------------------------
# Alexander racks


_TERM = re.compile(r"([+-]?)\s*(\d*)\s*\*?\s*(t(?:\s*\^\s*(\d+))?)?")


def parse_polynomial(text: str, modulus: int) -> tuple[int, ...]:
    """Parse ``'t^2+t+1'``-style text into coefficients (lowest degree first) mod n."""
    s = text.replace(" ", "")
    if not s:
        raise RackError("empty polynomial")
    coeffs: dict[int, int] = {}
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if m is None or m.end() == pos or (not m.group(2) and not m.group(3)):
            raise RackError(f"cannot parse polynomial {text!r} at position {pos}")
        if pos > 0 and not m.group(1):
            raise RackError(f"missing sign before term at position {pos} in {text!r}")
        sign = -1 if m.group(1) == "-" else 1
        c = int(m.group(2)) if m.group(2) else 1
        if m.group(3):
            deg = int(m.group(4)) if m.group(4) else 1
        else:
            deg = 0
        coeffs[deg] = coeffs.get(deg, 0) + sign * c
        pos = m.end()
    top = max(coeffs)
    return tuple(coeffs.get(i, 0) % modulus for i in range(top + 1))


def format_polynomial(poly, modulus: int) -> str:
    """Inverse of :func:`parse_polynomial`, using residues in (-n/2, n/2]."""
    parts = []
    for deg in range(len(poly) - 1, -1, -1):
        c = poly[deg] % modulus
        if c > modulus // 2:
            c -= modulus
        if c == 0:
            continue
        mono = "" if deg == 0 else ("t" if deg == 1 else f"t^{deg}")
        mag = abs(c)
        body = f"{mag}" if deg == 0 else (mono if mag == 1 else f"{mag}{mono}")
        parts.append(("-" if c < 0 else "+") + body)
    out = "".join(parts)
    return out[1:] if out.startswith("+") else (out or "0")


@dataclass(frozen=True)
class AlexanderPresentation:
    """The module Lambda_n/(h) = Z_n[t, t^-1]/(h) for a monic h with unit constant term.

    ``poly`` lists the coefficients of h from the constant term upwards.
    """

    modulus: int
    poly: tuple[int, ...]

    def __post_init__(self):
        n = self.modulus
        if n < 2:
            raise RackError("modulus must be at least 2")
        poly = tuple(int(c) % n for c in self.poly)
        while len(poly) > 1 and poly[-1] == 0:
            poly = poly[:-1]
        object.__setattr__(self, "poly", poly)
        if len(poly) < 2 or poly[-1] != 1:
            raise NonMonic(f"{format_polynomial(poly, n)} is not monic of degree >= 1 over Z_{n}")
        if math.gcd(poly[0], n) != 1:
            raise NonUnitConstantTerm(
                f"constant term {poly[0]} of {format_polynomial(poly, n)} is not a unit mod {n}")

    @classmethod
    def parse(cls, modulus: int, text: str) -> "AlexanderPresentation":
        return cls(modulus, parse_polynomial(text, modulus))

    @property
    def degree(self) -> int:
        return len(self.poly) - 1

    @property
    def order(self) -> int:
        return self.modulus ** self.degree

    @property
    def label(self) -> str:
        return f"Lambda_{self.modulus}/({format_polynomial(self.poly, self.modulus)})"

    def decode(self, value: int) -> list[int]:
        digits = []
        for _ in range(self.degree):
            value, r = divmod(value, self.modulus)
            digits.append(r)
        return digits

    def encode(self, digits) -> int:
        value = 0
        for c in reversed(digits):
            value = value * self.modulus + c % self.modulus
        return value

    def times_t(self, digits: list[int]) -> list[int]:
        n, d = self.modulus, self.degree
        top = digits[-1]
        shifted = [0] + digits[:-1]
        return [(shifted[i] - top * self.poly[i]) % n for i in range(d)]


def make_alexander(p: AlexanderPresentation, label: str | None = None) -> FiniteRack:
    """Alexander quandle on Lambda_n/(h) with a^b = t*a + (1 - t)*b."""
    n = p.modulus
    size = p.order
    digits = [p.decode(v) for v in range(size)]
    table = []
    for a in range(size):
        row = []
        da = digits[a]
        for b in range(size):
            db = digits[b]
            diff = [(x - y) % n for x, y in zip(da, db)]
            td = p.times_t(diff)
            row.append(p.encode([x + y for x, y in zip(td, db)]))
        table.append(row)
    return validate_rack(table, label=label or p.label)


def alexander_orbit_count(p: AlexanderPresentation) -> int:
    """Order of M/(1 - t)M, found by enumerating the image of 1 - t."""
    image = set()
    for v in range(p.order):
        d = p.decode(v)
        td = p.times_t(d)
        image.add(p.encode([x - y for x, y in zip(d, td)]))
    return p.order // len(image)


# ---------------------------------------------------------------------------
# Spec strings and files


def _read_lines(path, header: str) -> list[list[int]]:
    lines = []
    for raw in Path(path).read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    kind = "group" if header == "group" else "rack"
    exc = GroupTableInvalid if kind == "group" else RackError
    if len(lines) < 2 or lines[0].split() != [header, "v1"]:
        raise exc(f"{path}: expected header '{header} v1'")
    words = lines[1].split()
    if len(words) != 2 or words[0] != "size" or not words[1].isdigit():
        raise exc(f"{path}: expected 'size n' on line 2")
    n = int(words[1])
    rows = lines[2:]
    if len(rows) != n:
        raise exc(f"{path}: expected {n} table rows, found {len(rows)}")
    try:
        table = [[int(w) for w in row.split()] for row in rows]
    except ValueError as e:
        raise exc(f"{path}: non-integer entry ({e})") from None
    return table


def read_rack_table(path, label: str | None = None) -> FiniteRack:
    return validate_rack(_read_lines(path, "rack"), label=label or Path(path).name)


def format_rack_table(rack: FiniteRack) -> str:
    lines = ["rack v1", f"size {rack.size}"]
    lines += [" ".join(map(str, row)) for row in rack.table]
    return "\n".join(lines) + "\n"


def read_group_table(path) -> list[list[int]]:
    return _read_lines(path, "group")


def _positive_int(text: str, spec: str) -> int:
    if not text.isdigit() or int(text) < 1:
        raise UnknownSpec(f"bad size {text!r} in rack spec {spec!r}")
    return int(text)


def make_builtin(spec: str) -> FiniteRack:
    """Constructors for ``trivial:n``, ``cyclic:n``, ``fr4`` and ``conj:<path>``."""
    kind, _, arg = spec.partition(":")
    if kind == "trivial":
        return make_trivial(_positive_int(arg, spec))
    if kind == "cyclic":
        return make_cyclic(_positive_int(arg, spec))
    if kind == "fr4" and not arg:
        return make_fr4()
    if kind == "conj" and arg:
        return make_conjugation(read_group_table(arg), label=f"conj({Path(arg).name})")
    raise UnknownSpec(f"unknown rack spec {spec!r}")


def parse_rack_spec(spec: str) -> FiniteRack:
    """Build a rack from any supported spec string.

    >>> parse_rack_spec("alexander:3:t^2+t+1").size
    9
    """
    kind, _, arg = spec.partition(":")
    if kind == "dihedral":
        return make_dihedral(_positive_int(arg, spec))
    if kind == "alexander":
        n_text, sep, poly_text = arg.partition(":")
        if not sep:
            raise UnknownSpec(f"alexander spec needs 'alexander:n:<poly>', got {spec!r}")
        n = _positive_int(n_text, spec)
        p = AlexanderPresentation.parse(n, poly_text)
        return make_alexander(p, label=f"Lambda_{n}/({poly_text})")
    if kind == "table" and arg:
        return read_rack_table(arg)
    return make_builtin(spec)


# ---------------------------------------------------------------------------
# Orbits


@dataclass(frozen=True)
class OrbitPartition:
    orbit_of: tuple[int, ...]
    orbit_members: tuple[tuple[int, ...], ...]
    homogeneous: bool
    N_values: tuple[int, ...] | None
    N_matrix: tuple[tuple[int, ...], ...] = field(repr=False)

    @property
    def count(self) -> int:
        return len(self.orbit_members)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(o) for o in self.orbit_members)


def orbit_partition(rack: FiniteRack) -> OrbitPartition:
    n = rack.size
    orbit_of = [-1] * n
    members = []
    for start in range(n):
        if orbit_of[start] >= 0:
            continue
        oid = len(members)
        orbit_of[start] = oid
        stack, seen = [start], [start]
        while stack:
            a = stack.pop()
            for b in range(n):
                for nxt in (rack.columns[b][a], rack.inverse_columns[b][a]):
                    if orbit_of[nxt] < 0:
                        orbit_of[nxt] = oid
                        stack.append(nxt)
                        seen.append(nxt)
        members.append(tuple(sorted(seen)))
    N = [[0] * n for _ in range(n)]
    for a in range(n):
        for c in range(n):
            N[a][rack.table[a][c]] += 1
    homogeneous = True
    values = []
    for orb in members:
        vals = {N[a][b] for a in orb for b in orb}
        if len(vals) != 1:
            homogeneous = False
        values.append(next(iter(vals)))
    return OrbitPartition(
        orbit_of=tuple(orbit_of),
        orbit_members=tuple(members),
        homogeneous=homogeneous,
        N_values=tuple(values) if homogeneous else None,
        N_matrix=tuple(tuple(r) for r in N),
    )


def homogeneity_report(rack: FiniteRack) -> dict:
    """Summary of the orbit structure, with a witness pair when N(a, b) varies on an orbit."""
    part = orbit_partition(rack)
    report = {
        "rack": rack.label,
        "size": rack.size,
        "quandle": rack.is_quandle,
        "m": part.count,
        "orbits": [list(o) for o in part.orbit_members],
        "homogeneous": part.homogeneous,
    }
    if part.homogeneous:
        report["N"] = list(part.N_values)
    else:
        for orb in part.orbit_members:
            a = orb[0]
            pairs = {part.N_matrix[a][b]: b for b in orb}
            if len(pairs) > 1:
                (v1, b1), (v2, b2) = sorted(pairs.items())[:2]
                report["witness"] = {"a": a, "b": b1, "N(a,b)": v1, "b'": b2, "N(a,b')": v2}
                break
    return report


# ---------------------------------------------------------------------------
# Morphisms


@dataclass(frozen=True)
class RackMorphism:
    source: FiniteRack
    target: FiniteRack
    map: tuple[int, ...]
    isomorphism: bool = False

    def __call__(self, a: int) -> int:
        return self.map[a]

    def is_homomorphism(self) -> bool:
        f, S, T = self.map, self.source.table, self.target.table
        n = self.source.size
        return all(f[S[a][b]] == T[f[a]][f[b]] for a in range(n) for b in range(n))

    def is_bijective(self) -> bool:
        return (self.source.size == self.target.size
                and sorted(self.map) == list(range(self.target.size)))

    def check(self) -> bool:
        ok = self.is_homomorphism()
        if self.isomorphism:
            ok = ok and self.is_bijective()
        return ok

    def inverse(self) -> "RackMorphism":
        if not self.is_bijective():
            raise RackError("morphism is not a bijection")
        inv = [0] * len(self.map)
        for a, b in enumerate(self.map):
            inv[b] = a
        return RackMorphism(self.target, self.source, tuple(inv), self.isomorphism)


def orbit_rack(rack: FiniteRack) -> tuple[FiniteRack, RackMorphism]:
    """The orbit set as a trivial rack, with the projection onto it."""
    part = orbit_partition(rack)
    orb = make_trivial(part.count)
    orb = FiniteRack(orb.size, orb.table, orb.is_quandle, f"Orb({rack.label})")
    return orb, RackMorphism(rack, orb, part.orbit_of)


@dataclass(frozen=True)
class NotIsomorphic:
    """Certificate that an exhaustive (pruned) search found no isomorphism."""

    reason: str
    nodes: int = 0

    def __bool__(self):
        return False


def _cycle_type(perm) -> tuple[int, ...]:
    seen = [False] * len(perm)
    lengths = []
    for s in range(len(perm)):
        if seen[s]:
            continue
        k, x = 0, s
        while not seen[x]:
            seen[x] = True
            x = perm[x]
            k += 1
        lengths.append(k)
    return tuple(sorted(lengths))


def _profiles(rack: FiniteRack) -> list[tuple]:
    part = orbit_partition(rack)
    out = []
    for x in range(rack.size):
        left = [0] * rack.size
        for a in range(rack.size):
            left[rack.table[x][a]] += 1
        out.append((
            len(part.orbit_members[part.orbit_of[x]]),
            tuple(sorted(v for v in part.N_matrix[x] if v)),
            _cycle_type(rack.columns[x]),
            rack.table[x][x] == x,
            tuple(sorted(v for v in left if v)),
        ))
    return out


def find_isomorphism(X: FiniteRack, Y: FiniteRack):
    """Lexicographically least isomorphism X -> Y, or a :class:`NotIsomorphic` token.

    Depth-first search assigns images to the smallest unmapped element in
    increasing order; each assignment is propagated through the operation
    (phi(a^c) = phi(a)^phi(c)).  Element profiles only prune; the returned
    map is checked exhaustively.
    """
    if X.size != Y.size:
        return NotIsomorphic("size mismatch")
    if X.is_quandle != Y.is_quandle:
        return NotIsomorphic("quandle flag differs")
    px, py = _profiles(X), _profiles(Y)
    if sorted(px) != sorted(py):
        return NotIsomorphic("element invariant profiles differ")

    n = X.size
    S, T = X.table, Y.table
    phi = [-1] * n
    inv = [-1] * n
    domain: list[int] = []
    nodes = 0

    def assign(a, b, trail):
        queue = [(a, b)]
        phi[a], inv[b] = b, a
        domain.append(a)
        trail.append(a)
        while queue:
            a, b = queue.pop()
            for c in list(domain):
                d = phi[c]
                for x, y in ((S[a][c], T[b][d]), (S[c][a], T[d][b])):
                    if phi[x] >= 0:
                        if phi[x] != y:
                            return False
                    elif inv[y] >= 0 or px[x] != py[y]:
                        return False
                    else:
                        phi[x], inv[y] = y, x
                        domain.append(x)
                        trail.append(x)
                        queue.append((x, y))
        return True

    def undo(trail):
        for x in trail:
            inv[phi[x]] = -1
            phi[x] = -1
        del domain[len(domain) - len(trail):]

    def dfs():
        nonlocal nodes
        try:
            x = phi.index(-1)
        except ValueError:
            return True
        for y in range(n):
            if inv[y] >= 0 or px[x] != py[y]:
                continue
            nodes += 1
            trail: list[int] = []
            if assign(x, y, trail) and dfs():
                return True
            undo(trail)
        return False

    if not dfs():
        return NotIsomorphic("search exhausted", nodes)
    mor = RackMorphism(X, Y, tuple(phi), isomorphism=True)
    if not mor.check():  # pragma: no cover - propagation guarantees this
        raise RuntimeError("isomorphism search produced an invalid map")
    return mor


# ---------------------------------------------------------------------------
# Explicit isomorphisms between Alexander racks


def prop41_map(n: int, k: int) -> RackMorphism:
    """Isomorphism Lambda_{n^2}/(t - (kn+1)) -> Lambda_n/((t-1)^2) for gcd(k, n) = 1.

    With beta(a) = a mod n and the section gamma(x) = x, delta(a) = a // n,
    and f(a) = k*beta(a) + (t - 1)*delta(a).
    """
    if n < 2:
        raise RackError("n must be at least 2")
    if math.gcd(k, n) != 1:
        raise NotCoprime(f"k = {k} is not coprime to n = {n}")
    nn = n * n
    src = make_alexander(AlexanderPresentation(nn, (-(k * n + 1), 1)),
                         label=f"Lambda_{nn}/(t-{k * n + 1})")
    tgt_p = AlexanderPresentation(n, (1, -2, 1))
    tgt = make_alexander(tgt_p, label=f"Lambda_{n}/((t-1)^2)")
    images = []
    for a in range(nn):
        beta, delta = a % n, a // n
        images.append(tgt_p.encode([(k * beta - delta) % n, delta % n]))
    mor = RackMorphism(src, tgt, tuple(images), isomorphism=True)
    if not mor.check():
        raise RuntimeError(f"prop41 map for n={n}, k={k} failed verification")
    return mor


def prop42_map(n: int) -> RackMorphism:
    """Isomorphism R_{2n} -> Lambda_{2n}/(t - (n-1)) for 4 | n, f(a) = a + eps(a)."""
    if n <= 0 or n % 4:
        raise NotDivisibleBy4(f"n = {n} is not a positive multiple of 4")
    m = 2 * n
    src = make_dihedral(m)
    tgt = make_alexander(AlexanderPresentation(m, (-(n - 1), 1)),
                         label=f"Lambda_{m}/(t-{n - 1})")
    images = tuple((a + (n if a % 4 in (2, 3) else 0)) % m for a in range(m))
    mor = RackMorphism(src, tgt, images, isomorphism=True)
    if not mor.check():
        raise RuntimeError(f"prop42 map for n={n} failed verification")
    return mor
