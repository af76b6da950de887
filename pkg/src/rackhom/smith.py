"""Exact integer linear algebra: sparse matrices, Smith normal form, ranks.

Everything here uses Python integers, so there is no overflow.  Two
Smith normal form paths exist:

* a sparse elimination that only returns invariant factors (used for
  boundary matrices with thousands of columns), and
* a dense elimination that also returns unimodular ``U``, ``V`` with
  ``U @ M @ V == diag(d_1, ..., d_k)``.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from math import gcd

from sympy import isprime

__all__ = [
    "IntegerMatrix", "SmithForm", "smith_normal_form", "invariant_factors",
    "rank_rational", "rank_mod_p", "determinant", "invariant_chain",
]

DENSE_FALLBACK = 0.30
DENSE_MAX_CELLS = 4096


class IntegerMatrix:
    """Sparse integer matrix in dictionary-of-keys form; zeros are never stored."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries=None):
        self.rows = rows
        self.cols = cols
        self.entries: dict[tuple[int, int], int] = {}
        for (i, j), v in (entries or {}).items():
            if not (0 <= i < rows and 0 <= j < cols):
                raise IndexError(f"entry ({i}, {j}) outside a {rows}x{cols} matrix")
            if v:
                self.entries[i, j] = int(v)

    @classmethod
    def from_dense(cls, data, cols: int | None = None) -> "IntegerMatrix":
        data = [list(r) for r in data]
        ncols = cols if cols is not None else (len(data[0]) if data else 0)
        return cls(len(data), ncols,
                   {(i, j): v for i, r in enumerate(data) for j, v in enumerate(r) if v})

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntegerMatrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        return cls(n, n, {(i, i): 1 for i in range(n)})

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def nnz(self) -> int:
        return len(self.entries)

    def __getitem__(self, key) -> int:
        return self.entries.get(key, 0)

    def __eq__(self, other):
        if not isinstance(other, IntegerMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __repr__(self):
        return f"IntegerMatrix({self.rows}x{self.cols}, nnz={self.nnz})"

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def row_dicts(self) -> list[dict[int, int]]:
        out: list[dict[int, int]] = [{} for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def transpose(self) -> "IntegerMatrix":
        return IntegerMatrix(self.cols, self.rows, {(j, i): v for (i, j), v in self.entries.items()})

    def is_zero(self) -> bool:
        return not self.entries

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        right = other.row_dicts()
        acc: dict[tuple[int, int], int] = {}
        for (i, k), v in self.entries.items():
            for j, w in right[k].items():
                acc[i, j] = acc.get((i, j), 0) + v * w
        return IntegerMatrix(self.rows, other.cols, acc)


@dataclass(frozen=True)
class SmithForm:
    """Invariant factors d_1 | ... | d_k (all >= 1) of a matrix, plus optional transforms."""

    invariant_factors: tuple[int, ...]
    shape: tuple[int, int]
    U: list[list[int]] | None = None
    V: list[list[int]] | None = None
    V_inv: list[list[int]] | None = None

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    @property
    def torsion(self) -> tuple[int, ...]:
        return tuple(d for d in self.invariant_factors if d > 1)

    def diagonal(self) -> list[list[int]]:
        m, n = self.shape
        out = [[0] * n for _ in range(m)]
        for i, d in enumerate(self.invariant_factors):
            out[i][i] = d
        return out


def invariant_chain(values) -> tuple[int, ...]:
    """Turn the diagonal of any diagonal matrix into its invariant-factor chain."""
    vals = [abs(v) for v in values if v]
    ones = [v for v in vals if v == 1]
    rest = sorted(v for v in vals if v != 1)
    for i in range(len(rest)):
        for j in range(i + 1, len(rest)):
            g = gcd(rest[i], rest[j])
            rest[i], rest[j] = g, rest[i] // g * rest[j]
    rest.sort()
    return tuple(ones + [v for v in rest if v == 1] + [v for v in rest if v != 1])


def smith_normal_form(M, want_transforms: bool = False) -> SmithForm:
    """Smith normal form of an integer matrix.

    ``M`` may be an :class:`IntegerMatrix` or a list of rows.  Without
    transforms, elimination is sparse: a unit entry in the sparsest column
    is preferred (shortest row first), falling back to the entry of least
    absolute value.  Small dense remainders finish on a dense array.
    ``want_transforms=True`` uses the dense algorithm throughout and fills
    in U, V and V^-1 with U M V = D.
    """
    if not isinstance(M, IntegerMatrix):
        M = IntegerMatrix.from_dense(M)
    if want_transforms:
        d, U, V, Vi = _dense_snf(M.to_dense(), M.rows, M.cols, True)
        return SmithForm(tuple(d), M.shape, U, V, Vi)
    # SNF(M) and SNF(M^T) agree; eliminate along the orientation with the shorter rows
    work = M.transpose() if M.cols > M.rows else M
    return SmithForm(invariant_chain(_sparse_diagonal(work)), M.shape)


def invariant_factors(M) -> tuple[int, ...]:
    return smith_normal_form(M).invariant_factors


# ---------------------------------------------------------------------------
# Sparse path


class _Active:
    """Row/column incidence of the not-yet-eliminated part of a matrix."""

    def __init__(self, M: IntegerMatrix):
        self.rows: dict[int, dict[int, int]] = {}
        self.cols: dict[int, set[int]] = {}
        for (i, j), v in M.entries.items():
            self.rows.setdefault(i, {})[j] = v
            self.cols.setdefault(j, set()).add(i)
        self.order = sorted(self.rows)
        self.nnz = M.nnz

    def drop_row(self, i):
        for j in self.rows.pop(i):
            s = self.cols[j]
            s.discard(i)
            if not s:
                del self.cols[j]
        k = bisect.bisect_left(self.order, i)
        del self.order[k]

    def axpy(self, target: int, q: int, source: int):
        """row[target] -= q * row[source]"""
        row_t = self.rows[target]
        for j, v in self.rows[source].items():
            new = row_t.get(j, 0) - q * v
            if new:
                if j not in row_t:
                    self.cols[j].add(target)
                    self.nnz += 1
                row_t[j] = new
            elif j in row_t:
                del row_t[j]
                s = self.cols[j]
                s.discard(target)
                self.nnz -= 1
        if not row_t:
            del self.rows[target]
            k = bisect.bisect_left(self.order, target)
            del self.order[k]

    def pivot(self):
        """A unit in the sparsest column that holds one (shortest row, then lowest index).

        Without units anywhere, the least |value| overall.
        """
        rows = self.rows
        for _, j in sorted((len(s), j) for j, s in self.cols.items()):
            units = [(len(rows[i]), i) for i in self.cols[j] if abs(rows[i][j]) == 1]
            if units:
                return 1, min(units)[1], j
        best = min((abs(v), len(self.cols[j]), len(row), i, j)
                   for i, row in rows.items() for j, v in row.items())
        return best[0], best[3], best[4]


def _sparse_diagonal(M: IntegerMatrix) -> list[int]:
    act = _Active(M)
    diag: list[int] = []
    while act.rows:
        ncols = len(act.cols)
        nrows = len(act.rows)
        if nrows * ncols <= DENSE_MAX_CELLS and act.nnz > DENSE_FALLBACK * nrows * ncols and nrows > 1:
            col_ids = sorted(act.cols)
            pos = {c: k for k, c in enumerate(col_ids)}
            dense = []
            for i in act.order:
                r = [0] * ncols
                for j, v in act.rows[i].items():
                    r[pos[j]] = v
                dense.append(r)
            d, *_ = _dense_snf(dense, nrows, ncols, False)
            return diag + list(d)
        _, r, c = act.pivot()
        v = act.rows[r][c]
        # clear column c by row operations
        stuck = False
        for i in sorted(act.cols[c] - {r}):
            a = act.rows[i][c]
            q = a // v
            act.axpy(i, q, r)
            if i in act.rows and c in act.rows[i]:
                stuck = True
        if stuck:
            continue
        row = act.rows[r]
        bad = [j for j, w in row.items() if w % v]
        if bad:
            # column c now holds only the pivot, so a column operation only touches row r
            j = min(bad)
            row[j] %= v
            continue
        diag.append(abs(v))
        act.nnz -= len(row)
        act.drop_row(r)
    return diag


# ---------------------------------------------------------------------------
# Dense path


def _dense_snf(A, m, n, track):
    A = [list(r) for r in A]
    U = [[int(i == j) for j in range(m)] for i in range(m)] if track else None
    V = [[int(i == j) for j in range(n)] for i in range(n)] if track else None
    Vi = [[int(i == j) for j in range(n)] for i in range(n)] if track else None

    def swap_rows(i, k):
        A[i], A[k] = A[k], A[i]
        if track:
            U[i], U[k] = U[k], U[i]

    def swap_cols(j, k):
        for r in A:
            r[j], r[k] = r[k], r[j]
        if track:
            for r in V:
                r[j], r[k] = r[k], r[j]
            Vi[j], Vi[k] = Vi[k], Vi[j]

    def add_row(target, q, source):  # row_t += q * row_s
        rs, rt = A[source], A[target]
        for j in range(n):
            if rs[j]:
                rt[j] += q * rs[j]
        if track:
            us, ut = U[source], U[target]
            for j in range(m):
                ut[j] += q * us[j]

    def add_col(target, q, source):  # col_t += q * col_s
        for r in A:
            if r[source]:
                r[target] += q * r[source]
        if track:
            for r in V:
                r[target] += q * r[source]
            vt, vs = Vi[target], Vi[source]
            for j in range(n):
                vs[j] -= q * vt[j]

    diag = []
    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                a = abs(A[i][j])
                if a and (best is None or a < best[0]):
                    best = (a, i, j)
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, -(A[i][t] // A[t][t]), t)
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, -(A[t][j] // A[t][t]), t)
            cand = [(abs(A[i][t]), i, t) for i in range(t + 1, m) if A[i][t]]
            cand += [(abs(A[t][j]), t, j) for j in range(t + 1, n) if A[t][j]]
            if cand:
                _, i, j = min(cand)
                if j == t:
                    swap_rows(t, i)
                else:
                    swap_cols(t, j)
                continue
            p = A[t][t]
            bad = next((i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p), None)
            if bad is None:
                break
            add_row(t, 1, bad)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            if track:
                U[t] = [-x for x in U[t]]
        diag.append(A[t][t])
        t += 1
    return diag, U, V, Vi


def determinant(A) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    M = [list(r) for r in A]
    n = len(M)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k]), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[-1][-1]


# ---------------------------------------------------------------------------
# Ranks


def rank_rational(M) -> int:
    """Rank over Q by fraction-free row elimination on sparse rows."""
    if not isinstance(M, IntegerMatrix):
        M = IntegerMatrix.from_dense(M)
    rows = [r for r in M.row_dicts() if r]
    pivots: dict[int, dict[int, int]] = {}
    rank = 0
    for row in rows:
        row = dict(row)
        while row:
            c = min(row)
            if c not in pivots:
                g = 0
                for v in row.values():
                    g = gcd(g, v)
                pivots[c] = {j: v // g for j, v in row.items()}
                rank += 1
                break
            prow = pivots[c]
            a, p = row[c], prow[c]
            new = {}
            for j, v in row.items():
                new[j] = p * v
            for j, v in prow.items():
                w = new.get(j, 0) - a * v
                if w:
                    new[j] = w
                else:
                    new.pop(j, None)
            g = 0
            for v in new.values():
                g = gcd(g, v)
            row = {j: v // g for j, v in new.items()} if g > 1 else new
    return rank


def rank_mod_p(M, p: int) -> int:
    """Rank over the field Z_p."""
    if not isprime(p):
        raise ValueError(f"{p} is not prime")
    if not isinstance(M, IntegerMatrix):
        M = IntegerMatrix.from_dense(M)
    pivots: dict[int, dict[int, int]] = {}
    rank = 0
    for raw in M.row_dicts():
        row = {j: v % p for j, v in raw.items() if v % p}
        while row:
            c = min(row)
            if c not in pivots:
                inv = pow(row[c], -1, p)
                pivots[c] = {j: v * inv % p for j, v in row.items()}
                rank += 1
                break
            a = row[c]
            for j, v in pivots[c].items():
                w = (row.get(j, 0) - a * v) % p
                if w:
                    row[j] = w
                else:
                    row.pop(j, None)
    return rank
