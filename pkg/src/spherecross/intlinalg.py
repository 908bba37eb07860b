"""Exact linear algebra over the integers and the rationals.

Everything in this module is computed with arbitrary-precision Python ints
(or `fractions.Fraction` where a field is needed). No floating point, no
modular shortcuts, no sparse formats: matrices in this project are tiny and
correctness of every entry is the whole point.

Two independent routes to the same answers are kept deliberately separate:
Smith normal form (`smith_normal_form`) and rational Gaussian elimination
(`rational_rank`). Tests cross-check one against the other; do not merge
them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence


@dataclass(frozen=True)
class IntMatrix:
    """Dense integer matrix, row-major, immutable.

    Entries are plain Python ints so intermediate results can grow without
    overflow. Shape may be degenerate (0 rows and/or 0 columns); empty
    matrices show up naturally as maps to or from the zero group.
    """

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix shape must be non-negative")
        ents = tuple(int(e) for e in self.entries)
        if len(ents) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries for a "
                f"{self.rows}x{self.cols} matrix, got {len(ents)}"
            )
        object.__setattr__(self, "entries", ents)

    @classmethod
    def from_rows(cls, rows_data: Sequence[Sequence[int]]) -> "IntMatrix":
        rows_data = [list(r) for r in rows_data]
        nrows = len(rows_data)
        ncols = len(rows_data[0]) if rows_data else 0
        if any(len(r) != ncols for r in rows_data):
            raise ValueError("ragged rows")
        flat = tuple(int(e) for row in rows_data for e in row)
        return cls(nrows, ncols, flat)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def diagonal(cls, diag: Iterable[int], rows: int | None = None,
                 cols: int | None = None) -> "IntMatrix":
        diag = [int(d) for d in diag]
        n = len(diag)
        rows = n if rows is None else rows
        cols = n if cols is None else cols
        if rows < n or cols < n:
            raise ValueError("diagonal longer than the requested shape")
        ents = [0] * (rows * cols)
        for i, d in enumerate(diag):
            ents[i * cols + i] = d
        return cls(rows, cols, tuple(ents))

    def entry(self, i: int, j: int) -> int:
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"({i}, {j}) out of range for {self.rows}x{self.cols}")
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_lists(self) -> list:
        return [list(self.row(i)) for i in range(self.rows)]

    def diagonal_entries(self) -> tuple:
        return tuple(self.entry(i, i) for i in range(min(self.rows, self.cols)))

    def transpose(self) -> "IntMatrix":
        ents = tuple(self.entry(i, j) for j in range(self.cols) for i in range(self.rows))
        return IntMatrix(self.cols, self.rows, ents)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        a, b = self.to_lists(), other.to_lists()
        ents = []
        for i in range(self.rows):
            ai = a[i]
            for j in range(other.cols):
                ents.append(sum(ai[k] * b[k][j] for k in range(self.cols)))
        return IntMatrix(self.rows, other.cols, tuple(ents))

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        self._require_same_shape(other)
        return IntMatrix(self.rows, self.cols,
                         tuple(x + y for x, y in zip(self.entries, other.entries)))

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        self._require_same_shape(other)
        return IntMatrix(self.rows, self.cols,
                         tuple(x - y for x, y in zip(self.entries, other.entries)))

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, tuple(-x for x in self.entries))

    def _require_same_shape(self, other: "IntMatrix") -> None:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError(
                f"shape mismatch: {self.rows}x{self.cols} vs {other.rows}x{other.cols}"
            )

    def __str__(self):
        if not self.entries:
            return f"<empty {self.rows}x{self.cols}>"
        width = max(len(str(e)) for e in self.entries)
        return "\n".join(
            " ".join(str(e).rjust(width) for e in self.row(i)) for i in range(self.rows)
        )


@dataclass(frozen=True)
class SnfDecomposition:
    """Smith normal form `u @ m @ v == d` with unimodular u, v.

    The diagonal of `d` is non-negative, zeros come last, and each nonzero
    entry divides the next.
    """

    u: IntMatrix
    d: IntMatrix
    v: IntMatrix

    @property
    def invariant_factors(self) -> tuple:
        return self.d.diagonal_entries()

    @property
    def rank(self) -> int:
        return sum(1 for x in self.invariant_factors if x != 0)


def _xgcd(a: int, b: int) -> tuple:
    """Return (g, x, y) with x*a + y*b == g == gcd(a, b) >= 0."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def smith_normal_form(m: IntMatrix) -> SnfDecomposition:
    """Diagonalize `m` by unimodular row and column operations.

    Pivoting always picks a smallest-magnitude nonzero entry, which keeps
    coefficient growth tame without giving up exactness. Every operation is
    mirrored on the transform matrices, so `u @ m @ v == d` holds exactly.
    """
    nr, nc = m.rows, m.cols
    a = m.to_lists()
    u = IntMatrix.identity(nr).to_lists()
    v = IntMatrix.identity(nc).to_lists()

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for mat in (a, v):
            for row in mat:
                row[i], row[j] = row[j], row[i]

    def row_add(i, j, k):
        # a[i] += k * a[j]
        a[i] = [p + k * q for p, q in zip(a[i], a[j])]
        u[i] = [p + k * q for p, q in zip(u[i], u[j])]

    def col_add(i, j, k):
        # col i += k * col j
        for mat in (a, v):
            for row in mat:
                row[i] += k * row[j]

    def row_combine(i, j, x, y, z, w):
        # rows (i, j) <- (x ri + y rj, z ri + w rj); caller ensures xw - yz = +-1
        for mat in (a, u):
            ri, rj = mat[i], mat[j]
            mat[i] = [x * p + y * q for p, q in zip(ri, rj)]
            mat[j] = [z * p + w * q for p, q in zip(ri, rj)]

    def col_combine(i, j, x, y, z, w):
        for mat in (a, v):
            for row in mat:
                p, q = row[i], row[j]
                row[i] = x * p + y * q
                row[j] = z * p + w * q

    def negate_row(i):
        a[i] = [-p for p in a[i]]
        u[i] = [-p for p in u[i]]

    for t in range(min(nr, nc)):
        # smallest-magnitude nonzero pivot in the trailing block
        pivot = None
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                e = abs(a[i][j])
                if e and (best is None or e < best):
                    best, pivot = e, (i, j)
        if pivot is None:
            break
        if pivot[0] != t:
            swap_rows(pivot[0], t)
        if pivot[1] != t:
            swap_cols(pivot[1], t)

        while True:
            if any(a[i][t] for i in range(t + 1, nr)):
                for i in range(t + 1, nr):
                    q = a[i][t]
                    if q == 0:
                        continue
                    p = a[t][t]
                    if q % p == 0:
                        row_add(i, t, -(q // p))
                    else:
                        g, x, y = _xgcd(p, q)
                        row_combine(t, i, x, y, -(q // g), p // g)
                continue
            if any(a[t][j] for j in range(t + 1, nc)):
                for j in range(t + 1, nc):
                    q = a[t][j]
                    if q == 0:
                        continue
                    p = a[t][t]
                    if q % p == 0:
                        col_add(j, t, -(q // p))
                    else:
                        g, x, y = _xgcd(p, q)
                        col_combine(t, j, x, y, -(q // g), p // g)
                continue
            # block is clean; force divisibility of everything below-right
            d = a[t][t]
            dirty = False
            for i in range(t + 1, nr):
                if any(e % d for e in a[i][t + 1:]):
                    row_add(t, i, 1)
                    dirty = True
                    break
            if not dirty:
                break

    for t in range(min(nr, nc)):
        if a[t][t] < 0:
            negate_row(t)

    return SnfDecomposition(
        u=IntMatrix.from_rows(u) if nr else IntMatrix.zeros(0, 0),
        d=IntMatrix(nr, nc, tuple(e for row in a for e in row)),
        v=IntMatrix.from_rows(v) if nc else IntMatrix.zeros(0, 0),
    )


def determinant(m: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if not m.is_square():
        raise ValueError("determinant needs a square matrix")
    n = m.rows
    if n == 0:
        return 1
    a = m.to_lists()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                # Bareiss update; the division is exact
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def rank(m: IntMatrix) -> int:
    return smith_normal_form(m).rank


def kernel_rank(m: IntMatrix) -> int:
    """Rank of the kernel of m: Z^cols -> Z^rows (always a free group)."""
    return m.cols - rank(m)


def rational_rank(m: IntMatrix) -> int:
    """Rank over Q by Gaussian elimination with `Fraction` arithmetic.

    Kept independent of `smith_normal_form` on purpose: the two are
    cross-checked in the test suite.
    """
    a = [[Fraction(e) for e in m.row(i)] for i in range(m.rows)]
    r = 0
    for c in range(m.cols):
        pivot_row = next((i for i in range(r, m.rows) if a[i][c]), None)
        if pivot_row is None:
            continue
        a[r], a[pivot_row] = a[pivot_row], a[r]
        pv = a[r][c]
        for i in range(r + 1, m.rows):
            if a[i][c]:
                f = a[i][c] / pv
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == m.rows:
            break
    return r


def field_ker_coker_dims(m: IntMatrix) -> tuple:
    """(dim ker, dim coker) of m as a map of Q-vector spaces."""
    r = rational_rank(m)
    return m.cols - r, m.rows - r


@dataclass(frozen=True)
class AbelianGroup:
    """Finitely generated abelian group in invariant-factor form.

    `torsion` is the chain (d_1, ..., d_k) with 2 <= d_1 | d_2 | ... | d_k;
    the group is Z^free_rank + Z/d_1 + ... + Z/d_k. Two groups are
    isomorphic iff the dataclasses compare equal, which is what makes the
    verdict logic downstream a plain `==`.
    """

    free_rank: int = 0
    torsion: tuple = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("free rank must be non-negative")
        tor = tuple(int(d) for d in self.torsion)
        for d in tor:
            if d < 2:
                raise ValueError(f"torsion coefficient {d} < 2; drop trivial factors")
        for x, y in zip(tor, tor[1:]):
            if y % x:
                raise ValueError(f"torsion chain violates divisibility: {x} does not divide {y}")
        object.__setattr__(self, "torsion", tor)

    @classmethod
    def free(cls, n: int) -> "AbelianGroup":
        return cls(free_rank=n)

    @classmethod
    def trivial(cls) -> "AbelianGroup":
        return cls()

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    @property
    def is_free(self) -> bool:
        return not self.torsion

    def __str__(self):
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"


def cokernel(m: IntMatrix) -> AbelianGroup:
    """Z^rows / im(m), read off the invariant factors of m."""
    factors = smith_normal_form(m).invariant_factors
    nonzero = [d for d in factors if d]
    return AbelianGroup(
        free_rank=m.rows - len(nonzero),
        torsion=tuple(d for d in nonzero if d > 1),
    )


def direct_sum(*groups: AbelianGroup) -> AbelianGroup:
    """Direct sum, renormalized to invariant-factor form.

    Merging two torsion chains is itself an SNF computation (of the diagonal
    relation matrix), which sidesteps any need for integer factorization.
    """
    free = sum(g.free_rank for g in groups)
    tor = [d for g in groups for d in g.torsion]
    if not tor:
        return AbelianGroup(free_rank=free)
    factors = smith_normal_form(IntMatrix.diagonal(tor)).invariant_factors
    return AbelianGroup(free_rank=free, torsion=tuple(d for d in factors if d > 1))


def block_diagonal(blocks: Sequence[IntMatrix]) -> IntMatrix:
    """Stack square or rectangular blocks along the diagonal."""
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    ents = [[0] * cols for _ in range(rows)]
    r0 = c0 = 0
    for b in blocks:
        for i in range(b.rows):
            for j in range(b.cols):
                ents[r0 + i][c0 + j] = b.entry(i, j)
        r0 += b.rows
        c0 += b.cols
    return IntMatrix(rows, cols, tuple(e for row in ents for e in row))


def invariant_factors_by_minors(m: IntMatrix) -> tuple:
    """Invariant factors via determinant divisors (gcd of k x k minors).

    Exponential in the matrix size, so only usable on small matrices; it
    exists as an oracle against `smith_normal_form`, not as a user-facing
    routine.
    """
    from itertools import combinations

    k_max = min(m.rows, m.cols)
    a = m.to_lists()
    divisors = [1]  # D_0 = 1
    for k in range(1, k_max + 1):
        g = 0
        for rows_sel in combinations(range(m.rows), k):
            for cols_sel in combinations(range(m.cols), k):
                sub = IntMatrix.from_rows(
                    [[a[i][j] for j in cols_sel] for i in rows_sel]
                )
                g = gcd(g, determinant(sub))
                if g == 1:
                    break
            if g == 1:
                break
        divisors.append(g)
    factors = []
    for k in range(1, k_max + 1):
        dk, dk1 = divisors[k], divisors[k - 1]
        if dk == 0:
            factors.append(0)
        else:
            factors.append(dk // dk1)
    return tuple(factors)
