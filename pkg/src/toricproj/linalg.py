"""Exact integer linear algebra.

Hermite and Smith normal forms with unimodular transforms, integer kernels
and canonical lattice bases.  Everything is done with Python ints and
:class:`fractions.Fraction`; no floating point is ever involved.

Conventions: vectors are rows.  ``hnf(A)`` returns ``U`` with ``U @ A == H``,
``snf(A)`` returns ``U, D, V`` with ``U @ A @ V == D``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

__all__ = [
    "IntegerMatrix",
    "HermiteDecomposition",
    "SmithDecomposition",
    "LatticeBasis",
    "hnf",
    "snf",
    "kernel_basis",
    "lattice_equal",
    "elementary_divisors",
    "rational_rank",
    "rational_kernel",
    "rational_inverse",
]


@dataclass(frozen=True)
class IntegerMatrix:
    """Dense immutable matrix of Python ints, stored row-major."""

    nrows: int
    ncols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.nrows < 0 or self.ncols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        if len(self.entries) != self.nrows * self.ncols:
            raise ValueError(
                f"expected {self.nrows * self.ncols} entries, got {len(self.entries)}"
            )
        for x in self.entries:
            if not isinstance(x, int) or isinstance(x, bool):
                raise TypeError(f"matrix entries must be int, got {type(x).__name__}")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], ncols: int | None = None) -> IntegerMatrix:
        rows = [tuple(int(x) for x in r) for r in rows]
        if ncols is None:
            if not rows:
                raise ValueError("ncols is required for a matrix without rows")
            ncols = len(rows[0])
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged rows")
        return cls(len(rows), ncols, tuple(x for r in rows for x in r))

    @classmethod
    def identity(cls, n: int) -> IntegerMatrix:
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> IntegerMatrix:
        return cls(nrows, ncols, (0,) * (nrows * ncols))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.ncols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.ncols:(i + 1) * self.ncols]

    def rows(self) -> list[tuple[int, ...]]:
        return [self.row(i) for i in range(self.nrows)]

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows()]

    def transpose(self) -> IntegerMatrix:
        return IntegerMatrix(
            self.ncols,
            self.nrows,
            tuple(self[i, j] for j in range(self.ncols) for i in range(self.nrows)),
        )

    @property
    def T(self) -> IntegerMatrix:
        return self.transpose()

    def __matmul__(self, other: IntegerMatrix) -> IntegerMatrix:
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = other.transpose().rows()
        out = []
        for r in self.rows():
            for c in cols:
                out.append(sum(a * b for a, b in zip(r, c)))
        return IntegerMatrix(self.nrows, other.ncols, tuple(out))

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        """Return ``self @ v`` for a column vector ``v``."""
        if len(v) != self.ncols:
            raise ValueError("dimension mismatch")
        return tuple(sum(a * b for a, b in zip(r, v)) for r in self.rows())

    def det(self) -> int:
        """Determinant by fraction-free (Bareiss) elimination."""
        if self.nrows != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        return _bareiss_det([list(r) for r in self.rows()])

    def is_unimodular(self) -> bool:
        return self.nrows == self.ncols and abs(self.det()) == 1

    def is_zero(self) -> bool:
        return not any(self.entries)

    def __repr__(self):
        return f"IntegerMatrix({self.tolist()!r})" if self.nrows else f"IntegerMatrix(0x{self.ncols})"


def _bareiss_det(m: list[list[int]]) -> int:
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


@dataclass(frozen=True)
class HermiteDecomposition:
    H: IntegerMatrix
    U: IntegerMatrix

    @property
    def rank(self) -> int:
        return sum(1 for r in self.H.rows() if any(r))

    @property
    def pivots(self) -> list[int]:
        out = []
        for r in self.H.rows():
            for j, x in enumerate(r):
                if x:
                    out.append(j)
                    break
        return out


@dataclass(frozen=True)
class SmithDecomposition:
    U: IntegerMatrix
    D: IntegerMatrix
    V: IntegerMatrix

    @property
    def diagonal(self) -> list[int]:
        return [self.D[i, i] for i in range(min(self.D.shape))]

    @property
    def rank(self) -> int:
        return sum(1 for x in self.diagonal if x)

    @property
    def divisors(self) -> list[int]:
        """Nonzero diagonal entries, i.e. the elementary divisors."""
        return [x for x in self.diagonal if x]


def _identity_rows(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _as_matrix(A) -> IntegerMatrix:
    if isinstance(A, IntegerMatrix):
        return A
    return IntegerMatrix.from_rows(A)


def hnf(A: IntegerMatrix | Sequence[Sequence[int]]) -> HermiteDecomposition:
    """Row-style Hermite normal form.

    Pivots are positive, entries above a pivot lie in ``[0, pivot)`` and zero
    rows come last.  The pivot row of each column is chosen as the smallest
    nonzero entry in absolute value, which keeps the intermediate entries small.
    """
    A = _as_matrix(A)
    m, n = A.shape
    H = [list(r) for r in A.rows()]
    U = _identity_rows(m)
    r = 0
    for j in range(n):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if H[i][j] != 0]
            if not nz:
                break
            p = min(nz, key=lambda i: (abs(H[i][j]), i))
            if p != r:
                H[r], H[p] = H[p], H[r]
                U[r], U[p] = U[p], U[r]
            done = True
            for i in range(r + 1, m):
                if H[i][j]:
                    q = H[i][j] // H[r][j]
                    H[i] = [a - q * b for a, b in zip(H[i], H[r])]
                    U[i] = [a - q * b for a, b in zip(U[i], U[r])]
                    if H[i][j]:
                        done = False
            if done:
                break
        if H[r][j] == 0:
            continue
        if H[r][j] < 0:
            H[r] = [-a for a in H[r]]
            U[r] = [-a for a in U[r]]
        piv = H[r][j]
        for i in range(r):
            q = H[i][j] // piv
            if q:
                H[i] = [a - q * b for a, b in zip(H[i], H[r])]
                U[i] = [a - q * b for a, b in zip(U[i], U[r])]
        r += 1
    return HermiteDecomposition(IntegerMatrix.from_rows(H, n), IntegerMatrix.from_rows(U, m))


def snf(A: IntegerMatrix | Sequence[Sequence[int]]) -> SmithDecomposition:
    """Smith normal form ``U @ A @ V == D`` with ``d_1 | d_2 | ...``."""
    A = _as_matrix(A)
    m, n = A.shape
    D = [list(r) for r in A.rows()]
    U = _identity_rows(m)
    Vt = _identity_rows(n)  # V stored transposed so column ops are row ops

    def swap_rows(i, k):
        D[i], D[k] = D[k], D[i]
        U[i], U[k] = U[k], U[i]

    def swap_cols(j, k):
        for row in D:
            row[j], row[k] = row[k], row[j]
        Vt[j], Vt[k] = Vt[k], Vt[j]

    def add_row(dst, src, q):  # row_dst -= q * row_src
        D[dst] = [a - q * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a - q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):  # col_dst -= q * col_src
        for row in D:
            row[dst] -= q * row[src]
        Vt[dst] = [a - q * b for a, b in zip(Vt[dst], Vt[src])]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    x = D[i][j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
            if best is None:
                break
            _, i, j = best
            if i != t:
                swap_rows(t, i)
            if j != t:
                swap_cols(t, j)
            p = D[t][t]
            clean = True
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, D[i][t] // p)
                    if D[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, D[t][j] // p)
                    if D[t][j]:
                        clean = False
            if not clean:
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % p),
                None,
            )
            if bad is None:
                break
            # pull the offending row up; the next pass produces a smaller pivot
            add_row(t, bad, -1)
        if t < m and t < n and D[t][t] < 0:
            D[t] = [-a for a in D[t]]
            U[t] = [-a for a in U[t]]
    V = IntegerMatrix.from_rows(Vt, n).transpose()
    return SmithDecomposition(
        IntegerMatrix.from_rows(U, m), IntegerMatrix.from_rows(D, n), V
    )


@dataclass(frozen=True)
class LatticeBasis:
    """A sublattice of ``Z^n`` stored by the nonzero rows of its Hermite form.

    Two instances compare equal exactly when they describe the same lattice.
    """

    dim: int
    basis: IntegerMatrix = field(compare=True)

    @classmethod
    def from_generators(cls, rows: Iterable[Sequence[int]], dim: int) -> LatticeBasis:
        rows = [tuple(r) for r in rows]
        for r in rows:
            if len(r) != dim:
                raise ValueError(f"generator {r} does not lie in Z^{dim}")
        if not rows:
            return cls(dim, IntegerMatrix.zeros(0, dim))
        H = hnf(IntegerMatrix.from_rows(rows, dim)).H
        return cls(dim, IntegerMatrix.from_rows([r for r in H.rows() if any(r)], dim))

    @classmethod
    def full(cls, dim: int) -> LatticeBasis:
        return cls(dim, IntegerMatrix.identity(dim))

    @property
    def rank(self) -> int:
        return self.basis.nrows

    def vectors(self) -> list[tuple[int, ...]]:
        return self.basis.rows()

    def contains(self, v: Sequence[int]) -> bool:
        """Membership test by reduction against the Hermite rows."""
        if len(v) != self.dim:
            raise ValueError("dimension mismatch")
        w = list(v)
        for r in self.vectors():
            j = next(k for k, x in enumerate(r) if x)
            if w[j] % r[j]:
                return False
            q = w[j] // r[j]
            w = [a - q * b for a, b in zip(w, r)]
        return not any(w)

    def transform(self, A: IntegerMatrix) -> LatticeBasis:
        """Image ``{A x : x in L}`` under a linear map given in column convention."""
        return LatticeBasis.from_generators([A.apply(v) for v in self.vectors()], A.nrows)

    def is_saturated(self) -> bool:
        return all(d == 1 for d in snf(self.basis).divisors)


def kernel_basis(A: IntegerMatrix | Sequence[Sequence[int]]) -> LatticeBasis:
    """Basis of ``{u in Z^cols : A u = 0}``.

    The rows of ``U`` with ``U @ A.T == H`` sitting next to zero rows of ``H``
    span exactly the integer kernel, so the result is saturated.
    """
    A = _as_matrix(A)
    dec = hnf(A.transpose())
    rank = dec.rank
    return LatticeBasis.from_generators(dec.U.rows()[rank:], A.ncols)


def lattice_equal(L1: LatticeBasis, L2: LatticeBasis) -> bool:
    if L1.dim != L2.dim:
        raise ValueError(f"ambient dimension mismatch: {L1.dim} vs {L2.dim}")
    return L1.basis == L2.basis


def elementary_divisors(L: LatticeBasis, ambient_rank: int | None = None) -> list[int]:
    """Nonzero Smith invariants of the basis matrix of ``L``.

    The lattice is all of ``Z^n`` exactly when this is ``[1] * n``.
    """
    if ambient_rank is not None and ambient_rank != L.dim:
        raise ValueError(f"lattice lives in Z^{L.dim}, not Z^{ambient_rank}")
    if L.rank == 0:
        return []
    return snf(L.basis).divisors


# -- rational helpers -------------------------------------------------------


def _rref(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    ncols = len(m[0]) if m else 0
    for j in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][j] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][j]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][j] != 0:
                f = m[i][j]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(j)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rational_rank(rows: Sequence[Sequence]) -> int:
    rows = [[Fraction(x) for x in r] for r in rows]
    if not rows:
        return 0
    return len(_rref(rows)[1])


def rational_kernel(rows: Sequence[Sequence], ncols: int) -> list[list[Fraction]]:
    """A basis of the rational right kernel, one vector per free column."""
    rows = [[Fraction(x) for x in r] for r in rows]
    if not rows:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    R, pivots = _rref(rows)
    free = [j for j in range(ncols) if j not in pivots]
    out = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -R[i][f]
        out.append(v)
    return out


def rational_inverse(rows: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(rows)
    aug = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(rows)]
    R, pivots = _rref(aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ValueError("matrix is singular")
    return [r[n:] for r in R]
