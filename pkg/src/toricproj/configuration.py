"""Finite point configurations in Z^d and their affine unimodular equivalence."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .linalg import (
    IntegerMatrix,
    LatticeBasis,
    elementary_divisors,
    rational_rank,
    snf,
)

__all__ = [
    "PreconditionError",
    "PointConfiguration",
    "AffineMap",
    "ReducedConfiguration",
    "EquivalenceVerdict",
    "difference_lattice",
    "is_affinely_generating",
    "reduce",
    "dimension",
    "apply",
    "affinely_equivalent",
    "brute_force_equivalent",
    "verify_witness",
    "invariant_obstruction",
]


class PreconditionError(ValueError):
    """Inputs violate the contract of an operation (distinct from a negative verdict)."""


Point = tuple[int, ...]


@dataclass(frozen=True, init=False)
class PointConfiguration:
    """Nonempty set of distinct lattice points, kept in lexicographic order."""

    dim: int
    points: tuple[Point, ...]

    def __init__(self, points: Iterable[Sequence[int]], dim: int | None = None):
        pts = []
        for p in points:
            q = tuple(p)
            for x in q:
                if not isinstance(x, int) or isinstance(x, bool):
                    raise TypeError(f"coordinates must be int, got {x!r}")
            pts.append(q)
        if not pts:
            raise ValueError("a point configuration needs at least one point")
        if dim is None:
            dim = len(pts[0])
        for q in pts:
            if len(q) != dim:
                raise ValueError(f"point {q} does not lie in Z^{dim}")
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "points", tuple(sorted(set(pts))))

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, p):
        return tuple(p) in set(self.points)

    @property
    def base_point(self) -> Point:
        return self.points[0]

    def difference_rows(self) -> list[Point]:
        m0 = self.points[0]
        return [tuple(a - b for a, b in zip(p, m0)) for p in self.points[1:]]

    def __repr__(self):
        return f"PointConfiguration({[list(p) for p in self.points]!r})"


@dataclass(frozen=True)
class AffineMap:
    """``m -> A m + b`` with an integer matrix ``A`` and integer vector ``b``."""

    A: IntegerMatrix
    b: Point

    def __post_init__(self):
        if self.A.nrows != len(self.b):
            raise ValueError("translation length does not match the matrix")

    @classmethod
    def identity(cls, d: int) -> AffineMap:
        return cls(IntegerMatrix.identity(d), (0,) * d)

    @classmethod
    def from_lists(cls, A: Sequence[Sequence[int]], b: Sequence[int]) -> AffineMap:
        return cls(IntegerMatrix.from_rows(A, len(b)), tuple(b))

    @property
    def source_dim(self) -> int:
        return self.A.ncols

    @property
    def target_dim(self) -> int:
        return self.A.nrows

    def is_unimodular(self) -> bool:
        return self.A.is_unimodular()

    def __call__(self, m: Sequence[int]) -> Point:
        return tuple(x + y for x, y in zip(self.A.apply(m), self.b))

    def inverse(self) -> AffineMap:
        """Inverse of a unimodular map, ``(A^-1, -A^-1 b)``."""
        if not self.is_unimodular():
            raise PreconditionError("only unimodular maps are invertible over Z")
        d = self.A.nrows
        adj, det = _adjugate(self.A)
        Ainv = IntegerMatrix(d, d, tuple(x * det for x in adj.entries))
        b = tuple(-x for x in Ainv.apply(self.b))
        return AffineMap(Ainv, b)

    def compose(self, other: AffineMap) -> AffineMap:
        """``self after other``."""
        return AffineMap(self.A @ other.A, self(other.b))


@dataclass(frozen=True)
class ReducedConfiguration:
    """``S~ = Phi(S - m)`` together with the data defining ``Phi``.

    ``iso_matrix`` is the ``e x d`` rational matrix of ``Phi``; it is
    integral on the difference lattice and maps it onto ``Z^e``.
    """

    config: PointConfiguration
    e: int
    base_point: Point
    iso_matrix: tuple[tuple[Fraction, ...], ...]

    def map_point(self, m: Sequence[int]) -> Point:
        v = [x - y for x, y in zip(m, self.base_point)]
        out = []
        for row in self.iso_matrix:
            s = sum(c * x for c, x in zip(row, v))
            if s.denominator != 1:
                raise ValueError(f"{tuple(m)} is not in the affine lattice of the configuration")
            out.append(int(s))
        return tuple(out)


@dataclass(frozen=True)
class EquivalenceVerdict:
    equivalent: bool
    witness: AffineMap | None = None
    obstruction: str | None = None

    def __bool__(self):
        return self.equivalent


def difference_lattice(S: PointConfiguration) -> LatticeBasis:
    """Lattice generated by all ``m - m'`` for ``m, m'`` in ``S``."""
    return LatticeBasis.from_generators(S.difference_rows(), S.dim)


def dimension(S: PointConfiguration) -> int:
    return difference_lattice(S).rank


def is_affinely_generating(S: PointConfiguration) -> bool:
    L = difference_lattice(S)
    return L.rank == S.dim and all(x == 1 for x in elementary_divisors(L))


def apply(phi: AffineMap, S: PointConfiguration, unimodular: bool = False) -> PointConfiguration:
    if phi.source_dim != S.dim:
        raise PreconditionError(f"map acts on Z^{phi.source_dim}, configuration lives in Z^{S.dim}")
    if unimodular and not phi.is_unimodular():
        raise PreconditionError("map is not unimodular")
    return PointConfiguration((phi(m) for m in S), dim=phi.target_dim)


def reduce(S: PointConfiguration) -> ReducedConfiguration:
    """Re-embed ``S`` so that it affinely generates ``Z^e``, ``e = dimension(S)``.

    The base point is the lexicographically smallest point.  ``Phi`` comes from
    the Smith form of the difference matrix: with ``U Dm V = diag(d_1..d_e)``,
    ``x -> (x V)_j / d_j`` for ``j < e`` maps the difference lattice onto ``Z^e``.
    Each output axis is then oriented so that its first nonzero image is positive.
    """
    m0 = S.base_point
    diffs = S.difference_rows()
    d = S.dim
    if diffs:
        dec = snf(IntegerMatrix.from_rows(diffs, d))
        divs = dec.divisors
        V = dec.V
    else:
        divs, V = [], IntegerMatrix.identity(d)
    e = len(divs)
    iso = [[Fraction(V[i, j], divs[j]) for i in range(d)] for j in range(e)]

    def image(v):
        return [sum(c * x for c, x in zip(row, v)) for row in iso]

    images = [image(v) for v in diffs]
    for j in range(e):
        first = next((im[j] for im in images if im[j] != 0), 0)
        if first < 0:
            iso[j] = [-c for c in iso[j]]
    iso_t = tuple(tuple(r) for r in iso)
    pts = [(0,) * e]
    for v in diffs:
        im = [sum(c * x for c, x in zip(row, v)) for row in iso_t]
        assert all(x.denominator == 1 for x in im)
        pts.append(tuple(int(x) for x in im))
    red = PointConfiguration(pts, dim=e)
    if len(red) != len(S) or not is_affinely_generating(red):
        raise AssertionError("reduction failed to produce an affinely generating set")
    return ReducedConfiguration(red, e, m0, iso_t)


# -- equivalence ------------------------------------------------------------


def _adjugate(A: IntegerMatrix) -> tuple[IntegerMatrix, int]:
    """Return ``(adj(A), det(A))``."""
    n = A.nrows
    if n == 0:
        return A, 1
    rows = A.rows()
    det = A.det()
    adj = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [
                [rows[r][c] for c in range(n) if c != j] for r in range(n) if r != i
            ]
            cof = IntegerMatrix.from_rows(minor, n - 1).det() if n > 1 else 1
            adj[j][i] = (-1) ** (i + j) * cof
    return IntegerMatrix.from_rows(adj, n), det


def _affine_frame(S: PointConfiguration) -> list[Point]:
    """Greedy affinely independent ``p_0, ..., p_e`` in lexicographic order."""
    p0 = S.points[0]
    frame = [p0]
    diffs: list[Point] = []
    for p in S.points[1:]:
        v = tuple(a - b for a, b in zip(p, p0))
        if rational_rank(diffs + [v]) > len(diffs):
            diffs.append(v)
            frame.append(p)
    return frame


def _invariants(S: PointConfiguration):
    L = difference_lattice(S)
    return len(S), L.rank, elementary_divisors(L)


def _fmt(divs) -> str:
    return "(" + ",".join(str(x) for x in divs) + ")"


def invariant_obstruction(S: PointConfiguration, T: PointConfiguration) -> str | None:
    """First mismatching affine invariant of ``S`` and ``T``, or ``None``."""
    n1, r1, d1 = _invariants(S)
    n2, r2, d2 = _invariants(T)
    if n1 != n2:
        return f"cardinality {n1} vs {n2}"
    if r1 != r2:
        return f"dimension {r1} vs {r2}"
    if d1 != d2:
        return f"elementary divisors {_fmt(d1)} vs {_fmt(d2)}"
    return None


def verify_witness(phi: AffineMap, S: PointConfiguration, T: PointConfiguration) -> bool:
    """True when ``phi`` is unimodular and maps ``S`` bijectively onto ``T``."""
    if phi.source_dim != S.dim or phi.target_dim != T.dim:
        return False
    return len(S) == len(T) and phi.is_unimodular() and set(phi(m) for m in S) == set(T.points)


def affinely_equivalent(S: PointConfiguration, T: PointConfiguration) -> EquivalenceVerdict:
    """Decide whether ``T = A S + b`` for some ``A`` in GL(d, Z), ``b`` in Z^d.

    Invariants (cardinality, dimension, elementary divisors of the difference
    lattice) are compared first.  If they agree, an affine frame ``p_0..p_d`` of
    ``S`` is sent to every ordered tuple of distinct points of ``T``; each
    assignment fixes a single rational candidate, accepted when it is integral,
    unimodular and maps ``S`` onto ``T``.

    Raises ``PreconditionError`` for differing ambient dimensions, and for
    configurations that do not span ``Z^d`` rationally (there the linear part is
    not determined by the points).
    """
    if S.dim != T.dim:
        raise PreconditionError(f"ambient dimensions differ: {S.dim} vs {T.dim}")
    obstruction = invariant_obstruction(S, T)
    if obstruction is not None:
        return EquivalenceVerdict(False, obstruction=obstruction)
    d = S.dim
    if dimension(S) != d:
        raise PreconditionError(
            f"configuration spans only a {dimension(S)}-dimensional affine subspace of Z^{d}; reduce it first"
        )
    frame = _affine_frame(S)
    p0 = frame[0]
    # columns of B are p_i - p_0; A = C B^{-1} = C adj(B) / det(B)
    B = IntegerMatrix.from_rows(
        [tuple(a - b for a, b in zip(p, p0)) for p in frame[1:]], d
    ).transpose()
    adjB, detB = _adjugate(B)
    adj_rows = adjB.rows()
    target = set(T.points)
    src = S.points
    for q0 in T.points:
        others = [q for q in T.points if q != q0]
        for images in itertools.permutations(others, d):
            # column i of C is images[i] - q0
            C_rows = [[images[i][k] - q0[k] for i in range(d)] for k in range(d)]
            A_rows = []
            ok = True
            for crow in C_rows:
                row = []
                for j in range(d):
                    s = sum(crow[i] * adj_rows[i][j] for i in range(d))
                    if s % detB:
                        ok = False
                        break
                    row.append(s // detB)
                if not ok:
                    break
                A_rows.append(row)
            if not ok:
                continue
            A = IntegerMatrix.from_rows(A_rows, d)
            if abs(A.det()) != 1:
                continue
            Ap0 = A.apply(p0)
            b = tuple(x - y for x, y in zip(q0, Ap0))
            phi = AffineMap(A, b)
            if all(phi(m) in target for m in src):
                return EquivalenceVerdict(True, witness=phi)
    return EquivalenceVerdict(False, obstruction="exhausted search over affine frames")


def _all_unimodular(d: int, bound: int):
    rng = range(-bound, bound + 1)
    for entries in itertools.product(rng, repeat=d * d):
        A = IntegerMatrix(d, d, tuple(entries))
        if abs(A.det()) == 1:
            yield A


def brute_force_equivalent(
    S: PointConfiguration, T: PointConfiguration, entry_bound: int = 2
) -> EquivalenceVerdict:
    """Exhaustive search over unimodular ``A`` with entries in ``[-bound, bound]``.

    Translations are fixed by aligning lexicographic minima.  A negative answer
    only means no witness exists within the bound.
    """
    if S.dim != T.dim:
        raise PreconditionError(f"ambient dimensions differ: {S.dim} vs {T.dim}")
    if len(S) != len(T):
        return EquivalenceVerdict(False, obstruction=f"cardinality {len(S)} vs {len(T)}")
    target = set(T.points)
    tmin = T.points[0]
    for A in _all_unimodular(S.dim, entry_bound):
        imgs = [A.apply(m) for m in S]
        lo = min(imgs)
        b = tuple(x - y for x, y in zip(tmin, lo))
        if all(tuple(x + y for x, y in zip(v, b)) in target for v in imgs):
            return EquivalenceVerdict(True, witness=AffineMap(A, b))
    return EquivalenceVerdict(False, obstruction=f"no witness with entries bounded by {entry_bound}")
