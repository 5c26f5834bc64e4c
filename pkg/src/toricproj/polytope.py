"""Lattice polytopes, their H-representation and lattice point enumeration.

A polytope is stored through the coordinates of its generators with respect
to a basis of the ambient lattice ``M``.  With ``M = Z^d`` these are the usual
coordinates; for a relative lattice such as ``Z^d + Z(1/2, ..., 1/2)`` all
computations still run on integer vectors.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .configuration import PointConfiguration, is_affinely_generating
from .linalg import IntegerMatrix, hnf, kernel_basis, rational_inverse, rational_rank

__all__ = [
    "AmbientLattice",
    "HalfspaceRep",
    "LatticePolytope",
    "halfspaces",
    "lattice_points",
    "relative_points",
    "is_solid",
    "is_Z_solid",
]

QVector = tuple[Fraction, ...]


def _lcm_denominator(xs: Iterable[Fraction]) -> int:
    out = 1
    for x in xs:
        out = out * x.denominator // math.gcd(out, x.denominator)
    return out


@dataclass(frozen=True)
class AmbientLattice:
    """Full-rank lattice ``M`` in ``Q^d`` given by basis rows."""

    basis: tuple[QVector, ...]

    def __post_init__(self):
        rows = tuple(tuple(Fraction(x) for x in r) for r in self.basis)
        object.__setattr__(self, "basis", rows)
        d = len(rows)
        if any(len(r) != d for r in rows):
            raise ValueError("lattice basis must be a square matrix")
        if rational_rank(rows) != d:
            raise ValueError("lattice basis is singular")

    @classmethod
    def standard(cls, d: int) -> AmbientLattice:
        return cls(tuple(tuple(Fraction(int(i == j)) for j in range(d)) for i in range(d)))

    @classmethod
    def from_generators(cls, vectors: Sequence[Sequence]) -> AmbientLattice:
        """Lattice generated by arbitrary rational vectors (must span ``Q^d``)."""
        vecs = [[Fraction(x) for x in v] for v in vectors]
        den = _lcm_denominator(x for v in vecs for x in v)
        scaled = [[int(x * den) for x in v] for v in vecs]
        H = hnf(scaled).H
        rows = [r for r in H.rows() if any(r)]
        return cls(tuple(tuple(Fraction(x, den) for x in r) for r in rows))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def _inverse(self):
        return rational_inverse(self.basis)

    def is_standard(self) -> bool:
        return self == AmbientLattice.standard(self.dim)

    def to_coords(self, x: Sequence) -> QVector:
        """Solve ``c B = x`` for the lattice coordinates ``c``."""
        if len(x) != self.dim:
            raise ValueError(f"vector of length {len(x)} in a rank {self.dim} lattice")
        inv = self._inverse
        return tuple(
            sum(Fraction(x[i]) * inv[i][j] for i in range(self.dim)) for j in range(self.dim)
        )

    def from_coords(self, c: Sequence[int]) -> QVector:
        return tuple(
            sum(c[i] * self.basis[i][j] for i in range(self.dim)) for j in range(self.dim)
        )

    def contains(self, x: Sequence) -> bool:
        return all(c.denominator == 1 for c in self.to_coords(x))


@dataclass(frozen=True)
class HalfspaceRep:
    """``normal . x <= offset`` for each inequality, ``normal . x == value`` for each equation.

    Coordinates are lattice coordinates; normals are primitive integer vectors.
    """

    inequalities: tuple[tuple[tuple[int, ...], int], ...]
    equations: tuple[tuple[tuple[int, ...], int], ...]

    def contains(self, x: Sequence) -> bool:
        return all(
            sum(a * b for a, b in zip(n, x)) <= c for n, c in self.inequalities
        ) and all(sum(a * b for a, b in zip(n, x)) == c for n, c in self.equations)


def _primitive(normal: Sequence[Fraction], offset: Fraction) -> tuple[tuple[int, ...], Fraction]:
    den = _lcm_denominator(list(normal))
    ints = [int(x * den) for x in normal]
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    if g == 0:
        return tuple(ints), offset
    return tuple(x // g for x in ints), offset * den / g


def _fourier_motzkin(
    Y: list[tuple[int, ...]], k: int
) -> list[tuple[tuple[int, ...], Fraction]]:
    """Facets of ``conv(Y)``, assumed full-dimensional in ``Q^k``.

    The hull is the projection of ``{(y, lam) : y = sum lam_i Y_i, sum lam_i = 1,
    lam >= 0}``.  The equalities eliminate ``k + 1`` multipliers; the rest are
    removed one at a time by Fourier-Motzkin with Chernikov's rule.
    """
    n = len(Y)
    G = [[Fraction(Y[i][r]) for i in range(n)] for r in range(k)] + [[Fraction(1)] * n]
    basic: list[int] = []
    for i in range(n):
        cols = [[G[r][j] for r in range(k + 1)] for j in basic + [i]]
        if rational_rank(cols) > len(basic):
            basic.append(i)
        if len(basic) == k + 1:
            break
    nonbasic = [i for i in range(n) if i not in basic]
    GB = [[G[r][j] for j in basic] for r in range(k + 1)]
    Binv = rational_inverse(GB)
    GN = [[G[r][j] for j in nonbasic] for r in range(k + 1)]
    BinvGN = [
        [sum(Binv[i][r] * GN[r][j] for r in range(k + 1)) for j in range(len(nonbasic))]
        for i in range(k + 1)
    ]
    # rows are (coefficients over y then lam_N, rhs, origin set)
    rows = []
    for i in range(k + 1):
        coef = [-Binv[i][c] for c in range(k)] + BinvGN[i]
        rows.append((coef, Binv[i][k], frozenset([i])))
    for j in range(len(nonbasic)):
        coef = [Fraction(0)] * (k + len(nonbasic))
        coef[k + j] = Fraction(-1)
        rows.append((coef, Fraction(0), frozenset([k + 1 + j])))

    for step, var in enumerate(reversed(range(k, k + len(nonbasic)))):
        pos = [r for r in rows if r[0][var] > 0]
        neg = [r for r in rows if r[0][var] < 0]
        new = [r for r in rows if r[0][var] == 0]
        for (cp, bp, op), (cn, bn, on) in itertools.product(pos, neg):
            origin = op | on
            if len(origin) > step + 2:
                continue
            fp, fn = -cn[var], cp[var]
            coef = [fp * a + fn * b for a, b in zip(cp, cn)]
            coef[var] = Fraction(0)
            new.append((coef, fp * bp + fn * bn, origin))
        seen = {}
        for coef, rhs, origin in new:
            key = _primitive(coef, rhs)
            if key not in seen or len(origin) < len(seen[key][2]):
                seen[key] = (coef, rhs, origin)
        rows = [v for v in seen.values() if not _trivial(v)]
        rows = [
            r for r in rows if not any(o[2] < r[2] for o in rows)
        ]

    facets = {}
    for coef, rhs, _ in rows:
        a = coef[:k]
        if not any(a):
            continue
        normal, offset = _primitive(a, rhs)
        tight = [y for y in Y if sum(p * q for p, q in zip(normal, y)) == offset]
        if len(tight) >= k and rational_rank(
            [[q - t for q, t in zip(y, tight[0])] for y in tight[1:]]
        ) == k - 1:
            facets[normal] = offset
    return sorted(facets.items())


def _trivial(row) -> bool:
    coef, rhs, _ = row
    if any(coef):
        return False
    if rhs < 0:
        raise AssertionError("inconsistent system in Fourier-Motzkin elimination")
    return True


class LatticePolytope:
    """``conv`` of finitely many points of an ambient lattice.

    ``generators`` are given in the coordinates of ``R^d``; each must lie in
    ``ambient`` (default ``Z^d``).  Use :meth:`from_lattice_coords` to pass
    lattice coordinates directly.
    """

    def __init__(self, generators: Iterable[Sequence], ambient: AmbientLattice | None = None):
        gens = [tuple(Fraction(x) for x in g) for g in generators]
        if not gens:
            raise ValueError("a polytope needs at least one generator")
        d = len(gens[0])
        if any(len(g) != d for g in gens):
            raise ValueError("generators have different lengths")
        if ambient is None:
            ambient = AmbientLattice.standard(d)
        if ambient.dim != d:
            raise ValueError(f"generators live in R^{d}, lattice has rank {ambient.dim}")
        coords = []
        for g in gens:
            c = ambient.to_coords(g)
            if any(x.denominator != 1 for x in c):
                raise ValueError(f"generator {tuple(str(x) for x in g)} is not a point of the ambient lattice")
            coords.append(tuple(int(x) for x in c))
        self.ambient = ambient
        self.coords = PointConfiguration(coords, dim=d)

    @classmethod
    def from_lattice_coords(cls, coords: Iterable[Sequence[int]], ambient: AmbientLattice | None = None):
        coords = [tuple(c) for c in coords]
        if ambient is None:
            ambient = AmbientLattice.standard(len(coords[0]))
        return cls([ambient.from_coords(c) for c in coords], ambient)

    @property
    def dim(self) -> int:
        return self.coords.dim

    def __repr__(self):
        return f"LatticePolytope({[list(p) for p in self.coords.points]!r})"

    @cached_property
    def _hull(self):
        """Affine hull data: base point, equations, hull lattice rows, pivot inverse, hull coords."""
        d = self.dim
        v0 = self.coords.base_point
        diffs = self.coords.difference_rows()
        if diffs:
            normals = kernel_basis(IntegerMatrix.from_rows(diffs, d)).vectors()
        else:
            normals = IntegerMatrix.identity(d).rows()
        if normals:
            L = kernel_basis(IntegerMatrix.from_rows(normals, d)).vectors()
        else:
            L = IntegerMatrix.identity(d).rows()
        k = len(L)
        pivots = [next(j for j, x in enumerate(r) if x) for r in L]
        LJinv = rational_inverse([[r[j] for j in pivots] for r in L]) if k else []
        Y = []
        for p in self.coords.points:
            v = [a - b for a, b in zip(p, v0)]
            y = [sum(v[pivots[i]] * LJinv[i][c] for i in range(k)) for c in range(k)]
            assert all(x.denominator == 1 for x in y)
            Y.append(tuple(int(x) for x in y))
        equations = tuple(
            (tuple(a), sum(x * y for x, y in zip(a, v0))) for a in normals
        )
        return v0, equations, L, pivots, LJinv, Y

    @property
    def hull_dimension(self) -> int:
        return len(self._hull[2])

    @cached_property
    def _facets_hull(self):
        _, _, L, _, _, Y = self._hull
        k = len(L)
        if k == 0:
            return []
        return _fourier_motzkin(Y, k)

    @cached_property
    def halfspaces(self) -> HalfspaceRep:
        v0, equations, L, pivots, LJinv, _ = self._hull
        k = len(L)
        d = self.dim
        ineqs = {}
        for a, c in self._facets_hull:
            # a . y <= c with y = (x - v0)_J LJinv
            w = [sum(LJinv[i][col] * a[col] for col in range(k)) for i in range(k)]
            normal = [Fraction(0)] * d
            for i, j in enumerate(pivots):
                normal[j] = w[i]
            offset = c + sum(x * y for x, y in zip(normal, v0))
            n_int, off = _primitive(normal, offset)
            assert off.denominator == 1
            ineqs[n_int] = int(off)
        return HalfspaceRep(tuple(sorted(ineqs.items())), tuple(sorted(equations)))

    @cached_property
    def vertices(self) -> tuple[tuple[int, ...], ...]:
        """Generators that are vertices, in lattice coordinates."""
        _, _, L, _, _, Y = self._hull
        k = len(L)
        facets = self._facets_hull
        out = []
        for p, y in zip(self.coords.points, Y):
            tight = [a for a, c in facets if sum(s * t for s, t in zip(a, y)) == c]
            if rational_rank(tight) == k:
                out.append(p)
        return tuple(out)

    @cached_property
    def lattice_points(self) -> PointConfiguration:
        """``P`` intersected with the ambient lattice, in lattice coordinates."""
        v0, _, L, _, _, Y = self._hull
        k = len(L)
        facets = self._facets_hull
        ranges = [range(min(y[i] for y in Y), max(y[i] for y in Y) + 1) for i in range(k)]
        pts = []
        for y in itertools.product(*ranges):
            if all(sum(s * t for s, t in zip(a, y)) <= c for a, c in facets):
                x = list(v0)
                for yi, row in zip(y, L):
                    if yi:
                        x = [u + yi * w for u, w in zip(x, row)]
                pts.append(tuple(x))
        return PointConfiguration(pts, dim=self.dim)

    def ambient_points(self) -> list[QVector]:
        """Lattice points in the coordinates of ``R^d``."""
        return [self.ambient.from_coords(p) for p in self.lattice_points]


def halfspaces(P: LatticePolytope) -> HalfspaceRep:
    return P.halfspaces


def lattice_points(P: LatticePolytope) -> PointConfiguration:
    return P.lattice_points


def relative_points(P: LatticePolytope) -> PointConfiguration:
    """Lattice points of ``P`` in the coordinates of its ambient lattice."""
    return P.lattice_points


def is_solid(P: LatticePolytope) -> bool:
    return P.hull_dimension == P.dim


def is_Z_solid(P: LatticePolytope) -> bool:
    return is_solid(P) and is_affinely_generating(P.lattice_points)
