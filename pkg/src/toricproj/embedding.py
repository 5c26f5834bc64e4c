"""Monomial embeddings ``X(S)`` in projective space.

``X(S)`` is the closure of the orbit of ``[1 : ... : 1 : 0 : ... : 0]`` under
``t -> diag(t^m_0, ..., t^m_r, 1, ..., 1)``.  In fixed coordinates it is cut out
by the lattice ideal of the integer relations among the homogenized exponent
vectors ``(1, m_i)``, so equality of two such subvarieties reduces to equality
of saturated kernels.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .configuration import (
    AffineMap,
    EquivalenceVerdict,
    PointConfiguration,
    PreconditionError,
    affinely_equivalent,
    dimension,
    reduce,
)
from .linalg import IntegerMatrix, LatticeBasis, kernel_basis, lattice_equal, rational_rank

__all__ = [
    "MonomialEmbedding",
    "RelationLattice",
    "ProjectivePoint",
    "relation_lattice",
    "orbit_point",
    "span_dimension",
    "variety_dimension",
    "same_subvariety",
    "projectively_equivalent",
    "sample_parameters",
]


@dataclass(frozen=True, init=False)
class MonomialEmbedding:
    """An enumerated point set ``m_0, ..., m_r`` in ``Z^d`` placed in ``P^N``.

    The enumeration order is kept as given: it fixes which coordinate of
    ``P^N`` carries which character.
    """

    points: tuple[tuple[int, ...], ...]
    N: int
    dim: int

    def __init__(self, points: Iterable[Sequence[int]], N: int | None = None):
        pts = tuple(tuple(int(x) for x in p) for p in points)
        if not pts:
            raise ValueError("an embedding needs at least one point")
        if len(set(pts)) != len(pts):
            raise ValueError("points of an embedding must be distinct")
        d = len(pts[0])
        if any(len(p) != d for p in pts):
            raise ValueError("points have different lengths")
        if N is None:
            N = len(pts) - 1
        if len(pts) > N + 1:
            raise PreconditionError(f"{len(pts)} points do not fit into P^{N}")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "N", N)
        object.__setattr__(self, "dim", d)

    @classmethod
    def from_configuration(cls, S: PointConfiguration, N: int | None = None) -> MonomialEmbedding:
        return cls(S.points, N)

    @property
    def r(self) -> int:
        return len(self.points) - 1

    @property
    def config(self) -> PointConfiguration:
        return PointConfiguration(self.points, dim=self.dim)

    def transported(self, phi: AffineMap) -> MonomialEmbedding:
        """``phi(m_0), ..., phi(m_r)`` in the same coordinate slots."""
        return MonomialEmbedding([phi(m) for m in self.points], self.N)

    def homogenized_matrix(self) -> IntegerMatrix:
        """``(d+1) x (r+1)`` matrix with columns ``(1, m_i)``."""
        rows = [[1] * len(self.points)]
        rows += [[p[k] for p in self.points] for k in range(self.dim)]
        return IntegerMatrix.from_rows(rows, len(self.points))


@dataclass(frozen=True)
class RelationLattice:
    lattice: LatticeBasis
    r: int

    @property
    def rank(self) -> int:
        return self.lattice.rank

    def vectors(self) -> list[tuple[int, ...]]:
        return self.lattice.vectors()


@dataclass(frozen=True, init=False)
class ProjectivePoint:
    """Homogeneous coordinates scaled so the first nonzero one is 1."""

    coords: tuple[Fraction, ...]

    def __init__(self, coords: Iterable):
        c = [Fraction(x) for x in coords]
        lead = next((x for x in c if x != 0), None)
        if lead is None:
            raise ValueError("all homogeneous coordinates are zero")
        object.__setattr__(self, "coords", tuple(x / lead for x in c))

    def __len__(self):
        return len(self.coords)


def relation_lattice(E: MonomialEmbedding) -> RelationLattice:
    return RelationLattice(kernel_basis(E.homogenized_matrix()), E.r)


def _monomial(t: Sequence[Fraction], m: Sequence[int]) -> Fraction:
    out = Fraction(1)
    for ti, mi in zip(t, m):
        out *= ti ** mi
    return out


def orbit_point(E: MonomialEmbedding, t: Sequence) -> ProjectivePoint:
    t = [Fraction(x) for x in t]
    if len(t) != E.dim:
        raise ValueError(f"torus parameter has length {len(t)}, expected {E.dim}")
    if any(x == 0 for x in t):
        raise ValueError("torus parameters must be nonzero")
    vals = [_monomial(t, m) for m in E.points]
    return ProjectivePoint(vals + [Fraction(0)] * (E.N - E.r))


def _primes():
    found = []
    n = 2
    while True:
        if all(n % p for p in found if p * p <= n):
            found.append(n)
            yield n
        n += 1


def sample_parameters(count: int, d: int) -> list[tuple[int, ...]]:
    """``count`` torus parameters built from consecutive primes, all distinct."""
    gen = _primes()
    return [tuple(next(gen) for _ in range(d)) for _ in range(count)]


def span_dimension(E: MonomialEmbedding) -> int:
    """Dimension of the linear span of ``X(S)``, by exact rank of sampled orbit points.

    Starts with ``#S`` samples; if that happens to be rank deficient more
    samples are drawn, up to ``4 #S``.
    """
    n = len(E.points)
    count = n
    while True:
        samples = sample_parameters(count, E.dim)
        rows = [orbit_point(E, t).coords[: n] for t in samples]
        rank = rational_rank(rows)
        if rank == n or count >= 4 * n:
            return rank - 1
        count += n


def variety_dimension(E: MonomialEmbedding) -> int:
    return dimension(E.config)


def same_subvariety(E: MonomialEmbedding, F: MonomialEmbedding) -> bool:
    """Equality of ``X(S)`` and ``X(S')`` inside the same ``P^N``."""
    if E.N != F.N or E.r != F.r:
        raise PreconditionError(
            f"embeddings live in different coordinate systems: (N={E.N}, r={E.r}) vs (N={F.N}, r={F.r})"
        )
    return lattice_equal(relation_lattice(E).lattice, relation_lattice(F).lattice)


def projectively_equivalent(
    S: PointConfiguration, T: PointConfiguration, N: int | None = None
) -> EquivalenceVerdict:
    """Decide projective equivalence of ``X(S)`` and ``X(T)`` in ``P^N``.

    Both sets are reduced to affinely generating form; the varieties are
    equivalent exactly when the reduced sets are affinely equivalent.  The
    witness, if any, acts on the reduced configurations.
    """
    if N is None:
        N = max(len(S), len(T)) - 1
    for name, X in (("first", S), ("second", T)):
        if len(X) > N + 1:
            raise PreconditionError(f"{name} configuration has {len(X)} points, more than N+1 = {N + 1}")
    if len(S) != len(T):
        return EquivalenceVerdict(False, obstruction=f"cardinality {len(S)} vs {len(T)}")
    rs, rt = reduce(S), reduce(T)
    if rs.e != rt.e:
        return EquivalenceVerdict(False, obstruction=f"reduced dimension {rs.e} vs {rt.e}")
    return affinely_equivalent(rs.config, rt.config)
