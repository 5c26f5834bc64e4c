"""Random instance generators shared by the test modules."""

import itertools
import random
from fractions import Fraction

from toricproj import AffineMap, IntegerMatrix, PointConfiguration, is_affinely_generating


def random_unimodular(rng: random.Random, d: int, bound: int = 2) -> IntegerMatrix:
    while True:
        A = IntegerMatrix(d, d, tuple(rng.randint(-bound, bound) for _ in range(d * d)))
        if abs(A.det()) == 1:
            return A


def random_affine(rng: random.Random, d: int, bound: int = 2, shift: int = 5) -> AffineMap:
    return AffineMap(random_unimodular(rng, d, bound), tuple(rng.randint(-shift, shift) for _ in range(d)))


def random_config(rng, d, n_min, n_max, lo=-4, hi=4):
    n = min(rng.randint(n_min, n_max), (hi - lo + 1) ** d)
    pts = set()
    while len(pts) < n:
        pts.add(tuple(rng.randint(lo, hi) for _ in range(d)))
    return PointConfiguration(pts, dim=d)


def random_generating(rng, d, n_min, n_max, lo=-4, hi=4):
    while True:
        S = random_config(rng, d, max(n_min, d + 1), n_max, lo, hi)
        if is_affinely_generating(S):
            return S


def det_fraction(rows):
    """Laplace expansion; deliberately naive, used only as an oracle."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    if n == 1:
        return Fraction(rows[0][0])
    total = Fraction(0)
    for j in range(n):
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        total += (-1) ** j * Fraction(rows[0][j]) * det_fraction(minor)
    return total




def brute_facets(points, d):
    """All supporting hyperplanes a.x <= c through d affinely independent points.

    Normals are computed from cofactors of the difference matrix; used as an
    oracle for the Fourier-Motzkin path.
    """
    facets = set()
    pts = [tuple(p) for p in points]
    for sub in itertools.combinations(pts, d):
        base = sub[0]
        diffs = [[a - b for a, b in zip(p, base)] for p in sub[1:]]
        normal = []
        for j in range(d):
            minor = [r[:j] + r[j + 1:] for r in diffs]
            normal.append((-1) ** j * det_fraction(minor))
        if not any(normal):
            continue
        vals = [sum(a * b for a, b in zip(normal, p)) for p in pts]
        c = sum(a * b for a, b in zip(normal, base))
        if all(v <= c for v in vals):
            facets.add(_prim(normal, c))
        if all(v >= c for v in vals):
            facets.add(_prim([-x for x in normal], -c))
    return facets


def _prim(normal, c):
    from math import gcd

    ints = [int(x) for x in normal]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return tuple(x // g for x in ints), int(c) // g
