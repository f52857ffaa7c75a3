"""Brute-force and geometric cross-checks.

Each routine here reaches its answer by a route that shares no code with the
function it checks: enumeration, geometry or an exhaustive normal-form search.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cmp_to_key
from itertools import combinations, permutations, product
from math import gcd, prod

from .errors import ResourceLimit
from .exactlin import Matrix, as_matrix, det_columns, valuation, vector_volume
from .frieze import FriezeSequence, cc_frieze, enumerate_triangulations, triangle_admissible


# --- triangle labels -----------------------------------------------------


@dataclass
class TriangleSweep:
    n_max: int
    label_max: int
    realized: set = field(default_factory=set)
    accepted: set = field(default_factory=set)

    @property
    def realized_but_rejected(self):
        return sorted(self.realized - self.accepted)

    def unrealized(self, small: int = 6):
        """Accepted triples missing from the sweep, split at ``max <= small``."""
        missing = self.accepted - self.realized
        return (
            sorted(t for t in missing if max(t) <= small),
            sorted(t for t in missing if max(t) > small),
        )

    def to_json(self, small: int = 6):
        low, high = self.unrealized(small)
        return {
            "n_max": self.n_max,
            "label_max": self.label_max,
            "realized": len(self.realized),
            "accepted": len(self.accepted),
            "realized_but_rejected": [list(t) for t in self.realized_but_rejected],
            "unrealized_small": [list(t) for t in low],
            "unrealized_large_count": len(high),
        }


def triangle_sweep(n_max: int = 9, label_max: int = 20) -> TriangleSweep:
    """Every triangle label triple of every Conway-Coxeter frieze with ``n <= n_max``."""
    sweep = TriangleSweep(n_max, label_max)
    for n in range(3, n_max + 1):
        for t in enumerate_triangulations(n):
            s = cc_frieze(t)
            for i, j, l in combinations(range(1, n + 1), 3):
                tri = (s[(i, j)], s[(j, l)], s[(i, l)])
                if max(tri) <= label_max:
                    sweep.realized.update(permutations(tri))
    sweep.accepted = {
        t for t in product(range(1, label_max + 1), repeat=3) if triangle_admissible(*t)
    }
    return sweep


# --- k = 2 extension -----------------------------------------------------


def _det2(a, b):
    return a[0] * b[1] - a[1] * b[0]


def hull_chain(u, v) -> list[tuple[int, int]]:
    """Lattice points strictly between ``u`` and ``v`` on the boundary of the
    convex hull of the nonzero lattice points of the cone spanned by them.

    Requires ``det(u, v) > 0``. The boundary lies inside the triangle
    ``0, u, v``, so the points are found by scanning its bounding box.
    """
    d = _det2(u, v)
    if d <= 0:
        raise ValueError("need det(u, v) > 0")
    xs = [0, u[0], v[0]]
    ys = [0, u[1], v[1]]
    pts = []
    for x in range(min(xs), max(xs) + 1):
        for y in range(min(ys), max(ys) + 1):
            p = (x, y)
            if p == (0, 0) or gcd(x, y) != 1:
                continue
            a, b = _det2(p, v), _det2(u, p)  # barycentric numerators
            if a >= 0 and b >= 0 and a + b <= d:
                pts.append(p)
    # angular order from u to v; primitive points give distinct rays
    pts.sort(key=cmp_to_key(lambda p, q: -1 if _det2(p, q) > 0 else 1))
    chain: list[tuple[int, int]] = []
    for p in pts:
        while len(chain) >= 2:
            a, b = chain[-2], chain[-1]
            turn = _det2((b[0] - a[0], b[1] - a[1]), (p[0] - b[0], p[1] - b[1]))
            if turn > 0:
                chain.pop()
            else:
                break
        chain.append(p)
    if chain[0] != tuple(u) or chain[-1] != tuple(v):
        raise AssertionError("hull chain does not join u to v")
    return chain[1:-1]


def k2_extension_oracle(x) -> list[tuple[int, int]]:
    """Final k = 2 sequence: the hull chain inserted into every gap."""
    cols = as_matrix(x).columns()
    out = []
    n = len(cols)
    for i, c in enumerate(cols):
        out.append(c)
        nxt = cols[i + 1] if i + 1 < n else tuple(-a for a in cols[0])
        out.extend(hull_chain(c, nxt))
    return out


# --- small representation searches ---------------------------------------


def primitive_rep_exists_k2n3(p12: int, p13: int, p23: int):
    """Exact existence of a 2x3 matrix with primitive columns and these minors.

    ``SL_2(Z)`` acts transitively on primitive vectors and preserves both
    minors and primitivity, so the first column may be taken as ``(1, 0)``.
    Then the second row is ``(0, p12, p13)``; the shear fixing ``(1, 0)``
    moves the top entry of column 2 by multiples of ``p12``, leaving a finite
    search. Returns a witness matrix or ``None``.
    """
    if p12 == 0:
        raise ValueError("p12 must be nonzero")
    for s in range(abs(p12)):
        num = s * p13 - p23
        if num % p12:
            continue
        t = num // p12
        if gcd(s, p12) == 1 and gcd(t, p13) == 1:
            return Matrix([[1, s, t], [0, p12, p13]])
    return None


def box_search_2x3(target, bound: int):
    """All 2x3 matrices with entries in ``[-bound, bound]``, primitive columns and
    minors ``(p12, p13, p23) == target``."""
    p12, p13, p23 = target
    rng = range(-bound, bound + 1)
    prim = [(a, b) for a in rng for b in rng if gcd(a, b) == 1]
    hits = []
    for c1 in prim:
        c2s = [c for c in prim if _det2(c1, c) == p12]
        c3s = [c for c in prim if _det2(c1, c) == p13]
        for c2 in c2s:
            for c3 in c3s:
                if _det2(c2, c3) == p23:
                    hits.append(Matrix.from_columns([c1, c2, c3]))
    return hits


def equal_valuation_clique_2d(n: int, q: int, m: int, bound: int):
    """``n`` vectors in ``[-bound, bound]^2`` whose pairwise determinants all have
    ``q``-valuation exactly ``m``; ``None`` if there are none."""
    rng = range(-bound, bound + 1)
    verts = []
    for a, b in product(rng, rng):
        if (a, b) == (0, 0):
            continue
        if a < 0 or (a == 0 and b < 0):
            continue  # sign does not change any valuation
        verts.append((a, b))

    def ok(u, v):
        d = _det2(u, v)
        return d != 0 and valuation(d, q) == m

    adj = {u: {v for v in verts if v != u and ok(u, v)} for u in verts}

    def grow(clique, cands):
        if len(clique) == n:
            return clique
        for v in sorted(cands):
            found = grow(clique + [v], {w for w in cands & adj[v] if w > v})
            if found:
                return found
        return None

    found = grow([], set(verts))
    return Matrix.from_columns(found) if found else None


# --- random inputs -------------------------------------------------------


def random_unimodular(k: int, rng: random.Random, steps: int = 6) -> Matrix:
    """Product of random elementary matrices with small multipliers."""
    m = [[int(i == j) for j in range(k)] for i in range(k)]
    for _ in range(steps):
        i, j = rng.sample(range(k), 2) if k > 1 else (0, 0)
        if i == j:
            break
        f = rng.choice([-2, -1, 1, 2])
        m[i] = [a + f * b for a, b in zip(m[i], m[j])]
    return Matrix(m)


def random_matrix(k: int, n: int, rng: random.Random, bound: int = 4, nonzero: bool = True):
    """A random ``k x n`` matrix, optionally with every maximal minor nonzero."""
    for _ in range(10_000):
        x = [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(k)]
        cols = list(zip(*x))
        if not nonzero or all(det_columns([cols[j] for j in t]) for t in combinations(range(n), k)):
            return Matrix(x)
    raise ResourceLimit("could not sample a matrix with nonzero minors")


SL3_N7 = Matrix([[1, 0, 0, 1, 1, 4, 2], [0, 1, 0, -5, -4, -14, -5], [0, 0, 1, 2, 1, 3, 1]])


def _positive_ok(cols, k, d_max):
    if any(vector_volume(c) != 1 for c in cols):
        return False
    if any(det_columns([cols[j] for j in t]) <= 0 for t in combinations(range(len(cols)), k)):
        return False
    return prod(FriezeSequence(k, tuple(cols)).frozen_values()) <= d_max


def random_extension_input(k: int, rng: random.Random, d_max: int = 50) -> Matrix:
    """Primitive columns, all increasing minors positive, frozen product <= ``d_max``.

    For k = 2 columns are sampled from a box and sorted by angle. For k = 3
    half the draws are column subsets of an SL_3 frieze moved by a random
    unimodular matrix, the rest are rejection samples from a small box.
    """
    for _ in range(200_000):
        if k == 2:
            n = rng.randint(2, 5)
            cols = set()
            while len(cols) < n:
                v = (rng.randint(-6, 6), rng.randint(-6, 6))
                if gcd(*v) == 1:
                    cols.add(v)
            # a half-plane keeps every increasing minor positive after sorting
            cols = [c for c in cols if c[1] > 0 or (c[1] == 0 and c[0] > 0)]
            if len(cols) < 2:
                continue
            cols.sort(key=cmp_to_key(lambda p, q: -1 if _det2(p, q) > 0 else 1))
        elif rng.random() < 0.5:
            n = rng.randint(3, 6)
            picks = sorted(rng.sample(range(7), n))
            g = random_unimodular(3, rng)
            cols = (g @ SL3_N7.select([p + 1 for p in picks])).columns()
        else:
            n = rng.randint(3, 4)
            cols = random_matrix(3, n, rng, bound=3, nonzero=False).columns()
        if _positive_ok(cols, k, d_max):
            return Matrix.from_columns(cols)
    raise ResourceLimit("could not sample a valid extension input")
