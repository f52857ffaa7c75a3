"""Cluster assignments with values in {-1, 0, 1} and the arrangements they give.

A cluster here is a list of k-subsets of ``{1..n}`` that pairwise do not
cross in the regular n-gon. Frozen subsets ``[i, i+1, ..., i+k-1]`` (cyclic)
belong to every cluster and carry the value 1 unless listed explicitly.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .errors import InputError, ShapeMismatch, UnknownSystem, ZeroColumn
from .exactlin import _parse_int, as_matrix, gcd_many
from .frieze import crosses
from .pluecker import pluecker_of_matrix, value_at

POSITIVE_ROOTS = {
    "A3": [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (0, 1, 1), (1, 1, 1)],
    "B3": [
        (1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (0, 1, 1),
        (1, 1, 1), (0, 1, 2), (1, 1, 2), (1, 2, 2),
    ],
}


def _pair_crosses(a: Sequence[int], b: Sequence[int]) -> bool:
    only_a = sorted(set(a) - set(b))
    only_b = sorted(set(b) - set(a))
    return any(crosses(c, d) for c in combinations(only_a, 2) for d in combinations(only_b, 2))


def check_non_crossing(subsets):
    """``(True, None)`` or ``(False, (I, J))`` for the first crossing pair.

    ``I`` and ``J`` cross when some chord between labels of ``I - J`` strictly
    interleaves with a chord between labels of ``J - I``.
    """
    subsets = [tuple(sorted(s)) for s in subsets]
    for a, b in combinations(subsets, 2):
        if _pair_crosses(a, b):
            return False, (a, b)
    return True, None


def frozen_words(n: int, k: int) -> list[tuple[int, ...]]:
    """Cyclic windows ``(i, i+1, ..., i+k-1)`` as label words (not sorted)."""
    return [tuple((i + r) % n + 1 for r in range(k)) for i in range(n)]


@dataclass(frozen=True)
class ClusterAssignment:
    k: int
    n: int
    subsets: tuple[tuple[int, ...], ...]
    values: tuple[int, ...]

    def __post_init__(self):
        k, n = self.k, self.n
        subsets = tuple(tuple(s) for s in self.subsets)
        object.__setattr__(self, "subsets", subsets)
        object.__setattr__(self, "values", tuple(self.values))
        if len(subsets) != len(self.values):
            raise InputError("one value per subset is required")
        for s in subsets:
            if len(s) != k or list(s) != sorted(set(s)) or s[0] < 1 or s[-1] > n:
                raise InputError(f"{s} is not an increasing {k}-subset of 1..{n}")
        if len(set(subsets)) != len(subsets):
            raise InputError("repeated subset in cluster")
        if any(v not in (-1, 0, 1) for v in self.values):
            raise InputError("cluster values must lie in {-1, 0, 1}")
        ok, pair = check_non_crossing(subsets)
        if not ok:
            raise InputError(f"subsets {pair[0]} and {pair[1]} cross")
        frozen = {tuple(sorted(w)) for w in frozen_words(n, k)}
        if len(frozen | set(subsets)) > k * (n - k) + 1:
            raise InputError(f"more than k(n-k)+1 = {k * (n - k) + 1} subsets")

    def expected(self) -> list[tuple[tuple[int, ...], int]]:
        """Every checked word with its required value, frozen words included."""
        listed = dict(zip(self.subsets, self.values))
        out = list(listed.items())
        for w in frozen_words(self.n, self.k):
            if tuple(sorted(w)) not in listed:
                out.append((w, 1))
        return out

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "n": self.n,
            "cluster": [{"subset": list(s), "value": str(v)} for s, v in zip(self.subsets, self.values)],
        }

    @classmethod
    def from_json(cls, data) -> "ClusterAssignment":
        try:
            k, n, cluster = data["k"], data["n"], data["cluster"]
            subsets = [tuple(int(t) for t in entry["subset"]) for entry in cluster]
            values = [_parse_int(entry["value"]) for entry in cluster]
        except (KeyError, TypeError, ValueError):
            raise InputError("cluster JSON needs k, n and a list of {subset, value}") from None
        return cls(k, n, tuple(subsets), tuple(values))


@dataclass(frozen=True)
class Mismatch:
    word: tuple[int, ...]
    expected: int
    actual: int

    def to_json(self):
        return {"word": list(self.word), "expected": str(self.expected), "actual": str(self.actual)}


def verify_cluster_values(x, c: ClusterAssignment):
    """Compare the minors of ``x`` with the assignment.

    Returns ``(ok, mismatches)``. Frozen words are read through the sign
    convention of :func:`value_at`, so ``(5, 6, 1)`` means ``+p[1, 5, 6]``.
    """
    x = as_matrix(x)
    if x.shape != (c.k, c.n):
        raise ShapeMismatch(f"matrix is {x.shape}, assignment needs {(c.k, c.n)}")
    s = pluecker_of_matrix(x)
    bad = [Mismatch(w, v, value_at(s, w)) for w, v in c.expected() if value_at(s, w) != v]
    return not bad, bad


def _canonical(v: Sequence[int]) -> tuple[int, ...]:
    g = gcd_many(v)
    if g == 0:
        raise ZeroColumn("zero column has no line")
    v = [a // g for a in v]
    lead = next(a for a in v if a)
    return tuple(-a for a in v) if lead < 0 else tuple(v)


@dataclass(frozen=True)
class LineSet:
    """Distinct hyperplane normals: primitive, first nonzero entry positive."""

    normals: tuple[tuple[int, ...], ...]

    def __len__(self):
        return len(self.normals)

    def __contains__(self, v):
        return _canonical(v) in self.normals

    def to_json(self):
        return {"count": len(self.normals), "normals": [[str(a) for a in v] for v in self.normals]}


def line_set(x) -> LineSet:
    x = as_matrix(x)
    return LineSet(tuple(sorted({_canonical(c) for c in x.columns()})))


def compare_positive_roots(x, system: str) -> bool:
    """Whether the columns are, up to individual signs, the positive roots of ``system``.

    Roots are written in simple-root coordinates.
    """
    if system not in POSITIVE_ROOTS:
        raise UnknownSystem(f"unknown root system {system!r}; known: {sorted(POSITIVE_ROOTS)}")
    x = as_matrix(x)
    if x.nrows != 3:
        raise ShapeMismatch("root comparison needs 3 rows")
    cols = Counter(tuple(-a for a in c) if any(a < 0 for a in c) else c for c in x.columns())
    return cols == Counter(POSITIVE_ROOTS[system])

