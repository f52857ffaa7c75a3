"""k-subsets, Pluecker coordinates and the quadratic Pluecker relations.

Subsets are plain tuples of 1-based labels in increasing order. A
:class:`Specialization` stores one integer per increasing k-subset; every
signed or unsorted access goes through :func:`value_at`.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Mapping, Sequence

from .errors import BadShape, InputError
from .exactlin import Matrix, _parse_int, as_matrix, det_columns


def k_subsets(n: int, k: int) -> Iterator[tuple[int, ...]]:
    return combinations(range(1, n + 1), k)


def normalize_index(word: Sequence[int]) -> tuple[int, tuple[int, ...] | None]:
    """Sign of the sorting permutation and the sorted word.

    Returns ``(0, None)`` when a label repeats.
    """
    word = list(word)
    if len(set(word)) != len(word):
        return 0, None
    # count inversions; k is small
    inversions = sum(1 for a, b in combinations(word, 2) if a > b)
    return (-1 if inversions % 2 else 1), tuple(sorted(word))


class Specialization:
    """Integer values on all increasing k-subsets of ``{1..n}``."""

    __slots__ = ("k", "n", "_values")

    def __init__(self, k: int, n: int, values: Mapping[Sequence[int], int]):
        if k < 1 or n < k:
            raise BadShape(f"need 1 <= k <= n, got k={k}, n={n}")
        self.k = k
        self.n = n
        vals = {}
        for key, v in values.items():
            key = tuple(key)
            if len(key) != k or list(key) != sorted(set(key)) or key[0] < 1 or key[-1] > n:
                raise InputError(f"{key} is not an increasing {k}-subset of 1..{n}")
            if isinstance(v, bool) or not isinstance(v, int):
                raise InputError(f"value at {key} is not an integer: {v!r}")
            vals[key] = v
        missing = [s for s in k_subsets(n, k) if s not in vals]
        if missing:
            raise InputError(f"missing values for subsets {missing[:5]}")
        self._values = vals

    @classmethod
    def from_function(cls, k: int, n: int, f) -> "Specialization":
        return cls(k, n, {s: f(s) for s in k_subsets(n, k)})

    def __getitem__(self, word: Sequence[int]) -> int:
        return value_at(self, word)

    def subsets(self) -> list[tuple[int, ...]]:
        return list(self._values)

    def items(self):
        return self._values.items()

    def values(self) -> list[int]:
        return list(self._values.values())

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Specialization):
            return (self.k, self.n, self._values) == (other.k, other.n, other._values)
        return NotImplemented

    def __hash__(self):
        return hash((self.k, self.n, tuple(sorted(self._values.items()))))

    def __repr__(self) -> str:
        body = ", ".join(f"p{''.join(map(str, s)) if self.n < 10 else s}: {v}" for s, v in self.items())
        return f"Specialization(k={self.k}, n={self.n}, {{{body}}})"

    def scaled_down(self, divisor: int) -> "Specialization":
        """Divide every value exactly by ``divisor``."""
        out = {}
        for s, v in self.items():
            if v % divisor:
                raise InputError(f"value {v} at {s} not divisible by {divisor}")
            out[s] = v // divisor
        return Specialization(self.k, self.n, out)

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "n": self.n,
            "values": {",".join(map(str, s)): str(v) for s, v in self.items()},
        }

    @classmethod
    def from_json(cls, data) -> "Specialization":
        try:
            k, n, raw = data["k"], data["n"], data["values"]
        except (KeyError, TypeError):
            raise InputError("specialization JSON needs keys k, n, values") from None
        if not isinstance(k, int) or not isinstance(n, int) or not isinstance(raw, dict):
            raise InputError("k and n must be integers, values an object")
        vals = {}
        for key, v in raw.items():
            try:
                subset = tuple(int(t) for t in key.split(","))
            except ValueError:
                raise InputError(f"bad subset key {key!r}") from None
            vals[subset] = _parse_int(v)
        return cls(k, n, vals)


def value_at(s: Specialization, word: Sequence[int]) -> int:
    """Signed value of an arbitrary index word (0 on repeated labels)."""
    sign, subset = normalize_index(word)
    if subset is None:
        return 0
    try:
        return sign * s._values[subset]
    except KeyError:
        raise InputError(f"word {tuple(word)} out of range for n={s.n}, k={s.k}") from None


def pluecker_of_matrix(x) -> Specialization:
    """All maximal minors of a ``k x n`` matrix, keyed by increasing subsets."""
    x = as_matrix(x)
    k, n = x.shape
    if k > n:
        raise BadShape(f"need k <= n, got a {k}x{n} matrix")
    cols = x.columns()
    return Specialization(
        k, n, {s: det_columns([cols[j - 1] for j in s]) for s in k_subsets(n, k)}
    )


@dataclass(frozen=True)
class RelationViolation:
    """One Pluecker relation ``sum_r (-1)^r p[i + j_r] p[j - j_r]`` that is not zero."""

    i_word: tuple[int, ...]
    j_word: tuple[int, ...]
    value: int

    def describe(self) -> str:
        terms = []
        for r, jr in enumerate(self.j_word):
            left = self.i_word + (jr,)
            right = self.j_word[:r] + self.j_word[r + 1 :]
            terms.append(f"{'-' if r % 2 else '+'} p{list(left)}*p{list(right)}")
        return f"{' '.join(terms)} = {self.value}"

    def to_json(self) -> dict:
        return {"i": list(self.i_word), "j": list(self.j_word), "value": str(self.value)}


def relation_value(s: Specialization, i_word, j_word) -> int:
    total = 0
    for r, jr in enumerate(j_word):
        left = value_at(s, tuple(i_word) + (jr,))
        if left:
            right = value_at(s, tuple(j_word[:r]) + tuple(j_word[r + 1 :]))
            total += -left * right if r % 2 else left * right
    return total


def check_pluecker_relations(s: Specialization, first_only: bool = False) -> list[RelationViolation]:
    """All violated relations; empty iff ``s`` satisfies the Pluecker relations.

    ``i`` ranges over (k-1)-subsets and ``j`` over (k+1)-subsets; every other
    choice of words is a signed copy of one of these or identically zero.
    """
    k, n = s.k, s.n
    if k + 1 > n:
        return []
    bad = []
    j_words = list(k_subsets(n, k + 1))
    for i_word in k_subsets(n, k - 1):
        for j_word in j_words:
            v = relation_value(s, i_word, j_word)
            if v:
                bad.append(RelationViolation(i_word, j_word, v))
                if first_only:
                    return bad
    return bad


def support_matroid(s: Specialization) -> tuple[frozenset, bool]:
    """Zero set of ``s`` and whether the nonzero subsets obey basis exchange."""
    zeros = frozenset(t for t, v in s.items() if v == 0)
    bases = {t for t, v in s.items() if v != 0}
    return zeros, bool(bases) and _basis_exchange(bases)


def _basis_exchange(bases: set) -> bool:
    as_sets = {b: frozenset(b) for b in bases}
    lookup = set(as_sets.values())
    for b1 in as_sets.values():
        for b2 in as_sets.values():
            for x in b1 - b2:
                rest = b1 - {x}
                if not any(rest | {y} in lookup for y in b2 - b1):
                    return False
    return True
