"""Representations whose columns are primitive vectors.

A nowhere-zero integer specialization has a representation with every column
of volume 1 exactly when

1. for every label ``i`` the gcd of the values involving ``i`` equals the gcd
   ``eps`` of all values, and
2. for every prime ``q | eps`` the columns reduced mod ``q`` (after dividing
   the first row of a realization by ``eps``) span fewer distinct lines than
   there are points in ``P(F_q^k)``.

Two labels ``i, j`` span the same line mod ``q`` iff every value ``p[w, i, j]``
has ``q``-valuation above ``v_q(eps)``; the class count of that relation is
what condition 2 compares against ``(q^k - 1)/(q - 1)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from math import comb
from typing import NamedTuple

from .errors import (
    ConditionsNotSatisfied,
    InternalPostconditionFailure,
    NonTransitiveRelation,
    PreconditionViolated,
    ZeroValue,
)
from .exactlin import (
    Matrix,
    as_matrix,
    crt,
    factorize,
    gcd_many,
    is_prime,
    projective_count,
    rank_mod,
    solve_combination_mod,
    valuation,
    vector_volume,
)
from .pluecker import Specialization, pluecker_of_matrix, value_at
from .realize import realize


class CheckResult(NamedTuple):
    holds: bool
    witness: object = None


@dataclass(frozen=True)
class Cond1Failure:
    index: int

    def to_json(self):
        return {"condition": 1, "index": self.index}


@dataclass(frozen=True)
class Cond2Failure:
    prime: int
    subset: tuple[int, ...]

    def to_json(self):
        return {"condition": 2, "prime": str(self.prime), "subset": list(self.subset)}


@dataclass(frozen=True)
class VolumeOneVerdict:
    exists: bool
    epsilon: int
    prime_factors: tuple[tuple[int, int], ...] = field(default=())
    failed_condition: Cond1Failure | Cond2Failure | None = None

    def to_json(self) -> dict:
        return {
            "exists": self.exists,
            "epsilon": str(self.epsilon),
            "prime_factors": [[str(q), d] for q, d in self.prime_factors],
            "failed_condition": None
            if self.failed_condition is None
            else self.failed_condition.to_json(),
        }


def _require_nonzero(s: Specialization, allow_zero: bool):
    if allow_zero:
        if not any(s.values()):
            raise ZeroValue("all values are zero")
        return
    zero = next((t for t, v in s.items() if v == 0), None)
    if zero is not None:
        raise ZeroValue(f"value at {zero} is zero")


def epsilon_of(s: Specialization, *, allow_zero: bool = False) -> int:
    """Nonnegative gcd of all values."""
    _require_nonzero(s, allow_zero)
    return gcd_many(s.values())


def check_condition1(s: Specialization, *, allow_zero: bool = False) -> CheckResult:
    """Per-label gcds all equal ``eps``; the witness is the first failing label."""
    eps = epsilon_of(s, allow_zero=allow_zero)
    for i in range(1, s.n + 1):
        if gcd_many(v for t, v in s.items() if i in t) != eps:
            return CheckResult(False, i)
    return CheckResult(True)


def same_line_classes(s: Specialization, q: int, eps: int | None = None):
    """Classes of labels whose columns span the same line mod ``q``.

    Labels equivalent to every other label (zero columns mod ``q``) are
    returned separately as the second item; they lie on no line.
    """
    k, n = s.k, s.n
    if eps is None:
        eps = gcd_many(s.values())
    target = valuation(eps, q)

    def same(i, j):
        rest = [t for t in range(1, n + 1) if t not in (i, j)]
        return all(
            valuation(value_at(s, w + (i, j)), q) != target for w in combinations(rest, k - 2)
        )

    labels = range(1, n + 1)
    rel = {(i, j): same(i, j) for i, j in combinations(labels, 2)}

    def related(i, j):
        return i == j or rel[(min(i, j), max(i, j))]

    null = [i for i in labels if all(related(i, j) for j in labels)] if n > 1 else []
    live = [i for i in labels if i not in null]
    classes: list[list[int]] = []
    for i in live:
        for cls in classes:
            if related(i, cls[0]):
                cls.append(i)
                break
        else:
            classes.append([i])
    for cls in classes:
        for a, b in combinations(cls, 2):
            if not related(a, b):
                raise NonTransitiveRelation(f"labels {a}, {b} inconsistent mod {q}")
    for c1, c2 in combinations(classes, 2):
        if any(related(a, b) for a in c1 for b in c2):
            raise NonTransitiveRelation(f"classes {c1} and {c2} overlap mod {q}")
    return classes, null


def check_condition2(s: Specialization, *, allow_zero: bool = False) -> CheckResult:
    """Fewer same-line classes than projective points, for every prime of ``eps``.

    The witness is ``(q, S)`` with ``S`` one representative per class, cut
    to ``|P(F_q^k)|`` labels.
    """
    eps = epsilon_of(s, allow_zero=allow_zero)
    if eps <= 1:
        return CheckResult(True)
    k = s.k
    for q, _ in factorize(eps):
        bound = projective_count(q, k)
        if k == 1:
            # one line only; any label fills it
            return CheckResult(False, (q, (1,)))
        classes, _ = same_line_classes(s, q, eps)
        if len(classes) >= bound:
            reps = tuple(sorted(cls[0] for cls in classes)[:bound])
            return CheckResult(False, (q, reps))
    return CheckResult(True)


def decide_volume_one(s: Specialization, *, allow_zero: bool = False) -> VolumeOneVerdict:
    eps = epsilon_of(s, allow_zero=allow_zero)
    factors = tuple(factorize(eps)) if eps > 1 else ()
    c1 = check_condition1(s, allow_zero=allow_zero)
    if not c1.holds:
        return VolumeOneVerdict(False, eps, factors, Cond1Failure(c1.witness))
    c2 = check_condition2(s, allow_zero=allow_zero)
    if not c2.holds:
        q, subset = c2.witness
        return VolumeOneVerdict(False, eps, factors, Cond2Failure(q, subset))
    return VolumeOneVerdict(True, eps, factors)


def reduce_prime_row(x, q: int) -> Matrix:
    """Row operations of determinant 1 making the first row divisible by ``q``.

    Requires primitive columns and ``q`` dividing every maximal minor. The
    result has the same maximal minors and the same (unit) column volumes.
    """
    x = as_matrix(x)
    k, n = x.shape
    if not is_prime(q):
        raise PreconditionViolated(f"{q} is not prime")
    if any(vector_volume(c) != 1 for c in x.columns()):
        raise PreconditionViolated("columns must have volume 1")
    rows = [list(r) for r in x.rows]
    if rank_mod(rows, q) == k:
        raise PreconditionViolated(f"{q} does not divide every maximal minor")
    chosen: list[int] = []
    for r in range(k):
        if rank_mod([rows[c] for c in chosen] + [rows[r]], q) > len(chosen):
            chosen.append(r)
    for r in range(k):
        if r in chosen:
            continue
        coeffs = solve_combination_mod([rows[c] for c in chosen], rows[r], q)
        for c, f in zip(chosen, coeffs):
            if f:
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[c])]
    if any(v % q for v in rows[0]):
        target = next(r for r in range(k) if r not in chosen)
        # swap with a sign flip keeps the determinant of the operation at +1
        rows[0], rows[target] = rows[target], [-v for v in rows[0]]
    return Matrix(rows)


def _projective_points(q: int, k: int):
    """Normalized points of P(F_q^k) in lexicographic order."""
    for lead in range(k - 1, -1, -1):
        for tail in product(range(q), repeat=k - 1 - lead):
            yield (0,) * lead + (1,) + tail


def _normalize_mod(v, q):
    v = [a % q for a in v]
    j = next((i for i, a in enumerate(v) if a), None)
    if j is None:
        return None
    inv = pow(v[j], -1, q)
    return tuple(a * inv % q for a in v)


def construct_volume_one(s: Specialization, *, allow_zero: bool = False) -> Matrix:
    """A representation of ``s`` whose columns all have volume 1."""
    verdict = decide_volume_one(s, allow_zero=allow_zero)
    if not verdict.exists:
        raise ConditionsNotSatisfied("no representation with primitive columns", verdict)
    k, n = s.k, s.n
    eps = verdict.epsilon
    x = realize(s, allow_zero=allow_zero)
    rows = [list(r) for r in x.rows]
    if eps > 1:
        rows[0] = [v // eps for v in rows[0]]
        pivots = {}
        mus = {}
        for q, _ in verdict.prime_factors:
            lines = {_normalize_mod(c, q) for c in zip(*rows)}
            v = next((p for p in _projective_points(q, k) if p not in lines), None)
            if v is None:
                raise InternalPostconditionFailure(f"no free line mod {q}")
            j = v.index(1)
            pivots[q] = j
            mus[q] = v
        combined = [[0] * k for _ in range(k)]
        for m in range(k):
            for col in set(pivots.values()):
                if m <= col:
                    continue
                residues = [
                    (mus[q][m] if pivots[q] == col else 0, q) for q in pivots
                ]
                combined[m][col] = crt(residues) if len(residues) > 1 else residues[0][0] % residues[0][1]
        base = [r[:] for r in rows]
        for m in range(k):
            for col in range(k):
                f = combined[m][col]
                if f:
                    rows[m] = [a - f * b for a, b in zip(rows[m], base[col])]
        for q, d in verdict.prime_factors:
            rows[pivots[q]] = [a * q**d for a in rows[pivots[q]]]
    z = Matrix(rows)
    if pluecker_of_matrix(z) != s:
        raise InternalPostconditionFailure("constructed matrix has wrong minors")
    if any(vector_volume(c) != 1 for c in z.columns()):
        raise InternalPostconditionFailure("constructed matrix has an imprimitive column")
    return z


class BoundCheck(NamedTuple):
    holds: bool
    applicable: bool
    lhs: int
    rhs: int


def check_n_bound(s: Specialization, q: int) -> BoundCheck:
    """``C(n, k-1) <= |P(F_q^k)|`` whenever all values share one ``q``-valuation."""
    _require_nonzero(s, False)
    rhs = projective_count(q, s.k)
    lhs = comb(s.n, s.k - 1)
    if len({valuation(v, q) for v in s.values()}) > 1:
        return BoundCheck(True, False, lhs, rhs)
    return BoundCheck(lhs <= rhs, True, lhs, rhs)
