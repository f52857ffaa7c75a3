"""Integer representations of integer specializations.

The construction recurses on ``k``: a pivot label gets the column
``(delta, 0, ..., 0)``, the first row is filled from Bezout combinations of
the pivot's values, and the remaining ``(k-1) x (n-1)`` block represents the
pivot's values divided by ``delta``.
"""

from __future__ import annotations

from itertools import combinations

from .errors import InconsistentSpecialization, InternalPostconditionFailure, ZeroValue
from .exactlin import Matrix, gcd_many
from .pluecker import Specialization, check_pluecker_relations, pluecker_of_matrix, value_at


def realize(s: Specialization, *, allow_zero: bool = False, check: bool = True) -> Matrix:
    """Return a ``k x n`` integer matrix whose maximal minors are exactly ``s``.

    By default every value must be nonzero and the pivot is label 1. With
    ``allow_zero=True`` zero values are accepted and the pivot is the first
    label whose values are not all zero. ``check=False`` skips the up-front
    relation check (the final round trip still runs).
    """
    if not allow_zero:
        zero = next((t for t, v in s.items() if v == 0), None)
        if zero is not None:
            raise ZeroValue(f"value at {zero} is zero")
    if check:
        bad = check_pluecker_relations(s, first_only=True)
        if bad:
            raise InconsistentSpecialization(
                f"Pluecker relation violated: {bad[0].describe()}", bad
            )
    x = Matrix(_realize(s))
    if pluecker_of_matrix(x) != s:
        raise InternalPostconditionFailure("realized matrix does not reproduce the specialization")
    return x


def first_row_data(s: Specialization):
    """Pivot label, ``delta``, first-row entries and the reduced specialization.

    The reduced specialization lives on the labels other than the pivot,
    renumbered ``1..n-1`` in increasing order. Returns ``None`` when all
    values vanish.
    """
    k, n = s.k, s.n
    for pivot in range(1, n + 1):
        others = [j for j in range(1, n + 1) if j != pivot]
        tails = list(combinations(others, k - 1))
        vals = [value_at(s, (pivot,) + t) for t in tails]
        if any(vals):
            break
    else:
        return None
    delta, lam = gcd_many(vals, bezout=True)
    row = {pivot: delta}
    for j in others:
        row[j] = sum(c * value_at(s, (j,) + t) for c, t in zip(lam, tails) if c)
    pos = {label: i + 1 for i, label in enumerate(others)}
    sub = Specialization(
        k - 1,
        n - 1,
        {tuple(pos[j] for j in t): v // delta for t, v in zip(tails, vals)},
    )
    return pivot, delta, [row[j] for j in range(1, n + 1)], sub


def _realize(s: Specialization) -> list[list[int]]:
    k, n = s.k, s.n
    if k == 1:
        return [[s[(j,)] for j in range(1, n + 1)]]
    data = first_row_data(s)
    if data is None:
        return [[0] * n for _ in range(k)]
    pivot, _, first_row, sub = data
    block = _realize(sub)
    rows = [first_row]
    for r in block:
        rows.append(r[: pivot - 1] + [0] + r[pivot - 1 :])
    return rows
