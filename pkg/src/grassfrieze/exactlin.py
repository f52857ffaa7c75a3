"""Exact integer arithmetic and fraction-free linear algebra.

Everything here works on Python ints, so no result is ever rounded or
truncated. Matrices are small immutable row tuples; indices into
:class:`Matrix` are 0-based, while *labels* (column names used by
specializations) are 1-based throughout the package.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce
from itertools import combinations
from typing import Iterable, Sequence

from .errors import (
    BadShape,
    NonCoprimeModuli,
    NonPrimeModulus,
    NotSquare,
    ResourceLimit,
    SingularMatrix,
)

INFINITE = math.inf

# trial division bound for factorize(); cofactors above TRIAL_LIMIT**2 are refused
TRIAL_LIMIT = 10**6


class Matrix:
    """Immutable rectangular integer matrix."""

    __slots__ = ("_rows",)

    def __init__(self, rows: Iterable[Iterable[int]]):
        data = tuple(tuple(_as_int(v) for v in row) for row in rows)
        if not data or not data[0]:
            raise BadShape("matrix must have at least one row and one column")
        width = len(data[0])
        if any(len(row) != width for row in data):
            raise BadShape("matrix rows have different lengths")
        self._rows = data

    @classmethod
    def identity(cls, k: int) -> "Matrix":
        return cls([[int(i == j) for j in range(k)] for i in range(k)])

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]]) -> "Matrix":
        if not columns:
            raise BadShape("need at least one column")
        return cls(zip(*columns))

    @property
    def rows(self) -> tuple[tuple[int, ...], ...]:
        return self._rows

    @property
    def nrows(self) -> int:
        return len(self._rows)

    @property
    def ncols(self) -> int:
        return len(self._rows[0])

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self._rows[i][j]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self._rows)

    def columns(self) -> list[tuple[int, ...]]:
        return [tuple(c) for c in zip(*self._rows)]

    def select(self, labels: Sequence[int]) -> "Matrix":
        """Columns at the given 1-based labels, in the given order."""
        return Matrix([[row[j - 1] for j in labels] for row in self._rows])

    def transpose(self) -> "Matrix":
        return Matrix(zip(*self._rows))

    def tolist(self) -> list[list[int]]:
        return [list(row) for row in self._rows]

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise BadShape(f"cannot multiply {self.shape} by {other.shape}")
        cols = other.columns()
        return Matrix(
            [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in self._rows]
        )

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Matrix):
            return self._rows == other._rows
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._rows)

    def __repr__(self) -> str:
        return f"Matrix({self.tolist()!r})"

    def to_json(self) -> list[list[str]]:
        return [[str(v) for v in row] for row in self._rows]

    @classmethod
    def from_json(cls, data) -> "Matrix":
        if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
            raise BadShape("matrix JSON must be an array of arrays")
        return cls([[_parse_int(v) for v in row] for row in data])


def _as_int(v) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        if hasattr(v, "__index__"):
            return int(v.__index__())
        raise BadShape(f"matrix entries must be integers, got {v!r}")
    return int(v)


def _parse_int(v) -> int:
    if isinstance(v, str):
        try:
            return int(v.strip(), 10)
        except ValueError:
            raise BadShape(f"not a decimal integer string: {v!r}") from None
    if isinstance(v, int) and not isinstance(v, bool):
        return v
    raise BadShape(f"expected a decimal integer string, got {v!r}")


def as_matrix(a) -> Matrix:
    return a if isinstance(a, Matrix) else Matrix(a)


# --- number theory -------------------------------------------------------


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, u, v)`` with ``g = u*a + v*b = gcd(a, b) >= 0``."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    if old_r == 0:
        return 0, 0, 0
    return old_r, old_s, old_t


def gcd_many(values: Iterable[int], bezout: bool = False):
    """Nonnegative gcd of ``values``.

    With ``bezout=True`` returns ``(g, coeffs)`` where
    ``sum(c * v) == g``. Coefficients come from folding :func:`xgcd` left to
    right, which keeps the result deterministic.
    """
    values = list(values)
    if not bezout:
        return reduce(math.gcd, values, 0)
    g = 0
    coeffs: list[int] = []
    for v in values:
        g_new, u, w = xgcd(g, v)
        coeffs = [c * u for c in coeffs]
        coeffs.append(w)
        g = g_new
    return g, coeffs


def is_prime(q: int) -> bool:
    q = abs(q)
    if q < 2:
        return False
    if q < 4:
        return True
    if q % 2 == 0:
        return False
    # deterministic Miller-Rabin for q < 3.3e24
    d, s = q - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41):
        if a % q == 0:
            continue
        x = pow(a, d, q)
        if x in (1, q - 1):
            continue
        for _ in range(s - 1):
            x = x * x % q
            if x == q - 1:
                break
        else:
            return False
    if q >= 3_317_044_064_679_887_385_961_981:
        # beyond the proven range of the fixed bases; fall back to trial division
        return factorize(q) == [(q, 1)]
    return True


def _check_prime(q: int) -> int:
    if not is_prime(q):
        raise NonPrimeModulus(f"{q} is not prime")
    return abs(q)


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization of ``|n|`` by trial division, as ``[(p, e), ...]``."""
    n = abs(n)
    if n == 0:
        raise ValueError("cannot factor 0")
    out = []
    p = 2
    while p * p <= n:
        if p > TRIAL_LIMIT:
            if n < 3_317_044_064_679_887_385_961_981 and is_prime(n):
                break
            raise ResourceLimit(f"cofactor {n} too large for trial division")
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


def valuation(a: int, q: int):
    """Exponent of the prime ``q`` in ``a``; :data:`INFINITE` for ``a == 0``."""
    q = _check_prime(q)
    if a == 0:
        return INFINITE
    m = 0
    while a % q == 0:
        a //= q
        m += 1
    return m


def crt(congruences: Sequence[tuple[int, int]]) -> int:
    """Least nonnegative ``x`` with ``x = r (mod m)`` for each ``(r, m)``."""
    moduli = [m for _, m in congruences]
    if any(m < 2 for m in moduli):
        raise NonCoprimeModuli("moduli must be at least 2")
    for m1, m2 in combinations(moduli, 2):
        if math.gcd(m1, m2) != 1:
            raise NonCoprimeModuli(f"moduli {m1} and {m2} share a factor")
    x, modulus = 0, 1
    for r, m in congruences:
        # x + modulus * t = r (mod m)
        t = ((r - x) * pow(modulus, -1, m)) % m
        x += modulus * t
        modulus *= m
    return x % modulus


def projective_count(q: int, k: int) -> int:
    """Number of points of the projective space P(F_q^k)."""
    q = _check_prime(q)
    if k < 1:
        raise BadShape("k must be positive")
    return (q**k - 1) // (q - 1)


# --- determinants and normal forms ---------------------------------------


def det(a) -> int:
    """Determinant by Bareiss fraction-free elimination."""
    a = as_matrix(a)
    n = a.nrows
    if a.ncols != n:
        raise NotSquare(f"determinant of a {a.nrows}x{a.ncols} matrix")
    return _bareiss([list(r) for r in a.rows])


def _bareiss(m: list[list[int]]) -> int:
    n = len(m)
    sign = 1
    prev = 1
    for i in range(n - 1):
        if m[i][i] == 0:
            for r in range(i + 1, n):
                if m[r][i] != 0:
                    m[i], m[r] = m[r], m[i]
                    sign = -sign
                    break
            else:
                return 0
        piv = m[i][i]
        for r in range(i + 1, n):
            row_r, row_i = m[r], m[i]
            f = row_r[i]
            for c in range(i + 1, n):
                row_r[c] = (row_r[c] * piv - f * row_i[c]) // prev
            row_r[i] = 0
        prev = piv
    return sign * m[n - 1][n - 1]


def det_columns(columns: Sequence[Sequence[int]]) -> int:
    """Determinant of the square matrix with the given columns."""
    k = len(columns)
    if any(len(c) != k for c in columns):
        raise NotSquare("need k columns of length k")
    if k == 1:
        return columns[0][0]
    if k == 2:
        (a, c), (b, d) = columns
        return a * d - b * c
    if k == 3:
        (a, d, g), (b, e, h), (c, f, i) = columns
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    return _bareiss([list(r) for r in zip(*columns)])


@dataclass(frozen=True)
class HnfResult:
    """Column Hermite normal form: ``a @ u == h``, ``h`` lower triangular."""

    h: Matrix
    u: Matrix


def column_hnf(a) -> HnfResult:
    """Column-style Hermite normal form of a nonsingular square matrix.

    ``h`` satisfies ``h[i][j] == 0`` for ``j > i``, ``h[i][i] > 0`` and
    ``0 <= h[i][j] < h[i][i]`` for ``j < i``.
    """
    a = as_matrix(a)
    k = a.nrows
    if a.ncols != k:
        raise NotSquare("column_hnf needs a square matrix")
    h = [list(r) for r in a.rows]
    u = [[int(i == j) for j in range(k)] for i in range(k)]

    def combine(i, j, s, t, x, y):
        # col_i, col_j <- s*col_i + t*col_j, x*col_i + y*col_j
        for m in (h, u):
            for row in m:
                ci, cj = row[i], row[j]
                row[i] = s * ci + t * cj
                row[j] = x * ci + y * cj

    for i in range(k):
        for j in range(i + 1, k):
            b = h[i][j]
            if b == 0:
                continue
            av = h[i][i]
            g, s, t = xgcd(av, b)
            combine(i, j, s, t, -b // g, av // g)
        if h[i][i] == 0:
            raise SingularMatrix("matrix is singular")
        if h[i][i] < 0:
            for m in (h, u):
                for row in m:
                    row[i] = -row[i]
        d = h[i][i]
        for j in range(i):
            f = h[i][j] // d
            if f:
                for m in (h, u):
                    for row in m:
                        row[j] -= f * row[i]
    return HnfResult(Matrix(h), Matrix(u))


def volume(a) -> int:
    """Nonnegative gcd of the maximal (``r x r``) minors of a ``k x r`` matrix."""
    a = as_matrix(a)
    k, r = a.shape
    if r > k:
        raise BadShape(f"volume needs r <= k, got {k}x{r}")
    if r == 1:
        return gcd_many(a.column(0))
    g = 0
    for rows in combinations(a.rows, r):
        g = math.gcd(g, _bareiss([list(x) for x in rows]))
        if g == 1:
            break
    return g


def vector_volume(v: Sequence[int]) -> int:
    return gcd_many(v)


# --- linear algebra over F_q ---------------------------------------------


def rank_mod(rows: Sequence[Sequence[int]], q: int) -> int:
    """Rank of the matrix with the given rows over F_q."""
    m = [[x % q for x in r] for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][c], -1, q)
        m[rank] = [x * inv % q for x in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][c]:
                f = m[r][c]
                m[r] = [(x - f * y) % q for x, y in zip(m[r], m[rank])]
        rank += 1
    return rank


def solve_combination_mod(basis, target, q: int):
    """Coefficients ``c`` with ``sum(c[t] * basis[t]) == target`` mod ``q``.

    Returns ``None`` when ``target`` is not in the span.
    """
    ell = len(basis)
    # one equation per coordinate, augmented with the target entry
    aug = [[basis[t][j] % q for t in range(ell)] + [target[j] % q] for j in range(len(target))]
    row = 0
    pivcols = []
    for c in range(ell):
        piv = next((r for r in range(row, len(aug)) if aug[r][c]), None)
        if piv is None:
            continue
        aug[row], aug[piv] = aug[piv], aug[row]
        inv = pow(aug[row][c], -1, q)
        aug[row] = [x * inv % q for x in aug[row]]
        for r in range(len(aug)):
            if r != row and aug[r][c]:
                f = aug[r][c]
                aug[r] = [(x - f * y) % q for x, y in zip(aug[r], aug[row])]
        pivcols.append(c)
        row += 1
    if any(aug[r][ell] for r in range(row, len(aug))):
        return None
    coeffs = [0] * ell
    for r, c in enumerate(pivcols):
        coeffs[c] = aug[r][ell]
    return coeffs
