"""Slow but obviously-correct reference computations used as test oracles."""

from itertools import combinations
from math import gcd

from grassfrieze.exactlin import Matrix
from grassfrieze.fixtures import load_fixtures


def cofactor_det(m):
    m = [list(r) for r in m]
    if len(m) == 1:
        return m[0][0]
    return sum(
        (-1) ** j * m[0][j] * cofactor_det([row[:j] + row[j + 1:] for row in m[1:]])
        for j in range(len(m))
    )


def all_minors(rows, r):
    """Every r x r minor of a matrix given by rows (r <= number of columns)."""
    k, n = len(rows), len(rows[0])
    out = []
    for rs in combinations(range(k), r):
        for cs in combinations(range(n), r):
            out.append(cofactor_det([[rows[i][j] for j in cs] for i in rs]))
    return out


def gcd_list(vals):
    g = 0
    for v in vals:
        g = gcd(g, v)
    return g


def sieve(limit):
    flags = [True] * (limit + 1)
    flags[0] = flags[1] = False
    for p in range(2, int(limit**0.5) + 1):
        if flags[p]:
            flags[p * p::p] = [False] * len(flags[p * p::p])
    return {i for i, f in enumerate(flags) if f}


def perm_sign(word):
    """Sign of the permutation sorting ``word`` (distinct letters), via cycle count."""
    order = sorted(range(len(word)), key=lambda i: word[i])
    seen = [False] * len(word)
    sign = 1
    for i in range(len(word)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = order[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def minors_by_cofactor(rows):
    """Maximal minors keyed by increasing 1-based column subsets."""
    k, n = len(rows), len(rows[0])
    return {
        tuple(c + 1 for c in cs): cofactor_det([[row[j] for j in cs] for row in rows])
        for cs in combinations(range(n), k)
    }


def matmul(a, b):
    return [[sum(x * y for x, y in zip(row, col)) for col in zip(*b)] for row in a]


def fixture(name):
    return load_fixtures()[name]


def fixture_matrix(name):
    return Matrix.from_json(fixture(name)["matrix"])


def random_full_matrix(rng, k, n, lo=-4, hi=4, primitive=False):
    """Rejection-sample a k x n matrix with every maximal minor nonzero."""
    while True:
        rows = [[rng.randint(lo, hi) for _ in range(n)] for _ in range(k)]
        cols = list(zip(*rows))
        if primitive and any(gcd_list(c) != 1 for c in cols):
            continue
        if all(cofactor_det([[cols[j][i] for j in t] for i in range(k)])
               for t in combinations(range(n), k)):
            return rows


ACCEPTANCE = {}


def report(n, ok, detail):
    """Record and print one acceptance line, then assert it."""
    line = f"AC{n} {'PASS' if ok else 'FAIL'} {detail}"
    ACCEPTANCE[n] = line
    print(line)
    assert ok, line
