"""Frieze patterns.

Conway-Coxeter friezes come from triangulations of a polygon via Ptolemy
propagation. Friezes with coefficients (restrictions to subpolygons) are
tested against the gcd / p-valuation characterization, and primitive
positive configurations are extended to SL_k friezes by inserting vectors
into the cone of a window until every frozen minor is 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import gcd, prod
from typing import Iterator, Sequence

from .errors import (
    ExtensionStalled,
    InternalPostconditionFailure,
    InvalidTriangulation,
    NonPositive,
    PreconditionViolated,
    RankDeficientWindow,
    ResourceLimit,
    SubsetTooSmall,
)
from .exactlin import (
    Matrix,
    as_matrix,
    column_hnf,
    det_columns,
    is_prime,
    valuation,
    vector_volume,
    volume,
)
from .pluecker import Specialization, k_subsets, pluecker_of_matrix, value_at

MAX_TRIANGULATION_N = 12


# --- triangulations and Conway-Coxeter friezes ---------------------------


def crosses(a: tuple[int, int], b: tuple[int, int]) -> bool:
    """Whether two chords of a convex polygon cross in the interior."""
    (i, j), (k, l) = sorted(a), sorted(b)
    return i < k < j < l or k < i < l < j


@dataclass(frozen=True)
class Triangulation:
    n: int
    diagonals: frozenset

    def __post_init__(self):
        n = self.n
        if n < 3:
            raise InvalidTriangulation("a polygon needs at least 3 vertices")
        diags = frozenset(tuple(sorted(d)) for d in self.diagonals)
        object.__setattr__(self, "diagonals", diags)
        for i, j in diags:
            if not (1 <= i < j <= n) or j - i in (1, n - 1):
                raise InvalidTriangulation(f"({i}, {j}) is not a diagonal of the {n}-gon")
        for a, b in combinations(sorted(diags), 2):
            if crosses(a, b):
                raise InvalidTriangulation(f"diagonals {a} and {b} cross")
        if len(diags) != n - 3:
            raise InvalidTriangulation(f"need {n - 3} diagonals, got {len(diags)}")

    @classmethod
    def parse(cls, n: int, text: str) -> "Triangulation":
        """Parse ``"1-3,1-4"`` style diagonal lists."""
        diags = []
        for part in filter(None, (p.strip() for p in text.split(","))):
            try:
                a, b = (int(t) for t in part.split("-"))
            except ValueError:
                raise InvalidTriangulation(f"bad diagonal {part!r}") from None
            diags.append((a, b))
        return cls(n, frozenset(diags))

    def edges(self):
        return [(i, i + 1) for i in range(1, self.n)] + [(1, self.n)]

    def triangles(self) -> list[tuple[int, int, int]]:
        known = set(self.diagonals) | set(self.edges())
        return [t for t in combinations(range(1, self.n + 1), 3)
                if all(tuple(sorted(p)) in known for p in combinations(t, 2))]

    @staticmethod
    def fan(n: int, apex: int = 1) -> "Triangulation":
        others = [v for v in range(1, n + 1) if v != apex and (v - apex) % n not in (1, n - 1)]
        return Triangulation(n, frozenset(tuple(sorted((apex, v))) for v in others))


def enumerate_triangulations(n: int) -> Iterator[Triangulation]:
    """All Catalan(n-2) triangulations of the ``n``-gon."""
    if n < 3:
        raise InvalidTriangulation("a polygon needs at least 3 vertices")
    if n > MAX_TRIANGULATION_N:
        raise ResourceLimit(f"n={n} exceeds the enumeration guard {MAX_TRIANGULATION_N}")
    for diags in _triangulate(tuple(range(1, n + 1))):
        yield Triangulation(n, frozenset(diags))


def _triangulate(poly: tuple[int, ...]):
    # the edge poly[0]-poly[-1] lies in exactly one triangle (poly[0], poly[m], poly[-1])
    if len(poly) < 3:
        yield ()
        return
    first, last = poly[0], poly[-1]
    for m in range(1, len(poly) - 1):
        apex = poly[m]
        here = []
        if m > 1:
            here.append((first, apex))
        if m < len(poly) - 2:
            here.append((apex, last))
        for left in _triangulate(poly[: m + 1]):
            for right in _triangulate(poly[m:]):
                yield tuple(here) + left + right


def cc_frieze(t: Triangulation, order: str = "forward") -> Specialization:
    """Conway-Coxeter frieze of ``t``: 1 on edges and diagonals, Ptolemy elsewhere.

    ``order`` ("forward" or "reverse") only changes the scan order of the
    propagation; the result does not depend on it.
    """
    n = t.n
    values = {e: 1 for e in t.edges()}
    values.update({d: 1 for d in t.diagonals})
    pending = [p for p in combinations(range(1, n + 1), 2) if p not in values]
    if order == "reverse":
        pending.reverse()
    elif order != "forward":
        raise ValueError(f"unknown order {order!r}")

    def val(a, b):
        return values.get((a, b) if a < b else (b, a))

    while pending:
        progress = []
        for b, d in pending:
            v = _ptolemy(b, d, n, val)
            if v is not None:
                values[(b, d)] = v
                progress.append((b, d))
        if not progress:
            raise InternalPostconditionFailure("Ptolemy propagation got stuck")
        done = set(progress)
        pending = [p for p in pending if p not in done]
    return Specialization(2, n, values)


def _ptolemy(b, d, n, val):
    """Solve ``p_ac p_bd = p_ab p_cd + p_ad p_bc`` for ``p_bd`` if possible."""
    inside = range(b + 1, d)
    outside = [v for v in range(1, n + 1) if v < b or v > d]
    for c in inside:
        for a in outside:
            p_ac = val(a, c)
            if not p_ac:
                continue
            parts = (val(a, b), val(c, d), val(a, d), val(b, c))
            if None in parts:
                continue
            num = parts[0] * parts[1] + parts[2] * parts[3]
            if num % p_ac:
                raise InternalPostconditionFailure("inexact Ptolemy division")
            return num // p_ac
    return None


def restrict(s: Specialization, vertices: Sequence[int]) -> Specialization:
    """The specialization on the labels ``vertices``, renumbered ``1..|S|``."""
    vertices = list(vertices)
    if vertices != sorted(set(vertices)) or (vertices and (vertices[0] < 1 or vertices[-1] > s.n)):
        raise SubsetTooSmall(f"{vertices} is not an increasing subset of 1..{s.n}")
    if len(vertices) < s.k:
        raise SubsetTooSmall(f"need at least {s.k} vertices")
    m = len(vertices)
    return Specialization(
        s.k, m, {t: s[tuple(vertices[i - 1] for i in t)] for t in k_subsets(m, s.k)}
    )


def triangle_admissible(a: int, b: int, c: int) -> bool:
    """Whether ``(a, b, c)`` labels a triangle in some Conway-Coxeter frieze."""
    if min(a, b, c) <= 0:
        raise NonPositive("labels must be positive")
    if not gcd(a, b) == gcd(b, c) == gcd(a, c):
        return False
    vals = {valuation(v, 2) for v in (a, b, c)}
    return vals == {0} or len(vals) > 1


def subpolygon_admissible(s: Specialization):
    """Whether a positive k=2 specialization sits inside a Conway-Coxeter frieze.

    Returns ``(holds, witness)``; the witness is ``("gcd", (i, j, l))`` or
    ``("prime", p, D)``.
    """
    if s.k != 2:
        raise PreconditionViolated("subpolygon test is for k = 2")
    if any(v <= 0 for v in s.values()):
        raise NonPositive("values must be positive")
    n = s.n
    for tri in combinations(range(1, n + 1), 3):
        i, j, l = tri
        a, b, c = s[(i, j)], s[(j, l)], s[(i, l)]
        if not gcd(a, b) == gcd(b, c) == gcd(a, c):
            return False, ("gcd", tri)
    for p in range(2, n):
        if not is_prime(p):
            continue
        clique = _equal_valuation_clique(s, p, p + 1)
        if clique is not None:
            return False, ("prime", p, clique)
    return True, None


def _equal_valuation_clique(s: Specialization, p: int, size: int):
    """Labels ``D`` of the given size whose pairwise values share one positive p-valuation."""
    n = s.n
    nu = {pair: valuation(v, p) for pair, v in s.items()}
    for m in sorted({v for v in nu.values() if v > 0}):
        adj = {i: set() for i in range(1, n + 1)}
        for (i, j), v in nu.items():
            if v == m:
                adj[i].add(j)
                adj[j].add(i)

        def grow(clique, candidates):
            if len(clique) == size:
                return clique
            for v in sorted(candidates):
                if v > (clique[-1] if clique else 0):
                    found = grow(clique + [v], candidates & adj[v])
                    if found:
                        return found
            return None

        found = grow([], set(adj))
        if found:
            return tuple(found)
    return None


def is_slk_frieze(s: Specialization) -> bool:
    """All values positive and every cyclic window ``[i, ..., i+k-1]`` equal to 1."""
    if any(v <= 0 for v in s.values()):
        return False
    n, k = s.n, s.k
    for i in range(n):
        window = tuple(sorted({(i + r) % n + 1 for r in range(k)}))
        if len(window) < k or s[window] != 1:
            return False
    return True


def frieze_table(s: Specialization) -> list[list[int]]:
    """Display grid ``T[r][c] = p(r, r+1, ..., r+k-2, c)`` with cyclic labels."""
    n, k = s.n, s.k
    return [
        [value_at(s, tuple((r + t) % n + 1 for t in range(k - 1)) + (c + 1,)) for c in range(n)]
        for r in range(n)
    ]


# --- extension to SL_k friezes -------------------------------------------


@dataclass(frozen=True)
class FriezeSequence:
    k: int
    columns: tuple[tuple[int, ...], ...]

    def __len__(self):
        return len(self.columns)

    def matrix(self) -> Matrix:
        return Matrix.from_columns(self.columns)

    def frozen(self, i: int) -> int:
        """Minor of the cyclic window starting at 0-based position ``i``, sorted by label."""
        ell = len(self.columns)
        labels = sorted({(i + r) % ell for r in range(self.k)})
        if len(labels) < self.k:
            return 0
        return det_columns([self.columns[j] for j in labels])

    def frozen_values(self) -> list[int]:
        return [self.frozen(i) for i in range(len(self.columns))]

    def to_json(self) -> dict:
        return {"k": self.k, "columns": [[str(v) for v in c] for c in self.columns]}


@dataclass(frozen=True)
class ExtensionStep:
    position: int  # 0-based index of the new column in the sequence after insertion
    vector: tuple[int, ...]
    d_before: int
    d_after: int
    case: str  # "A": some window normal imprimitive, "B": all primitive
    searched: bool = False  # True when the cone search replaced the HNF candidate

    def to_json(self):
        return {
            "position": self.position,
            "vector": [str(v) for v in self.vector],
            "d_before": str(self.d_before),
            "d_after": str(self.d_after),
            "case": self.case,
            "searched": self.searched,
        }


@dataclass
class ExtensionTrace:
    steps: list[ExtensionStep]
    final: FriezeSequence
    embedding: tuple[int, ...]  # 0-based positions of the original columns in final
    initial_d: int = field(default=1)

    def to_json(self):
        return {
            "steps": [s.to_json() for s in self.steps],
            "final": self.final.to_json(),
            "embedding": list(self.embedding),
            "initial_d": str(self.initial_d),
        }


def _twisted(seq, k, idx):
    """Element ``idx`` of the sequence extended by ``x[i + len] = (-1)^(k-1) x[i]``."""
    ell = len(seq)
    wraps, base = divmod(idx, ell)
    v = seq[base]
    if (k - 1) * wraps % 2:
        return tuple(-a for a in v)
    return v


def alpha_normals(window: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Normals of the ``k`` walls of the cone for inserting ``y`` mid-window.

    ``window`` holds ``2k-2`` consecutive columns. The vector ``alpha_j``
    satisfies ``alpha_j . y == det(w_j, ..., w_{k-1}, y, w_k, ..., w_{j+k-2})``
    (1-based), so it is orthogonal to ``w_j .. w_{j+k-2}``.
    """
    window = [tuple(c) for c in window]
    if not window:
        raise RankDeficientWindow("empty window")
    k = len(window[0])
    if len(window) != 2 * k - 2:
        raise RankDeficientWindow(f"need {2 * k - 2} columns, got {len(window)}")
    alphas = []
    for j in range(k):
        cols = window[j : j + k - 1]
        c0 = k - 1 - j  # position of y among the k columns
        alpha = []
        for i in range(k):
            minor_cols = [tuple(col[r] for r in range(k) if r != i) for col in cols]
            m = det_columns(minor_cols) if minor_cols else 1
            alpha.append(-m if (i + c0) % 2 else m)
        if not any(alpha):
            raise RankDeficientWindow(f"columns {j + 1}..{j + k - 1} of the window are dependent")
        alphas.append(tuple(alpha))
    return alphas


def _hnf_candidate(alphas):
    norms = [vector_volume(a) for a in alphas]
    reduced = [[x // g for x in a] for a, g in zip(alphas, norms)]
    res = column_hnf(reduced)
    h, u = res.h.rows, res.u
    k = len(alphas)
    w = []
    for i in range(k):
        partial = sum(h[i][t] * w[t] for t in range(i))
        d = h[i][i]
        w.append((d - partial) // d)  # puts h[i] . w in (0, d]
    y = tuple(sum(u[r, c] * w[c] for c in range(k)) for r in range(k))
    return norms, h, u, y


def _cone_search(alphas, norms, h, u, limit):
    """Lattice points of the open cone whose new-minor product is at most ``limit``.

    Exhaustive: every ``y`` with all ``alpha_j . y > 0`` is ``U w`` for an
    integer ``w`` with ``H w`` positive, and the product bound makes the walk
    over ``w`` finite.
    """
    k = len(alphas)
    found = []

    def rec(i, w, running):
        if i == k:
            found.append(tuple(sum(u[r, c] * w[c] for c in range(k)) for r in range(k)))
            return
        partial = sum(h[i][t] * w[t] for t in range(i))
        d = h[i][i]
        wi = (d - partial) // d  # smallest positive z
        while running * (partial + d * wi) * norms[i] <= limit:
            rec(i + 1, w + [wi], running * (partial + d * wi) * norms[i])
            wi += 1

    rec(0, [], 1)
    return found


def window_volume_product(seq, k) -> int:
    """Product of the volumes of all cyclic (k-1)-windows."""
    ell = len(seq)
    if k == 1:
        return 1
    return prod(
        volume(Matrix.from_columns([seq[(i + r) % ell] for r in range(k - 1)])) for i in range(ell)
    )


def extend_to_slk(x, *, max_steps: int = 10_000, audit=None) -> ExtensionTrace:
    """Insert columns until every cyclic window minor equals 1.

    ``x`` must have primitive columns and strictly positive maximal minors.
    Every step keeps the frozen product ``D`` from increasing and strictly
    decreases the pair ``(D, E)`` lexicographically, ``E`` being the product
    of the (k-1)-window volumes. ``audit``, if given, is called with the
    column list after every step.
    """
    x = as_matrix(x)
    k, n = x.shape
    if n < k:
        raise PreconditionViolated("need at least k columns")
    cols = x.columns()
    if any(vector_volume(c) != 1 for c in cols):
        raise PreconditionViolated("every column must have volume 1")
    for t in combinations(range(n), k):
        if det_columns([cols[j] for j in t]) <= 0:
            raise PreconditionViolated(f"minor at {tuple(j + 1 for j in t)} is not positive")
    seq = list(cols)
    embedding = list(range(n))
    frozen = FriezeSequence(k, tuple(seq)).frozen_values()
    d_now = prod(frozen)
    initial = d_now
    steps: list[ExtensionStep] = []
    while d_now > 1 and k > 1:
        if len(steps) >= max_steps:
            raise ResourceLimit(f"step limit {max_steps} reached")
        step, seq, frozen = _insert_once(seq, k, frozen, d_now)
        embedding = [p + 1 if p >= step.position else p for p in embedding]
        steps.append(step)
        d_now = step.d_after
        if audit is not None:
            audit(list(seq))
    final = FriezeSequence(k, tuple(seq))
    if any(v != 1 for v in final.frozen_values()):
        raise InternalPostconditionFailure("frozen values are not all 1")
    return ExtensionTrace(steps, final, tuple(embedding), initial)


def _place(seq, k, start, y):
    """Insert ``y`` (twisted coordinates) between window slots k-1 and k."""
    ell = len(seq)
    wraps, base = divmod(start + k - 2, ell)
    if (k - 1) * wraps % 2:
        y = tuple(-a for a in y)
    pos = base + 1
    return pos, seq[:pos] + [tuple(y)] + seq[pos:]


def _insert_once(seq, k, frozen, d_now):
    ell = len(seq)
    e_now = window_volume_product(seq, k)
    fallback = None
    for start in range(ell):
        spanning = [(start + r) % ell for r in range(k - 1)]
        old = prod(frozen[i] for i in spanning)
        if old == 1:
            continue
        window = [_twisted(seq, k, start + r) for r in range(2 * k - 2)]
        alphas = alpha_normals(window)
        norms, h, u, y = _hnf_candidate(alphas)
        case = "A" if any(g > 1 for g in norms) else "B"
        candidates = [(y, False)]
        if prod(_dot(a, y) for a in alphas) >= old:
            candidates = [(c, True) for c in _cone_search(alphas, norms, h, u, old)]
        best = None
        for cand, searched in candidates:
            new = [_dot(a, cand) for a in alphas]
            if min(new) <= 0:
                raise InternalPostconditionFailure("inserted vector left the cone")
            d_after = d_now // old * prod(new)
            pos, new_seq = _place(seq, k, start, cand)
            key = (d_after, window_volume_product(new_seq, k) if d_after == d_now else 0)
            if best is None or key < best[0]:
                best = (key, pos, new_seq, cand, searched)
        if best is None:
            continue
        (d_after, e_after), pos, new_seq, cand, searched = best
        if d_after < d_now:
            return _finish(seq, k, d_now, d_after, pos, new_seq, case, searched)
        if fallback is None and e_after < e_now:
            fallback = (d_after, pos, new_seq, case, searched)
    if fallback is None:
        raise ExtensionStalled("no insertion decreases the frozen or window-volume product")
    d_after, pos, new_seq, case, searched = fallback
    return _finish(seq, k, d_now, d_after, pos, new_seq, case, searched)


def _finish(seq, k, d_now, d_after, pos, new_seq, case, searched):
    new_frozen = FriezeSequence(k, tuple(new_seq)).frozen_values()
    if prod(new_frozen) != d_after:
        raise InternalPostconditionFailure("frozen bookkeeping mismatch")
    step = ExtensionStep(pos, new_seq[pos], d_now, d_after, case, searched)
    return step, new_seq, new_frozen


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def check_extension(trace: ExtensionTrace, original) -> list[str]:
    """Audit a finished extension; returns a list of problems (empty if fine)."""
    original = as_matrix(original)
    problems = []
    final = trace.final
    cols = list(final.columns)
    if [cols[p] for p in trace.embedding] != original.columns():
        problems.append("original columns not embedded")
    if list(trace.embedding) != sorted(trace.embedding):
        problems.append("embedding not order preserving")
    if any(v != 1 for v in final.frozen_values()):
        problems.append("some frozen value differs from 1")
    d_prev = trace.initial_d
    for st in trace.steps:
        if not st.d_after < st.d_before == d_prev:
            problems.append(f"D did not strictly decrease at step {st}")
        d_prev = st.d_after
    if len(trace.steps) > trace.initial_d:
        problems.append(f"{len(trace.steps)} steps exceed the initial D = {trace.initial_d}")
    k = final.k
    for t in combinations(range(len(cols)), k):
        if det_columns([cols[j] for j in t]) <= 0:
            problems.append(f"minor {t} not positive")
            break
    return problems


def slk_specialization(trace: ExtensionTrace) -> Specialization:
    return pluecker_of_matrix(trace.final.matrix())

