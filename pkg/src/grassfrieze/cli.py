"""Command-line interface.

Exit codes: 0 success or property holds, 1 property fails (witness on
stdout), 2 malformed input, 3 resource limit hit. Machine output is JSON with
integers as decimal strings; ``--pretty`` switches to plain-text tables.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from .arrangements import (
    ClusterAssignment,
    compare_positive_roots,
    line_set,
    verify_cluster_values,
)
from .errors import GrassFriezeError, InputError, InternalPostconditionFailure, ResourceLimit
from .exactlin import Matrix
from .fixtures import fixtures_verify
from .frieze import (
    Triangulation,
    cc_frieze,
    check_extension,
    extend_to_slk,
    frieze_table,
    subpolygon_admissible,
    triangle_admissible,
)
from .oracles import (
    k2_extension_oracle,
    primitive_rep_exists_k2n3,
    random_extension_input,
    random_matrix,
    triangle_sweep,
)
from .pluecker import Specialization, check_pluecker_relations, pluecker_of_matrix
from .realize import realize
from .volume_one import check_n_bound, construct_volume_one, decide_volume_one

OK, FAILS, BAD_INPUT, LIMIT = 0, 1, 2, 3


class Outcome(Exception):
    """Carries a payload and an exit code out of a command."""

    def __init__(self, payload, code=OK, pretty=None):
        super().__init__()
        self.payload = payload
        self.code = code
        self.pretty = pretty


# --- input helpers -------------------------------------------------------


def _read_json(path):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as f:
            return json.load(f)
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise InputError(f"{path} is not valid JSON: {e.msg} at line {e.lineno}") from None


def _spec(path) -> Specialization:
    return Specialization.from_json(_read_json(path))


def _matrix(path) -> Matrix:
    data = _read_json(path)
    if isinstance(data, dict) and "matrix" in data:
        data = data["matrix"]
    return Matrix.from_json(data)


def _write_out(path, x: Matrix):
    if path:
        with open(path, "w") as f:
            json.dump(x.to_json(), f)


def _grid(rows) -> str:
    rows = [[str(v) for v in r] for r in rows]
    width = max((len(v) for r in rows for v in r), default=1)
    return "\n".join(" ".join(v.rjust(width) for v in r) for r in rows)


# --- commands ------------------------------------------------------------


def cmd_realize(a):
    s = _spec(a.spec)
    x = realize(s, allow_zero=a.allow_zero)
    _write_out(a.out, x)
    raise Outcome({"matrix": x.to_json()}, pretty=_grid(x.rows))


def cmd_check(a):
    s = _spec(a.spec)
    bad = check_pluecker_relations(s, first_only=True)
    if bad:
        raise Outcome({"consistent": False, "violation": bad[0].to_json()}, FAILS,
                      pretty="inconsistent: " + bad[0].describe())
    raise Outcome({"consistent": True}, pretty="consistent")


def cmd_vo_check(a):
    v = decide_volume_one(_spec(a.spec), allow_zero=a.allow_zero)
    raise Outcome(v.to_json(), OK if v.exists else FAILS,
                  pretty=f"exists: {v.exists}  eps: {v.epsilon}  failed: {v.failed_condition}")


def cmd_vo_construct(a):
    s = _spec(a.spec)
    v = decide_volume_one(s, allow_zero=a.allow_zero)
    if not v.exists:
        raise Outcome(v.to_json(), FAILS, pretty=f"no representation: {v.failed_condition}")
    x = construct_volume_one(s, allow_zero=a.allow_zero)
    _write_out(a.out, x)
    raise Outcome({"matrix": x.to_json(), "epsilon": str(v.epsilon)}, pretty=_grid(x.rows))


def cmd_cc(a):
    t = Triangulation.parse(a.n, a.diagonals)
    s = cc_frieze(t)
    raise Outcome(s.to_json(), pretty=_grid(frieze_table(s)))


def cmd_extend(a):
    x = _matrix(a.matrix)
    trace = extend_to_slk(x, max_steps=a.limit or 10_000)
    payload = trace.to_json()
    payload["problems"] = check_extension(trace, x)
    if a.trace:
        with open(a.trace, "w") as f:
            json.dump(payload, f, indent=1)
    lines = [f"{st.d_before} -> {st.d_after} at {st.position}: {list(st.vector)}" for st in trace.steps]
    lines.append(_grid(trace.final.matrix().rows))
    raise Outcome(payload, FAILS if payload["problems"] else OK, pretty="\n".join(lines))


def cmd_triangle(a):
    ok = triangle_admissible(a.a, a.b, a.c)
    raise Outcome({"admissible": ok}, OK if ok else FAILS, pretty=str(ok))


def cmd_subpolygon(a):
    ok, witness = subpolygon_admissible(_spec(a.spec))
    payload = {"admissible": ok, "witness": None if witness is None else [str(w) for w in witness]}
    raise Outcome(payload, OK if ok else FAILS, pretty=f"{ok} {witness or ''}".strip())


def cmd_oracle_triangles(a):
    if a.limit and a.n_max > a.limit:
        raise ResourceLimit(f"n-max {a.n_max} above --limit {a.limit}")
    sweep = triangle_sweep(a.n_max, a.label_max)
    payload = sweep.to_json()
    failed = payload["realized_but_rejected"] or payload["unrealized_small"]
    raise Outcome(payload, FAILS if failed else OK,
                  pretty="\n".join(f"{k}: {v}" for k, v in payload.items()))


def _cluster(path) -> ClusterAssignment:
    return ClusterAssignment.from_json(_read_json(path))


def cmd_arr_verify(a):
    x = _matrix(a.matrix)
    ok, bad = verify_cluster_values(x, _cluster(a.cluster or a.matrix))
    raise Outcome({"ok": ok, "mismatches": [m.to_json() for m in bad]}, OK if ok else FAILS,
                  pretty="ok" if ok else "\n".join(str(m) for m in bad))


def cmd_arr_lines(a):
    ls = line_set(_matrix(a.matrix))
    raise Outcome(ls.to_json(), pretty=f"{len(ls)} lines\n" + _grid(ls.normals))


def cmd_arr_roots(a):
    ok = compare_positive_roots(_matrix(a.matrix), a.system)
    raise Outcome({"matches": ok, "system": a.system}, OK if ok else FAILS, pretty=str(ok))


def cmd_fixtures(a):
    results = fixtures_verify(a.dir)
    ok = all(r.passed for r in results)
    raise Outcome({"all_passed": ok, "fixtures": [r.to_json() for r in results]}, OK if ok else FAILS,
                  pretty="\n".join(f"{'PASS' if r.passed else 'FAIL'} {r.name} {r.detail}" for r in results))


def cmd_oracle(a):
    rng = random.Random(a.seed)
    count = a.count if not a.limit else min(a.count, a.limit)
    failures = []
    if a.check == "roundtrip":
        for _ in range(count):
            k = rng.randint(1, 3)
            x = random_matrix(k, rng.randint(k, 6), rng)
            s = pluecker_of_matrix(x)
            if pluecker_of_matrix(realize(s)) != s or check_pluecker_relations(s, first_only=True):
                failures.append(x.to_json())
    elif a.check == "extension":
        for _ in range(count):
            k = rng.choice([2, 3])
            x = random_extension_input(k, rng)
            trace = extend_to_slk(x)
            problems = check_extension(trace, x)
            if k == 2 and list(trace.final.columns) != k2_extension_oracle(x):
                problems.append("differs from the hull-chain oracle")
            if problems:
                failures.append({"matrix": x.to_json(), "problems": problems})
    elif a.check == "completeness":
        for p12 in range(1, 7):
            for p13 in range(1, 7):
                for p23 in range(1, 7):
                    s = Specialization(2, 3, {(1, 2): p12, (1, 3): p13, (2, 3): p23})
                    want = primitive_rep_exists_k2n3(p12, p13, p23) is not None
                    if decide_volume_one(s).exists != want:
                        failures.append([p12, p13, p23])
        count = 216
    elif a.check == "n-bound":
        for _ in range(count):
            k = rng.randint(2, 3)
            s = pluecker_of_matrix(random_matrix(k, rng.randint(k, 6), rng))
            for q in (2, 3, 5):
                if not check_n_bound(s, q).holds:
                    failures.append({"spec": s.to_json(), "q": q})
    payload = {"check": a.check, "seed": a.seed, "trials": count, "failures": failures}
    raise Outcome(payload, FAILS if failures else OK,
                  pretty=f"{a.check}: {count} trials, {len(failures)} failures")


# --- parser --------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    def global_flags(parser, suppress):
        # subcommands repeat the flags without defaults so they never reset a value given earlier
        d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
        parser.add_argument("--pretty", action="store_true", default=d(False),
                            help="plain-text output instead of JSON")
        parser.add_argument("--seed", type=int, default=d(0), help="seed for randomized sweeps")
        parser.add_argument("--limit", type=int, default=d(None),
                            help="resource guard (steps, trials or n)")

    common = argparse.ArgumentParser(add_help=False)
    global_flags(common, suppress=True)
    p = argparse.ArgumentParser(prog="grassfrieze",
                                description="Exact integer Pluecker specializations and friezes.")
    global_flags(p, suppress=False)
    sub = p.add_subparsers(dest="verb", required=True)

    def leaf(parent, name, func, help_):
        q = parent.add_parser(name, parents=[common], help=help_)
        q.set_defaults(func=func)
        return q

    def spec_arg(q, zero=False, out=False):
        q.add_argument("--spec", required=True, help="specialization JSON file ('-' for stdin)")
        if zero:
            q.add_argument("--allow-zero", action="store_true", help="accept zero values")
        if out:
            q.add_argument("--out", help="also write the matrix JSON here")

    spec_arg(leaf(sub, "realize", cmd_realize, "matrix with the given maximal minors"), zero=True, out=True)
    spec_arg(leaf(sub, "check", cmd_check, "check the Pluecker relations"))

    vo = sub.add_parser("volume-one", help="representations with primitive columns")
    vos = vo.add_subparsers(dest="action", required=True)
    spec_arg(leaf(vos, "check", cmd_vo_check, "decide existence"), zero=True)
    spec_arg(leaf(vos, "construct", cmd_vo_construct, "build one"), zero=True, out=True)

    fr = sub.add_parser("frieze", help="frieze patterns")
    frs = fr.add_subparsers(dest="action", required=True)
    q = leaf(frs, "cc", cmd_cc, "Conway-Coxeter frieze of a triangulation")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--diagonals", required=True, help='e.g. "1-3,1-4"')
    q = leaf(frs, "extend", cmd_extend, "extend to an SL_k frieze")
    q.add_argument("--matrix", required=True)
    q.add_argument("--trace", help="also write the trace JSON here")
    q = leaf(frs, "triangle", cmd_triangle, "triangle label test")
    for name in "abc":
        q.add_argument(name, type=int)
    spec_arg(leaf(frs, "subpolygon", cmd_subpolygon, "subpolygon test (k = 2)"))
    q = leaf(frs, "oracle-triangles", cmd_oracle_triangles, "sweep triangulations against the triangle test")
    q.add_argument("--n-max", type=int, default=9)
    q.add_argument("--label-max", type=int, default=20)

    ar = sub.add_parser("arrangements", help="cluster fixtures and line sets")
    ars = ar.add_subparsers(dest="action", required=True)
    q = leaf(ars, "verify", cmd_arr_verify, "compare minors with a cluster assignment")
    q.add_argument("--matrix", required=True)
    q.add_argument("--cluster", help="assignment JSON (defaults to the matrix file)")
    q = leaf(ars, "lines", cmd_arr_lines, "distinct lines spanned by the columns")
    q.add_argument("--matrix", required=True)
    q = leaf(ars, "roots", cmd_arr_roots, "compare columns with positive roots")
    q.add_argument("--matrix", required=True)
    q.add_argument("--system", required=True, help="A3 or B3")

    fx = sub.add_parser("fixtures", help="shipped fixtures")
    fxs = fx.add_subparsers(dest="action", required=True)
    q = leaf(fxs, "verify", cmd_fixtures, "re-validate every fixture")
    q.add_argument("--dir", help="fixture directory (defaults to the packaged data)")

    q = leaf(sub, "oracle", cmd_oracle, "randomized cross-checks")
    q.add_argument("check", choices=["roundtrip", "extension", "completeness", "n-bound"])
    q.add_argument("--count", type=int, default=100)
    return p


def _emit(payload, pretty_text, pretty):
    if pretty and pretty_text is not None:
        print(pretty_text)
    else:
        print(json.dumps(payload, indent=1, sort_keys=True) if pretty
              else json.dumps(payload, separators=(",", ":"), sort_keys=True))


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return BAD_INPUT if e.code else OK
    try:
        args.func(args)
    except Outcome as o:
        _emit(o.payload, o.pretty, args.pretty)
        return o.code
    except ResourceLimit as e:
        _emit({"error": "ResourceLimit", "message": str(e)}, f"resource limit: {e}", args.pretty)
        return LIMIT
    except InternalPostconditionFailure as e:
        _emit({"error": type(e).__name__, "message": str(e)}, f"{type(e).__name__}: {e}", args.pretty)
        return FAILS
    except GrassFriezeError as e:
        payload = {"error": type(e).__name__, "message": str(e)}
        violations = getattr(e, "violations", None)
        if violations:
            payload["violation"] = violations[0].to_json()
        _emit(payload, f"{type(e).__name__}: {e}", args.pretty)
        return BAD_INPUT
    return OK


def main():
    sys.exit(run())
