"""Loading and re-validating the shipped JSON fixtures."""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .arrangements import (
    ClusterAssignment,
    check_non_crossing,
    compare_positive_roots,
    line_set,
    verify_cluster_values,
)
from .errors import GrassFriezeError, MissingFixture
from .exactlin import Matrix, vector_volume
from .frieze import frieze_table, is_slk_frieze
from .pluecker import Specialization, pluecker_of_matrix
from .volume_one import Cond2Failure, construct_volume_one, decide_volume_one


@dataclass(frozen=True)
class FixtureResult:
    name: str
    passed: bool
    detail: str = ""

    def to_json(self):
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


def default_dir() -> Path:
    return Path(str(resources.files("grassfrieze") / "data"))


def load_fixtures(directory=None) -> dict[str, dict]:
    directory = Path(directory) if directory is not None else default_dir()
    files = sorted(directory.glob("*.json")) if directory.is_dir() else []
    if not files:
        raise MissingFixture(f"no fixture files in {directory}")
    out = {}
    for path in files:
        with open(path) as f:
            data = json.load(f)
        out[data.get("name", path.stem)] = data
    return out


def primitive_with_minors(x: Matrix, s: Specialization) -> bool:
    """Validator shared by constructed and published matrices."""
    return pluecker_of_matrix(x) == s and all(vector_volume(c) == 1 for c in x.columns())


def _check_arrangement(fx) -> list[str]:
    problems = []
    x = Matrix.from_json(fx["matrix"])
    c = ClusterAssignment.from_json(fx)
    ok, bad = verify_cluster_values(x, c)
    if not ok:
        problems.append(f"cluster values differ at {[m.word for m in bad]}")
    if any(vector_volume(col) != 1 for col in x.columns()):
        problems.append("imprimitive column")
    if len(line_set(x)) != fx["lines"]:
        problems.append(f"{len(line_set(x))} lines, expected {fx['lines']}")
    if fx.get("roots") and not compare_positive_roots(x, fx["roots"]):
        problems.append(f"columns are not the {fx['roots']} positive roots")
    return problems


def _check_slk(fx) -> list[str]:
    problems = []
    x = Matrix.from_json(fx["matrix"])
    s = pluecker_of_matrix(x)
    c = ClusterAssignment.from_json(fx)
    ok, bad = verify_cluster_values(x, c)
    if not ok:
        problems.append(f"cluster values differ at {[m.word for m in bad]}")
    if not check_non_crossing(c.subsets)[0]:
        problems.append("cluster is crossing")
    if not is_slk_frieze(s):
        problems.append("not an SL_k frieze")
    table = [[int(v) for v in row] for row in fx["table"]]
    if frieze_table(s) != table:
        problems.append("display table differs")
    return problems


def _check_volume_one(fx) -> list[str]:
    problems = []
    s = Specialization.from_json(fx["spec"])
    verdict = decide_volume_one(s)
    if verdict.exists != fx["exists"]:
        return [f"exists={verdict.exists}, expected {fx['exists']}"]
    if verdict.exists:
        if not primitive_with_minors(construct_volume_one(s), s):
            problems.append("constructed matrix fails the validator")
        if "matrix" in fx and not primitive_with_minors(Matrix.from_json(fx["matrix"]), s):
            problems.append("published matrix fails the validator")
    else:
        want = fx.get("failed_condition") or {}
        got = verdict.failed_condition
        if want.get("condition") == 2:
            if not isinstance(got, Cond2Failure) or str(got.prime) != want.get("prime"):
                problems.append(f"witness {got} differs from {want}")
    return problems


CHECKERS = {
    "arrangement": _check_arrangement,
    "slk_frieze": _check_slk,
    "volume_one": _check_volume_one,
}


def fixtures_verify(directory=None) -> list[FixtureResult]:
    """Re-run every fixture; one result per file, failures named."""
    results = []
    for name, fx in load_fixtures(directory).items():
        checker = CHECKERS.get(fx.get("kind"))
        if checker is None:
            results.append(FixtureResult(name, False, f"unknown kind {fx.get('kind')!r}"))
            continue
        try:
            problems = checker(fx)
        except (GrassFriezeError, KeyError, TypeError, ValueError) as e:
            problems = [f"{type(e).__name__}: {e}"]
        results.append(FixtureResult(name, not problems, "; ".join(problems)))
    return results
