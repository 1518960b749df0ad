"""Structure description files, batch checking and report emission.

A structure file is a JSON object::

    {
      "name": "odd-contact-1",                      (optional)
      "coordinates": [{"name": "x", "parity": "even", "weight": 0}, ...],
      "structure": {"S": "<expr over lifted names>", "Q": {"<coord>": "<expr>", ...}},
      "checks": [{"id": "JACOBI_LODAY", "trials": 200, "max_degree": 3,
                  "max_coeff": 5, "seed": 0}, ...]  (optional)
    }

Momenta are named ``p_<name>``. Q components left out are zero. Without a
checks section the whole catalog runs with the default sampler settings.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field, replace
from importlib import resources
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from ..errors import ExprError, FormatError, StructureError, SuperJacobiError, UsageError
from ..identities import (
    CATALOG,
    CORE_IDS,
    EXPECTED_FAIL,
    FAIL,
    NOT_APPLICABLE,
    PASS,
    SKIPPED,
    CheckReport,
    IdentityId,
    Sampler,
    verify_identity,
)
from ..oddjacobi import OddJacobiStructure, StructureReport, check_structure
from ..phasespace import VectorField, lift
from ..superpoly import Chart, Parity
from .parser import parse_poly
from .printer import print_expr, print_field

DEFAULT_TRIALS = 100
DEFAULT_MAX_DEGREE = 3
DEFAULT_MAX_COEFF = 5
DEFAULT_SEED = 0

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

BUNDLED_PREFIX = "bundled:"

_NAME = re.compile(r"[A-Za-z_][A-Za-z_0-9]*\Z")


@dataclass(frozen=True)
class CheckSpec:
    id: IdentityId
    trials: int = DEFAULT_TRIALS
    max_degree: int = DEFAULT_MAX_DEGREE
    max_coeff: int = DEFAULT_MAX_COEFF
    seed: int = DEFAULT_SEED

    def sampler(self) -> Sampler:
        return Sampler(max_degree=self.max_degree, max_coeff=self.max_coeff)


def default_checks() -> List[CheckSpec]:
    return [CheckSpec(i) for i in CORE_IDS]


def _ptr(*parts) -> str:
    return "".join("/" + str(p).replace("~", "~0").replace("/", "~1") for p in parts)


def _expect(value, kind, pointer, what):
    if kind is int:
        ok = isinstance(value, int) and not isinstance(value, bool)
    else:
        ok = isinstance(value, kind)
    if not ok:
        raise FormatError(f"{what} must be {_KIND_NAMES.get(kind, kind.__name__)}", pointer)
    return value


_KIND_NAMES = {dict: "an object", list: "an array", str: "a string", int: "an integer"}


def _check_keys(obj: dict, allowed: Iterable[str], pointer: str, required: Iterable[str] = ()):
    for key in obj:
        if key not in allowed:
            raise FormatError(f"unknown field {key!r}", _ptr_join(pointer, key))
    for key in required:
        if key not in obj:
            raise FormatError(f"missing field {key!r}", pointer)


def _ptr_join(pointer: str, key) -> str:
    return pointer + _ptr(key)


def _parse_coordinates(data) -> Chart:
    _expect(data, list, "/coordinates", "coordinates")
    if not data:
        raise FormatError("at least one coordinate is required", "/coordinates")
    specs = []
    seen = set()
    for i, entry in enumerate(data):
        here = _ptr("coordinates", i)
        _expect(entry, dict, here, "coordinate entry")
        _check_keys(entry, ("name", "parity", "weight"), here, required=("name", "parity"))
        name = _expect(entry["name"], str, here + "/name", "name")
        if not _NAME.match(name):
            raise FormatError(f"invalid coordinate name {name!r}", here + "/name")
        if name in seen:
            raise FormatError(f"duplicate coordinate {name!r}", here + "/name")
        seen.add(name)
        parity = entry["parity"]
        if parity not in ("even", "odd"):
            raise FormatError(f"parity must be \"even\" or \"odd\", found {parity!r}", here + "/parity")
        weight = _expect(entry.get("weight", 0), int, here + "/weight", "weight")
        specs.append((name, 0 if parity == "even" else 1, weight))
    for i, (name, _, _) in enumerate(specs):
        if f"p_{name}" in seen:
            raise FormatError(f"momentum name p_{name} collides with a declared coordinate",
                              _ptr("coordinates", i, "name"))
    return Chart(specs)


def _parse_expr_at(src, chart, pointer):
    _expect(src, str, pointer, "expression")
    try:
        return parse_poly(src, chart)
    except ExprError as exc:
        raise ExprError(f"{pointer}: {exc.reason}", exc.line, exc.column) from None


def _parse_structure(data, chart: Chart, name: str) -> OddJacobiStructure:
    _expect(data, dict, "/structure", "structure")
    _check_keys(data, ("S", "Q"), "/structure", required=("S", "Q"))
    ps = lift(chart)
    S = _parse_expr_at(data["S"], ps.lifted, "/structure/S")
    qdata = _expect(data["Q"], dict, "/structure/Q", "Q")
    comps = {}
    for key, src in qdata.items():
        if key not in chart.names:
            raise FormatError(f"Q has a component along unknown coordinate {key!r}", _ptr("structure", "Q", key))
        comps[key] = _parse_expr_at(src, chart, _ptr("structure", "Q", key))
    try:
        Q = VectorField(chart, Parity.ODD, comps)
        return OddJacobiStructure(ps, S, Q, name=name)
    except SuperJacobiError as exc:
        raise StructureError(f"/structure: {exc}") from None


def _parse_checks(data) -> List[CheckSpec]:
    _expect(data, list, "/checks", "checks")
    out = []
    seen = set()
    for i, entry in enumerate(data):
        here = _ptr("checks", i)
        _expect(entry, dict, here, "check entry")
        _check_keys(entry, ("id", "trials", "max_degree", "max_coeff", "seed"), here, required=("id",))
        raw = _expect(entry["id"], str, here + "/id", "id")
        try:
            ident = IdentityId.parse(raw)
        except UsageError:
            raise FormatError(f"unknown identity id {raw!r}", here + "/id") from None
        if ident in seen:
            raise FormatError(f"identity {ident} listed twice", here + "/id")
        seen.add(ident)
        kw = {}
        for key, low in (("trials", 1), ("max_degree", 0), ("max_coeff", 1), ("seed", 0)):
            if key in entry:
                v = _expect(entry[key], int, f"{here}/{key}", key)
                if v < low:
                    raise FormatError(f"{key} must be at least {low}", f"{here}/{key}")
                kw[key] = v
        out.append(CheckSpec(ident, **kw))
    return out


def parse_structure_document(doc: Any) -> Tuple[OddJacobiStructure, List[CheckSpec]]:
    _expect(doc, dict, "", "document")
    _check_keys(doc, ("name", "description", "coordinates", "structure", "checks"), "",
                required=("coordinates", "structure"))
    name = _expect(doc.get("name", ""), str, "/name", "name")
    chart = _parse_coordinates(doc["coordinates"])
    J = _parse_structure(doc["structure"], chart, name)
    checks = _parse_checks(doc["checks"]) if "checks" in doc else default_checks()
    return J, checks


def bundled_names() -> List[str]:
    root = resources.files("superjacobi") / "data"
    return sorted(p.name for p in root.iterdir() if p.name.endswith(".json"))


def read_text(path) -> str:
    """Read a structure file; ``bundled:<name>`` selects a file shipped with the package."""
    path = str(path)
    if path.startswith(BUNDLED_PREFIX):
        name = path[len(BUNDLED_PREFIX):]
        if not name.endswith(".json"):
            name += ".json"
        if name not in bundled_names():
            raise FileNotFoundError(f"no bundled structure named {name!r}")
        return (resources.files("superjacobi") / "data" / name).read_text(encoding="utf-8")
    return Path(path).read_text(encoding="utf-8")


def load_structure(path) -> Tuple[OddJacobiStructure, List[CheckSpec]]:
    """Load a structure file, returning the structure and its check list.

    Raises OSError when the file cannot be read, FormatError on layout
    problems and ExprError on malformed expressions.
    """
    text = read_text(path)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc.msg} at line {exc.lineno}, column {exc.colno}") from None
    return parse_structure_document(doc)


# --- running ---------------------------------------------------------------------

@dataclass
class CheckResult:
    spec: CheckSpec
    report: CheckReport


@dataclass
class RunReport:
    structure: str
    conditions: StructureReport
    results: List[CheckResult] = field(default_factory=list)
    exit_code: int = EXIT_OK


def select_checks(checks: Sequence[CheckSpec], only: Optional[Sequence[str]] = None,
                  seed: Optional[int] = None, trials: Optional[int] = None) -> List[CheckSpec]:
    """Apply command-line overrides; ``only`` ids missing from the file use defaults."""
    out = list(checks)
    if only:
        wanted = [IdentityId.parse(i) for i in only]
        by_id = {c.id: c for c in out}
        out = [by_id.get(i, CheckSpec(i)) for i in dict.fromkeys(wanted)]
    if seed is not None:
        out = [replace(c, seed=seed) for c in out]
    if trials is not None:
        if trials < 1:
            raise UsageError("--trials must be positive")
        out = [replace(c, trials=trials) for c in out]
    order = {i: k for k, i in enumerate(CORE_IDS)}
    return sorted(out, key=lambda c: order[c.id])


def run_checks(J: OddJacobiStructure, checks: Sequence[CheckSpec]) -> RunReport:
    """Check the structure conditions, then every requested identity in catalog order.

    Exit code 0 when everything passes (expected-fail-confirmed and
    not-applicable count as passing), 1 otherwise. When a structure
    condition fails the identities are reported as skipped.
    """
    conditions = check_structure(J)
    report = RunReport(J.name, conditions)
    for spec in checks:
        if conditions.passed:
            rep = verify_identity(J, spec.id, trials=spec.trials, sampler=spec.sampler(), seed=spec.seed)
        else:
            rep = CheckReport(spec.id, 0, SKIPPED, seed=spec.seed)
        report.results.append(CheckResult(spec, rep))
    ok = conditions.passed and all(r.report.ok for r in report.results)
    report.exit_code = EXIT_OK if ok else EXIT_FAILURE
    return report


# --- emission ----------------------------------------------------------------------

def _defect_text(d) -> str:
    if isinstance(d, str):
        return d
    if isinstance(d, VectorField):
        return print_field(d)
    return print_expr(d)


def report_dict(report: RunReport) -> Dict[str, Any]:
    checks = []
    for res in report.results:
        r, spec = res.report, res.spec
        checks.append({
            "id": r.identity.value,
            "statement": CATALOG[r.identity].statement,
            "status": r.status,
            "trials": r.trials,
            "failures": r.failures,
            "seed": r.seed,
            "max_degree": spec.max_degree,
            "max_coeff": spec.max_coeff,
            "witnesses": [
                {
                    "trial": w.trial,
                    "inputs": [print_expr(p) for p in w.inputs],
                    "defects": {k: _defect_text(v) for k, v in w.defects.items()},
                }
                for w in r.witnesses
            ],
            "notes": list(r.notes),
        })
    return {
        "structure": report.structure,
        "exit_code": report.exit_code,
        "conditions": [
            {"name": c.name, "passed": c.passed, "residual": print_expr(c.residual)}
            for c in report.conditions
        ],
        "checks": checks,
    }


def emit_report(report: RunReport, fmt: str = "text") -> str:
    """Serialize a run report as ``text`` (one line per identity) or ``json``."""
    if fmt == "json":
        return json.dumps(report_dict(report), indent=2, ensure_ascii=False) + "\n"
    if fmt != "text":
        raise UsageError(f"unknown report format {fmt!r}")
    lines = [f"structure: {report.structure or '(unnamed)'}"]
    for c in report.conditions:
        status = "pass" if c.passed else "FAIL"
        extra = "" if c.passed else f"  residual = {print_expr(c.residual)}"
        lines.append(f"  {status:<24} condition:{c.name}{extra}")
    notes = []
    for res in report.results:
        r = res.report
        status = r.status if r.status != FAIL else "FAIL"
        line = f"  {status:<24} {r.identity.value:<22} trials={r.trials} seed={r.seed}"
        if r.witnesses:
            w = r.witnesses[0]
            ins = ", ".join(print_expr(p) for p in w.inputs)
            label, defect = next(iter(w.defects.items()))
            line += f"  witness: ({ins}) {label} = {_defect_text(defect)}"
        lines.append(line)
        notes.extend(f"  {r.identity.value}: {n}" for n in r.notes)
    if notes:
        lines.append("notes:")
        lines.extend(notes)
    lines.append(f"exit code {report.exit_code}")
    return "\n".join(lines) + "\n"


__all__ = [
    "CheckSpec", "RunReport", "CheckResult", "load_structure", "parse_structure_document",
    "run_checks", "select_checks", "emit_report", "report_dict", "default_checks", "bundled_names",
    "EXIT_OK", "EXIT_FAILURE", "EXIT_USAGE", "PASS", "FAIL", "EXPECTED_FAIL", "NOT_APPLICABLE", "SKIPPED",
]
