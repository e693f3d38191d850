"""System-description input and result-document output (JSON).

Rationals travel as strings ``"p/q"``; complex entries as
``{"re": "p/q", "im": "p/q"}``.  JSON floats are refused.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .algebra import HistorySpace
from .coevent import CoEvent, from_support
from .errors import DomainError
from .measure import ClassicalMeasure, Measure, QuantumMeasure, to_rational
from .scheme import SchemeSolution

MEASURE_TYPES = ("classical", "quantum-amplitude", "quantum-decoherence")
SCHEMA_VERSION = 1


class DocumentError(ValueError):
    """Malformed input document; ``where`` locates the problem."""

    def __init__(self, message: str, where: str = ""):
        self.where = where
        super().__init__(f"{where}: {message}" if where else message)


@dataclass
class SystemDescription:
    name: str
    space: HistorySpace
    measure_type: str
    measure: Measure
    normalize: bool
    digest: str


def canonical_json(doc) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def dump_json(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def read_json(path: str | Path):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise DocumentError(f"cannot read file: {exc.strerror}", str(path)) from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(exc.msg, f"{path}:{exc.lineno}:{exc.colno}") from None


def _require(doc: dict, key: str, kind, where: str):
    if key not in doc:
        raise DocumentError(f"missing required key {key!r}", where)
    value = doc[key]
    if not isinstance(value, kind) or isinstance(value, bool) and kind is not bool:
        raise DocumentError(f"{key!r} has the wrong type ({type(value).__name__})", where)
    return value


def _number(x, where: str):
    if isinstance(x, float):
        raise DocumentError("floating-point numbers are refused; write rationals as 'p/q'", where)
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise DocumentError(f"expected a rational string, got {type(x).__name__}", where)
    try:
        return to_rational(x)
    except DomainError as exc:
        raise DocumentError(str(exc), where) from None


def _complex(x, where: str):
    if isinstance(x, dict):
        extra = set(x) - {"re", "im"}
        if extra:
            raise DocumentError(f"unexpected keys {sorted(extra)}", where)
        return (_number(x.get("re", 0), where + ".re"), _number(x.get("im", 0), where + ".im"))
    return (_number(x, where), 0)


def parse_system(doc, source: str = "<document>", *, strict: bool = False) -> SystemDescription:
    """Build a :class:`SystemDescription`; measure validation is left to the caller
    unless ``strict``."""
    if not isinstance(doc, dict):
        raise DocumentError("top level must be an object", source)
    name = _require(doc, "name", str, source)
    labels = _require(doc, "histories", list, source)
    for i, label in enumerate(labels):
        if not isinstance(label, str):
            raise DocumentError("history labels must be strings", f"{source}:histories[{i}]")
    try:
        space = HistorySpace(labels)
    except DomainError as exc:
        raise DocumentError(str(exc), f"{source}:histories") from None
    normalize = doc.get("normalize", False)
    if not isinstance(normalize, bool):
        raise DocumentError("'normalize' must be a boolean", source)
    m = _require(doc, "measure", dict, source)
    where = f"{source}:measure"
    kind = _require(m, "type", str, where)
    if kind not in MEASURE_TYPES:
        raise DocumentError(f"unknown measure type {kind!r}; expected one of {MEASURE_TYPES}", where)

    def vector(key):
        values = _require(m, key, list, where)
        if len(values) != space.n:
            raise DocumentError(f"{key!r} needs {space.n} entries, got {len(values)}", where)
        return values

    if kind == "classical":
        weights = [_number(x, f"{where}.weights[{i}]") for i, x in enumerate(vector("weights"))]
        build = lambda: ClassicalMeasure(space, weights, normalize=normalize, strict=strict)  # noqa: E731
    elif kind == "quantum-amplitude":
        amps = [_complex(x, f"{where}.amplitudes[{i}]")
                for i, x in enumerate(vector("amplitudes"))]
        build = lambda: QuantumMeasure.from_amplitudes(  # noqa: E731
            space, amps, normalize=normalize, strict=strict)
    else:
        rows = vector("matrix")
        matrix = []
        for i, row in enumerate(rows):
            if not isinstance(row, list) or len(row) != space.n:
                raise DocumentError(f"row must be a list of {space.n} entries",
                                    f"{where}.matrix[{i}]")
            matrix.append([_complex(x, f"{where}.matrix[{i}][{j}]") for j, x in enumerate(row)])
        build = lambda: QuantumMeasure(space, matrix, normalize=normalize, strict=strict)  # noqa: E731
    measure = build()
    digest = hashlib.sha256(canonical_json(doc).encode("utf-8")).hexdigest()
    return SystemDescription(name, space, kind, measure, normalize, digest)


def load_system(path: str | Path, *, strict: bool = False) -> SystemDescription:
    return parse_system(read_json(path), str(path), strict=strict)


def parse_coevent(doc, space: HistorySpace, source: str = "<co-event>") -> CoEvent:
    """Accept ``{"support": [labels]}`` or ``{"table": "0101..."}``."""
    if not isinstance(doc, dict) or len(set(doc) & {"support", "table"}) != 1:
        raise DocumentError("expected exactly one of 'support' or 'table'", source)
    try:
        if "support" in doc:
            labels = doc["support"]
            if not isinstance(labels, list) or not labels:
                raise DocumentError("'support' must be a non-empty list of labels", source)
            for label in labels:
                if not isinstance(label, str):
                    raise DocumentError("'support' entries must be history labels", source)
            return from_support(space.event(labels))
        table = doc["table"]
        if not isinstance(table, str):
            raise DocumentError("'table' must be a string of 0/1", source)
        return CoEvent.from_string(space, table)
    except DomainError as exc:
        raise DocumentError(str(exc), source) from None


def _tool() -> dict:
    return {"name": "gmtlogic", "version": __version__}


def _system_block(system: SystemDescription) -> dict:
    return {
        "name": system.name,
        "sha256": system.digest,
        "histories": list(system.space.labels),
        "measure_type": system.measure_type,
    }


def nulls_document(system: SystemDescription, nulls: list[int], maximal: list[int]) -> dict:
    labels = system.space.labels_of
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "nulls",
        "tool": _tool(),
        "system": _system_block(system),
        "null_events": [labels(m) for m in nulls],
        "maximal_null_events": [labels(m) for m in maximal],
    }


def result_document(system: SystemDescription, solution: SchemeSolution) -> dict:
    space = system.space
    doc = nulls_document(system, solution.null_events, solution.maximal_null_events)
    doc["kind"] = "solve"
    doc["minimal_supports"] = [space.labels_of(m) for m in solution.minimal_supports]
    doc["preclusive_homomorphism_histories"] = [
        space.labels[g] for g in solution.preclusive_homomorphism_histories]
    doc["classical_world_exists"] = solution.classical_world_exists
    doc["coevent_exists"] = solution.coevent_exists
    if solution.equivalence is not None:
        doc["equivalence"] = solution.equivalence.to_dict(space.labels)
    return doc


def verify_document(max_n: int, reports) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "verify",
        "tool": _tool(),
        "max_n": max_n,
        "holds": all(r.holds for r in reports),
        "reports": [r.to_dict() for r in reports],
    }
