"""JSON documents for instances and results.

Instance documents carry ``"kind"``: ``"partition"``, ``"scheduling"`` or
``"mcilp"``. Jobs are given either as ``"sizes"``/``"counts"`` or as a plain
``"jobs"`` list; sizes are sorted and duplicates merged on load. Integers
may also be written as decimal strings; rationals are written
``"numerator/denominator"``.
"""
from __future__ import annotations

import json
from typing import Any

from ..core import (
    Assignment,
    InvalidInstanceError,
    JobProfile,
    PartitionInstance,
    SchedulingInstance,
    normalize,
)
from ..mcilp import McilpInstance

MAX_NATURAL_JOBS = 10**6
KINDS = ("partition", "scheduling", "mcilp")


class DocumentError(ValueError):
    """Malformed input document; the message names the offending field."""

    def __init__(self, field, message):
        super().__init__(f"field '{field}': {message}")
        self.field = field


def _int(value, field):
    if isinstance(value, bool):
        raise DocumentError(field, f"expected an integer, got {value!r}")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        try:
            return int(value.strip())
        except ValueError:
            pass
    raise DocumentError(field, f"expected an integer, got {value!r}")


def _int_list(doc, field):
    if field not in doc:
        raise DocumentError(field, "missing")
    value = doc[field]
    if not isinstance(value, list):
        raise DocumentError(field, "expected a list")
    return [_int(v, field) for v in value]


def _matrix(doc, field):
    if field not in doc:
        raise DocumentError(field, "missing")
    value = doc[field]
    if not isinstance(value, list) or any(not isinstance(row, list) for row in value):
        raise DocumentError(field, "expected a list of lists")
    return [[_int(v, field) for v in row] for row in value]


def _jobs(doc) -> JobProfile:
    if "jobs" in doc:
        if "sizes" in doc or "counts" in doc:
            raise DocumentError("jobs", "give either 'jobs' or 'sizes'/'counts', not both")
        if isinstance(doc["jobs"], list) and len(doc["jobs"]) > MAX_NATURAL_JOBS:
            raise DocumentError(
                "jobs",
                f"more than {MAX_NATURAL_JOBS} entries; use 'sizes' and 'counts' instead",
            )
        try:
            return normalize(_int_list(doc, "jobs"))
        except InvalidInstanceError as exc:
            raise DocumentError("jobs", str(exc)) from None
    sizes = _int_list(doc, "sizes")
    counts = _int_list(doc, "counts")
    if len(sizes) != len(counts):
        raise DocumentError("counts", "must have one entry per size")
    if any(n < 1 for n in counts):
        raise DocumentError("counts", "multiplicities must be positive")
    merged = {}
    for p, n in zip(sizes, counts):
        merged[p] = merged.get(p, 0) + n
    try:
        return JobProfile(tuple(sorted(merged)), tuple(merged[p] for p in sorted(merged)))
    except InvalidInstanceError as exc:
        raise DocumentError("sizes", str(exc)) from None


def parse_instance(doc: Any, expect: str | None = None):
    if not isinstance(doc, dict):
        raise DocumentError("kind", "document must be a JSON object")
    kind = doc.get("kind")
    if kind not in KINDS:
        raise DocumentError("kind", f"expected one of {', '.join(KINDS)}, got {kind!r}")
    if expect is not None and kind != expect:
        raise DocumentError("kind", f"expected {expect!r}, got {kind!r}")

    if kind == "partition":
        jobs = _jobs(doc)
        targets = _int_list(doc, "targets")
        try:
            return PartitionInstance(jobs, tuple(targets))
        except InvalidInstanceError as exc:
            raise DocumentError("targets", str(exc)) from None
    if kind == "scheduling":
        jobs = _jobs(doc)
        speeds = _int_list(doc, "speeds")
        try:
            return SchedulingInstance(jobs, tuple(speeds))
        except InvalidInstanceError as exc:
            raise DocumentError("speeds", str(exc)) from None

    A = _matrix(doc, "A")
    b = _int_list(doc, "b")
    c = _int_list(doc, "c")
    partition = _matrix(doc, "partition")
    cards = _int_list(doc, "cardinalities")
    sense = doc.get("sense", "eq")
    if sense not in ("eq", "le"):
        raise DocumentError("sense", f"expected 'eq' or 'le', got {sense!r}")
    try:
        inst = McilpInstance(A=A, b=b, c=c, partition=partition, cardinalities=cards)
    except InvalidInstanceError as exc:
        raise DocumentError("A", str(exc)) from None
    return inst, sense


def parse_assignment(doc, inst) -> Assignment:
    rows = _matrix(doc, "assignment")
    try:
        return Assignment(tuple(tuple(row) for row in rows))
    except InvalidInstanceError as exc:
        raise DocumentError("assignment", str(exc)) from None


def instance_doc(inst, sense: str = "eq") -> dict:
    if isinstance(inst, PartitionInstance):
        return {
            "kind": "partition",
            "sizes": list(inst.jobs.sizes),
            "counts": list(inst.jobs.counts),
            "targets": list(inst.targets),
        }
    if isinstance(inst, SchedulingInstance):
        return {
            "kind": "scheduling",
            "sizes": list(inst.jobs.sizes),
            "counts": list(inst.jobs.counts),
            "speeds": list(inst.speeds),
        }
    if isinstance(inst, McilpInstance):
        return {
            "kind": "mcilp",
            "A": [list(row) for row in inst.A],
            "b": list(inst.b),
            "c": list(inst.c),
            "partition": [list(S) for S in inst.partition],
            "cardinalities": list(inst.cardinalities),
            "sense": sense,
        }
    raise TypeError(f"not an instance: {type(inst).__name__}")


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def load(path) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise DocumentError("<document>", f"invalid JSON: {exc}") from None
