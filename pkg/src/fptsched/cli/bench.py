"""Benchmark harness: solve and verify every ``*.json`` instance in a directory."""
from __future__ import annotations

import csv
import io
import json
import os
import time

from ..core import Assignment, parse_rational, verify_makespan, verify_partition
from ..mcilp import DpStats, check_solution
from .commands import solve_document
from .documents import load, parse_instance

COLUMNS = ["instance", "kind", "verdict", "verified", "wall_s", "repetitions",
           "dp_peak_states", "dp_layers"]


def _verified(kind, parsed, doc):
    if kind == "partition":
        if doc["assignment"] is None:
            return True
        asg = Assignment(tuple(tuple(r) for r in doc["assignment"]))
        return verify_partition(parsed, asg).passed
    if kind == "makespan":
        asg = Assignment(tuple(tuple(r) for r in doc["assignment"]))
        return verify_makespan(parsed, asg) <= parse_rational(doc["optimal"])
    inst, sense = parsed
    return doc["x"] is None or check_solution(inst, doc["x"], sense)


def bench_one(path, repetitions=1):
    raw = load(path)
    try:
        parsed = parse_instance(raw)
    except ValueError as exc:
        return {
            "instance": os.path.basename(path),
            "kind": raw.get("kind") if isinstance(raw, dict) else None,
            "verdict": f"input-error: {exc}",
            "verified": False,
            "wall_s": "",
            "repetitions": 0,
            "dp_peak_states": 0,
            "dp_layers": 0,
        }
    kind = {"partition": "partition", "scheduling": "makespan", "mcilp": "ilp"}[raw["kind"]]
    times = []
    for _ in range(max(1, repetitions)):
        stats = DpStats()
        start = time.perf_counter()
        code, doc = solve_document(kind, raw, stats=stats)
        times.append(time.perf_counter() - start)
    if kind == "makespan":
        verdict = doc["optimal"]
    else:
        verdict = "feasible" if doc["feasible"] else "infeasible"
    return {
        "instance": os.path.basename(path),
        "kind": kind,
        "verdict": verdict,
        "verified": _verified(kind, parsed, doc),
        "wall_s": f"{min(times):.6f}",
        "repetitions": len(times),
        "dp_peak_states": stats.peak_states,
        "dp_layers": stats.layers,
    }


def run_bench(corpus, repetitions=1, fmt="csv") -> str:
    paths = sorted(
        os.path.join(corpus, name) for name in os.listdir(corpus) if name.endswith(".json")
    )
    rows = [bench_one(p, repetitions) for p in paths]
    if fmt == "json":
        return json.dumps(rows, indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()
