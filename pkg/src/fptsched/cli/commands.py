"""Document-level commands shared by the CLI and the bench harness."""
from __future__ import annotations

from ..core import PartitionInstance, format_rational, verify_makespan, verify_partition
from ..makespan import solve_makespan
from ..mcilp import solve_equality, solve_inequality
from ..oracle import brute_makespan, brute_mcilp, brute_partition
from ..partition import solve_partition
from .documents import DocumentError, parse_assignment, parse_instance

EXIT_OK, EXIT_INFEASIBLE, EXIT_INPUT = 0, 1, 2
SOLVE_KINDS = {"partition": "partition", "makespan": "scheduling", "ilp": "mcilp"}


def solve_document(kind, doc, pivot=None, trace=False, stats=None):
    """Solve a parsed instance document; returns ``(exit_code, result_doc)``."""
    parsed = parse_instance(doc, expect=SOLVE_KINDS[kind])
    if kind == "partition":
        records = [] if trace else None
        asg = solve_partition(parsed, pivots=None if pivot is None else [pivot],
                              stats=stats, trace=records)
        out = {"feasible": asg is not None,
               "assignment": None if asg is None else asg.to_lists(),
               "sizes": list(parsed.jobs.sizes)}
        if trace:
            out["trace"] = [[r.phase, r.machine, r.size, r.count] for r in records]
        return (EXIT_OK if asg is not None else EXIT_INFEASIBLE), out
    if kind == "makespan":
        value, asg = solve_makespan(parsed, stats=stats)
        return EXIT_OK, {
            "optimal": format_rational(value),
            "assignment": asg.to_lists(),
            "sizes": list(parsed.jobs.sizes),
            "loads": asg.loads(parsed.jobs.sizes),
        }
    inst, sense = parsed
    sol = solve_equality(inst, stats=stats) if sense == "eq" else solve_inequality(inst, stats=stats)
    return _ilp_doc(sol)


def _ilp_doc(sol):
    if sol is None:
        return EXIT_INFEASIBLE, {"feasible": False, "x": None, "objective": None}
    return EXIT_OK, {"feasible": True, "x": list(sol.x), "objective": sol.objective}


def oracle_document(kind, doc, budget):
    parsed = parse_instance(doc, expect=SOLVE_KINDS[kind])
    if kind == "partition":
        asg = brute_partition(parsed, budget=budget)
        return (EXIT_OK if asg is not None else EXIT_INFEASIBLE), {
            "feasible": asg is not None,
            "assignment": None if asg is None else asg.to_lists(),
        }
    if kind == "makespan":
        return EXIT_OK, {"optimal": format_rational(brute_makespan(parsed, budget=budget))}
    inst, sense = parsed
    return _ilp_doc(brute_mcilp(inst, sense=sense, budget=budget))


def verify_document(doc):
    inst = parse_instance(doc)
    if isinstance(inst, tuple):
        raise DocumentError("kind", "verify accepts partition or scheduling documents")
    asg = parse_assignment(doc, inst)
    if isinstance(inst, PartitionInstance):
        try:
            report = verify_partition(inst, asg)
        except ValueError as exc:
            raise DocumentError("assignment", str(exc)) from None
        return (EXIT_OK if report.passed else EXIT_INFEASIBLE), {
            "passed": report.passed,
            "loads": list(report.loads),
            "messages": list(report.messages),
        }
    if asg.m != inst.m or asg.d != inst.jobs.d:
        raise DocumentError("assignment", f"expected {inst.m}x{inst.jobs.d} counts")
    loads = asg.loads(inst.jobs.sizes)
    try:
        value = verify_makespan(inst, asg)
    except ValueError as exc:
        return EXIT_INFEASIBLE, {"passed": False, "loads": loads, "messages": [str(exc)]}
    return EXIT_OK, {"passed": True, "loads": loads, "makespan": format_rational(value),
                     "messages": []}
