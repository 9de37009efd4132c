"""Multiway Partitioning: try every pivot, solve its configuration ILP, rebuild."""
from __future__ import annotations

from typing import Iterable, Optional

from .core import Assignment, InternalInvariantError, PartitionInstance, verify_partition
from .greedy import Audit, reconstruct
from .mcilp import DpStats
from .modip import solve_pivot


def solve_partition(
    inst: PartitionInstance,
    pivots: Optional[Iterable[int]] = None,
    stats: Optional[DpStats] = None,
    trace: Optional[list] = None,
    audit: Optional[Audit] = None,
) -> Optional[Assignment]:
    """Exact partition meeting every target, or ``None`` if none exists.

    Pivots are tried in ascending size order and the first success wins.
    Some pivot works for every feasible instance, so failing on all of them
    certifies infeasibility. ``pivots`` restricts the candidates (testing hook).
    """
    candidates = inst.jobs.sizes if pivots is None else sorted(pivots)
    for a in candidates:
        if a not in inst.jobs.sizes:
            raise ValueError(f"pivot {a} is not a job size")
        found = solve_pivot(inst, a, stats=stats)
        if found is None:
            continue
        modip_solution, model = found
        asg = reconstruct(modip_solution, inst, model, trace=trace, audit=audit)
        report = verify_partition(inst, asg)
        if not report.passed:
            raise InternalInvariantError("reconstructed partition fails verification: "
                                         + "; ".join(report.messages))
        return asg
    return None
