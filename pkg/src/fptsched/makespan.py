"""Makespan Minimization on Uniform Machines by binary search over candidate values.

The optimum is ``L / s_i`` for some machine ``i`` and ``0 <= L <= N * p_max``.
That multiset has ``m * (N * p_max + 1)`` members and is never built: the
search works on ranks, and the value of a given rank is found by counting.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .core import Assignment, InternalInvariantError, JobProfile, PartitionInstance, SchedulingInstance
from .mcilp import DpStats
from .partition import solve_partition


@dataclass(frozen=True)
class CandidateSpace:
    speeds: tuple[int, ...]
    n_jobs: int
    p_max: int

    @classmethod
    def of(cls, inst: SchedulingInstance) -> "CandidateSpace":
        return cls(inst.speeds, inst.jobs.total_jobs, inst.jobs.p_max)

    @property
    def top(self) -> int:
        return self.n_jobs * self.p_max

    def __len__(self) -> int:
        return len(self.speeds) * (self.top + 1)

    def count_le(self, x: Fraction) -> int:
        """Number of candidates ``L / s_i`` that are ``<= x`` (with multiplicity)."""
        if x < 0:
            return 0
        return sum(min(x.numerator * s // x.denominator, self.top) + 1 for s in self.speeds)

    def kth(self, k: int) -> Fraction:
        """The ``k``-th smallest candidate, 1-based."""
        if not 1 <= k <= len(self):
            raise IndexError(k)
        best = None
        for s in self.speeds:
            # smallest L with count_le(L / s) >= k
            lo, hi = 0, self.top
            if self.count_le(Fraction(hi, s)) < k:
                continue
            while lo < hi:
                mid = (lo + hi) // 2
                if self.count_le(Fraction(mid, s)) >= k:
                    hi = mid
                else:
                    lo = mid + 1
            value = Fraction(lo, s)
            if best is None or value < best:
                best = value
        return best


def decide(
    inst: SchedulingInstance, U: Fraction, stats: Optional[DpStats] = None
) -> Optional[Assignment]:
    """Schedule with every load ``<= floor(s_i * U)``, or ``None``.

    Slack is filled with unit dummy jobs so the question becomes an exact
    partition; the dummies are removed again before returning.
    """
    U = Fraction(U)
    if U < 0:
        raise ValueError("U must be nonnegative")
    jobs = inst.jobs
    targets = [U.numerator * s // U.denominator for s in inst.speeds]
    dummies = sum(targets) - jobs.total_size
    if dummies < 0:
        return None

    if dummies and jobs.sizes[0] != 1:
        padded = JobProfile((1,) + jobs.sizes, (dummies,) + jobs.counts)
        shift = 1
    else:
        counts = list(jobs.counts)
        counts[0] += dummies
        padded = JobProfile(jobs.sizes, tuple(counts))
        shift = 0
    found = solve_partition(PartitionInstance(padded, tuple(targets)), stats=stats)
    if found is None:
        return None

    rows = [list(row) for row in found.counts]
    remaining = dummies
    for i in range(len(rows) - 1, -1, -1):
        take = min(remaining, rows[i][0])
        rows[i][0] -= take
        remaining -= take
    if shift:
        rows = [row[1:] for row in rows]
    return Assignment(tuple(tuple(row) for row in rows))


def solve_makespan(
    inst: SchedulingInstance, stats: Optional[DpStats] = None
) -> tuple[Fraction, Assignment]:
    """Optimal makespan and a schedule achieving it."""
    space = CandidateSpace.of(inst)
    lo, hi = 1, len(space)
    best = decide(inst, space.kth(hi), stats=stats)
    if best is None:
        raise InternalInvariantError("the largest candidate must always be feasible")
    best_value = space.kth(hi)
    # invariant: the candidate of rank hi is feasible
    while lo < hi:
        mid = (lo + hi) // 2
        value = space.kth(mid)
        found = decide(inst, value, stats=stats)
        if found is not None:
            hi, best, best_value = mid, found, value
        else:
            lo = mid + 1
    return best_value, best
