"""Brute-force reference solvers.

These share nothing with the main solvers except the core data types. They
are exhaustive searches with only running-sum pruning, kept short enough to
check by eye.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Optional

from .core import Assignment, PartitionInstance, SchedulingInstance
from .mcilp import McilpInstance, McilpSolution

DEFAULT_BUDGET = 10**8


class BudgetExceededError(RuntimeError):
    """The search visited more nodes than its budget allows."""


class _Counter:
    def __init__(self, budget):
        self.budget = budget
        self.nodes = 0

    def tick(self):
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceededError(f"search exceeded {self.budget} nodes")


def _splits(total, parts):
    """All ways to write ``total`` as an ordered sum of ``parts`` nonnegative ints."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _splits(total - first, parts - 1):
            yield (first,) + rest


def brute_partition(inst: PartitionInstance, budget: int = DEFAULT_BUDGET) -> Optional[Assignment]:
    sizes, counts, targets = inst.jobs.sizes, inst.jobs.counts, inst.targets
    m, d = inst.m, inst.jobs.d
    counter = _Counter(budget)
    rows = [[0] * d for _ in range(m)]
    loads = [0] * m

    def place(k):
        counter.tick()
        if k == d:
            return loads == list(targets)
        p = sizes[k]
        for split in _splits(counts[k], m):
            if any(loads[i] + p * split[i] > targets[i] for i in range(m)):
                continue
            for i in range(m):
                rows[i][k] = split[i]
                loads[i] += p * split[i]
            if place(k + 1):
                return True
            for i in range(m):
                loads[i] -= p * split[i]
                rows[i][k] = 0
        return False

    if place(0):
        return Assignment(tuple(tuple(row) for row in rows))
    return None


def brute_makespan(inst: SchedulingInstance, budget: int = DEFAULT_BUDGET) -> Fraction:
    sizes, counts, speeds = inst.jobs.sizes, inst.jobs.counts, inst.speeds
    m, d = inst.m, inst.jobs.d
    counter = _Counter(budget)
    loads = [0] * m
    best = [None]

    def place(k):
        counter.tick()
        current = max(Fraction(loads[i], speeds[i]) for i in range(m))
        if best[0] is not None and current >= best[0]:
            return
        if k == d:
            best[0] = current
            return
        p = sizes[k]
        for split in _splits(counts[k], m):
            for i in range(m):
                loads[i] += p * split[i]
            place(k + 1)
            for i in range(m):
                loads[i] -= p * split[i]

    place(0)
    return best[0]


def brute_mcilp(
    inst: McilpInstance, sense: str = "eq", budget: int = DEFAULT_BUDGET
) -> Optional[McilpSolution]:
    """Enumerate every ``x`` meeting the set cardinalities; keep the best feasible one."""
    counter = _Counter(budget)
    x = [0] * inst.n
    best = [None]

    def feasible():
        for row, bj in zip(inst.A, inst.b):
            lhs = sum(a * v for a, v in zip(row, x))
            if lhs > bj or (sense == "eq" and lhs != bj):
                return False
        return True

    def fill(s):
        counter.tick()
        if s == len(inst.partition):
            if feasible():
                value = sum(ci * v for ci, v in zip(inst.c, x))
                if best[0] is None or value > best[0].objective:
                    best[0] = McilpSolution(tuple(x), value)
            return
        S = inst.partition[s]
        tS = inst.cardinalities[s]
        if not S:
            if tS == 0:
                fill(s + 1)
            return
        for split in _splits(tS, len(S)):
            for i, v in zip(S, split):
                x[i] = v
            fill(s + 1)
        for i in S:
            x[i] = 0

    fill(0)
    return best[0]
