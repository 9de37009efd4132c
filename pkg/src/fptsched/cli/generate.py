"""Seeded instance generators.

Feasible partition instances are built backwards: draw an assignment, then
read the targets off it. Job counts are split across machines by random cut
points, so generating 10^8 jobs costs the same as generating ten.
"""
from __future__ import annotations

import random
from typing import Optional, Sequence

from ..core import InvalidInstanceError, JobProfile, PartitionInstance, SchedulingInstance


def _cut(rng: random.Random, total: int, parts: int, positive: bool = False) -> list[int]:
    if positive:
        if total < parts:
            raise InvalidInstanceError(f"cannot split {total} into {parts} positive parts")
        return [v + 1 for v in _cut(rng, total - parts, parts)]
    cuts = sorted(rng.randint(0, total) for _ in range(parts - 1))
    return [hi - lo for lo, hi in zip([0] + cuts, cuts + [total])]


def random_profile(
    rng: random.Random,
    d: int,
    p_max: int,
    n: int,
    sizes: Optional[Sequence[int]] = None,
    counts: Optional[Sequence[int]] = None,
) -> JobProfile:
    if sizes is None:
        if not 1 <= d <= p_max:
            raise InvalidInstanceError(f"need 1 <= d <= p_max, got d={d}, p_max={p_max}")
        sizes = sorted(rng.sample(range(1, p_max), d - 1)) + [p_max]
    if counts is None:
        counts = _cut(rng, n, len(sizes), positive=True)
    return JobProfile(tuple(sizes), tuple(counts))


def feasible_partition(
    seed: int, d: int = 2, p_max: int = 5, m: int = 2, n: int = 6,
    sizes=None, counts=None,
) -> PartitionInstance:
    rng = random.Random(seed)
    jobs = random_profile(rng, d, p_max, n, sizes, counts)
    if m > jobs.total_jobs:
        raise InvalidInstanceError(f"{m} machines but only {jobs.total_jobs} jobs")
    targets = [0] * m
    for p, count in zip(jobs.sizes, jobs.counts):
        for i, share in enumerate(_cut(rng, count, m)):
            targets[i] += p * share
    return PartitionInstance(jobs, tuple(targets))


def uniform_random(
    seed: int, d: int = 2, p_max: int = 5, m: int = 2, n: int = 6, s_max: int = 3,
    sizes=None, counts=None,
) -> SchedulingInstance:
    rng = random.Random(seed)
    jobs = random_profile(rng, d, p_max, n, sizes, counts)
    if m > jobs.total_jobs:
        raise InvalidInstanceError(f"{m} machines but only {jobs.total_jobs} jobs")
    speeds = [rng.randint(1, s_max) for _ in range(m)]
    return SchedulingInstance(jobs, tuple(speeds))
