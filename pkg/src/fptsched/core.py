"""Instance and solution data model shared by every solver module.

Jobs are always held in high-multiplicity form (distinct sizes plus counts).
All loads, targets and makespan values are Python ints or
:class:`fractions.Fraction`, so nothing on the solver path touches floats.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

ExactRational = Fraction


class InvalidInstanceError(ValueError):
    """Raised when an instance violates its structural invariants."""


class InternalInvariantError(RuntimeError):
    """A condition guaranteed by the algorithm's analysis did not hold."""


@dataclass(frozen=True)
class JobProfile:
    sizes: tuple[int, ...]
    counts: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "sizes", tuple(int(p) for p in self.sizes))
        object.__setattr__(self, "counts", tuple(int(n) for n in self.counts))
        if len(self.sizes) != len(self.counts):
            raise InvalidInstanceError("sizes and counts differ in length")
        if not self.sizes:
            raise InvalidInstanceError("job profile is empty")
        if any(p < 1 for p in self.sizes):
            raise InvalidInstanceError("sizes must be positive")
        if any(n < 1 for n in self.counts):
            raise InvalidInstanceError("counts must be positive")
        if any(x >= y for x, y in zip(self.sizes, self.sizes[1:])):
            raise InvalidInstanceError("sizes must be strictly increasing")

    @property
    def d(self) -> int:
        return len(self.sizes)

    @property
    def p_max(self) -> int:
        return self.sizes[-1]

    @property
    def total_jobs(self) -> int:
        return sum(self.counts)

    @property
    def total_size(self) -> int:
        return sum(p * n for p, n in zip(self.sizes, self.counts))

    def index(self, size: int) -> int:
        """Position of ``size`` among the distinct sizes."""
        try:
            return self.sizes.index(size)
        except ValueError:
            raise InvalidInstanceError(f"size {size} not in profile") from None

    def count_of(self, size: int) -> int:
        return self.counts[self.sizes.index(size)] if size in self.sizes else 0

    def expand(self) -> list[int]:
        """Natural encoding: one entry per job, ascending."""
        out = []
        for p, n in zip(self.sizes, self.counts):
            out.extend([p] * n)
        return out


def normalize(jobs: Iterable[int]) -> JobProfile:
    """Group a plain list of processing times into a :class:`JobProfile`."""
    jobs = list(jobs)
    if not jobs:
        raise InvalidInstanceError("job list is empty")
    for p in jobs:
        if isinstance(p, bool) or not isinstance(p, int) or p < 1:
            raise InvalidInstanceError(f"invalid processing time {p!r}")
    grouped = sorted(Counter(jobs).items())
    return JobProfile(tuple(p for p, _ in grouped), tuple(n for _, n in grouped))


@dataclass(frozen=True)
class PartitionInstance:
    jobs: JobProfile
    targets: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "targets", tuple(int(t) for t in self.targets))
        if not self.targets:
            raise InvalidInstanceError("at least one machine is required")
        if any(t < 0 for t in self.targets):
            raise InvalidInstanceError("targets must be nonnegative")
        if sum(self.targets) != self.jobs.total_size:
            raise InvalidInstanceError(
                f"balance violated: sum of targets {sum(self.targets)} "
                f"!= total size {self.jobs.total_size}"
            )
        if len(self.targets) > self.jobs.total_jobs:
            raise InvalidInstanceError("more machines than jobs")

    @property
    def m(self) -> int:
        return len(self.targets)


@dataclass(frozen=True)
class SchedulingInstance:
    jobs: JobProfile
    speeds: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "speeds", tuple(int(s) for s in self.speeds))
        if not self.speeds:
            raise InvalidInstanceError("at least one machine is required")
        if any(s < 1 for s in self.speeds):
            raise InvalidInstanceError("speeds must be positive")
        if len(self.speeds) > self.jobs.total_jobs:
            raise InvalidInstanceError("more machines than jobs")

    @property
    def m(self) -> int:
        return len(self.speeds)


@dataclass(frozen=True)
class Assignment:
    """Per-machine job counts: ``counts[i][k]`` jobs of size ``sizes[k]`` on machine ``i``."""

    counts: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(v) for v in row) for row in self.counts)
        if any(v < 0 for row in rows for v in row):
            raise InvalidInstanceError("assignment counts must be nonnegative")
        if rows and len({len(row) for row in rows}) != 1:
            raise InvalidInstanceError("assignment rows differ in length")
        object.__setattr__(self, "counts", rows)

    @classmethod
    def empty(cls, m: int, d: int) -> "Assignment":
        return cls(tuple((0,) * d for _ in range(m)))

    @property
    def m(self) -> int:
        return len(self.counts)

    @property
    def d(self) -> int:
        return len(self.counts[0]) if self.counts else 0

    def loads(self, sizes: Sequence[int]) -> list[int]:
        return [sum(p * c for p, c in zip(sizes, row)) for row in self.counts]

    def column_sums(self) -> tuple[int, ...]:
        return tuple(sum(col) for col in zip(*self.counts))

    def to_lists(self) -> list[list[int]]:
        return [list(row) for row in self.counts]


@dataclass(frozen=True)
class VerificationReport:
    passed: bool
    loads: tuple[int, ...]
    targets: tuple[int, ...]
    column_sums: tuple[int, ...]
    expected_counts: tuple[int, ...]
    messages: tuple[str, ...] = field(default=())


def _check_shape(asg: Assignment, m: int, d: int):
    if asg.m != m or (m and asg.d != d):
        raise ValueError(
            f"assignment is {asg.m}x{asg.d}, instance needs {m}x{d}"
        )


def verify_partition(inst: PartitionInstance, asg: Assignment) -> VerificationReport:
    _check_shape(asg, inst.m, inst.jobs.d)
    loads = asg.loads(inst.jobs.sizes)
    sums = asg.column_sums()
    messages = []
    for k, (got, want) in enumerate(zip(sums, inst.jobs.counts)):
        if got != want:
            messages.append(f"size {inst.jobs.sizes[k]}: {got} assigned, {want} present")
    for i, (load, target) in enumerate(zip(loads, inst.targets)):
        if load != target:
            messages.append(f"machine {i}: load {load} != target {target}")
    return VerificationReport(
        passed=not messages,
        loads=tuple(loads),
        targets=inst.targets,
        column_sums=sums,
        expected_counts=inst.jobs.counts,
        messages=tuple(messages),
    )


def verify_makespan(inst: SchedulingInstance, asg: Assignment) -> Fraction:
    """Exact makespan ``max_i load(i) / s_i`` of a complete assignment."""
    _check_shape(asg, inst.m, inst.jobs.d)
    if asg.column_sums() != inst.jobs.counts:
        raise ValueError("assignment does not place every job exactly once")
    loads = asg.loads(inst.jobs.sizes)
    return max(Fraction(load, s) for load, s in zip(loads, inst.speeds))


def format_rational(q: Fraction) -> str:
    """``"numerator/denominator"`` in lowest terms, denominator always shown."""
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    num, _, den = str(text).partition("/")
    return Fraction(int(num), int(den or 1))
