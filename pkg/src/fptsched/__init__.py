"""Exact solvers for Multiway Partitioning and Makespan Minimization on Uniform Machines.

Running time is polynomial in the input for a fixed largest processing time,
with the number of distinct sizes in the exponent. Instances are kept in
high-multiplicity form throughout.
"""
from .core import (
    Assignment,
    ExactRational,
    InternalInvariantError,
    InvalidInstanceError,
    JobProfile,
    PartitionInstance,
    SchedulingInstance,
    normalize,
    verify_makespan,
    verify_partition,
)
from .makespan import decide, solve_makespan
from .mcilp import McilpInstance, McilpSolution, solve_equality, solve_inequality
from .partition import solve_partition

__all__ = [
    "Assignment",
    "ExactRational",
    "InternalInvariantError",
    "InvalidInstanceError",
    "JobProfile",
    "McilpInstance",
    "McilpSolution",
    "PartitionInstance",
    "SchedulingInstance",
    "decide",
    "normalize",
    "solve_equality",
    "solve_inequality",
    "solve_makespan",
    "solve_partition",
    "verify_makespan",
    "verify_partition",
]
