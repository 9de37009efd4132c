"""The pivot model: machine types, configurations and the configuration ILP.

For a pivot size ``a``, machines with ``T_i < p_max**4`` (small) must receive
exactly ``T_i``; the remaining (big) machines only need the right load modulo
``a``, provided at least ``p_max**2 * |B|`` jobs of size ``a`` end up on big
machines. A solution of that relaxed system is turned into an exact
partition by :mod:`fptsched.greedy`.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .core import Assignment, InternalInvariantError, PartitionInstance
from .mcilp import DpStats, McilpInstance, McilpSolution, solve_inequality


class PivotInfeasible(Exception):
    """The pivot cannot work: too few jobs of size ``a`` for the big machines."""


@dataclass(frozen=True)
class PivotModel:
    a: int
    small: tuple[int, ...]
    big: tuple[int, ...]
    threshold: int
    p_max: int
    sizes: tuple[int, ...]
    targets: tuple[int, ...]

    @property
    def a_index(self) -> int:
        return self.sizes.index(self.a)


@dataclass(frozen=True)
class MachineType:
    big: bool
    value: int                  # target for small types, residue mod a for big ones
    machines: tuple[int, ...]   # original machine indices, ascending

    @property
    def multiplicity(self) -> int:
        return len(self.machines)


@dataclass(frozen=True)
class ConfigModel:
    """Configuration ILP together with the data needed to decode its solution."""

    ilp: McilpInstance
    model: PivotModel
    types: tuple[MachineType, ...]
    configs: tuple[tuple[tuple[int, ...], ...], ...]   # per type
    variables: tuple[tuple[int, int], ...]             # column -> (type, config)


def classify_machines(inst: PartitionInstance, a: Optional[int] = None) -> PivotModel:
    p_max = inst.jobs.p_max
    threshold = p_max**4
    small = tuple(i for i, T in enumerate(inst.targets) if T < threshold)
    big = tuple(i for i, T in enumerate(inst.targets) if T >= threshold)
    if a is None:
        a = inst.jobs.sizes[0]
    return PivotModel(a, small, big, threshold, p_max, inst.jobs.sizes, inst.targets)


def enumerate_types(inst: PartitionInstance, a: int) -> list[MachineType]:
    model = classify_machines(inst, a)
    groups: dict[tuple[bool, int], list[int]] = {}
    for i in model.small:
        groups.setdefault((False, inst.targets[i]), []).append(i)
    for i in model.big:
        groups.setdefault((True, inst.targets[i] % a), []).append(i)
    return [MachineType(big, value, tuple(idx)) for (big, value), idx in sorted(groups.items())]


def enumerate_configs(
    mtype: MachineType,
    sizes: Sequence[int],
    a: int,
    caps: Optional[Sequence[int]] = None,
) -> list[tuple[int, ...]]:
    """All configurations of a type, in lexicographic order.

    ``caps`` optionally bounds each coordinate (used to skip configurations
    that would need more jobs of a size than exist).
    """
    d = len(sizes)
    if mtype.big:
        limit = [a - 1] * d
    else:
        limit = [mtype.value // p for p in sizes]
    if caps is not None:
        limit = [min(x, cap) for x, cap in zip(limit, caps)]

    out = []
    vec = [0] * d

    if mtype.big:
        def walk(k, residue):
            if k == d:
                if residue == mtype.value:
                    out.append(tuple(vec))
                return
            for v in range(limit[k] + 1):
                vec[k] = v
                walk(k + 1, (residue + v * sizes[k]) % a)
            vec[k] = 0
        walk(0, 0)
    else:
        def walk(k, rest):
            if k == d - 1:
                if rest % sizes[k] == 0 and rest // sizes[k] <= limit[k]:
                    vec[k] = rest // sizes[k]
                    out.append(tuple(vec))
                    vec[k] = 0
                return
            for v in range(min(limit[k], rest // sizes[k]) + 1):
                vec[k] = v
                walk(k + 1, rest - v * sizes[k])
            vec[k] = 0
        walk(0, mtype.value)
    return out


def build_config_ilp(inst: PartitionInstance, a: int, prune: bool = True) -> ConfigModel:
    """Inequality-form configuration ILP for pivot ``a``.

    Raises :class:`PivotInfeasible` when fewer than ``p_max**2 * |B|`` jobs
    of size ``a`` exist.
    """
    model = classify_machines(inst, a)
    return assemble_config_ilp(inst.jobs, enumerate_types(inst, a), model, prune=prune)


def assemble_config_ilp(jobs, types: Sequence[MachineType], model: PivotModel, prune: bool = True) -> ConfigModel:
    """Configuration ILP for explicit machine types.

    Column ``(tau, C)`` counts machines of type ``tau`` using configuration
    ``C``. Rows: one per distinct size ``b`` (``sum C_b y <= n_b``), then the
    pivot row over small types only. With ``prune`` configurations are kept
    inside ``C_b <= n_b``; anything outside could only be used with ``y = 0``.
    """
    a = model.a
    ai = jobs.index(a)
    n_big = sum(tp.multiplicity for tp in types if tp.big)
    pivot_rhs = jobs.counts[ai] - model.p_max**2 * n_big
    if pivot_rhs < 0:
        raise PivotInfeasible(
            f"pivot {a}: {jobs.counts[ai]} jobs < {model.p_max**2 * n_big} required"
        )
    caps = jobs.counts if prune else None
    configs = [tuple(enumerate_configs(tp, jobs.sizes, a, caps)) for tp in types]

    variables = []
    partition = []
    for ti, cfgs in enumerate(configs):
        start = len(variables)
        variables.extend((ti, ci) for ci in range(len(cfgs)))
        partition.append(tuple(range(start, len(variables))))

    rows = []
    for k in range(jobs.d):
        rows.append([configs[ti][ci][k] for ti, ci in variables])
    rows.append([
        0 if types[ti].big else configs[ti][ci][ai] for ti, ci in variables
    ])
    ilp = McilpInstance(
        A=tuple(tuple(row) for row in rows),
        b=tuple(jobs.counts) + (pivot_rhs,),
        c=(0,) * len(variables),
        partition=tuple(partition),
        cardinalities=tuple(tp.multiplicity for tp in types),
        n=len(variables),
    )
    return ConfigModel(ilp, model, tuple(types), tuple(configs), tuple(variables))


def decode(y: McilpSolution, cm: ConfigModel, inst: PartitionInstance) -> Assignment:
    """Machine-level mod-IP(a) solution from a configuration ILP solution."""
    m, d = inst.m, inst.jobs.d
    rows = [[0] * d for _ in range(m)]
    filled = [0] * len(cm.types)
    for col, count in enumerate(y.x):
        if not count:
            continue
        ti, ci = cm.variables[col]
        machines = cm.types[ti].machines
        if filled[ti] + count > len(machines):
            raise InternalInvariantError("more configurations than machines of a type")
        for machine in machines[filled[ti]:filled[ti] + count]:
            rows[machine] = list(cm.configs[ti][ci])
        filled[ti] += count
    if filled != [tp.multiplicity for tp in cm.types]:
        raise InternalInvariantError("configuration counts do not match type multiplicities")

    used = [sum(row[k] for row in rows) for k in range(d)]
    leftover = [n - u for n, u in zip(inst.jobs.counts, used)]
    if any(v < 0 for v in leftover):
        raise InternalInvariantError("configurations use more jobs than exist")
    if any(leftover):
        if not cm.model.big:
            raise InternalInvariantError("jobs left over although every machine is small")
        host = min(cm.model.big)
        rows[host] = [v + extra for v, extra in zip(rows[host], leftover)]
    return Assignment(tuple(tuple(row) for row in rows))


def check_mod_ip(asg: Assignment, inst: PartitionInstance, model: PivotModel) -> list[str]:
    """Violated mod-IP(a) constraints, as messages; empty when the assignment is valid."""
    sizes, a = inst.jobs.sizes, model.a
    loads = asg.loads(sizes)
    problems = []
    for i in model.small:
        if loads[i] != inst.targets[i]:
            problems.append(f"small machine {i}: load {loads[i]} != {inst.targets[i]}")
    for i in model.big:
        if (loads[i] - inst.targets[i]) % a:
            problems.append(f"big machine {i}: load {loads[i]} not congruent to {inst.targets[i]} mod {a}")
    ai = sizes.index(a)
    on_big = sum(asg.counts[i][ai] for i in model.big)
    if on_big < model.p_max**2 * len(model.big):
        problems.append(f"only {on_big} pivot jobs on big machines")
    if asg.column_sums() != inst.jobs.counts:
        problems.append("not every job is assigned exactly once")
    return problems


def solve_pivot(inst: PartitionInstance, a: int, stats: Optional[DpStats] = None) -> Optional[tuple[Assignment, PivotModel]]:
    """Feasible mod-IP(a) solution for one pivot, or ``None``."""
    try:
        cm = build_config_ilp(inst, a)
    except PivotInfeasible:
        return None
    y = solve_inequality(cm.ilp, slack="compact", stats=stats)
    if y is None:
        return None
    return decode(y, cm, inst), cm.model
