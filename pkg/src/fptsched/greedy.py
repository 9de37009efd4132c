"""Turn a mod-IP(a) solution into an exact partition.

Phase I strips every pivot-size job and every full bundle (``a`` jobs of one
size ``b != a``) from the big machines. Phase II puts the bundles back
greedily, Phase III the pivot jobs. Every move adds or removes a multiple of
``a``, so big-machine loads stay congruent to their targets throughout, and
the final loads are forced to equal the targets.

All moves are batched: one step moves as many bundles or jobs as fit, so the
work does not depend on the job counts.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .core import Assignment, InternalInvariantError, PartitionInstance
from .modip import PivotModel, check_mod_ip


@dataclass(frozen=True)
class TraceRecord:
    phase: str      # "strip", "bundle" or "pivot"
    machine: int
    size: int
    count: int      # jobs moved (negative when removed)


@dataclass
class Audit:
    """Counts of invariant checks performed during one reconstruction."""

    congruence_checks: int = 0
    phase1_bound_checks: int = 0
    witness_checks: int = 0
    exactness_checks: int = 0
    conservation_checks: int = 0
    placements: int = 0


@dataclass
class ReconstructionState:
    rows: list                      # mutable copy of the assignment counts
    model: PivotModel
    targets: tuple
    pivot_pool: int = 0
    bundles: dict = field(default_factory=dict)   # size index -> bundle count
    trace: Optional[list] = None
    audit: Optional[Audit] = None

    @property
    def sizes(self):
        return self.model.sizes

    def load(self, i) -> int:
        return sum(p * c for p, c in zip(self.sizes, self.rows[i]))

    def record(self, phase, machine, k, count):
        if self.trace is not None:
            self.trace.append(TraceRecord(phase, machine, self.sizes[k], count))

    def check_congruence(self):
        a = self.model.a
        for i in self.model.big:
            if (self.load(i) - self.targets[i]) % a:
                raise InternalInvariantError(f"machine {i} lost congruence mod {a}")
        if self.audit is not None:
            self.audit.congruence_checks += 1

    def check_conservation(self):
        a = self.model.a
        held = sum(self.load(i) for i in range(len(self.rows)))
        pooled = a * self.pivot_pool + sum(a * self.sizes[k] * q for k, q in self.bundles.items())
        if held + pooled != sum(self.targets):
            raise InternalInvariantError("job volume is not conserved")
        if self.audit is not None:
            self.audit.conservation_checks += 1

    def assignment(self) -> Assignment:
        return Assignment(tuple(tuple(row) for row in self.rows))


def phase1_strip(asg: Assignment, model: PivotModel, targets, trace=None, audit=None) -> ReconstructionState:
    state = ReconstructionState([list(row) for row in asg.counts], model, tuple(targets),
                                trace=trace, audit=audit)
    a, ai = model.a, model.a_index
    d = len(model.sizes)
    for i in model.big:
        row = state.rows[i]
        if row[ai]:
            state.pivot_pool += row[ai]
            state.record("strip", i, ai, -row[ai])
            row[ai] = 0
        for k in range(d):
            if k == ai or row[k] < a:
                continue
            q = row[k] // a
            state.bundles[k] = state.bundles.get(k, 0) + q
            row[k] -= q * a
            state.record("strip", i, k, -q * a)
        state.check_congruence()

    bound = (d - 1) * (a - 1)
    for i in model.big:
        if sum(state.rows[i]) > bound:
            raise InternalInvariantError(f"machine {i} keeps more than {bound} jobs after stripping")
        if state.load(i) >= targets[i]:
            raise InternalInvariantError(f"machine {i} is not below its target after stripping")
        if audit is not None:
            audit.phase1_bound_checks += 1
    state.check_conservation()
    return state


def _check_witness(state: ReconstructionState):
    gap = state.model.p_max**2
    if not any(state.load(i) <= state.targets[i] - gap for i in state.model.big):
        raise InternalInvariantError("no big machine has room for a bundle")
    if state.audit is not None:
        state.audit.witness_checks += 1


def _sweep_cap(state):
    return len(state.model.big) * len(state.sizes) + len(state.bundles) + 1


def phase2_place_bundles(state: ReconstructionState) -> ReconstructionState:
    a = state.model.a
    order = sorted((k for k, q in state.bundles.items() if q), reverse=True)
    sweeps = 0
    while any(state.bundles.get(k, 0) for k in order):
        sweeps += 1
        if sweeps > _sweep_cap(state):
            raise InternalInvariantError("bundle placement does not terminate")
        progressed = False
        for i in state.model.big:
            for k in order:
                left = state.bundles.get(k, 0)
                if not left:
                    continue
                _check_witness(state)
                unit = a * state.sizes[k]
                q = min(left, (state.targets[i] - state.load(i)) // unit)
                if q <= 0:
                    continue
                state.rows[i][k] += q * a
                state.bundles[k] = left - q
                state.record("bundle", i, k, q * a)
                progressed = True
                if state.audit is not None:
                    state.audit.placements += 1
                state.check_congruence()
                state.check_conservation()
                if state.load(i) > state.targets[i]:
                    raise InternalInvariantError(f"machine {i} overfilled by bundles")
        if not progressed:
            raise InternalInvariantError("bundles remain but no big machine can take one")
    return state


def phase3_place_pivots(state: ReconstructionState) -> Assignment:
    if any(state.bundles.values()):
        raise InternalInvariantError("bundles must be placed before pivot jobs")
    a, ai = state.model.a, state.model.a_index
    for i in state.model.big:
        if not state.pivot_pool:
            break
        slack = state.targets[i] - state.load(i)
        if slack % a:
            raise InternalInvariantError(f"machine {i} slack {slack} not a multiple of {a}")
        q = min(state.pivot_pool, slack // a)
        if q <= 0:
            continue
        state.rows[i][ai] += q
        state.pivot_pool -= q
        state.record("pivot", i, ai, q)
        if state.audit is not None:
            state.audit.placements += 1
        state.check_congruence()
        state.check_conservation()
    if state.pivot_pool:
        raise InternalInvariantError("pivot jobs remain but every big machine is full")
    for i, target in enumerate(state.targets):
        if state.load(i) != target:
            raise InternalInvariantError(f"machine {i} ends at {state.load(i)}, target {target}")
    if state.audit is not None:
        state.audit.exactness_checks += 1
    return state.assignment()


def reconstruct(
    asg: Assignment,
    inst: PartitionInstance,
    model: PivotModel,
    trace: Optional[list] = None,
    audit: Optional[Audit] = None,
) -> Assignment:
    problems = check_mod_ip(asg, inst, model)
    if problems:
        raise ValueError("input is not a mod-IP solution: " + "; ".join(problems))
    state = phase1_strip(asg, model, inst.targets, trace=trace, audit=audit)
    phase2_place_bundles(state)
    return phase3_place_pivots(state)
