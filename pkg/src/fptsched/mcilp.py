"""Multi-Choice Integer Programming by longest path in a layered graph.

Problem: maximise ``c.x`` subject to ``A x = b`` (or ``A x <= b``), ``x >= 0``
integral, and ``sum(x[i] for i in S) == t_S`` for every set ``S`` of a
partition of the columns.

The solver starts at ``x = 0`` and performs ``t = sum(t_S)`` unit increments.
The set incremented in step ``k`` is fixed in advance by merging the
breakpoints ``i / t_S`` of all sets, so every set progresses at the same
relative pace. A state of layer ``k`` is the right-hand side ``A x'`` of the
partial solution after ``k`` steps; only states within ``l_inf`` distance
``4 * r * Delta * |P|`` of ``(k-th breakpoint) * b`` are kept. That radius is
large enough for an optimal solution to survive, and it bounds the layer
width independently of ``t``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .core import InternalInvariantError, InvalidInstanceError


@dataclass(frozen=True)
class McilpInstance:
    A: tuple[tuple[int, ...], ...]
    b: tuple[int, ...]
    c: tuple[int, ...]
    partition: tuple[tuple[int, ...], ...]
    cardinalities: tuple[int, ...]
    n: int = -1

    def __post_init__(self):
        A = tuple(tuple(int(v) for v in row) for row in self.A)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", tuple(int(v) for v in self.b))
        object.__setattr__(self, "c", tuple(int(v) for v in self.c))
        object.__setattr__(self, "partition", tuple(tuple(int(i) for i in S) for S in self.partition))
        object.__setattr__(self, "cardinalities", tuple(int(v) for v in self.cardinalities))
        n = len(self.c) if self.n < 0 else self.n
        object.__setattr__(self, "n", n)
        if len(self.c) != n:
            raise InvalidInstanceError("objective length differs from column count")
        if len(self.b) != len(A):
            raise InvalidInstanceError("right-hand side length differs from row count")
        if any(len(row) != n for row in A):
            raise InvalidInstanceError("matrix rows must have one entry per column")
        if len(self.cardinalities) != len(self.partition):
            raise InvalidInstanceError("one cardinality per partition set is required")
        if any(t < 0 for t in self.cardinalities):
            raise InvalidInstanceError("cardinalities must be nonnegative")
        seen = sorted(i for S in self.partition for i in S)
        if seen != list(range(n)):
            raise InvalidInstanceError("partition sets must be disjoint and cover all columns")

    @property
    def r(self) -> int:
        return len(self.A)

    @property
    def t(self) -> int:
        return sum(self.cardinalities)

    @property
    def delta(self) -> int:
        return max([1] + [abs(v) for row in self.A for v in row])

    def column(self, i: int) -> tuple[int, ...]:
        return tuple(row[i] for row in self.A)

    def radius(self) -> int:
        return 4 * self.r * self.delta * len(self.partition)


@dataclass(frozen=True)
class McilpSolution:
    x: tuple[int, ...]
    objective: int


@dataclass(frozen=True)
class Breakpoint:
    set_index: int
    step: int        # i in the fraction i / t_S
    total: int       # t_S

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.step, self.total)


@dataclass
class DpStats:
    """Counters filled in by :func:`solve_equality` when passed in."""

    layers: int = 0
    peak_states: int = 0
    inserted: int = 0
    ball_violations: int = 0
    layer_sizes: list = field(default_factory=list)

    def merge(self, other: "DpStats"):
        self.layers += other.layers
        self.peak_states = max(self.peak_states, other.peak_states)
        self.inserted += other.inserted
        self.ball_violations += other.ball_violations


def build_breakpoints(cardinalities: Sequence[int]) -> list[Breakpoint]:
    """Merge the fractions ``i / t_S`` of all sets; ties go to the lower set index."""
    entries = [
        Breakpoint(s, i, t)
        for s, t in enumerate(cardinalities)
        for i in range(1, t + 1)
    ]
    entries.sort(key=lambda e: (e.fraction, e.set_index))
    return entries


def in_ball(state: Sequence[int], b: Sequence[int], bp: Optional[Breakpoint], radius: int) -> bool:
    """Exact test ``||state - (i/t_S) * b||_inf <= radius`` by cross-multiplication."""
    if bp is None:
        return all(abs(v) <= radius for v in state)
    den, num = bp.total, bp.step
    bound = radius * den
    return all(abs(den * v - num * w) <= bound for v, w in zip(state, b))


def _column_groups(inst: McilpInstance):
    # one entry per distinct column vector in a set: best objective, then lowest index
    groups = []
    for S in inst.partition:
        best = {}
        for i in sorted(S):
            col = inst.column(i)
            cur = best.get(col)
            if cur is None or inst.c[i] > inst.c[cur]:
                best[col] = i
        groups.append(best)
    return groups


def _remaining_bounds(inst: McilpInstance, schedule, groups):
    """Per layer, the min/max total that the layers after it can add to each row."""
    r = inst.r
    lo_set, hi_set = [], []
    for g in groups:
        cols = list(g)
        if cols:
            lo_set.append(tuple(min(col[j] for col in cols) for j in range(r)))
            hi_set.append(tuple(max(col[j] for col in cols) for j in range(r)))
        else:
            lo_set.append(None)
            hi_set.append(None)
    t = len(schedule)
    rem_lo = [None] * (t + 1)
    rem_hi = [None] * (t + 1)
    lo = [0] * r
    hi = [0] * r
    rem_lo[t], rem_hi[t] = tuple(lo), tuple(hi)
    for k in range(t - 1, -1, -1):
        s = schedule[k].set_index
        if lo_set[s] is None:
            return None, None
        lo = [a + v for a, v in zip(lo, lo_set[s])]
        hi = [a + v for a, v in zip(hi, hi_set[s])]
        rem_lo[k], rem_hi[k] = tuple(lo), tuple(hi)
    return rem_lo, rem_hi


def solve_equality(inst: McilpInstance, stats: Optional[DpStats] = None) -> Optional[McilpSolution]:
    """Maximum-objective solution of the equality form, or ``None`` if infeasible.

    Beyond the ball, states whose row values can no longer be brought to ``b``
    by the remaining layers are dropped. That test uses only per-row min/max
    column entries, so it never discards a state on a path to ``b``.
    """
    r, b = inst.r, inst.b
    schedule = build_breakpoints(inst.cardinalities)
    radius = inst.radius()
    groups = _column_groups(inst)
    rem_lo, rem_hi = _remaining_bounds(inst, schedule, groups)
    if stats is not None:
        stats.layer_sizes = []
    if rem_lo is None:
        # some set with positive cardinality has no columns
        return None

    zero = (0,) * r
    # state -> (objective, column that produced it)
    layer = {zero: (0, -1)}
    history = [layer]
    if stats is not None:
        stats.inserted += 1
        stats.peak_states = max(stats.peak_states, 1)
        stats.layer_sizes.append(1)
        if not in_ball(zero, b, None, radius):
            stats.ball_violations += 1

    for k, bp in enumerate(schedule, start=1):
        group = groups[bp.set_index]
        lo = tuple(bj - h for bj, h in zip(b, rem_hi[k]))
        hi = tuple(bj - l for bj, l in zip(b, rem_lo[k]))
        den, num = bp.total, bp.step
        ball_lo = tuple(-(-(num * bj - radius * den) // den) for bj in b)
        ball_hi = tuple((num * bj + radius * den) // den for bj in b)
        lo = tuple(max(x, y) for x, y in zip(lo, ball_lo))
        hi = tuple(min(x, y) for x, y in zip(hi, ball_hi))
        if any(x > y for x, y in zip(lo, hi)):
            layer = {}
            history.append(layer)
            break

        nxt = {}
        if lo == hi:
            # the remaining layers fix the row values exactly: one target state
            target = lo
            for state, (val, _) in layer.items():
                diff = tuple(x - y for x, y in zip(target, state))
                i = group.get(diff)
                if i is None:
                    continue
                cand = val + inst.c[i]
                cur = nxt.get(target)
                if cur is None or cand > cur[0] or (cand == cur[0] and i < cur[1]):
                    nxt[target] = (cand, i)
        else:
            cols = [(col, i, inst.c[i]) for col, i in group.items()]
            for state, (val, _) in layer.items():
                for col, i, ci in cols:
                    new = tuple(x + y for x, y in zip(state, col))
                    ok = True
                    for v, l, h in zip(new, lo, hi):
                        if v < l or v > h:
                            ok = False
                            break
                    if not ok:
                        continue
                    cand = val + ci
                    cur = nxt.get(new)
                    if cur is None or cand > cur[0] or (cand == cur[0] and i < cur[1]):
                        nxt[new] = (cand, i)

        layer = nxt
        history.append(layer)
        if stats is not None:
            stats.inserted += len(layer)
            stats.peak_states = max(stats.peak_states, len(layer))
            stats.layer_sizes.append(len(layer))
            stats.ball_violations += sum(1 for s in layer if not in_ball(s, b, bp, radius))
        if not layer:
            break

    if stats is not None:
        stats.layers += len(schedule)

    if len(history) != len(schedule) + 1 or b not in history[-1]:
        return None

    x = [0] * inst.n
    state = b
    objective = history[-1][b][0]
    for k in range(len(schedule), 0, -1):
        _, i = history[k][state]
        x[i] += 1
        state = tuple(s - a for s, a in zip(state, inst.column(i)))
    if state != zero:
        raise InternalInvariantError("predecessor chain does not return to the origin")
    return McilpSolution(tuple(x), objective)


@dataclass(frozen=True)
class Reduction:
    """Equality instance produced from an inequality instance, plus the back-map data."""

    instance: McilpInstance
    n_original: int
    kept_rows: tuple[int, ...]

    def back(self, sol: Optional[McilpSolution]) -> Optional[McilpSolution]:
        if sol is None:
            return None
        return McilpSolution(sol.x[: self.n_original], sol.objective)


def reduce_inequalities(inst: McilpInstance, slack: str = "unit") -> Reduction:
    """Turn ``A x <= b`` into an equality system with slack variables.

    Rows with ``b_j >= Delta * t`` can never be violated and are dropped.

    ``slack="unit"`` adds, per surviving row, a new set ``{s_j, sbar_j}`` of
    cardinality ``2 t Delta``: ``s_j`` is the unit vector of row ``j`` and
    ``sbar_j`` the zero column.

    ``slack="compact"`` adds, per surviving row, a set of cardinality one
    whose columns are ``k * e_j`` for ``k = 0..K_j``, where ``K_j`` is the
    largest slack any cardinality-feasible ``x`` can leave in that row. Its
    single breakpoint sits at 1, so slack is settled after every original
    increment and does not multiply the number of intermediate states.
    """
    if slack not in ("unit", "compact"):
        raise ValueError(f"unknown slack mode {slack!r}")
    delta, t, n = inst.delta, inst.t, inst.n
    kept = tuple(j for j in range(inst.r) if inst.b[j] < delta * t)
    rows = [list(inst.A[j]) for j in kept]
    b = [inst.b[j] for j in kept]
    c = list(inst.c)
    partition = [tuple(S) for S in inst.partition]
    cards = list(inst.cardinalities)

    for q, j in enumerate(kept):
        if slack == "unit":
            new_cols = [1, 0]
            card = 2 * t * delta
        else:
            low = 0
            for S, tS in zip(inst.partition, inst.cardinalities):
                if S:
                    low += tS * min(inst.A[j][i] for i in S)
            top = max(0, inst.b[j] - low)
            new_cols = list(range(top + 1))
            card = 1
        start = len(c)
        for row_idx, row in enumerate(rows):
            if row_idx == q:
                row.extend(new_cols)
            else:
                row.extend([0] * len(new_cols))
        c.extend([0] * len(new_cols))
        partition.append(tuple(range(start, start + len(new_cols))))
        cards.append(card)

    eq = McilpInstance(
        A=tuple(tuple(row) for row in rows),
        b=tuple(b),
        c=tuple(c),
        partition=tuple(partition),
        cardinalities=tuple(cards),
        n=len(c),
    )
    return Reduction(eq, n, kept)


def solve_inequality(
    inst: McilpInstance, slack: str = "unit", stats: Optional[DpStats] = None
) -> Optional[McilpSolution]:
    red = reduce_inequalities(inst, slack=slack)
    return red.back(solve_equality(red.instance, stats=stats))


def check_solution(inst: McilpInstance, x: Sequence[int], sense: str = "eq") -> bool:
    """Post-hoc feasibility check for either sense."""
    if len(x) != inst.n or any(v < 0 for v in x):
        return False
    for S, tS in zip(inst.partition, inst.cardinalities):
        if sum(x[i] for i in S) != tS:
            return False
    for row, bj in zip(inst.A, inst.b):
        lhs = sum(a * v for a, v in zip(row, x))
        if (sense == "eq" and lhs != bj) or (sense == "le" and lhs > bj):
            return False
    return True
