import itertools

import pytest
from hypothesis import given, settings, strategies as st

from fptsched.core import InternalInvariantError, JobProfile, PartitionInstance
from fptsched.mcilp import McilpSolution, check_solution, solve_inequality
from fptsched.modip import (
    MachineType,
    PivotInfeasible,
    assemble_config_ilp,
    build_config_ilp,
    check_mod_ip,
    classify_machines,
    decode,
    enumerate_configs,
    enumerate_types,
    solve_pivot,
)
from fptsched.oracle import brute_mcilp

from conftest import big_machine_corpus, partition_corpus


def pinst(sizes, counts, targets):
    return PartitionInstance(JobProfile(tuple(sizes), tuple(counts)), tuple(targets))


def test_classify_threshold():
    # p_max = 2, threshold 16; total size must balance the targets
    model = classify_machines(pinst([1, 2], [64, 1], [10, 16, 40]))
    assert model.threshold == 16
    assert model.small == (0,)
    assert model.big == (1, 2)


def test_classify_zero_targets_small():
    # a valid instance has positive total size, so only some targets can be 0
    model = classify_machines(pinst([1], [2], [2, 0]))
    assert model.small == (1,) and model.big == (0,)
    model = classify_machines(pinst([2], [3], [0, 6, 0]))
    assert model.small == (0, 1, 2)


def test_classify_strict_boundary():
    model = classify_machines(pinst([1], [2], [1, 1]))
    assert model.small == ()
    assert model.big == (0, 1)


def test_types_group_small_targets():
    types = enumerate_types(pinst([2, 3], [4, 3], [5, 5, 7]), 2)
    assert [(t.big, t.value, t.multiplicity) for t in types] == [(False, 5, 2), (False, 7, 1)]
    assert types[0].machines == (0, 1)


def test_types_group_big_residues():
    # p_max = 2: threshold 16, every target is big
    types = enumerate_types(pinst([1, 2], [1, 34], [20, 23, 26]), 1)
    assert len(types) == 1
    # p_max = 3: threshold 81; 83, 86 and 89 are all 2 mod 3
    types = enumerate_types(pinst([1, 3], [3, 85], [83, 86, 89]), 3)
    assert [(t.big, t.value, t.multiplicity) for t in types] == [(True, 2, 3)]


def test_types_mixed():
    # p_max = 2: target 3 is small, 20 is big
    types = enumerate_types(pinst([1, 2], [3, 10], [3, 20]), 2)
    assert [(t.big, t.value, t.multiplicity) for t in types] == [(False, 3, 1), (True, 0, 1)]


def test_configs_examples():
    small = MachineType(False, 3, (0,))
    assert set(enumerate_configs(small, [1, 2], 1)) == {(3, 0), (1, 1)}
    assert enumerate_configs(small, [1, 2], 1) == sorted(enumerate_configs(small, [1, 2], 1))
    big = MachineType(True, 1, (0,))
    assert enumerate_configs(big, [1, 2], 2) == [(1, 0), (1, 1)]
    zero = MachineType(False, 0, (0,))
    assert enumerate_configs(zero, [1, 2, 5], 1) == [(0, 0, 0)]


def test_configs_unreachable_target():
    assert enumerate_configs(MachineType(False, 3, (0,)), [2, 4], 2) == []


def test_configs_caps():
    small = MachineType(False, 4, (0,))
    assert enumerate_configs(small, [1, 2], 1, caps=[2, 5]) == [(0, 2), (2, 1)]


@settings(max_examples=80, deadline=None)
@given(
    st.lists(st.integers(1, 6), min_size=1, max_size=3, unique=True).map(sorted),
    st.integers(0, 14),
    st.booleans(),
    st.data(),
)
def test_configs_match_box_enumeration(sizes, value, big, data):
    a = data.draw(st.sampled_from(sizes))
    if big:
        value %= a
    got = enumerate_configs(MachineType(big, value, (0,)), sizes, a)
    box = [range(a) if big else range(value // p + 1) for p in sizes]
    expected = []
    for vec in itertools.product(*box):
        total = sum(p * c for p, c in zip(sizes, vec))
        if (big and total % a == value) or (not big and total == value):
            expected.append(vec)
    assert got == expected
    if big:
        assert all(sum(C) < a * len(sizes) for C in got)


def test_bare_type_ilp():
    jobs = JobProfile((1, 2), (3, 1))
    inst = PartitionInstance(jobs, (3, 2))
    model = classify_machines(inst, 1)
    cm = assemble_config_ilp(jobs, [MachineType(False, 3, (0,))], model)
    assert cm.configs == (((1, 1), (3, 0)),)
    assert cm.ilp.A == ((1, 3), (1, 0), (1, 3))
    assert cm.ilp.b == (3, 1, 3)
    assert cm.ilp.c == (0, 0)
    assert cm.ilp.cardinalities == (1,)
    feasible = {x for x in [(1, 0), (0, 1)] if check_solution(cm.ilp, x, "le")}
    assert feasible == {(1, 0), (0, 1)}


def test_no_big_machines_pivot_row_is_count():
    inst = pinst([1, 2], [3, 1], [3, 2])
    cm = build_config_ilp(inst, 2)
    assert cm.ilp.b[-1] == 1


def test_pivot_infeasible():
    # p_max = 2, one big machine (target 18), only one job of size 2
    inst = pinst([1, 2], [16, 1], [18])
    with pytest.raises(PivotInfeasible):
        build_config_ilp(inst, 2)
    assert solve_pivot(inst, 2) is None


def test_decode_no_big():
    inst = pinst([2, 3], [2, 2], [5, 5])
    cm = build_config_ilp(inst, 2)
    y = solve_inequality(cm.ilp, slack="compact")
    asg = decode(y, cm, inst)
    assert asg.counts == ((1, 1), (1, 1))
    assert check_mod_ip(asg, inst, cm.model) == []


def test_decode_leftovers_to_big_machine():
    inst = pinst([1], [2], [2])
    cm = build_config_ilp(inst, 1)
    assert cm.configs == (((0,),),)
    asg = decode(McilpSolution((1,), 0), cm, inst)
    assert asg.counts == ((2,),)
    assert check_mod_ip(asg, inst, cm.model) == []


def test_decode_spreads_configs_by_machine_index():
    inst = pinst([1, 2], [4, 1], [3, 3])
    cm = build_config_ilp(inst, 1)
    assert cm.configs == (((1, 1), (3, 0)),)
    asg = decode(McilpSolution((1, 1), 0), cm, inst)
    assert asg.counts == ((1, 1), (3, 0))


def test_decode_rejects_wrong_multiplicity():
    inst = pinst([1, 2], [4, 1], [3, 3])
    cm = build_config_ilp(inst, 1)
    with pytest.raises(InternalInvariantError):
        decode(McilpSolution((1, 0), 0), cm, inst)


def _pivot_runs(corpus):
    for inst in corpus:
        for a in inst.jobs.sizes:
            yield inst, a


def test_decoded_solutions_satisfy_mod_ip():
    seen = 0
    for inst, a in _pivot_runs(partition_corpus(3, 150) + big_machine_corpus(4, 150)):
        found = solve_pivot(inst, a)
        if found is None:
            continue
        asg, model = found
        assert check_mod_ip(asg, inst, model) == []
        seen += 1
    assert seen > 100


def test_config_ilp_agrees_with_enumeration():
    for inst, a in _pivot_runs(partition_corpus(5, 60)):
        try:
            cm = build_config_ilp(inst, a)
        except PivotInfeasible:
            continue
        if cm.ilp.n > 12:
            continue
        got = solve_inequality(cm.ilp, slack="compact")
        assert (got is None) == (brute_mcilp(cm.ilp, sense="le") is None)


def test_pruning_does_not_change_verdict():
    for inst, a in _pivot_runs(big_machine_corpus(6, 60)):
        try:
            pruned = build_config_ilp(inst, a)
            full = build_config_ilp(inst, a, prune=False)
        except PivotInfeasible:
            continue
        assert (solve_inequality(pruned.ilp, slack="compact") is None) == \
               (solve_inequality(full.ilp, slack="compact") is None)
