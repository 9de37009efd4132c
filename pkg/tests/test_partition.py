import pytest

from fptsched.core import JobProfile, PartitionInstance, verify_partition
from fptsched.oracle import brute_partition
from fptsched.partition import solve_partition

from conftest import big_machine_corpus, partition_corpus


def pinst(sizes, counts, targets):
    return PartitionInstance(JobProfile(tuple(sizes), tuple(counts)), tuple(targets))


def test_two_machines_one_of_each():
    asg = solve_partition(pinst([2, 3], [2, 2], [5, 5]))
    assert asg.counts == ((1, 1), (1, 1))


def test_infeasible_for_every_pivot():
    assert solve_partition(pinst([3], [2], [2, 4])) is None


def test_single_machine_takes_everything():
    asg = solve_partition(pinst([1, 4, 5], [3, 1, 2], [17]))
    assert asg.counts == ((3, 1, 2),)


def test_unknown_pivot_rejected():
    with pytest.raises(ValueError):
        solve_partition(pinst([2, 3], [2, 2], [5, 5]), pivots=[4])


def test_agrees_with_oracle():
    for inst in partition_corpus(21, 300) + big_machine_corpus(22, 200):
        got = solve_partition(inst)
        expected = brute_partition(inst)
        assert (got is None) == (expected is None), inst
        if got is not None:
            assert verify_partition(inst, got).passed


def test_pivot_order_does_not_change_verdict():
    for inst in partition_corpus(23, 150) + big_machine_corpus(24, 100):
        forward = solve_partition(inst) is None
        backward = all(solve_partition(inst, pivots=[a]) is None for a in reversed(inst.jobs.sizes))
        assert forward == backward


def test_high_multiplicity_instance():
    # 10**6 jobs each of sizes 2 and 3 split over three machines
    counts = (10**6, 10**6)
    rows = ((300000, 250000), (200000, 500000), (500000, 250000))
    targets = tuple(2 * r[0] + 3 * r[1] for r in rows)
    inst = pinst([2, 3], counts, targets)
    asg = solve_partition(inst)
    assert asg is not None
    assert verify_partition(inst, asg).passed
