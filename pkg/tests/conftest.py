import random
import sys

import pytest

from fptsched.core import JobProfile, PartitionInstance, SchedulingInstance
from fptsched.mcilp import McilpInstance


def random_profile(rng, max_size, max_jobs, max_d):
    d = rng.randint(1, min(max_d, max_size))
    sizes = sorted(rng.sample(range(1, max_size + 1), d))
    n = rng.randint(d, max_jobs)
    counts = [1] * d
    for _ in range(n - d):
        counts[rng.randrange(d)] += 1
    return JobProfile(tuple(sizes), tuple(counts))


def random_targets(rng, jobs, m, feasible):
    if feasible:
        targets = [0] * m
        for p in jobs.expand():
            targets[rng.randrange(m)] += p
        return targets
    cuts = sorted(rng.randint(0, jobs.total_size) for _ in range(m - 1))
    return [hi - lo for lo, hi in zip([0] + cuts, cuts + [jobs.total_size])]


def partition_corpus(seed, count, max_size=5, max_jobs=8, max_d=3, max_m=3):
    """Half the targets come from a random assignment, half from a random composition."""
    rng = random.Random(seed)
    out = []
    for k in range(count):
        jobs = random_profile(rng, max_size, max_jobs, max_d)
        m = rng.randint(1, min(max_m, jobs.total_jobs))
        out.append(PartitionInstance(jobs, tuple(random_targets(rng, jobs, m, k % 2 == 0))))
    return out


def big_machine_corpus(seed, count, max_count=12):
    """Few small sizes with many copies, so several targets reach p_max**4."""
    rng = random.Random(seed)
    out = []
    for k in range(count):
        sizes = sorted(rng.sample(range(1, 4), rng.randint(1, 3)))
        jobs = JobProfile(tuple(sizes), tuple(rng.randint(1, max_count) for _ in sizes))
        m = rng.randint(1, min(3, jobs.total_jobs))
        out.append(PartitionInstance(jobs, tuple(random_targets(rng, jobs, m, k % 3 != 2))))
    return out


def scheduling_corpus(seed, count, max_size=6, max_jobs=10, max_m=3, max_speed=3):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        jobs = random_profile(rng, max_size, max_jobs, max_size)
        m = rng.randint(1, min(max_m, jobs.total_jobs))
        out.append(SchedulingInstance(jobs, tuple(rng.randint(1, max_speed) for _ in range(m))))
    return out


def mcilp_corpus(seed, count, max_rows=2, max_cols=8, max_sets=3, max_t=6, entry=3):
    """Random instances; half get a right-hand side produced by a random feasible x."""
    rng = random.Random(seed)
    out = []
    for k in range(count):
        r = rng.randint(0, max_rows)
        n = rng.randint(1, max_cols)
        n_sets = rng.randint(1, min(max_sets, n))
        cols = list(range(n))
        rng.shuffle(cols)
        cuts = sorted(rng.sample(range(1, n), n_sets - 1))
        sets = [tuple(sorted(cols[lo:hi])) for lo, hi in zip([0] + cuts, cuts + [n])]
        cards = [0] * n_sets
        for _ in range(rng.randint(0, max_t)):
            cards[rng.randrange(n_sets)] += 1
        A = [[rng.randint(-entry, entry) for _ in range(n)] for _ in range(r)]
        c = [rng.randint(-entry, entry) for _ in range(n)]
        if k % 2 == 0:
            x = [0] * n
            for S, tS in zip(sets, cards):
                for _ in range(tS):
                    x[rng.choice(S)] += 1
            b = [sum(a * v for a, v in zip(row, x)) for row in A]
        else:
            b = [rng.randint(-2 * entry, 2 * entry) for _ in range(r)]
        out.append(McilpInstance(A=A, b=b, c=c, partition=sets, cardinalities=cards))
    return out


@pytest.fixture
def rng():
    return random.Random(12345)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
