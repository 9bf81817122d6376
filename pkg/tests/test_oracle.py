from __future__ import annotations

import itertools
import math
from fractions import Fraction

import numpy as np
import pytest

from seminarassign import Assignment, Instance, OracleGuardError, outcome
from seminarassign.instgen import random_instance
from seminarassign.oracle import (
    DEFAULT_GUARD,
    enumerate_feasible,
    exact_frontier,
    exact_optimum,
)


def _count_by_multinomials(inst: Instance) -> int:
    # sum over feasible count vectors of n! / prod(c_j!)
    total = 0
    ranges = [range(int(inst.a[j]), int(inst.b[j]) + 1) for j in range(inst.m)]
    for counts in itertools.product(*ranges):
        if sum(counts) != inst.n:
            continue
        ways = math.factorial(inst.n)
        for c in counts:
            ways //= math.factorial(c)
        total += ways
    return total


def _brute_force(inst: Instance):
    # independent of the oracle's pruning: raw m^n scan
    best = None
    outs = []
    for topics in itertools.product(range(inst.m), repeat=inst.n):
        counts = [topics.count(j) for j in range(inst.m)]
        if any(c < inst.a[j] or c > inst.b[j]
               for j, c in enumerate(counts)):
            continue
        o = outcome(inst, Assignment.from_topics(inst, list(topics)))
        outs.append(o)
        if best is None or o.utility > best:
            best = o.utility
    return best, outs


def test_t1_enumeration_count(t1: Instance) -> None:
    assert enumerate_feasible(t1) == 6
    assert enumerate_feasible(t1) == _count_by_multinomials(t1)


def test_t2_enumeration_count(t2: Instance) -> None:
    assert enumerate_feasible(t2) == 20
    assert enumerate_feasible(t2) == _count_by_multinomials(t2)


def test_trivial_instance() -> None:
    inst = Instance.create([[7]], a=[1], b=[1])
    assert enumerate_feasible(inst) == 1
    res = exact_optimum(inst)
    assert res.optimum_utility == 7 and res.optimal_count == 1


def test_enumeration_matches_multinomials_on_random_shapes() -> None:
    rng = np.random.default_rng(41)
    for trial in range(15):
        n = int(rng.integers(2, 9))
        m = int(rng.integers(1, 4))
        inst = random_instance(n, m, w_max=15, seed=trial)
        assert enumerate_feasible(inst) == _count_by_multinomials(inst)


def test_visitor_sees_each_feasible_assignment_once(t1: Instance) -> None:
    seen: set[tuple] = set()
    feasible_flags: list[bool] = []

    def visit(topics) -> None:
        seen.add(tuple(topics))
        counts = [list(topics).count(j) for j in range(t1.m)]
        feasible_flags.append(counts == [2, 2])

    visited = enumerate_feasible(t1, visitor=visit)
    assert visited == len(seen) == 6
    assert all(feasible_flags)


def test_t1_unique_optimum(t1: Instance) -> None:
    res = exact_optimum(t1)
    assert res.optimum_utility == 40
    assert res.optimal_count == 1
    assert res.enumerated == 6


def test_tied_optima_are_counted() -> None:
    inst = Instance.create([[5, 5]] * 4, a=[2, 2], b=[2, 2])
    res = exact_optimum(inst)
    assert res.optimum_utility == 20
    assert res.optimal_count == 6


def test_optimum_matches_brute_force_on_random_instances() -> None:
    rng = np.random.default_rng(53)
    for trial in range(10):
        n = int(rng.integers(3, 7))
        m = int(rng.integers(2, 4))
        inst = random_instance(n, m, w_max=20, k=2, seed=500 + trial)
        best, outs = _brute_force(inst)
        res = exact_frontier(inst)
        assert res.optimum_utility == best
        assert res.optimal_count == sum(1 for o in outs if o.utility == best)


def test_frontier_is_the_nondominated_set() -> None:
    rng = np.random.default_rng(67)
    for trial in range(10):
        n = int(rng.integers(3, 7))
        m = int(rng.integers(2, 4))
        inst = random_instance(n, m, w_max=20, k=2, seed=900 + trial)
        _, outs = _brute_force(inst)
        front = {o for o in outs
                 if not any(other.dominates(o) for other in outs)}
        res = exact_frontier(inst)
        assert {o for o, _ in res.frontier} == front
        for o, cnt in res.frontier:
            assert cnt == sum(1 for x in outs if x == o)


def test_frontier_shape(t2: Instance) -> None:
    res = exact_frontier(t2)
    # both count splits load the staff 1/3 apart, so the frontier is the
    # utility optimum alone
    assert len(res.frontier) == 1
    (o, cnt) = res.frontier[0]
    assert o.utility == res.optimum_utility
    assert o.imbalance == Fraction(1, 3)
    assert cnt == res.optimal_count


def test_frontier_sorted_and_consistent() -> None:
    inst = random_instance(8, 3, w_max=20, k=2, seed=77)
    res = exact_frontier(inst)
    utils = [o.utility for o, _ in res.frontier]
    assert utils == sorted(utils, reverse=True)
    assert res.optimum_utility == utils[0]
    imbs = [o.imbalance for o, _ in res.frontier]
    assert imbs == sorted(imbs)


def test_guard_refuses_large_search_spaces() -> None:
    inst = random_instance(40, 10, w_max=30, seed=1)
    with pytest.raises(OracleGuardError, match="neighborhood search"):
        exact_optimum(inst)
    with pytest.raises(OracleGuardError):
        enumerate_feasible(inst)


def test_guard_threshold_is_configurable(t2: Instance) -> None:
    assert enumerate_feasible(t2, guard=2**5) == 20
    with pytest.raises(OracleGuardError):
        enumerate_feasible(t2, guard=2**4)
    assert DEFAULT_GUARD == 10**8
