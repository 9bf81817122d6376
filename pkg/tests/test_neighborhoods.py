from __future__ import annotations

import numpy as np
import pytest

from seminarassign import (
    Assignment,
    Instance,
    NoMoveAvailable,
    initial_solution,
    is_feasible,
)
from seminarassign.instgen import random_instance
from seminarassign.neighborhoods import (
    ALL_KINDS,
    Move,
    NeighborhoodKind,
    applicable_kinds,
    apply,
    inapplicability_reasons,
    max_occupied_topics,
    propose,
    propose_shift,
    propose_shift_swap2,
    propose_swap2,
    propose_swap3,
)


def _check_swap2(inst: Instance, asg: Assignment, rel) -> None:
    (i, ji, li), (k, jk, lk) = rel
    assert i != k
    assert asg.topic_of[i] == ji and asg.topic_of[k] == jk
    assert ji != jk
    assert (li, lk) == (jk, ji)  # a pure exchange


def _check_swap3(inst: Instance, asg: Assignment, rel) -> None:
    students = [s for s, _, _ in rel]
    froms = [f for _, f, _ in rel]
    tos = [t for _, _, t in rel]
    assert len(set(students)) == 3
    assert len(set(froms)) == 3  # pairwise distinct topics
    for s, f, _ in rel:
        assert asg.topic_of[s] == f
    # directed 3-cycle: each student takes the next one's topic
    assert tos[0] == froms[1] and tos[1] == froms[2] and tos[2] == froms[0]


def _check_shift(inst: Instance, asg: Assignment, rel) -> None:
    ((s, f, t),) = rel
    assert f != t
    assert asg.topic_of[s] == f
    assert asg.count[f] > inst.a[f]  # donor stays feasible
    assert asg.count[t] < inst.b[t]  # receiver stays feasible


def _check_move(inst: Instance, asg: Assignment, move: Move) -> None:
    kind, rel = move.kind, move.relocations
    if kind is NeighborhoodKind.SWAP2:
        assert len(rel) == 2
        _check_swap2(inst, asg, rel)
    elif kind is NeighborhoodKind.SWAP3:
        assert len(rel) == 3
        _check_swap3(inst, asg, rel)
    elif kind is NeighborhoodKind.SHIFT:
        assert len(rel) == 1
        _check_shift(inst, asg, rel)
    else:
        assert len(rel) == 3
        _check_shift(inst, asg, rel[:1])
        shifted = asg.copy()
        shifted.apply_relocations(inst, rel[:1])
        _check_swap2(inst, shifted, rel[1:])


def _random_instances(count: int, seed: int):
    rng = np.random.default_rng(seed)
    for trial in range(count):
        n = int(rng.integers(4, 20))
        m = int(rng.integers(2, 6))
        yield rng, random_instance(n, m, w_max=20, k=min(m, 2),
                                   seed=seed * 1000 + trial)


def test_proposals_satisfy_side_conditions() -> None:
    for rng, inst in _random_instances(12, seed=7):
        asg = initial_solution(inst, rng)
        kinds = sorted(applicable_kinds(inst), key=lambda k: k.value)
        for _ in range(300):
            kind = kinds[int(rng.integers(0, len(kinds)))]
            try:
                mv = propose(inst, asg, kind, rng)
            except NoMoveAvailable:
                # staged sampling dead-ends only in shift+swap2's second stage
                assert kind is NeighborhoodKind.SHIFT_SWAP2
                continue
            assert mv.kind is kind
            _check_move(inst, asg, mv)
            after = apply(inst, asg, mv)
            assert is_feasible(inst, after)
            assert int(after.count.sum()) == inst.n
            asg = after


def test_swap_moves_preserve_counts() -> None:
    for rng, inst in _random_instances(6, seed=19):
        asg = initial_solution(inst, rng)
        for kind in (NeighborhoodKind.SWAP2, NeighborhoodKind.SWAP3):
            if kind not in applicable_kinds(inst):
                continue
            for _ in range(50):
                mv = propose(inst, asg, kind, rng)
                after = apply(inst, asg, mv)
                assert list(after.count) == list(asg.count)


def test_swap2_is_an_involution(t1: Instance) -> None:
    rng = np.random.default_rng(3)
    asg = Assignment.from_topics(t1, [0, 1, 0, 1])
    mv = propose_swap2(t1, asg, rng)
    back = Move(mv.kind, tuple((s, t, f) for s, f, t in mv.relocations))
    again = apply(t1, apply(t1, asg, mv), back)
    assert list(again.topic_of) == list(asg.topic_of)


def test_swap3_rotates_three_ways_home() -> None:
    inst = random_instance(9, 3, w_max=10, seed=4)
    rng = np.random.default_rng(5)
    asg = initial_solution(inst, rng)
    mv = propose_swap3(inst, asg, rng)
    nxt = {f: t for _, f, t in mv.relocations}  # the topic 3-cycle
    state = asg
    for _ in range(3):
        step = Move(mv.kind, tuple(
            (s, int(state.topic_of[s]), nxt[int(state.topic_of[s])])
            for s, _, _ in mv.relocations))
        state = apply(inst, state, step)
    assert list(state.topic_of) == list(asg.topic_of)


def test_t1_only_swap2_applies(t1: Instance) -> None:
    assert applicable_kinds(t1) == {NeighborhoodKind.SWAP2}
    reasons = inapplicability_reasons(t1)
    assert "3 different topics" in reasons[NeighborhoodKind.SWAP3]
    assert reasons[NeighborhoodKind.SHIFT] == "a_j = b_j for all j"
    assert reasons[NeighborhoodKind.SHIFT_SWAP2] == "a_j = b_j for all j"
    rng = np.random.default_rng(0)
    asg = Assignment.from_topics(t1, [0, 1, 0, 1])
    for kind in (NeighborhoodKind.SWAP3, NeighborhoodKind.SHIFT,
                 NeighborhoodKind.SHIFT_SWAP2):
        with pytest.raises(NoMoveAvailable):
            propose(t1, asg, kind, rng)


def test_t1_swap2_always_crosses_topics(t1: Instance) -> None:
    rng = np.random.default_rng(1)
    asg = Assignment.from_topics(t1, [0, 0, 1, 1])
    for _ in range(200):
        mv = propose_swap2(t1, asg, rng)
        (_, ji, _), (_, jk, _) = mv.relocations
        assert {ji, jk} == {0, 1}


def test_t1_swap2_pairs_roughly_uniform(t1: Instance) -> None:
    rng = np.random.default_rng(2)
    asg = Assignment.from_topics(t1, [0, 0, 1, 1])
    hits: dict[frozenset, int] = {}
    draws = 2000
    for _ in range(draws):
        mv = propose_swap2(t1, asg, rng)
        pair = frozenset(s for s, _, _ in mv.relocations)
        hits[pair] = hits.get(pair, 0) + 1
    assert len(hits) == 4  # 2 students on t1 x 2 students on t2
    for c in hits.values():
        assert c > draws * 0.15


def test_t2_shift_direction_follows_counts(t2: Instance) -> None:
    rng = np.random.default_rng(6)
    asg = Assignment.from_topics(t2, [0, 0, 0, 1, 1])
    for _ in range(100):
        mv = propose_shift(t2, asg, rng)
        ((s, f, t),) = mv.relocations
        assert (f, t) == (0, 1)  # only topic 1 is above its minimum


def test_applicability_for_common_shapes() -> None:
    even = random_instance(30, 15, w_max=100, k=4, seed=0)
    assert applicable_kinds(even) == {NeighborhoodKind.SWAP2,
                                      NeighborhoodKind.SWAP3}
    assert inapplicability_reasons(even)[NeighborhoodKind.SHIFT] == \
        "a_j = b_j for all j"
    uneven = random_instance(34, 15, w_max=100, k=4, seed=0)
    assert applicable_kinds(uneven) == set(ALL_KINDS)
    assert inapplicability_reasons(uneven) == {}


def test_applicability_boundary_reasons() -> None:
    rows2 = [[5, 5], [5, 5], [5, 5]]
    absorbed = Instance.create(rows2, a=[1, 2], b=[2, 3])
    assert "sum of a_j = n" in \
        inapplicability_reasons(absorbed)[NeighborhoodKind.SHIFT]
    saturated = Instance.create(rows2 + [[5, 5]], a=[1, 1], b=[2, 2])
    assert "sum of b_j = n" in \
        inapplicability_reasons(saturated)[NeighborhoodKind.SHIFT]
    rows3 = [[4, 3, 3], [4, 3, 3], [4, 3, 3]]
    one_slack = Instance.create(rows3, a=[1, 1, 0], b=[1, 1, 3])
    assert "only one topic" in \
        inapplicability_reasons(one_slack)[NeighborhoodKind.SHIFT]


def test_single_topic_blocks_everything() -> None:
    inst = Instance.create([[10], [10]], a=[2], b=[2])
    reasons = inapplicability_reasons(inst)
    assert set(reasons) == set(ALL_KINDS)
    assert "2 different topics" in reasons[NeighborhoodKind.SWAP2]


def test_shift_applicable_while_swaps_are_not() -> None:
    # one student, two open topics: it can move but never exchange
    inst = Instance.create([[6, 4]], a=[0, 0], b=[2, 2])
    kinds = applicable_kinds(inst)
    assert kinds == {NeighborhoodKind.SHIFT}
    reasons = inapplicability_reasons(inst)
    assert NeighborhoodKind.SHIFT_SWAP2 in reasons
    assert "swap2 needs students on" in reasons[NeighborhoodKind.SHIFT_SWAP2]


def test_max_occupied_topics_counts_open_seats() -> None:
    inst = Instance.create([[5, 3, 2]] * 2, a=[0, 0, 0], b=[2, 2, 2])
    assert max_occupied_topics(inst) == 2
    assert NeighborhoodKind.SWAP2 in applicable_kinds(inst)
    assert NeighborhoodKind.SWAP3 not in applicable_kinds(inst)
    inst3 = Instance.create([[5, 3, 2]] * 3, a=[0, 0, 0], b=[2, 2, 2])
    assert max_occupied_topics(inst3) == 3
    assert NeighborhoodKind.SWAP3 in applicable_kinds(inst3)


def test_swap3_with_tight_capacities() -> None:
    # a_j = b_j blocks shift but not the swaps
    inst = Instance.create([[4, 3, 3]] * 6, a=[2, 2, 2], b=[2, 2, 2])
    kinds = applicable_kinds(inst)
    assert kinds == {NeighborhoodKind.SWAP2, NeighborhoodKind.SWAP3}


def test_shift_swap2_dead_end_is_state_dependent() -> None:
    inst = Instance.create([[5, 5], [5, 5]], a=[0, 0], b=[2, 2])
    rng = np.random.default_rng(9)
    spread = Assignment.from_topics(inst, [0, 1])
    # every shift collapses both students onto one topic; no swap2 remains
    for _ in range(20):
        with pytest.raises(NoMoveAvailable):
            propose_shift_swap2(inst, spread, rng)
    piled = Assignment.from_topics(inst, [0, 0])
    for _ in range(20):
        mv = propose_shift_swap2(inst, piled, rng)
        _check_move(inst, piled, mv)


def test_proposals_are_deterministic_per_seed() -> None:
    inst = random_instance(13, 4, w_max=30, k=2, seed=8)
    seqs = []
    for _ in range(2):
        rng = np.random.default_rng(123)
        asg = initial_solution(inst, rng)
        moves = []
        for _ in range(100):
            kind = ALL_KINDS[int(rng.integers(0, len(ALL_KINDS)))]
            try:
                mv = propose(inst, asg, kind, rng)
            except NoMoveAvailable:
                moves.append(None)
                continue
            moves.append((mv.kind.value, mv.relocations))
            asg = apply(inst, asg, mv)
        seqs.append(moves)
    assert seqs[0] == seqs[1]


def test_apply_returns_fresh_assignment(t2: Instance) -> None:
    rng = np.random.default_rng(14)
    asg = Assignment.from_topics(t2, [0, 0, 0, 1, 1])
    mv = propose_shift(t2, asg, rng)
    after = apply(t2, asg, mv)
    assert after is not asg
    assert list(asg.count) == [3, 2]
    assert list(after.count) == [2, 3]
