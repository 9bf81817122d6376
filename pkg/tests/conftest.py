from __future__ import annotations

import pytest

from seminarassign import Instance

# T1: four students, two topics with exactly two seats each, every student
# loves exactly one topic.  Unique optimum [t1, t1, t2, t2] at utility 40;
# 6 feasible assignments (choose 2 of 4 students for the first topic).
T1_WEIGHTS = [[10, 0], [10, 0], [0, 10], [0, 10]]

# T2: five students, two topics taking two or three students each, so the
# count split is free and shift moves exist.  20 feasible assignments.
T2_WEIGHTS = [[7, 3], [6, 4], [5, 5], [4, 6], [0, 10]]


def make_t1() -> Instance:
    return Instance.create(T1_WEIGHTS, a=[2, 2], b=[2, 2], groups=[[0], [1]])


def make_t2() -> Instance:
    return Instance.create(T2_WEIGHTS, a=[2, 2], b=[3, 3], groups=[[0], [1]])


@pytest.fixture
def t1() -> Instance:
    return make_t1()


@pytest.fixture
def t2() -> Instance:
    return make_t2()
