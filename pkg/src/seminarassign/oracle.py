"""Exhaustive ground truth for desk-scale instances.

Depth-first enumeration over students with capacity pruning: a topic is
selectable for the next student only if it is under its maximum and the
students still unplaced can cover every remaining topic minimum.  A guard
rejects instances whose unpruned space m^n is too large to scan honestly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .errors import OracleGuardError
from .model import Instance, Outcome

DEFAULT_GUARD = 10**8


@dataclass(frozen=True)
class OracleResult:
    optimum_utility: int
    optimal_count: int
    frontier: tuple[tuple[Outcome, int], ...]
    enumerated: int


def _check_guard(inst: Instance, guard: int) -> None:
    if inst.m ** inst.n > guard:
        raise OracleGuardError(
            f"estimated search space m^n = {inst.m}^{inst.n} exceeds the "
            f"exhaustive-scan guard ({guard:.0e}); use the neighborhood "
            "search solver for instances of this size")


def enumerate_feasible(inst: Instance,
                       visitor: Callable[[list[int]], None] | None = None,
                       guard: int = DEFAULT_GUARD) -> int:
    """Visit every feasible assignment once; returns how many were visited.

    The visitor receives the internal topic list (0-based, one entry per
    student); it must copy the list to retain it.
    """
    _check_guard(inst, guard)
    n, m = inst.n, inst.m
    a = inst.a.tolist()
    b = inst.b.tolist()
    count = [0] * m
    topic_of = [0] * n
    visited = 0
    # deficit: students still required to meet all topic minima
    deficit = sum(a)

    def place(i: int, deficit: int) -> None:
        nonlocal visited
        if i == n:
            visited += 1
            if visitor is not None:
                visitor(topic_of)
            return
        remaining = n - i
        for j in range(m):
            if count[j] >= b[j]:
                continue
            short = 1 if count[j] < a[j] else 0
            if deficit - short > remaining - 1:
                continue
            count[j] += 1
            topic_of[i] = j
            place(i + 1, deficit - short)
            count[j] -= 1

    place(0, deficit)
    return visited


def _scan(inst: Instance, guard: int) -> OracleResult:
    _check_guard(inst, guard)
    n, m = inst.n, inst.m
    a = inst.a.tolist()
    b = inst.b.tolist()
    w = inst.weights.tolist()
    group_of = inst.group_of.tolist()
    group_scale = inst.group_scale.tolist()
    num_groups = inst.num_groups
    count = [0] * m
    visited = 0
    outcomes: dict[tuple[int, int], int] = {}
    deficit0 = sum(a)

    def place(i: int, deficit: int, util: int) -> None:
        nonlocal visited
        if i == n:
            visited += 1
            gcount = [0] * num_groups
            for j in range(m):
                gcount[group_of[j]] += count[j]
            loads = [gcount[k] * group_scale[k] for k in range(num_groups)]
            key = (util, max(loads) - min(loads))
            outcomes[key] = outcomes.get(key, 0) + 1
            return
        remaining = n - i
        row = w[i]
        for j in range(m):
            if count[j] >= b[j]:
                continue
            short = 1 if count[j] < a[j] else 0
            if deficit - short > remaining - 1:
                continue
            count[j] += 1
            place(i + 1, deficit - short, util + row[j])
            count[j] -= 1

    place(0, deficit0, 0)
    best_u = max(u for u, _ in outcomes)
    best_count = sum(c for (u, _), c in outcomes.items() if u == best_u)
    denom = inst.imbalance_denominator
    frontier: list[tuple[Outcome, int]] = []
    lowest_v = None
    for (u, v), c in sorted(outcomes.items(), key=lambda kv: (-kv[0][0], kv[0][1])):
        if lowest_v is None or v < lowest_v:
            frontier.append((Outcome(u, Fraction(v, denom)), c))
            lowest_v = v
    return OracleResult(optimum_utility=best_u, optimal_count=best_count,
                        frontier=tuple(frontier), enumerated=visited)


def exact_optimum(inst: Instance, guard: int = DEFAULT_GUARD) -> OracleResult:
    """Exact best utility and the number of distinct assignments achieving it."""
    return _scan(inst, guard)


def exact_frontier(inst: Instance, guard: int = DEFAULT_GUARD) -> OracleResult:
    """Exact nondominated (utility, imbalance) points with per-point counts."""
    return _scan(inst, guard)
