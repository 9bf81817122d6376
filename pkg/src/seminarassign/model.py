"""Problem data, feasibility rules, objectives, and constant-time delta evaluation.

The problem: ``n`` students are assigned to ``m`` seminar topics.  Student
``i`` has articulated nonnegative integer preference weights ``weights[i, j]``
summing to ``w_max``.  Topic ``j`` must receive between ``a[j]`` and ``b[j]``
students.  Topics are partitioned into staff groups; the workload of a group
is the ratio of assigned students to the group's total capacity.

Two objectives are supported:

* total utility (maximize): sum of the realized weights, an integer;
* workload imbalance (minimize): spread between the most- and least-loaded
  staff group, an exact rational in ``[0, 1]``.

All indices are 0-based in memory; the file formats use 1-based topic numbers
(see ``formats``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import InconsistentMoveError, InfeasibleAssignmentError, InvalidInstanceError

# Kernel arithmetic is int64; the scaled-imbalance denominator must leave headroom.
_MAX_IMBALANCE_DENOMINATOR = 1 << 62


def default_capacities(n: int, m: int) -> tuple[np.ndarray, np.ndarray]:
    """Per-topic bounds used in the practical case: floor(n/m) to ceil(n/m)."""
    if n < 1 or m < 1:
        raise InvalidInstanceError(f"need n >= 1 and m >= 1, got n={n}, m={m}")
    a = np.full(m, n // m, dtype=np.int64)
    b = np.full(m, -(-n // m), dtype=np.int64)
    return a, b


@dataclass(frozen=True)
class Labels:
    """Display names for students, topics, and staff. Presentation only."""

    students: tuple[str, ...]
    topics: tuple[str, ...]
    staff: tuple[str, ...]

    @staticmethod
    def default(n: int, m: int, k: int) -> "Labels":
        return Labels(
            students=tuple(f"s{i + 1}" for i in range(n)),
            topics=tuple(f"t{j + 1}" for j in range(m)),
            staff=tuple(f"staff{g + 1}" for g in range(k)),
        )


@dataclass(frozen=True)
class Instance:
    """Immutable problem data.

    ``groups`` partitions the topic indices ``0..m-1``; an instance without
    meaningful staff structure uses a single group covering every topic, which
    makes the imbalance objective identically zero.
    """

    n: int
    m: int
    w_max: int
    weights: np.ndarray
    a: np.ndarray
    b: np.ndarray
    groups: tuple[tuple[int, ...], ...]
    labels: Labels
    # Derived, filled in __post_init__:
    group_of: np.ndarray = field(init=False, repr=False)
    group_capacity: np.ndarray = field(init=False, repr=False)
    imbalance_denominator: int = field(init=False, repr=False)
    group_scale: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        n, m = self.n, self.m
        if n < 1 or m < 1:
            raise InvalidInstanceError(f"need n >= 1 and m >= 1, got n={n}, m={m}")
        if self.w_max < 1:
            raise InvalidInstanceError(f"w_max must be positive, got {self.w_max}")
        weights = np.ascontiguousarray(self.weights, dtype=np.int64)
        a = np.ascontiguousarray(self.a, dtype=np.int64)
        b = np.ascontiguousarray(self.b, dtype=np.int64)
        if weights.shape != (n, m):
            raise InvalidInstanceError(
                f"weights has shape {self.weights.shape}, expected ({n}, {m})"
            )
        if a.shape != (m,) or b.shape != (m,):
            raise InvalidInstanceError("capacity vectors must have one entry per topic")
        if (weights < 0).any():
            i, j = np.argwhere(weights < 0)[0]
            raise InvalidInstanceError(
                f"negative weight for student {self.labels.students[i] if self.labels else i}"
                f" on topic {j + 1}"
            )
        sums = weights.sum(axis=1)
        bad = np.nonzero(sums != self.w_max)[0]
        if bad.size:
            i = int(bad[0])
            name = self.labels.students[i] if self.labels else f"#{i + 1}"
            raise InvalidInstanceError(
                f"weights of student {name} sum to {int(sums[i])}, expected w_max={self.w_max}"
            )
        if (a < 0).any():
            raise InvalidInstanceError("topic minima must be nonnegative")
        if (b < a).any():
            j = int(np.nonzero(b < a)[0][0])
            raise InvalidInstanceError(
                f"topic {j + 1} has maximum {int(b[j])} below minimum {int(a[j])}"
            )
        if int(a.sum()) > n or n > int(b.sum()):
            raise InvalidInstanceError(
                f"no feasible assignment: need sum(a) <= n <= sum(b), "
                f"got {int(a.sum())} <= {n} <= {int(b.sum())}"
            )
        seen = np.zeros(m, dtype=bool)
        for k, grp in enumerate(self.groups):
            if len(grp) == 0:
                raise InvalidInstanceError(f"staff group {k + 1} is empty")
            for j in grp:
                if not 0 <= j < m:
                    raise InvalidInstanceError(f"staff group {k + 1} names unknown topic {j}")
                if seen[j]:
                    raise InvalidInstanceError(f"topic {j + 1} appears in two staff groups")
                seen[j] = True
        if not seen.all():
            j = int(np.nonzero(~seen)[0][0])
            raise InvalidInstanceError(f"topic {j + 1} belongs to no staff group")

        group_of = np.empty(m, dtype=np.int64)
        for k, grp in enumerate(self.groups):
            for j in grp:
                group_of[j] = k
        group_capacity = np.array([int(b[list(grp)].sum()) for grp in self.groups], dtype=np.int64)
        if len(self.groups) > 1 and (group_capacity == 0).any():
            k = int(np.nonzero(group_capacity == 0)[0][0])
            raise InvalidInstanceError(
                f"staff group {k + 1} has zero total capacity; its workload ratio is undefined"
            )
        denom = math.lcm(*(int(c) for c in group_capacity)) if len(self.groups) else 1
        if denom > _MAX_IMBALANCE_DENOMINATOR:
            raise InvalidInstanceError(
                "group capacity structure is too irregular for exact 64-bit "
                f"imbalance arithmetic (common denominator {denom})"
            )
        group_scale = np.array([denom // int(c) if c else 0 for c in group_capacity], dtype=np.int64)

        for arr in (weights, a, b, group_of, group_capacity, group_scale):
            arr.setflags(write=False)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "groups", tuple(tuple(int(j) for j in g) for g in self.groups))
        object.__setattr__(self, "group_of", group_of)
        object.__setattr__(self, "group_capacity", group_capacity)
        object.__setattr__(self, "imbalance_denominator", denom)
        object.__setattr__(self, "group_scale", group_scale)
        if self.labels is None:
            object.__setattr__(self, "labels", Labels.default(n, m, len(self.groups)))

    @staticmethod
    def create(
        weights,
        w_max: int | None = None,
        a=None,
        b=None,
        groups=None,
        labels: Labels | None = None,
    ) -> "Instance":
        """Build an instance, filling defaults: capacities floor/ceil(n/m), one staff group."""
        weights = np.asarray(weights, dtype=np.int64)
        if weights.ndim != 2:
            raise InvalidInstanceError("weights must be a 2-D matrix")
        n, m = weights.shape
        if w_max is None:
            if n == 0:
                raise InvalidInstanceError("cannot infer w_max from an empty matrix")
            w_max = int(weights[0].sum())
        if a is None or b is None:
            da, db = default_capacities(n, m)
            a = da if a is None else a
            b = db if b is None else b
        if groups is None:
            groups = (tuple(range(m)),)
        else:
            groups = tuple(tuple(int(j) for j in g) for g in groups)
        if labels is None:
            labels = Labels.default(n, m, len(groups))
        return Instance(
            n=n, m=m, w_max=int(w_max),
            weights=weights,
            a=np.asarray(a, dtype=np.int64),
            b=np.asarray(b, dtype=np.int64),
            groups=groups,
            labels=labels,
        )

    @property
    def num_groups(self) -> int:
        return len(self.groups)

    def staff_of_topic(self, j: int) -> str:
        return self.labels.staff[int(self.group_of[j])]


def normalize_weight_rows(weights, w_max: int) -> np.ndarray:
    """Rescale each row to sum to ``w_max`` using largest-remainder rounding.

    Opt-in alternative to rejecting rows with the wrong total; a row summing
    to zero cannot be rescaled and is an error.
    """
    weights = np.asarray(weights, dtype=np.int64)
    out = np.empty_like(weights)
    for i, row in enumerate(weights):
        total = int(row.sum())
        if total == w_max:
            out[i] = row
            continue
        if total <= 0:
            raise InvalidInstanceError(f"row {i + 1} sums to {total} and cannot be normalized")
        exact = [w_max * int(v) / total for v in row]
        floors = [int(x) for x in exact]
        shortfall = w_max - sum(floors)
        order = sorted(range(len(row)), key=lambda j: (floors[j] - exact[j], j))
        for j in order[:shortfall]:
            floors[j] += 1
        out[i] = floors
    return out


class Assignment:
    """One solution: a student-to-topic map with cached counts and utility.

    Mutable and owned by a single search run; copy before sharing.  The cached
    fields are maintained by the constructor and ``apply_relocations``.
    """

    __slots__ = ("topic_of", "count", "group_count", "utility")

    def __init__(self, topic_of: np.ndarray, count: np.ndarray,
                 group_count: np.ndarray, utility: int):
        self.topic_of = topic_of
        self.count = count
        self.group_count = group_count
        self.utility = utility

    @staticmethod
    def from_topics(inst: Instance, topic_of) -> "Assignment":
        topic_of = np.ascontiguousarray(topic_of, dtype=np.int64)
        if topic_of.shape != (inst.n,):
            raise InvalidInstanceError(
                f"topic vector has length {topic_of.shape}, expected {inst.n}"
            )
        if topic_of.size and (topic_of.min() < 0 or topic_of.max() >= inst.m):
            raise InvalidInstanceError("topic vector names a topic outside 0..m-1")
        count = np.bincount(topic_of, minlength=inst.m).astype(np.int64)
        group_count = np.zeros(inst.num_groups, dtype=np.int64)
        for k in range(inst.num_groups):
            group_count[k] = count[list(inst.groups[k])].sum()
        util = int(inst.weights[np.arange(inst.n), topic_of].sum())
        return Assignment(topic_of, count, group_count, util)

    def copy(self) -> "Assignment":
        return Assignment(self.topic_of.copy(), self.count.copy(),
                          self.group_count.copy(), self.utility)

    def key(self) -> bytes:
        """Identity for archive dedup: equality of the topic vectors."""
        return self.topic_of.tobytes()

    def __eq__(self, other):
        return isinstance(other, Assignment) and np.array_equal(self.topic_of, other.topic_of)

    def apply_relocations(self, inst: Instance, relocations) -> None:
        """Apply a sequence of (student, from_topic, to_topic) steps in place.

        Each step's from_topic must match the state left by the previous steps.
        Caches are updated by deltas only.
        """
        for (s, frm, to) in relocations:
            if self.topic_of[s] != frm:
                raise InconsistentMoveError(
                    f"student {s} is on topic {int(self.topic_of[s])}, move expects {frm}"
                )
            self.topic_of[s] = to
            self.count[frm] -= 1
            self.count[to] += 1
            gf, gt = int(inst.group_of[frm]), int(inst.group_of[to])
            self.group_count[gf] -= 1
            self.group_count[gt] += 1
            self.utility += int(inst.weights[s, to]) - int(inst.weights[s, frm])


@dataclass(frozen=True, order=True)
class Outcome:
    """Both objective values of a feasible assignment; imbalance is exact."""

    utility: int
    imbalance: Fraction

    def dominates(self, other: "Outcome") -> bool:
        """Pareto dominance: no worse in both objectives, strictly better in one."""
        if self.utility < other.utility or self.imbalance > other.imbalance:
            return False
        return self.utility > other.utility or self.imbalance < other.imbalance

    def as_dict(self) -> dict:
        return {
            "utility": self.utility,
            "imbalance": f"{self.imbalance.numerator}/{self.imbalance.denominator}",
            "imbalance_value": float(self.imbalance),
        }


def utility(inst: Instance, asg: Assignment) -> int:
    """Total realized preference weight, recomputed from scratch."""
    return int(inst.weights[np.arange(inst.n), asg.topic_of].sum())


def imbalance(inst: Instance, asg: Assignment) -> Fraction:
    """Spread between the most- and least-loaded staff group, recomputed from scratch.

    load_k = assigned students in group k / total capacity of group k.
    """
    loads = [Fraction(int(asg.group_count[k]), int(inst.group_capacity[k]))
             for k in range(inst.num_groups)]
    return max(loads) - min(loads)


def is_feasible(inst: Instance, asg: Assignment) -> bool:
    """True iff every topic count lies within [a_j, b_j]."""
    return bool((asg.count >= inst.a).all() and (asg.count <= inst.b).all())


def outcome(inst: Instance, asg: Assignment) -> Outcome:
    """Bundle both objective values; the assignment must be feasible."""
    if not is_feasible(inst, asg):
        raise InfeasibleAssignmentError("cannot evaluate an infeasible assignment")
    return Outcome(utility=utility(inst, asg), imbalance=imbalance(inst, asg))


def _walk_relocations(asg: Assignment, relocations):
    """Yield relocation steps, verifying sequential consistency without mutating."""
    moved: dict[int, int] = {}
    for (s, frm, to) in relocations:
        cur = moved.get(s, int(asg.topic_of[s]))
        if cur != frm:
            raise InconsistentMoveError(
                f"student {s} is on topic {cur}, move expects {frm}"
            )
        moved[s] = to
        yield s, frm, to


def utility_delta(inst: Instance, asg: Assignment, move) -> int:
    """Utility change of applying ``move``, from the touched weights only.

    For a swap2 moving i: j->l and k: l->j this is w_il + w_kj - w_ij - w_kl;
    the same telescoping sum covers all four neighborhood kinds.  Cost is
    proportional to the number of relocations, never to n or m.
    """
    delta = 0
    for s, frm, to in _walk_relocations(asg, move.relocations):
        delta += int(inst.weights[s, to]) - int(inst.weights[s, frm])
    return delta


def imbalance_delta(inst: Instance, asg: Assignment, move) -> Fraction:
    """Imbalance change of applying ``move``, recomputed over the K group loads only."""
    gc = asg.group_count.copy()
    for s, frm, to in _walk_relocations(asg, move.relocations):
        gc[inst.group_of[frm]] -= 1
        gc[inst.group_of[to]] += 1
    loads = [Fraction(int(gc[k]), int(inst.group_capacity[k])) for k in range(inst.num_groups)]
    before = imbalance(inst, asg)
    return max(loads) - min(loads) - before
