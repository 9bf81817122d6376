"""Random move proposal and application for the four neighborhood structures.

A move is a short list of relocations (student, from_topic, to_topic) that
transforms one feasible assignment into another:

* ``swap2``: two students on different topics exchange topics.
* ``swap3``: three students on pairwise distinct topics rotate.
* ``shift``: one student leaves a topic above its minimum for one below its
  maximum.
* ``shift+swap2``: a shift followed by a swap2 drawn on the shifted state.

Proposals draw uniformly among the currently valid choices at every stage
(donor, student, receiver, partners), so a proposal either succeeds or the
stage had no valid choice at all; the only dead end is the swap2 stage of
``shift+swap2``, which fails immediately with ``NoMoveAvailable``.
"""

from __future__ import annotations

import enum

import numpy as np

from . import kernels
from .errors import NoMoveAvailable
from .model import Assignment, Instance


class NeighborhoodKind(str, enum.Enum):
    """The four move structures a search can draw from."""

    SWAP2 = "swap2"
    SWAP3 = "swap3"
    SHIFT = "shift"
    SHIFT_SWAP2 = "shift+swap2"

    @property
    def code(self) -> int:
        return _KIND_CODE[self]

    @property
    def relocation_count(self) -> int:
        return _KIND_SIZE[self]


_KIND_CODE = {
    NeighborhoodKind.SWAP2: kernels.SWAP2,
    NeighborhoodKind.SWAP3: kernels.SWAP3,
    NeighborhoodKind.SHIFT: kernels.SHIFT,
    NeighborhoodKind.SHIFT_SWAP2: kernels.SHIFT_SWAP2,
}
_KIND_SIZE = {
    NeighborhoodKind.SWAP2: 2,
    NeighborhoodKind.SWAP3: 3,
    NeighborhoodKind.SHIFT: 1,
    NeighborhoodKind.SHIFT_SWAP2: 3,
}

ALL_KINDS = (
    NeighborhoodKind.SWAP2,
    NeighborhoodKind.SWAP3,
    NeighborhoodKind.SHIFT,
    NeighborhoodKind.SHIFT_SWAP2,
)


class Move:
    """A proposed transformation: an ordered tuple of relocations.

    Relocations apply in order; for shift+swap2 the swap relocations refer to
    the assignment after the shift.
    """

    __slots__ = ("kind", "relocations")

    def __init__(self, kind: NeighborhoodKind,
                 relocations: tuple[tuple[int, int, int], ...]):
        self.kind = kind
        self.relocations = relocations

    def __repr__(self) -> str:
        return f"Move({self.kind.value}, {list(self.relocations)})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Move):
            return NotImplemented
        return self.kind == other.kind and self.relocations == other.relocations

    def __hash__(self) -> int:
        return hash((self.kind, self.relocations))


def _run_kernel(inst: Instance, asg: Assignment, kind: NeighborhoodKind,
                rng: np.random.Generator) -> int:
    n_rel = kernels._propose(kind.code, asg.topic_of, asg.count, inst.a, inst.b,
                             rng, _MV_STU, _MV_FROM, _MV_TO)
    return n_rel


# Scratch buffers reused across proposals; proposal is not thread-safe by
# design (each search run owns its own process/thread anyway).
_MV_STU = np.empty(3, np.int64)
_MV_FROM = np.empty(3, np.int64)
_MV_TO = np.empty(3, np.int64)


def propose(inst: Instance, asg: Assignment, kind: NeighborhoodKind,
            rng: np.random.Generator) -> Move:
    """Draw one random move of the given kind, or raise NoMoveAvailable."""
    n_rel = _run_kernel(inst, asg, kind, rng)
    if n_rel == 0:
        raise NoMoveAvailable(f"no {kind.value} move available")
    rel = tuple((int(_MV_STU[t]), int(_MV_FROM[t]), int(_MV_TO[t]))
                for t in range(n_rel))
    return Move(kind, rel)


def propose_swap2(inst: Instance, asg: Assignment,
                  rng: np.random.Generator) -> Move:
    return propose(inst, asg, NeighborhoodKind.SWAP2, rng)


def propose_swap3(inst: Instance, asg: Assignment,
                  rng: np.random.Generator) -> Move:
    return propose(inst, asg, NeighborhoodKind.SWAP3, rng)


def propose_shift(inst: Instance, asg: Assignment,
                  rng: np.random.Generator) -> Move:
    return propose(inst, asg, NeighborhoodKind.SHIFT, rng)


def propose_shift_swap2(inst: Instance, asg: Assignment,
                        rng: np.random.Generator) -> Move:
    return propose(inst, asg, NeighborhoodKind.SHIFT_SWAP2, rng)


def apply(inst: Instance, asg: Assignment, move: Move) -> Assignment:
    """Return a new assignment with the move applied; caches stay consistent."""
    out = asg.copy()
    out.apply_relocations(inst, move.relocations)
    return out


def max_occupied_topics(inst: Instance) -> int:
    """Largest number of simultaneously nonempty topics over all feasible assignments.

    Topics with a_j > 0 are always occupied; each zero-minimum topic with
    b_j >= 1 can absorb one of the students not pinned by the minima.
    """
    pinned = int(np.count_nonzero(inst.a > 0))
    spare_students = inst.n - int(inst.a.sum())
    open_topics = int(np.count_nonzero((inst.a == 0) & (inst.b >= 1)))
    return pinned + min(spare_students, open_topics)


def applicable_kinds(inst: Instance) -> set[NeighborhoodKind]:
    """Kinds that can produce at least one move on some feasible assignment."""
    return {k for k in ALL_KINDS if k not in inapplicability_reasons(inst)}


def inapplicability_reasons(inst: Instance) -> dict[NeighborhoodKind, str]:
    """Why each structurally impossible kind can never fire; empty if none.

    A kind absent from the result is applicable.  The strings are meant for
    reports and UI ("n/a" cells), e.g. shift on an instance where every topic
    minimum equals its maximum.
    """
    reasons: dict[NeighborhoodKind, str] = {}
    occ = max_occupied_topics(inst)
    if occ < 2:
        reasons[NeighborhoodKind.SWAP2] = (
            "at most 1 topic can be occupied at once; swap2 needs students on "
            "2 different topics")
    if occ < 3:
        reasons[NeighborhoodKind.SWAP3] = (
            f"at most {occ} topic(s) can be occupied at once; swap3 needs "
            "students on 3 different topics")
    shift_reason = _shift_reason(inst)
    if shift_reason is not None:
        reasons[NeighborhoodKind.SHIFT] = shift_reason
    if NeighborhoodKind.SHIFT in reasons:
        reasons[NeighborhoodKind.SHIFT_SWAP2] = reasons[NeighborhoodKind.SHIFT]
    elif NeighborhoodKind.SWAP2 in reasons:
        reasons[NeighborhoodKind.SHIFT_SWAP2] = reasons[NeighborhoodKind.SWAP2]
    return reasons


def _shift_reason(inst: Instance) -> str | None:
    # Donor requires n > sum(a), receiver requires n < sum(b), and the pair
    # must involve two different topics, so two topics need slack a_j < b_j.
    slack = int(np.count_nonzero(inst.b > inst.a))
    if slack == 0:
        return "a_j = b_j for all j"
    if inst.n == int(inst.a.sum()):
        return "the topic minima absorb every student (sum of a_j = n)"
    if inst.n == int(inst.b.sum()):
        return "the topic maxima are all saturated (sum of b_j = n)"
    if slack < 2:
        return "only one topic has a_j < b_j"
    return None
