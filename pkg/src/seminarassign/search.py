"""Reduced variable neighborhood search over an archive of alternatives.

The loop is the same in both modes: pick a random stored solution, pick a
random neighborhood kind, propose a random neighbor, update the archive,
repeat for exactly ``max_evaluations`` proposals.  A proposal that dead-ends
(``NoMoveAvailable``) still consumes one evaluation.

Single-objective mode keeps every distinct solution tied for the best
utility seen so far (strictly better resets the archive, equal inserts,
worse discards).  Bi-objective mode keeps the mutually nondominated
(utility, imbalance) points seen so far, each with its distinct solutions.

The hot loop lives in :mod:`.kernels`; the archive classes here mirror its
update rules one candidate at a time so tests can replay and cross-check.
"""

from __future__ import annotations

import enum
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from . import kernels
from .errors import ConfigError, RunCancelled
from .model import Assignment, Instance, Outcome, imbalance
from .neighborhoods import ALL_KINDS, NeighborhoodKind, inapplicability_reasons

PROGRESS_CHUNK = 1000


class Mode(str, enum.Enum):
    SINGLE = "single"
    BI = "bi"


@dataclass(frozen=True)
class SearchConfig:
    mode: Mode = Mode.SINGLE
    neighborhoods: tuple[NeighborhoodKind, ...] | None = None
    max_evaluations: int = 100_000
    seed: int = 0
    archive_cap: int = 1000

    def __post_init__(self):
        object.__setattr__(self, "mode", Mode(self.mode))
        if self.neighborhoods is not None:
            kinds = tuple(NeighborhoodKind(k) for k in self.neighborhoods)
            if not kinds:
                raise ConfigError("neighborhoods must be nonempty when given")
            if len(set(kinds)) != len(kinds):
                raise ConfigError("neighborhoods contains duplicates")
            object.__setattr__(self, "neighborhoods", kinds)
        if self.max_evaluations < 1:
            raise ConfigError("max_evaluations must be >= 1")
        if self.archive_cap < 1:
            raise ConfigError("archive_cap must be >= 1")

    def as_dict(self) -> dict:
        return {
            "mode": self.mode.value,
            "neighborhoods": None if self.neighborhoods is None
            else [k.value for k in self.neighborhoods],
            "max_evaluations": self.max_evaluations,
            "seed": self.seed,
            "archive_cap": self.archive_cap,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SearchConfig":
        kinds = d.get("neighborhoods")
        return cls(
            mode=Mode(d.get("mode", "single")),
            neighborhoods=None if kinds is None
            else tuple(NeighborhoodKind(k) for k in kinds),
            max_evaluations=int(d.get("max_evaluations", 100_000)),
            seed=int(d.get("seed", 0)),
            archive_cap=int(d.get("archive_cap", 1000)),
        )


def resolve_neighborhoods(inst: Instance, config: SearchConfig,
                          ) -> tuple[tuple[NeighborhoodKind, ...],
                                     tuple[tuple[NeighborhoodKind, str], ...]]:
    """Split the requested kinds into (active, excluded-with-reason).

    Raises ConfigError when nothing remains, listing every exclusion.
    """
    requested = config.neighborhoods if config.neighborhoods is not None else ALL_KINDS
    reasons = inapplicability_reasons(inst)
    active = tuple(k for k in requested if k not in reasons)
    excluded = tuple((k, reasons[k]) for k in requested if k in reasons)
    if not active:
        detail = "; ".join(f"{k.value}: {r}" for k, r in excluded)
        raise ConfigError(f"no applicable neighborhood remains ({detail})")
    return active, excluded


def initial_solution(inst: Instance, rng: np.random.Generator) -> Assignment:
    """Random feasible start: uniform student shuffle, minima first, remainder
    dealt to uniformly chosen topics still under their maximum."""
    topics = np.empty(inst.n, np.int64)
    kernels.initial_topics(inst.a, inst.b, rng, topics)
    return Assignment.from_topics(inst, topics)


class EqualQualityArchive:
    """All distinct solutions tied for the best utility found so far."""

    def __init__(self, inst: Instance, cap: int = 1000):
        if cap < 1:
            raise ConfigError("archive cap must be >= 1")
        self.inst = inst
        self.cap = cap
        self.best_utility: int | None = None
        self.solutions: list[Assignment] = []
        self.capped = False
        self._keys: set[bytes] = set()

    def __len__(self) -> int:
        return len(self.solutions)

    def update(self, candidate: Assignment) -> str:
        """Fold one candidate in; returns what happened:
        'reset', 'inserted', 'duplicate', 'capped', or 'discarded'."""
        u = candidate.utility
        if self.best_utility is None or u > self.best_utility:
            self.best_utility = u
            self.solutions = [candidate.copy()]
            self._keys = {candidate.key()}
            self.capped = False
            return "reset"
        if u < self.best_utility:
            return "discarded"
        key = candidate.key()
        if key in self._keys:
            return "duplicate"
        if len(self.solutions) >= self.cap:
            self.capped = True
            return "capped"
        self.solutions.append(candidate.copy())
        self._keys.add(key)
        return "inserted"

    def all_solutions(self) -> list[Assignment]:
        return list(self.solutions)

    def summary(self) -> list[tuple[Outcome, int, bool]]:
        """Distinct outcomes among stored solutions with their counts.

        All rows share the best utility; they differ only in imbalance.  The
        capped flag applies to the archive as a whole.
        """
        buckets: dict[Fraction, int] = {}
        for asg in self.solutions:
            v = imbalance(self.inst, asg)
            buckets[v] = buckets.get(v, 0) + 1
        rows = [(Outcome(self.best_utility, v), c) for v, c in buckets.items()]
        rows.sort(key=lambda r: r[0].imbalance)
        return [(o, c, self.capped) for o, c in rows]


class ParetoPoint:
    __slots__ = ("outcome", "solutions", "capped", "_keys")

    def __init__(self, outcome: Outcome):
        self.outcome = outcome
        self.solutions: list[Assignment] = []
        self.capped = False
        self._keys: set[bytes] = set()


class ParetoArchive:
    """Mutually nondominated outcome points, each with its distinct solutions."""

    def __init__(self, inst: Instance, cap: int = 1000):
        if cap < 1:
            raise ConfigError("archive cap must be >= 1")
        self.inst = inst
        self.cap = cap
        self.points: list[ParetoPoint] = []

    def __len__(self) -> int:
        return len(self.points)

    @property
    def total_solutions(self) -> int:
        return sum(len(p.solutions) for p in self.points)

    def update(self, candidate: Assignment) -> str:
        """Fold one candidate in; returns what happened:
        'inserted', 'joined', 'duplicate', 'capped', or 'dominated'."""
        u = candidate.utility
        v = imbalance(self.inst, candidate)
        out = Outcome(u, v)
        for p in self.points:
            if p.outcome == out:
                key = candidate.key()
                if key in p._keys:
                    return "duplicate"
                if len(p.solutions) >= self.cap:
                    p.capped = True
                    return "capped"
                p.solutions.append(candidate.copy())
                p._keys.add(key)
                return "joined"
            if p.outcome.dominates(out):
                return "dominated"
        # Swap-remove keeps the same point order the compiled path produces,
        # so identical seeds yield identical archives on either backend.
        pts = self.points
        q = 0
        while q < len(pts):
            if out.dominates(pts[q].outcome):
                pts[q] = pts[-1]
                pts.pop()
            else:
                q += 1
        p = ParetoPoint(out)
        p.solutions.append(candidate.copy())
        p._keys.add(candidate.key())
        self.points.append(p)
        return "inserted"

    def sorted_points(self) -> list[ParetoPoint]:
        return sorted(self.points, key=lambda p: (-p.outcome.utility,
                                                  p.outcome.imbalance))

    def all_solutions(self) -> list[Assignment]:
        out = []
        for p in self.sorted_points():
            out.extend(p.solutions)
        return out

    def summary(self) -> list[tuple[Outcome, int, bool]]:
        return [(p.outcome, len(p.solutions), p.capped)
                for p in self.sorted_points()]


Archive = EqualQualityArchive | ParetoArchive


def update_equal_quality(archive: EqualQualityArchive,
                         candidate: Assignment) -> EqualQualityArchive:
    archive.update(candidate)
    return archive


def update_pareto(archive: ParetoArchive, candidate: Assignment) -> ParetoArchive:
    archive.update(candidate)
    return archive


def count_alternatives(archive: Archive) -> list[tuple[Outcome, int, bool]]:
    """Per outcome point: (outcome, distinct stored solutions, cap hit)."""
    return archive.summary()


@dataclass
class RunReport:
    mode: Mode
    seed: int
    max_evaluations: int
    evaluations: int
    accepted: int
    no_move: int
    neighborhoods: tuple[NeighborhoodKind, ...]
    excluded: tuple[tuple[NeighborhoodKind, str], ...]
    archive_cap: int
    wall_time_s: float
    best: list[tuple[Outcome, int, bool]]
    instance_n: int
    instance_m: int

    def as_dict(self) -> dict:
        return {
            "mode": self.mode.value,
            "seed": self.seed,
            "max_evaluations": self.max_evaluations,
            "evaluations": self.evaluations,
            "accepted": self.accepted,
            "no_move": self.no_move,
            "neighborhoods": [k.value for k in self.neighborhoods],
            "excluded": [{"kind": k.value, "reason": r}
                         for k, r in self.excluded],
            "archive_cap": self.archive_cap,
            "wall_time_s": self.wall_time_s,
            "best": [dict(outcome=o.as_dict(), count=c, capped=f)
                     for o, c, f in self.best],
            "instance": {"n": self.instance_n, "m": self.instance_m},
        }


def run_vns(inst: Instance, config: SearchConfig,
            progress: Callable[[int], None] | None = None,
            should_stop: Callable[[], bool] | None = None,
            chunk_size: int = PROGRESS_CHUNK,
            ) -> tuple[Archive, RunReport]:
    """Execute the full search and return (archive, report).

    ``progress`` receives the cumulative evaluation count after every chunk
    (default every 1000 evaluations).  ``should_stop`` is polled between
    chunks; returning True raises RunCancelled.
    """
    t0 = time.perf_counter()
    active, excluded = resolve_neighborhoods(inst, config)
    kinds_arr = np.array([k.code for k in active], np.int64)
    rng = np.random.default_rng(config.seed)
    start = initial_solution(inst, rng)
    cap = config.archive_cap
    n, m = inst.n, inst.m

    cur = np.empty(n, np.int64)
    count = np.empty(m, np.int64)
    mv_s = np.empty(3, np.int64)
    mv_f = np.empty(3, np.int64)
    mv_t = np.empty(3, np.int64)

    if config.mode is Mode.SINGLE:
        sols = np.zeros((cap, n), np.int64)
        hashes = np.zeros(cap, np.int64)
        sols[0] = start.topic_of
        hashes[0] = kernels.hash_topics(start.topic_of)
        state = np.zeros(5, np.int64)
        state[kernels.SO_SIZE] = 1
        state[kernels.SO_BEST] = start.utility
        done = 0
        while done < config.max_evaluations:
            if should_stop is not None and should_stop():
                raise RunCancelled(f"stopped after {done} evaluations")
            step = min(chunk_size, config.max_evaluations - done)
            kernels.run_single_chunk(inst.weights, inst.a, inst.b, kinds_arr,
                                     cap, sols, hashes, state, rng, step,
                                     cur, count, mv_s, mv_f, mv_t)
            done += step
            if progress is not None:
                progress(done)
        archive: Archive = EqualQualityArchive(inst, cap)
        archive.best_utility = int(state[kernels.SO_BEST])
        size = int(state[kernels.SO_SIZE])
        for i in range(size):
            asg = Assignment.from_topics(inst, sols[i])
            archive.solutions.append(asg)
            archive._keys.add(asg.key())
        archive.capped = bool(state[kernels.SO_CAPPED])
        accepted = int(state[kernels.SO_ACCEPTED])
        no_move = int(state[kernels.SO_NOMOVE])
    else:
        gcount = np.empty(inst.num_groups, np.int64)
        kernels.count_topics(start.topic_of, count)
        kernels.group_counts(count, inst.group_of, gcount)
        pu = kernels.new_scalar_list()
        pv = kernels.new_scalar_list()
        pcnt = kernels.new_scalar_list()
        pcap = kernels.new_scalar_list()
        psol = kernels.new_matrix_list()
        phash = kernels.new_vector_list()
        first = np.zeros((min(4, cap), n), np.int64)
        first[0] = start.topic_of
        fhash = np.zeros(min(4, cap), np.int64)
        fhash[0] = kernels.hash_topics(start.topic_of)
        pu.append(start.utility)
        pv.append(int(kernels.scaled_imbalance(gcount, inst.group_scale)))
        pcnt.append(1)
        pcap.append(0)
        psol.append(first)
        phash.append(fhash)
        stats = np.zeros(3, np.int64)
        stats[kernels.PA_TOTAL] = 1
        done = 0
        while done < config.max_evaluations:
            if should_stop is not None and should_stop():
                raise RunCancelled(f"stopped after {done} evaluations")
            step = min(chunk_size, config.max_evaluations - done)
            kernels.run_pareto_chunk(inst.weights, inst.a, inst.b, kinds_arr,
                                     cap, inst.group_of, inst.group_scale,
                                     pu, pv, pcnt, pcap, psol, phash, stats,
                                     rng, step, cur, count, gcount,
                                     mv_s, mv_f, mv_t)
            done += step
            if progress is not None:
                progress(done)
        archive = ParetoArchive(inst, cap)
        denom = inst.imbalance_denominator
        for q in range(len(pu)):
            point = ParetoPoint(Outcome(int(pu[q]), Fraction(int(pv[q]), denom)))
            for s in range(int(pcnt[q])):
                asg = Assignment.from_topics(inst, psol[q][s])
                point.solutions.append(asg)
                point._keys.add(asg.key())
            point.capped = bool(pcap[q])
            archive.points.append(point)
        accepted = int(stats[kernels.PA_ACCEPTED])
        no_move = int(stats[kernels.PA_NOMOVE])

    report = RunReport(
        mode=config.mode,
        seed=config.seed,
        max_evaluations=config.max_evaluations,
        evaluations=config.max_evaluations,
        accepted=accepted,
        no_move=no_move,
        neighborhoods=active,
        excluded=excluded,
        archive_cap=cap,
        wall_time_s=time.perf_counter() - t0,
        best=archive.summary(),
        instance_n=n,
        instance_m=m,
    )
    return archive, report
