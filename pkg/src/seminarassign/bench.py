"""Benchmark harness: instance-size sweep comparing single neighborhoods to VNS.

For every target size the base instance is resized, then each method (one
search per single neighborhood kind, plus the full VNS over all applicable
kinds) runs a fixed number of seeded repetitions.  Cells whose kind is
structurally inapplicable are reported as "n/a".  The output is a columnar
table of mean best utilities with each method's difference to VNS.

Each (target, method, run) cell gets an independent seed derived from the
base seed through a SeedSequence, so the whole table is reproducible while
cells stay statistically independent.  Cells run in parallel across worker
processes; assembly is deterministic regardless of completion order.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass
from multiprocessing import get_context
from typing import Callable

import numpy as np

from .instgen import derive_family
from .neighborhoods import ALL_KINDS, NeighborhoodKind, applicable_kinds
from .search import Mode, SearchConfig, run_vns

VNS_METHOD = "vns"
METHODS = tuple(k.value for k in ALL_KINDS) + (VNS_METHOD,)

_SEED_DERIVE = 0
_SEED_RUN = 1


def _seed_from(parts: tuple[int, ...]) -> int:
    return int(np.random.SeedSequence(parts).generate_state(1, np.uint64)[0])


def derive_seed(base_seed: int, target: int) -> int:
    return _seed_from((base_seed, _SEED_DERIVE, target))


def cell_seed(base_seed: int, target: int, method_idx: int, run: int) -> int:
    return _seed_from((base_seed, _SEED_RUN, target, method_idx, run))


_INSTANCE_CACHE: dict = {}


def _derived_instance(base_path: str, target: int, seed: int):
    key = (base_path, target, seed)
    inst = _INSTANCE_CACHE.get(key)
    if inst is None:
        base = _INSTANCE_CACHE.get(base_path)
        if base is None:
            from .formats import load_instance
            base = load_instance(base_path)
            _INSTANCE_CACHE[base_path] = base
        inst = derive_family(base, target, seed)
        _INSTANCE_CACHE[key] = inst
    return inst


def _bench_task(args: tuple) -> tuple[int, str, int, int]:
    (base_path, target, dseed, method, kinds, run_idx, seed, evals, cap) = args
    inst = _derived_instance(base_path, target, dseed)
    config = SearchConfig(mode=Mode.SINGLE,
                          neighborhoods=tuple(NeighborhoodKind(k) for k in kinds)
                          if kinds is not None else None,
                          max_evaluations=evals, seed=seed, archive_cap=cap)
    archive, _ = run_vns(inst, config)
    return target, method, run_idx, archive.best_utility


@dataclass
class BenchmarkTable:
    base_seed: int
    runs: int
    evaluations: int
    targets: tuple[int, ...]
    methods: tuple[str, ...]
    means: dict[tuple[int, str], float | None]
    wall_time_s: float

    def diff_to_vns(self, target: int, method: str) -> float | None:
        mean = self.means[(target, method)]
        vns = self.means[(target, VNS_METHOD)]
        if mean is None or vns is None:
            return None
        return vns - mean

    def to_text(self) -> str:
        cols = ["n"]
        for method in self.methods:
            cols.append(method)
            if method != VNS_METHOD:
                cols.append(f"diff_{method}")
        lines = ["\t".join(cols)]
        for t in self.targets:
            row = [str(t)]
            for method in self.methods:
                mean = self.means[(t, method)]
                row.append("n/a" if mean is None else f"{mean:.2f}")
                if method != VNS_METHOD:
                    diff = self.diff_to_vns(t, method)
                    row.append("n/a" if diff is None else f"{diff:.2f}")
            lines.append("\t".join(row))
        return "\n".join(lines) + "\n"

    def as_dict(self) -> dict:
        return {
            "base_seed": self.base_seed,
            "runs": self.runs,
            "evaluations": self.evaluations,
            "targets": list(self.targets),
            "methods": list(self.methods),
            "rows": [
                {
                    "n": t,
                    "cells": {
                        method: {
                            "mean": self.means[(t, method)],
                            "diff_to_vns": self.diff_to_vns(t, method),
                        }
                        for method in self.methods
                    },
                }
                for t in self.targets
            ],
        }


def default_workers() -> int:
    env = os.environ.get("SEMINARASSIGN_WORKERS", "").strip()
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def run_benchmark(base_path: str, targets, runs: int = 25,
                  evaluations: int = 100_000, base_seed: int = 0,
                  workers: int | None = None, archive_cap: int = 1,
                  progress: Callable[[int, int], None] | None = None,
                  ) -> BenchmarkTable:
    """Run the full sweep and return the assembled table.

    ``archive_cap`` defaults to 1 because only the best utility per run is
    aggregated; raising it changes nothing but memory.
    """
    import time
    t0 = time.perf_counter()
    if workers is None:
        workers = default_workers()
    targets = tuple(int(t) for t in targets)
    base_path = str(base_path)

    tasks = []
    cells: dict[tuple[int, str], list | None] = {}
    for target in targets:
        dseed = derive_seed(base_seed, target)
        inst = _derived_instance(base_path, target, dseed)
        usable = applicable_kinds(inst)
        for method_idx, kind in enumerate(ALL_KINDS):
            if kind not in usable:
                cells[(target, kind.value)] = None
                continue
            cells[(target, kind.value)] = []
            for run in range(runs):
                seed = cell_seed(base_seed, target, method_idx, run)
                tasks.append((base_path, target, dseed, kind.value,
                              (kind.value,), run, seed, evaluations,
                              archive_cap))
        cells[(target, VNS_METHOD)] = []
        for run in range(runs):
            seed = cell_seed(base_seed, target, len(ALL_KINDS), run)
            tasks.append((base_path, target, dseed, VNS_METHOD, None, run,
                          seed, evaluations, archive_cap))

    results: dict[tuple[int, str, int], int] = {}
    done = 0
    if workers <= 1:
        for task in tasks:
            target, method, run, best = _bench_task(task)
            results[(target, method, run)] = best
            done += 1
            if progress is not None:
                progress(done, len(tasks))
    else:
        ctx = get_context("spawn")
        with ProcessPoolExecutor(max_workers=workers, mp_context=ctx) as pool:
            futures = [pool.submit(_bench_task, task) for task in tasks]
            for fut in as_completed(futures):
                target, method, run, best = fut.result()
                results[(target, method, run)] = best
                done += 1
                if progress is not None:
                    progress(done, len(tasks))

    means: dict[tuple[int, str], float | None] = {}
    for (target, method), runs_list in cells.items():
        if runs_list is None:
            means[(target, method)] = None
        else:
            vals = [results[(target, method, r)] for r in range(runs)]
            means[(target, method)] = sum(vals) / len(vals)
    return BenchmarkTable(base_seed=base_seed, runs=runs,
                          evaluations=evaluations, targets=targets,
                          methods=METHODS, means=means,
                          wall_time_s=time.perf_counter() - t0)
