"""Local HTTP service for the assignment workflow.

Endpoints (JSON unless noted):

* ``GET  /api/version``            - API and package version, backend.
* ``POST /instances``              - upload an instance file or weight matrix.
* ``GET  /instances``              - list stored instances.
* ``GET  /instances/{id}``         - stored instance data plus applicability.
* ``POST /jobs``                   - create a search job (instance id + config).
* ``GET  /jobs/{id}``              - job state with progress.
* ``POST /jobs/{id}/cancel``       - cancel a queued or running job.
* ``GET  /jobs/{id}/archive``      - page through the alternatives of a done job.
* ``GET  /jobs/{id}/frontier``     - outcome points of a done bi-objective job.
* ``POST /jobs/{id}/filter``       - alternatives honoring team wishes.
* ``POST /jobs/{id}/commit``       - export one alternative as the final CSV.

Everything persists as flat files under the data directory; a restart
recovers finished jobs, re-queues queued ones, and marks jobs that were
mid-run as failed.  Search jobs run on background worker threads (default
one at a time) and report progress every 1000 evaluations; filtering only
reads the archive, it never re-solves or constrains the solver.
"""

from __future__ import annotations

import hashlib
import json
import os
import queue
import threading
from pathlib import Path

from fastapi import Body, FastAPI, HTTPException
from fastapi.responses import RedirectResponse
from fastapi.staticfiles import StaticFiles

from . import __version__, formats, kernels
from .errors import ConfigError, RunCancelled, SchemaError, SeminarAssignError
from .model import Instance, imbalance
from .neighborhoods import applicable_kinds, inapplicability_reasons
from .search import (EqualQualityArchive, Mode, ParetoArchive, SearchConfig,
                     resolve_neighborhoods, run_vns)

API_VERSION = 1
MAX_PAGE = 500


class _Store:
    """Registry of instances and jobs backed by flat files."""

    def __init__(self, data_dir: str | os.PathLike, parallel_jobs: int = 1):
        self.root = Path(data_dir)
        self.instances_dir = self.root / "instances"
        self.jobs_dir = self.root / "jobs"
        self.results_dir = self.root / "results"
        self.exports_dir = self.root / "exports"
        for d in (self.instances_dir, self.jobs_dir, self.results_dir,
                  self.exports_dir):
            d.mkdir(parents=True, exist_ok=True)
        self.lock = threading.RLock()
        self.instances: dict[str, Instance] = {}
        self.jobs: dict[str, dict] = {}
        self.archives: dict[str, object] = {}
        self.queue: queue.Queue[str] = queue.Queue()
        self.parallel_jobs = max(1, parallel_jobs)
        self.workers: list[threading.Thread] = []
        self.job_seq = 0
        self._recover()

    # -------------------------------------------------------- persistence

    def _write_json(self, path: Path, data: dict) -> None:
        tmp = path.with_suffix(path.suffix + ".tmp")
        tmp.write_text(json.dumps(data, indent=2) + "\n", encoding="utf-8")
        os.replace(tmp, path)

    def _persist_job(self, job: dict) -> None:
        self._write_json(self.jobs_dir / f"{job['id']}.json", {
            "format_version": formats.FORMAT_VERSION,
            "kind": "job",
            "id": job["id"],
            "seq": job["seq"],
            "instance_id": job["instance_id"],
            "config": job["config"].as_dict(),
            "state": job["state"],
            "progress": job["progress"],
            "error": job["error"],
        })

    def _recover(self) -> None:
        entries = []
        for path in sorted(self.jobs_dir.glob("*.json")):
            data = json.loads(path.read_text(encoding="utf-8"))
            entries.append(data)
        entries.sort(key=lambda d: d.get("seq", 0))
        for data in entries:
            job = {
                "id": data["id"],
                "seq": data.get("seq", 0),
                "instance_id": data["instance_id"],
                "config": SearchConfig.from_dict(data["config"]),
                "state": data["state"],
                "progress": data.get("progress", 0),
                "error": data.get("error"),
                "cancel": False,
            }
            self.job_seq = max(self.job_seq, job["seq"])
            if job["state"] == "running":
                job["state"] = "failed"
                job["error"] = "interrupted by service restart"
                job["progress"] = 0
                self._persist_job(job)
            self.jobs[job["id"]] = job
        for job in sorted(self.jobs.values(), key=lambda j: j["seq"]):
            if job["state"] == "queued":
                self.queue.put(job["id"])
        if not self.queue.empty():
            self.ensure_workers()

    # ---------------------------------------------------------- instances

    def add_instance(self, inst: Instance) -> str:
        blob = json.dumps({
            "n": inst.n, "m": inst.m, "w_max": inst.w_max,
            "weights": inst.weights.tolist(),
            "a": inst.a.tolist(), "b": inst.b.tolist(),
            "groups": [list(g) for g in inst.groups],
            "labels": [list(inst.labels.students), list(inst.labels.topics),
                       list(inst.labels.staff)],
        }, sort_keys=True)
        iid = hashlib.sha256(blob.encode()).hexdigest()[:12]
        with self.lock:
            if iid not in self.instances:
                formats.save_instance(inst, self.instances_dir / f"{iid}.json")
                self.instances[iid] = inst
        return iid

    def get_instance(self, iid: str) -> Instance:
        with self.lock:
            inst = self.instances.get(iid)
            if inst is None:
                path = self.instances_dir / f"{iid}.json"
                if not path.is_file():
                    raise HTTPException(404, f"unknown instance '{iid}'")
                inst = formats.load_instance(path)
                self.instances[iid] = inst
        return inst

    def list_instances(self) -> list[dict]:
        rows = []
        for path in sorted(self.instances_dir.glob("*.json")):
            iid = path.stem
            inst = self.get_instance(iid)
            rows.append({"id": iid, "n": inst.n, "m": inst.m,
                         "w_max": inst.w_max, "groups": inst.num_groups})
        return rows

    # --------------------------------------------------------------- jobs

    def create_job(self, instance_id: str, config: SearchConfig) -> dict:
        inst = self.get_instance(instance_id)
        resolve_neighborhoods(inst, config)  # rejects empty neighborhood sets
        with self.lock:
            self.job_seq += 1
            jid = f"j{self.job_seq:06d}"
            job = {
                "id": jid, "seq": self.job_seq, "instance_id": instance_id,
                "config": config, "state": "queued", "progress": 0,
                "error": None, "cancel": False,
            }
            self.jobs[jid] = job
            self._persist_job(job)
        self.queue.put(jid)
        self.ensure_workers()
        return job

    def get_job(self, jid: str) -> dict:
        with self.lock:
            job = self.jobs.get(jid)
        if job is None:
            raise HTTPException(404, f"unknown job '{jid}'")
        return job

    def cancel_job(self, jid: str) -> dict:
        job = self.get_job(jid)
        with self.lock:
            if job["state"] == "queued":
                job["state"] = "failed"
                job["error"] = "cancelled before start"
                self._persist_job(job)
            elif job["state"] == "running":
                job["cancel"] = True
        return job

    def ensure_workers(self) -> None:
        with self.lock:
            self.workers = [t for t in self.workers if t.is_alive()]
            while len(self.workers) < self.parallel_jobs:
                t = threading.Thread(target=self._worker_loop, daemon=True,
                                     name=f"seminarassign-worker-{len(self.workers)}")
                t.start()
                self.workers.append(t)

    def _worker_loop(self) -> None:
        while True:
            jid = self.queue.get()
            with self.lock:
                job = self.jobs.get(jid)
                if job is None or job["state"] != "queued":
                    continue
                job["state"] = "running"
                self._persist_job(job)
            try:
                inst = self.get_instance(job["instance_id"])

                def on_progress(done: int) -> None:
                    with self.lock:
                        job["progress"] = done

                archive, report = run_vns(
                    inst, job["config"], progress=on_progress,
                    should_stop=lambda: job["cancel"])
                formats.save_archive(
                    archive, self.results_dir / f"{jid}.archive.json")
                formats.save_report(
                    report, self.results_dir / f"{jid}.report.json")
                with self.lock:
                    self.archives[jid] = archive
                    job["progress"] = report.evaluations
                    job["state"] = "done"
                    self._persist_job(job)
            except RunCancelled as e:
                with self.lock:
                    job["state"] = "failed"
                    job["error"] = f"cancelled ({e})"
                    self._persist_job(job)
            except Exception as e:
                with self.lock:
                    job["state"] = "failed"
                    job["error"] = f"{type(e).__name__}: {e}"
                    self._persist_job(job)

    # ------------------------------------------------------------ results

    def get_archive(self, jid: str):
        job = self.get_job(jid)
        if job["state"] != "done":
            raise HTTPException(
                409, f"job '{jid}' is {job['state']}, results require 'done'")
        with self.lock:
            archive = self.archives.get(jid)
            if archive is None:
                inst = self.get_instance(job["instance_id"])
                archive = formats.load_archive(
                    self.results_dir / f"{jid}.archive.json", inst)
                self.archives[jid] = archive
        return archive


def _alternatives(archive) -> list[tuple]:
    """Deterministic global ordering of (outcome-utility, imbalance, asg)."""
    if isinstance(archive, EqualQualityArchive):
        inst = archive.inst
        return [(archive.best_utility, imbalance(inst, asg), asg)
                for asg in archive.solutions]
    out = []
    for p in archive.sorted_points():
        for asg in p.solutions:
            out.append((p.outcome.utility, p.outcome.imbalance, asg))
    return out


def _alternative_item(inst: Instance, index: int, utility: int, imb, asg) -> dict:
    return {
        "index": index,
        "utility": utility,
        "imbalance": f"{imb.numerator}/{imb.denominator}",
        "imbalance_value": float(imb),
        "topics": [int(t) + 1 for t in asg.topic_of],
    }


def _page_bounds(offset: int, limit: int, total: int) -> tuple[int, int]:
    if offset < 0 or limit < 1:
        raise HTTPException(400, "offset must be >= 0 and limit >= 1")
    limit = min(limit, MAX_PAGE)
    return offset, min(offset + limit, total)


def _parse_wishes(payload: dict, inst: Instance) -> list[set[int]]:
    wishes_raw = payload.get("wishes")
    if not isinstance(wishes_raw, list) or not wishes_raw:
        raise HTTPException(400, "body must contain a nonempty 'wishes' list")
    wishes = []
    for w in wishes_raw:
        if not isinstance(w, list):
            raise HTTPException(400, "each wish must be a list of student ids")
        try:
            ids = {int(s) for s in w}
        except (TypeError, ValueError):
            raise HTTPException(400, "student ids must be integers")
        if len(ids) < 2:
            raise HTTPException(400, "a team wish needs at least 2 distinct students")
        bad = [s for s in ids if not 1 <= s <= inst.n]
        if bad:
            raise HTTPException(400, f"unknown student id {bad[0]} "
                                     f"(valid: 1..{inst.n})")
        wishes.append(ids)
    return wishes


def _satisfies(asg, wish: set[int]) -> bool:
    topics = {int(asg.topic_of[s - 1]) for s in wish}
    return len(topics) == 1


def create_app(data_dir: str | os.PathLike = "seminarassign-data",
               parallel_jobs: int = 1, ui_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="seminarassign service", version=str(API_VERSION))
    store = _Store(data_dir, parallel_jobs=parallel_jobs)
    app.state.store = store

    @app.get("/api/version")
    def version() -> dict:
        return {"api_version": API_VERSION, "package": __version__,
                "backend": kernels.BACKEND}

    @app.post("/instances")
    def upload_instance(payload: dict = Body(...)) -> dict:
        import tempfile
        try:
            if "matrix" in payload:
                with tempfile.NamedTemporaryFile(
                        "w", suffix=".txt", delete=False) as fh:
                    fh.write(str(payload["matrix"]))
                    tmp = fh.name
                try:
                    inst = formats.load_weight_matrix(
                        tmp, w_max=payload.get("w_max"),
                        normalize=bool(payload.get("normalize", False)))
                finally:
                    os.unlink(tmp)
            elif payload.get("kind") == "instance":
                with tempfile.NamedTemporaryFile(
                        "w", suffix=".json", delete=False) as fh:
                    json.dump(payload, fh)
                    tmp = fh.name
                try:
                    inst = formats.load_instance(
                        tmp, normalize=bool(payload.pop("normalize", False)))
                finally:
                    os.unlink(tmp)
            else:
                raise HTTPException(
                    400, "body must be an instance object (kind='instance') "
                         "or contain a 'matrix' field")
        except SchemaError as e:
            raise HTTPException(400, str(e))
        iid = store.add_instance(inst)
        return _instance_info(iid, inst)

    def _instance_info(iid: str, inst: Instance) -> dict:
        return {
            "id": iid,
            "n": inst.n,
            "m": inst.m,
            "w_max": inst.w_max,
            "groups": [[j + 1 for j in g] for g in inst.groups],
            "a": inst.a.tolist(),
            "b": inst.b.tolist(),
            "labels": {
                "students": list(inst.labels.students),
                "topics": list(inst.labels.topics),
                "staff": list(inst.labels.staff),
            },
            "applicable": sorted(k.value for k in applicable_kinds(inst)),
            "inapplicable": [
                {"kind": k.value, "reason": r}
                for k, r in sorted(inapplicability_reasons(inst).items(),
                                   key=lambda kv: kv[0].value)
            ],
        }

    @app.get("/instances")
    def list_instances() -> dict:
        return {"instances": store.list_instances()}

    @app.get("/instances/{iid}")
    def get_instance(iid: str) -> dict:
        inst = store.get_instance(iid)
        data = _instance_info(iid, inst)
        data["weights"] = inst.weights.tolist()
        return data

    @app.post("/jobs")
    def create_job(payload: dict = Body(...)) -> dict:
        instance_id = payload.get("instance_id")
        if not instance_id:
            raise HTTPException(400, "body must contain 'instance_id'")
        try:
            config = SearchConfig.from_dict(payload.get("config") or {})
        except (ConfigError, ValueError) as e:
            raise HTTPException(400, f"invalid config: {e}")
        try:
            job = store.create_job(str(instance_id), config)
        except ConfigError as e:
            raise HTTPException(400, str(e))
        return _job_info(job)

    def _job_info(job: dict) -> dict:
        data = {
            "id": job["id"],
            "instance_id": job["instance_id"],
            "config": job["config"].as_dict(),
            "state": job["state"],
            "progress": job["progress"],
            "error": job["error"],
        }
        if job["state"] == "done":
            report_path = store.results_dir / f"{job['id']}.report.json"
            if report_path.is_file():
                data["report"] = formats.load_report(report_path).as_dict()
        return data

    @app.get("/jobs/{jid}")
    def get_job(jid: str) -> dict:
        return _job_info(store.get_job(jid))

    @app.post("/jobs/{jid}/cancel")
    def cancel_job(jid: str) -> dict:
        return _job_info(store.cancel_job(jid))

    @app.get("/jobs/{jid}/archive")
    def job_archive(jid: str, offset: int = 0, limit: int = 50) -> dict:
        archive = store.get_archive(jid)
        inst = archive.inst
        alts = _alternatives(archive)
        lo, hi = _page_bounds(offset, limit, len(alts))
        items = [_alternative_item(inst, i, *alts[i]) for i in range(lo, hi)]
        return {
            "total": len(alts),
            "offset": lo,
            "limit": limit,
            "items": items,
            "labels": {
                "students": list(inst.labels.students),
                "topics": list(inst.labels.topics),
                "staff": list(inst.labels.staff),
            },
            "staff_of_topic": [inst.staff_of_topic(j) for j in range(inst.m)],
        }

    @app.get("/jobs/{jid}/frontier")
    def job_frontier(jid: str) -> dict:
        archive = store.get_archive(jid)
        if not isinstance(archive, ParetoArchive):
            raise HTTPException(
                400, "frontier is only available for bi-objective jobs")
        return {
            "points": [
                {
                    "utility": out.utility,
                    "imbalance": f"{out.imbalance.numerator}/"
                                 f"{out.imbalance.denominator}",
                    "imbalance_value": float(out.imbalance),
                    "alternatives": count,
                    "cap_reached": capped,
                }
                for out, count, capped in archive.summary()
            ],
        }

    @app.post("/jobs/{jid}/filter")
    def filter_archive(jid: str, payload: dict = Body(...),
                       offset: int = 0, limit: int = 50) -> dict:
        archive = store.get_archive(jid)
        inst = archive.inst
        wishes = _parse_wishes(payload, inst)
        alts = _alternatives(archive)
        satisfiable = [False] * len(wishes)
        matches = []
        for i, (u, v, asg) in enumerate(alts):
            ok_all = True
            for w, wish in enumerate(wishes):
                if _satisfies(asg, wish):
                    satisfiable[w] = True
                else:
                    ok_all = False
            if ok_all:
                matches.append(i)
        lo, hi = _page_bounds(offset, limit, len(matches))
        items = [_alternative_item(inst, i, *alts[i]) for i in matches[lo:hi]]
        return {
            "wishes": [
                {"students": sorted(wish), "satisfiable": satisfiable[w]}
                for w, wish in enumerate(wishes)
            ],
            "total": len(matches),
            "offset": lo,
            "limit": limit,
            "items": items,
        }

    @app.post("/jobs/{jid}/commit")
    def commit(jid: str, payload: dict = Body(...)) -> dict:
        archive = store.get_archive(jid)
        inst = archive.inst
        alts = _alternatives(archive)
        index = payload.get("index")
        if not isinstance(index, int) or not 0 <= index < len(alts):
            raise HTTPException(
                400, f"'index' must be an integer in 0..{len(alts) - 1}")
        anonymize = bool(payload.get("anonymize", False))
        utility, imb, asg = alts[index]
        suffix = "-anon" if anonymize else ""
        filename = f"{jid}-alt{index}{suffix}.csv"
        path = store.exports_dir / filename
        formats.save_solution(inst, asg, path, anonymize=anonymize)
        return {
            "filename": filename,
            "path": str(path),
            "content": path.read_text(encoding="utf-8"),
            "index": index,
            "utility": utility,
            "imbalance": f"{imb.numerator}/{imb.denominator}",
            "imbalance_value": float(imb),
        }

    @app.exception_handler(SeminarAssignError)
    def domain_error(request, exc: SeminarAssignError):
        from fastapi.responses import JSONResponse
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    if ui_dir and Path(ui_dir).is_dir():
        app.mount("/ui", StaticFiles(directory=ui_dir, html=True), name="ui")

        @app.get("/")
        def root() -> RedirectResponse:
            return RedirectResponse("/ui/")

    return app
