"""File formats: instances, solutions, archives, and run reports.

Instances, archives, and reports are JSON with a ``format_version`` field
and stable key order, so files diff cleanly and round-trip losslessly.
Solutions export as CSV.  Exact rationals serialize as "numerator/denominator"
text; topic and student numbers are 1-based in every file (0-based in memory).

The instance schema and the weight-matrix import grammar are documented in
``docs/formats.md``; the matrix path accepts spreadsheet-style exports
(delimiter sniffing, optional header line and label column).
"""

from __future__ import annotations

import csv
import datetime
import json
from fractions import Fraction
from pathlib import Path

import numpy as np

from .errors import InvalidInstanceError, SchemaError
from .model import (Assignment, Instance, Labels, Outcome, imbalance,
                    is_feasible, normalize_weight_rows)
from .search import (EqualQualityArchive, Mode, ParetoArchive, ParetoPoint,
                     RunReport)
from .neighborhoods import NeighborhoodKind

FORMAT_VERSION = 1


def _read_json(path, kind: str) -> dict:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise SchemaError(f"cannot read file: {e}", context=str(path))
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(f"invalid JSON at line {e.lineno}: {e.msg}",
                          context=str(path))
    if not isinstance(data, dict):
        raise SchemaError("top level must be a JSON object", context=str(path))
    got_kind = data.get("kind")
    if got_kind != kind:
        raise SchemaError(f"expected kind '{kind}', found '{got_kind}'",
                          context=str(path))
    version = data.get("format_version")
    if version != FORMAT_VERSION:
        raise SchemaError(
            f"unsupported format_version {version!r} (supported: {FORMAT_VERSION})",
            context=str(path))
    return data


def _write_json(data: dict, path) -> None:
    Path(path).write_text(json.dumps(data, indent=2) + "\n", encoding="utf-8")


def _require(data: dict, field: str, path) -> object:
    if field not in data:
        raise SchemaError(f"missing required field '{field}'", context=str(path))
    return data[field]


def _format_fraction(f: Fraction) -> str:
    return f"{f.numerator}/{f.denominator}"


def _parse_fraction(text, path) -> Fraction:
    try:
        if isinstance(text, str) and "/" in text:
            num, den = text.split("/", 1)
            return Fraction(int(num), int(den))
        return Fraction(int(text))
    except (ValueError, ZeroDivisionError) as e:
        raise SchemaError(f"invalid rational '{text}': {e}", context=str(path))


# ---------------------------------------------------------------- instances

def save_instance(inst: Instance, path) -> None:
    data = {
        "format_version": FORMAT_VERSION,
        "kind": "instance",
        "n": inst.n,
        "m": inst.m,
        "w_max": inst.w_max,
        "weights": inst.weights.tolist(),
        "a": inst.a.tolist(),
        "b": inst.b.tolist(),
        "groups": [[j + 1 for j in grp] for grp in inst.groups],
        "labels": {
            "students": list(inst.labels.students),
            "topics": list(inst.labels.topics),
            "staff": list(inst.labels.staff),
        },
    }
    _write_json(data, path)


def load_instance(path, normalize: bool = False) -> Instance:
    """Read an instance file; ``normalize`` rescales weight rows to w_max
    by largest-remainder rounding instead of rejecting wrong totals."""
    data = _read_json(path, "instance")
    n = _require(data, "n", path)
    m = _require(data, "m", path)
    w_max = _require(data, "w_max", path)
    weights = _require(data, "weights", path)
    if not isinstance(n, int) or not isinstance(m, int) or not isinstance(w_max, int):
        raise SchemaError("n, m, and w_max must be integers", context=str(path))
    try:
        weights = np.asarray(weights, dtype=np.int64)
    except (ValueError, TypeError):
        raise SchemaError("weights must be a rectangular integer matrix",
                          context=str(path))
    if weights.ndim != 2:
        raise SchemaError("weights must be a matrix (list of rows)",
                          context=str(path))
    if normalize:
        weights = normalize_weight_rows(weights, w_max)
    a = data.get("a")
    b = data.get("b")
    groups = data.get("groups")
    if groups is not None:
        try:
            groups = tuple(tuple(int(j) - 1 for j in grp) for grp in groups)
        except (ValueError, TypeError):
            raise SchemaError("groups must be lists of 1-based topic numbers",
                              context=str(path))
    labels = None
    if "labels" in data:
        lab = data["labels"]
        try:
            labels = Labels(students=tuple(str(s) for s in lab["students"]),
                            topics=tuple(str(t) for t in lab["topics"]),
                            staff=tuple(str(g) for g in lab["staff"]))
        except (KeyError, TypeError):
            raise SchemaError(
                "labels must contain students, topics, and staff lists",
                context=str(path))
    try:
        inst = Instance.create(weights, w_max=w_max, a=a, b=b, groups=groups,
                               labels=labels)
    except InvalidInstanceError as e:
        raise SchemaError(str(e), context=str(path))
    if inst.n != n or inst.m != m:
        raise SchemaError(
            f"declared size n={n}, m={m} does not match the weight matrix "
            f"({inst.n} rows, {inst.m} columns)", context=str(path))
    return inst


# ------------------------------------------------------------ matrix import

def _is_int(tok: str) -> bool:
    try:
        int(tok)
        return True
    except ValueError:
        return False


def _split_matrix_line(line: str) -> list[str]:
    if ";" in line:
        return [f.strip() for f in line.split(";")]
    if "," in line:
        return [f.strip() for f in line.split(",")]
    return line.split()


def load_weight_matrix(path, w_max: int | None = None,
                       normalize: bool = False) -> Instance:
    """Import a plain rectangular weight matrix (spreadsheet export).

    Blank lines and '#' comments are skipped.  Fields split on ';', ',', or
    whitespace (first match wins per line).  A first line containing any
    non-integer field is a header of topic labels; a non-integer first field
    on a data line is the student's label.  Capacities default to floor/ceil
    of n/m, with a single staff group.
    """
    path = Path(path)
    try:
        raw = path.read_text(encoding="utf-8")
    except OSError as e:
        raise SchemaError(f"cannot read file: {e}", context=str(path))
    rows: list[tuple[int, list[str]]] = []
    for lineno, line in enumerate(raw.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        fields = [f for f in _split_matrix_line(stripped) if f != ""]
        if fields:
            rows.append((lineno, fields))
    if not rows:
        raise SchemaError("no data lines found", context=str(path))
    topic_labels = None
    first_fields = rows[0][1]
    if any(not _is_int(f) for f in first_fields):
        topic_labels = first_fields
        rows = rows[1:]
        if not rows:
            raise SchemaError("header line but no student rows", context=str(path))
    student_labels: list[str] = []
    matrix: list[list[int]] = []
    width = None
    for lineno, fields in rows:
        if not _is_int(fields[0]):
            student_labels.append(fields[0])
            values = fields[1:]
        else:
            student_labels.append(f"s{len(matrix) + 1}")
            values = fields
        parsed = []
        for col, tok in enumerate(values, start=1):
            if not _is_int(tok):
                raise SchemaError(f"line {lineno}, field {col}: '{tok}' is not "
                                  "an integer", context=str(path))
            parsed.append(int(tok))
        if not parsed:
            raise SchemaError(f"line {lineno}: no weight values", context=str(path))
        if width is None:
            width = len(parsed)
        elif len(parsed) != width:
            raise SchemaError(
                f"line {lineno}: expected {width} weights, found {len(parsed)}",
                context=str(path))
        matrix.append(parsed)
    if topic_labels is not None and len(topic_labels) == width + 1:
        topic_labels = topic_labels[1:]
    if topic_labels is not None and len(topic_labels) != width:
        raise SchemaError(
            f"header has {len(topic_labels)} labels for {width} topic columns",
            context=str(path))
    weights = np.asarray(matrix, dtype=np.int64)
    if w_max is None:
        w_max = int(weights[0].sum())
    if normalize:
        weights = normalize_weight_rows(weights, w_max)
    n, m = weights.shape
    labels = Labels(students=tuple(student_labels),
                    topics=tuple(topic_labels) if topic_labels is not None
                    else tuple(f"t{j + 1}" for j in range(m)),
                    staff=("staff1",))
    try:
        return Instance.create(weights, w_max=w_max, labels=labels)
    except InvalidInstanceError as e:
        raise SchemaError(str(e), context=str(path))


# ----------------------------------------------------------------- archives

def save_archive(archive, path) -> None:
    if isinstance(archive, EqualQualityArchive):
        data = {
            "format_version": FORMAT_VERSION,
            "kind": "archive",
            "mode": Mode.SINGLE.value,
            "archive_cap": archive.cap,
            "best_utility": archive.best_utility,
            "capped": archive.capped,
            "solutions": [[int(t) + 1 for t in asg.topic_of]
                          for asg in archive.solutions],
        }
    elif isinstance(archive, ParetoArchive):
        data = {
            "format_version": FORMAT_VERSION,
            "kind": "archive",
            "mode": Mode.BI.value,
            "archive_cap": archive.cap,
            "points": [
                {
                    "utility": p.outcome.utility,
                    "imbalance": _format_fraction(p.outcome.imbalance),
                    "imbalance_value": float(p.outcome.imbalance),
                    "capped": p.capped,
                    "solutions": [[int(t) + 1 for t in asg.topic_of]
                                  for asg in p.solutions],
                }
                for p in archive.sorted_points()
            ],
        }
    else:
        raise SchemaError(f"not an archive: {type(archive).__name__}")
    _write_json(data, path)


def _solution_from_file(inst: Instance, topics_1based, path) -> Assignment:
    try:
        topic_of = np.asarray([int(t) - 1 for t in topics_1based], dtype=np.int64)
    except (ValueError, TypeError):
        raise SchemaError("solution vectors must be integer topic numbers",
                          context=str(path))
    try:
        asg = Assignment.from_topics(inst, topic_of)
    except InvalidInstanceError as e:
        raise SchemaError(str(e), context=str(path))
    if not is_feasible(inst, asg):
        raise SchemaError("stored solution violates the capacity bounds",
                          context=str(path))
    return asg


def load_archive(path, inst: Instance):
    """Read an archive back; the owning instance must be supplied because
    archive files store only topic vectors."""
    data = _read_json(path, "archive")
    mode = _require(data, "mode", path)
    cap = int(_require(data, "archive_cap", path))
    if mode == Mode.SINGLE.value:
        archive = EqualQualityArchive(inst, cap)
        archive.best_utility = int(_require(data, "best_utility", path))
        archive.capped = bool(_require(data, "capped", path))
        for sol in _require(data, "solutions", path):
            asg = _solution_from_file(inst, sol, path)
            if asg.utility != archive.best_utility:
                raise SchemaError(
                    f"stored solution has utility {asg.utility}, archive "
                    f"claims {archive.best_utility}", context=str(path))
            if asg.key() in archive._keys:
                raise SchemaError("duplicate solution in archive file",
                                  context=str(path))
            archive.solutions.append(asg)
            archive._keys.add(asg.key())
        if not archive.solutions:
            raise SchemaError("archive file contains no solutions",
                              context=str(path))
        return archive
    if mode == Mode.BI.value:
        archive = ParetoArchive(inst, cap)
        for entry in _require(data, "points", path):
            out = Outcome(int(_require(entry, "utility", path)),
                          _parse_fraction(_require(entry, "imbalance", path), path))
            point = ParetoPoint(out)
            point.capped = bool(entry.get("capped", False))
            for sol in _require(entry, "solutions", path):
                asg = _solution_from_file(inst, sol, path)
                if asg.utility != out.utility or imbalance(inst, asg) != out.imbalance:
                    raise SchemaError(
                        "stored solution's objectives do not match its point",
                        context=str(path))
                if asg.key() in point._keys:
                    raise SchemaError("duplicate solution in archive point",
                                      context=str(path))
                point.solutions.append(asg)
                point._keys.add(asg.key())
            if not point.solutions:
                raise SchemaError("archive point contains no solutions",
                                  context=str(path))
            archive.points.append(point)
        if not archive.points:
            raise SchemaError("archive file contains no points", context=str(path))
        for p in archive.points:
            for q in archive.points:
                if p is not q and p.outcome.dominates(q.outcome):
                    raise SchemaError("archive points are not mutually "
                                      "nondominated", context=str(path))
        return archive
    raise SchemaError(f"unknown archive mode '{mode}'", context=str(path))


# ------------------------------------------------------------------ reports

def save_report(report: RunReport, path, timestamp: bool = True) -> None:
    data = {"format_version": FORMAT_VERSION, "kind": "report"}
    data.update(report.as_dict())
    if timestamp:
        data["created_at"] = datetime.datetime.now(
            datetime.timezone.utc).isoformat(timespec="seconds")
    _write_json(data, path)


def load_report(path) -> RunReport:
    data = _read_json(path, "report")
    try:
        best = [(Outcome(int(row["outcome"]["utility"]),
                         _parse_fraction(row["outcome"]["imbalance"], path)),
                 int(row["count"]), bool(row["capped"]))
                for row in data["best"]]
        return RunReport(
            mode=Mode(data["mode"]),
            seed=int(data["seed"]),
            max_evaluations=int(data["max_evaluations"]),
            evaluations=int(data["evaluations"]),
            accepted=int(data["accepted"]),
            no_move=int(data["no_move"]),
            neighborhoods=tuple(NeighborhoodKind(k)
                                for k in data["neighborhoods"]),
            excluded=tuple((NeighborhoodKind(e["kind"]), str(e["reason"]))
                           for e in data["excluded"]),
            archive_cap=int(data["archive_cap"]),
            wall_time_s=float(data["wall_time_s"]),
            best=best,
            instance_n=int(data["instance"]["n"]),
            instance_m=int(data["instance"]["m"]),
        )
    except (KeyError, TypeError, ValueError) as e:
        raise SchemaError(f"malformed report: {e}", context=str(path))


# ---------------------------------------------------------------- solutions

def save_solution(inst: Instance, asg: Assignment, path,
                  anonymize: bool = False) -> None:
    """Export one assignment as CSV: student id and name, topic, staff.

    ``anonymize`` replaces student names with their numeric ids, for sharing
    outside the organizing team.
    """
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["student_id", "student", "topic_id", "topic", "staff"])
        for i in range(inst.n):
            j = int(asg.topic_of[i])
            name = f"#{i + 1}" if anonymize else inst.labels.students[i]
            writer.writerow([i + 1, name, j + 1, inst.labels.topics[j],
                             inst.staff_of_topic(j)])


def load_solution(path, inst: Instance) -> Assignment:
    """Read a solution CSV back using the id columns only."""
    path = Path(path)
    try:
        with path.open(newline="", encoding="utf-8") as fh:
            rows = [row for row in csv.reader(fh) if row]
    except OSError as e:
        raise SchemaError(f"cannot read file: {e}", context=str(path))
    if not rows or rows[0][:1] != ["student_id"]:
        raise SchemaError("missing solution header line", context=str(path))
    topic_of = np.full(inst.n, -1, dtype=np.int64)
    for lineno, fields in enumerate(rows[1:], start=2):
        if len(fields) < 3:
            raise SchemaError(f"line {lineno}: expected at least 3 fields",
                              context=str(path))
        try:
            sid = int(fields[0])
            tid = int(fields[2])
        except ValueError:
            raise SchemaError(f"line {lineno}: student_id and topic_id must "
                              "be integers", context=str(path))
        if not 1 <= sid <= inst.n:
            raise SchemaError(f"line {lineno}: unknown student id {sid}",
                              context=str(path))
        if not 1 <= tid <= inst.m:
            raise SchemaError(f"line {lineno}: unknown topic id {tid}",
                              context=str(path))
        if topic_of[sid - 1] != -1:
            raise SchemaError(f"line {lineno}: student {sid} assigned twice",
                              context=str(path))
        topic_of[sid - 1] = tid - 1
    if (topic_of == -1).any():
        missing = int(np.nonzero(topic_of == -1)[0][0]) + 1
        raise SchemaError(f"student {missing} has no assignment",
                          context=str(path))
    return Assignment.from_topics(inst, topic_of)
