"""Run both search modes on a fixed instance and emit a canonical digest.

Imported by the backend tests for the in-process run and executed as a
script inside a subprocess where SEMINARASSIGN_NO_NUMBA=1 selects the
interpreted kernels.  The digest contains the exact archive file text
plus the run report, so any cross-backend drift shows up as a diff.
"""

import json
import tempfile
from pathlib import Path

from seminarassign import formats, kernels
from seminarassign.instgen import random_instance
from seminarassign.search import Mode, SearchConfig, run_vns


def digest() -> dict:
    out = {"backend": kernels.BACKEND}
    inst = random_instance(13, 4, w_max=30, k=2, seed=5)
    runs = (
        ("single", SearchConfig(mode=Mode.SINGLE, max_evaluations=4000,
                                seed=11, archive_cap=64)),
        ("bi", SearchConfig(mode=Mode.BI, max_evaluations=3000,
                            seed=11, archive_cap=32)),
    )
    with tempfile.TemporaryDirectory() as td:
        for name, config in runs:
            archive, report = run_vns(inst, config)
            path = Path(td) / f"{name}.json"
            formats.save_archive(archive, path)
            rep = report.as_dict()
            rep.pop("wall_time_s")
            out[name] = {
                "archive": path.read_text(encoding="utf-8"),
                "report": rep,
            }
    return out


if __name__ == "__main__":
    print(json.dumps(digest()))
