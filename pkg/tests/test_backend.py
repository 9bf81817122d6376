"""Cross-backend agreement checks.

The compiled kernels and the interpreted fallback must walk the same
random stream and produce byte-identical archives for the same seed.
The fallback is chosen by SEMINARASSIGN_NO_NUMBA=1 at import time, so
its half of the comparison runs in a subprocess.
"""

import json
import os
import subprocess
import sys
from pathlib import Path

from backend_digest import digest
from seminarassign import kernels

SCRIPT = Path(__file__).with_name("backend_digest.py")


def interpreted_digest() -> dict:
    env = dict(os.environ, SEMINARASSIGN_NO_NUMBA="1")
    proc = subprocess.run([sys.executable, str(SCRIPT)], env=env,
                          capture_output=True, text=True, timeout=300)
    assert proc.returncode == 0, proc.stderr
    return json.loads(proc.stdout)


def test_compiled_backend_is_the_default():
    assert kernels.BACKEND == "numba"


def test_digest_is_deterministic_in_process():
    assert digest() == digest()


def test_backends_agree_exactly():
    theirs = interpreted_digest()
    assert theirs["backend"] == "python"
    ours = digest()
    assert ours["backend"] == "numba"
    for mode in ("single", "bi"):
        assert ours[mode]["archive"] == theirs[mode]["archive"], mode
        assert ours[mode]["report"] == theirs[mode]["report"], mode
