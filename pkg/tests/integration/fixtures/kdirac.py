import json
import os
import shlex
import subprocess
import sys

import pytest

KDIRAC_BIN = (
    shlex.split(os.environ["KDIRAC_BIN"])
    if os.environ.get("KDIRAC_BIN")
    else [sys.executable, "-m", "kdirac"]
)


class Run:
    def __init__(self, args, process):
        self.args = args
        self.status = process.returncode
        self.stdout = process.stdout
        self.stderr = process.stderr

    @property
    def report(self):
        return json.loads(self.stdout)

    @property
    def error(self):
        return json.loads(self.stderr.strip().splitlines()[-1])

    def __repr__(self):
        return f"<Run {' '.join(self.args)} status={self.status}>"


@pytest.fixture
def kdirac():
    """Runs the `kdirac` binary and collects its output."""

    def inner(*args, env=None, timeout=600):
        full_env = dict(os.environ)
        full_env.pop("KDIRAC_CACHE_DIR", None)
        full_env.update(env or {})
        process = subprocess.run(
            KDIRAC_BIN + [str(a) for a in args],
            capture_output=True,
            text=True,
            env=full_env,
            timeout=timeout,
        )
        return Run(list(map(str, args)), process)

    return inner
