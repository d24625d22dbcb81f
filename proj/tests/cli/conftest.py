import json
import os
import subprocess
from pathlib import Path

import pytest

SCHEMA_DIR = Path(__file__).resolve().parents[2] / "docs" / "schemas"


@pytest.fixture(scope="session")
def binary():
    path = os.environ.get("SPECTRADIM_BIN")
    if not path:
        pytest.skip("SPECTRADIM_BIN not set")
    return path


@pytest.fixture
def run(binary):
    def _run(*args, env=None, check=None):
        full_env = dict(os.environ)
        full_env.pop("SPECTRADIM_SEED", None)
        if env:
            full_env.update(env)
        proc = subprocess.run([binary, *map(str, args)], capture_output=True, text=True, env=full_env)
        if check is not None:
            assert proc.returncode == check, proc.stderr
        return proc

    return _run


@pytest.fixture
def gen(run, tmp_path):
    def _gen(name, *args):
        out = tmp_path / name
        run("gen", *args, "--out", out, check=0)
        return out

    return _gen


def load_schema(name):
    return json.loads((SCHEMA_DIR / f"{name}.schema.json").read_text())
