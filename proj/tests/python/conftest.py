import json
import os
import pathlib
import subprocess

import pytest

ROOT = pathlib.Path(os.environ.get("CF_ROOT", pathlib.Path(__file__).resolve().parents[2]))
CLI = os.environ.get("CF_CLI", str(ROOT / "build" / "community-forge"))
CANONICAL = ROOT / "configs" / "canonical.json"


@pytest.fixture
def run_cli():
    def run(*args):
        return subprocess.run([CLI, *map(str, args)], capture_output=True, text=True)

    return run


@pytest.fixture
def canonical_config():
    return json.loads(CANONICAL.read_text())


@pytest.fixture
def write_config(tmp_path):
    def write(cfg, name="config.json"):
        path = tmp_path / name
        path.write_text(json.dumps(cfg))
        return path

    return write


@pytest.fixture
def schema():
    def load(name):
        return json.loads((ROOT / "schemas" / f"{name}.schema.json").read_text())

    return load
