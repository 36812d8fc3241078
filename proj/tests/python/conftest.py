import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

_pymod = os.environ.get("ACOH_PYMODULE_DIR")
if _pymod:
    sys.path.insert(0, _pymod)


@pytest.fixture(scope="session")
def cli():
    exe = os.environ.get("ACOH_CLI")
    if not exe:
        pytest.skip("ACOH_CLI not set")

    def run(*args, env=None):
        full_env = dict(os.environ)
        full_env.pop("ACOH_OUTPUT_DIR", None)
        if env:
            full_env.update(env)
        return subprocess.run([exe, *args], capture_output=True, text=True, env=full_env, timeout=120)

    return run


@pytest.fixture(scope="session")
def schemas():
    root = Path(os.environ.get("ACOH_SCHEMAS", Path(__file__).resolve().parents[2] / "schemas"))
    return {p.name.split(".")[0]: json.loads(p.read_text()) for p in root.glob("*.schema.json")}


@pytest.fixture(scope="session")
def validate(schemas):
    jsonschema = pytest.importorskip("jsonschema")
    from referencing import Registry, Resource

    registry = Registry().with_resources(
        [(s["$id"].split("/")[-1], Resource.from_contents(s)) for s in schemas.values()]
        + [(s["$id"], Resource.from_contents(s)) for s in schemas.values()]
    )

    def check(doc, name):
        jsonschema.Draft202012Validator(schemas[name], registry=registry).validate(doc)

    return check
