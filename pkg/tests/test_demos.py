from __future__ import annotations

import subprocess
import sys
from pathlib import Path

import pytest

DEMOS = Path(__file__).resolve().parent.parent / "demos"


@pytest.mark.parametrize("script", sorted(p.name for p in DEMOS.glob("*.py")))
def test_demo_runs(script):
    proc = subprocess.run([sys.executable, str(DEMOS / script)], capture_output=True, text=True, cwd=DEMOS.parent)
    assert proc.returncode == 0, proc.stderr
    assert proc.stdout.strip()


def test_demo_documents_load():
    from graphspaces.documents import read_document

    for path in sorted((DEMOS / "data").glob("*.json")):
        read_document(path)
