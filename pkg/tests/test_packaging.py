"""Packaging: the explicit wheel file list and the workspace envelope.

The member pyproject lists every shipped file under
[tool.hatch.build.targets.wheel.force-include]; a module added to the package
but forgotten there would be missing from the wheel, so the list is checked
against the source directory. When uv is available the wheel is also built.
"""

from __future__ import annotations

import shutil
import subprocess
import tomllib
import zipfile
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parents[1]
PKG = ROOT / "src" / "carlitz_rank"


def _member() -> dict:
    return tomllib.loads((PKG / "pyproject.toml").read_text())


def test_force_include_lists_every_module():
    include = _member()["tool"]["hatch"]["build"]["targets"]["wheel"]["force-include"]
    listed = {src for src in include if src.endswith(".py")}
    on_disk = {f.name for f in PKG.glob("*.py")}
    assert listed == on_disk
    assert include["py.typed"] == "carlitz_rank/py.typed"
    assert all(target == f"carlitz_rank/{src}" for src, target in include.items())


def test_member_metadata():
    project = _member()["project"]
    assert project["name"] == "carlitz-rank"
    assert project["scripts"]["carlitz-rank"] == "carlitz_rank.cli:main"
    deps = {d.split(">=")[0] for d in project["dependencies"]}
    assert deps == {"pydantic", "sympy", "numpy"}
    from carlitz_rank import __version__
    assert project["version"] == __version__


def test_root_pyproject_is_workspace_only():
    root = tomllib.loads((ROOT / "pyproject.toml").read_text())
    assert root["tool"]["uv"]["package"] is False
    assert root["tool"]["uv"]["workspace"]["members"] == ["src/carlitz_rank"]
    assert "scripts" not in root["project"]


@pytest.mark.slow
@pytest.mark.skipif(shutil.which("uv") is None, reason="uv not on PATH")
def test_wheel_contents(tmp_path):
    proc = subprocess.run(["uv", "build", "--wheel", "--out-dir", str(tmp_path)],
                          capture_output=True, text=True, cwd=str(PKG), check=False)
    assert proc.returncode == 0, proc.stderr or proc.stdout
    whl = next(tmp_path.glob("carlitz_rank-*.whl"))
    with zipfile.ZipFile(whl) as z:
        names = set(z.namelist())
    shipped = {n.split("/", 1)[1] for n in names if n.startswith("carlitz_rank/")}
    assert {f.name for f in PKG.glob("*.py")} <= shipped
    assert "py.typed" in shipped
    assert "pyproject.toml" not in shipped and "README.md" not in shipped
