"""Shipped scenario fixtures and helpers to materialize them as files."""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

from ..io import save_catalog, save_model
from .scenarios import ScenarioBundle, lending_demo, scenario_bundle, scenario_ids

__all__ = [
    "ScenarioBundle",
    "lending_demo",
    "scenario_bundle",
    "scenario_ids",
    "fixture_dir",
    "write_fixture_files",
    "write_all_fixture_files",
]


def fixture_dir(scenario_id: int) -> Path:
    """Path to the shipped JSON files for one scenario."""
    root = resources.files(__package__) / "data" / f"scenario_{scenario_id:02d}"
    path = Path(str(root))
    if not path.is_dir():
        raise FileNotFoundError(f"fixture data for scenario {scenario_id} is not present at {path}")
    return path


def write_fixture_files(scenario_id: int, outdir: str | Path) -> Path:
    """Write model/profile/catalog/templates JSON for one scenario."""
    bundle = scenario_bundle(scenario_id)
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    save_model(bundle.model, out / "model.json")
    (out / "profile.json").write_text(json.dumps(dict(bundle.profile), indent=2, sort_keys=True) + "\n")
    save_catalog(bundle.catalog, out / "catalog.json")
    (out / "templates.json").write_text(json.dumps(dict(bundle.templates), indent=2) + "\n")
    return out


def write_all_fixture_files(root: str | Path) -> None:
    for sid in scenario_ids():
        write_fixture_files(sid, Path(root) / f"scenario_{sid:02d}")
