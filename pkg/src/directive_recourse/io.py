"""File formats: model JSON, dataset CSV, profiles, catalogs, action grids."""

from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Mapping

from .counterfactual import ActionGrid
from .errors import SchemaError
from .model import LinearModel
from .planner import ActionCatalog
from .schema import FeatureSchema, schema_from_dict, schema_to_dict


def model_to_dict(model: LinearModel) -> dict:
    weights = {}
    for spec in model.schema.features:
        w = model.weights[spec.name]
        weights[spec.name] = {str(k): v for k, v in w.items()} if isinstance(w, Mapping) else w
    return {
        "schema": schema_to_dict(model.schema),
        "weights": weights,
        "bias": model.bias,
        "threshold": model.threshold,
        "metadata": dict(model.metadata),
    }


def model_from_dict(data: Mapping) -> LinearModel:
    schema = schema_from_dict(data["schema"])
    weights = {}
    for spec in schema.features:
        w = data["weights"][spec.name]
        weights[spec.name] = {float(k): float(v) for k, v in w.items()} if isinstance(w, Mapping) else float(w)
    return LinearModel(
        schema=schema,
        weights=weights,
        bias=float(data.get("bias", 0.0)),
        threshold=float(data.get("threshold", 0.5)),
        metadata=data.get("metadata", {}),
    )


def save_model(model: LinearModel, path: str | Path) -> None:
    Path(path).write_text(json.dumps(model_to_dict(model), indent=2, sort_keys=True) + "\n")


def load_model(path: str | Path) -> LinearModel:
    return model_from_dict(json.loads(Path(path).read_text()))


def load_profile(path: str | Path) -> dict[str, float]:
    data = json.loads(Path(path).read_text())
    if not isinstance(data, Mapping):
        raise SchemaError("profile file must be a JSON object of feature values")
    return {str(k): float(v) for k, v in data.items()}


def load_catalog(path: str | Path) -> ActionCatalog:
    return ActionCatalog.from_json_obj(json.loads(Path(path).read_text()))


def save_catalog(catalog: ActionCatalog, path: str | Path) -> None:
    Path(path).write_text(json.dumps(catalog.to_dict(), indent=2) + "\n")


def load_action_grid(path: str | Path) -> ActionGrid:
    return ActionGrid.from_json_obj(json.loads(Path(path).read_text()))


def load_dataset_csv(path: str | Path, schema: FeatureSchema, label_column: str = "label"):
    """Rows and labels from a CSV whose header carries schema names plus the label.

    Raises SchemaError with row/column diagnostics on malformed input.
    """
    rows: list[dict[str, float]] = []
    labels: list[int] = []
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        if label_column not in header:
            raise SchemaError(f"dataset is missing the {label_column!r} column")
        missing = set(schema.names) - set(header)
        if missing:
            raise SchemaError(f"dataset header is missing feature columns: {sorted(missing)}")
        for lineno, raw in enumerate(reader, start=2):
            try:
                row = {name: float(raw[name]) for name in schema.names}
                label = int(float(raw[label_column]))
            except (TypeError, ValueError) as exc:
                raise SchemaError(f"row {lineno}: unparseable value ({exc})") from exc
            try:
                schema.validate_vector(row)
            except SchemaError as exc:
                raise SchemaError(f"row {lineno}: {exc}") from exc
            if label not in (0, 1):
                raise SchemaError(f"row {lineno}: label must be 0 or 1, got {raw[label_column]!r}")
            rows.append(row)
            labels.append(label)
    if not rows:
        raise SchemaError("dataset has no data rows")
    return rows, labels


def save_dataset_csv(path: str | Path, schema: FeatureSchema, rows, labels, label_column: str = "label") -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(list(schema.names) + [label_column])
        for row, label in zip(rows, labels):
            writer.writerow([row[name] for name in schema.names] + [label])
