"""Feature schema: declared types, bounds, units, and mutability classes.

The schema is the single source of truth for what a profile looks like and
which of its features an individual can act on. Mutability has three levels:
``immutable`` (never changes), ``conditionally-mutable`` (changes only when an
explicitly enabled condition holds), and ``actionable`` (freely changeable
within bounds and direction).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .errors import SchemaError

KINDS = ("continuous", "ordinal", "categorical")
MUTABILITIES = ("immutable", "conditionally-mutable", "actionable")
DIRECTIONS = ("free", "increase-only", "decrease-only")


@dataclass(frozen=True)
class FeatureSpec:
    """One feature's declaration.

    ``values`` enumerates the admissible set for ordinal and categorical
    features. ``step`` is the default search-grid step (and planner bin width)
    in feature units; continuous features without one get bounds/100.
    """

    name: str
    kind: str = "continuous"
    bounds: tuple[float, float] = (0.0, 1.0)
    unit: str = ""
    mutability: str = "actionable"
    direction: str = "free"
    values: tuple[float, ...] | None = None
    step: float | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise SchemaError(f"{self.name}: unknown kind {self.kind!r}")
        if self.mutability not in MUTABILITIES:
            raise SchemaError(f"{self.name}: unknown mutability {self.mutability!r}")
        if self.direction not in DIRECTIONS:
            raise SchemaError(f"{self.name}: unknown direction {self.direction!r}")
        lo, hi = self.bounds
        if not (lo <= hi):
            raise SchemaError(f"{self.name}: bounds must satisfy lo <= hi, got {self.bounds}")
        if self.kind in ("ordinal", "categorical"):
            if not self.values:
                raise SchemaError(f"{self.name}: {self.kind} features must enumerate values")
            object.__setattr__(self, "values", tuple(self.values))
            for v in self.values:
                if not (lo <= v <= hi):
                    raise SchemaError(f"{self.name}: enumerated value {v} outside bounds")
        if self.step is not None and self.step <= 0:
            raise SchemaError(f"{self.name}: step must be > 0")

    @property
    def mutable(self) -> bool:
        return self.mutability != "immutable"

    def default_step(self) -> float:
        if self.step is not None:
            return self.step
        if self.kind in ("ordinal", "categorical"):
            return 1.0
        lo, hi = self.bounds
        return (hi - lo) / 100.0 if hi > lo else 1.0

    def grid_values(self, step: float | None = None) -> list[float]:
        """Admissible search values: the enumerated set, or an even grid over bounds."""
        if self.kind in ("ordinal", "categorical"):
            return sorted(self.values)
        lo, hi = self.bounds
        s = step if step is not None else self.default_step()
        n = int(round((hi - lo) / s))
        vals = [lo + i * s for i in range(n + 1)]
        if vals and vals[-1] > hi:
            vals[-1] = hi
        return vals

    def contains(self, value: float) -> bool:
        lo, hi = self.bounds
        if not (lo <= value <= hi):
            return False
        if self.kind in ("ordinal", "categorical"):
            return any(value == v for v in self.values)
        return True


@dataclass(frozen=True)
class FeatureSchema:
    features: tuple[FeatureSpec, ...]
    by_name: Mapping[str, FeatureSpec] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "features", tuple(self.features))
        names = [f.name for f in self.features]
        if len(set(names)) != len(names):
            raise SchemaError("feature names must be unique")
        object.__setattr__(self, "by_name", {f.name: f for f in self.features})

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(f.name for f in self.features)

    def mutable_names(self) -> tuple[str, ...]:
        return tuple(f.name for f in self.features if f.mutable)

    @property
    def has_recourse(self) -> bool:
        """True when at least one feature can change at all."""
        return any(f.mutable for f in self.features)

    def validate_vector(self, x: Mapping[str, float]) -> None:
        """Raise SchemaError unless ``x`` has exactly the schema's names with in-range values."""
        missing = set(self.names) - set(x)
        extra = set(x) - set(self.names)
        if missing or extra:
            raise SchemaError(f"feature names mismatch: missing={sorted(missing)}, extra={sorted(extra)}")
        for spec in self.features:
            v = x[spec.name]
            if not isinstance(v, (int, float)):
                raise SchemaError(f"{spec.name}: value must be numeric, got {type(v).__name__}")
            if not spec.contains(float(v)):
                raise SchemaError(f"{spec.name}: value {v} violates bounds/enumeration {spec.bounds}")


def schema_to_dict(schema: FeatureSchema) -> dict:
    out = []
    for f in schema.features:
        d = {
            "name": f.name,
            "kind": f.kind,
            "bounds": list(f.bounds),
            "unit": f.unit,
            "mutability": f.mutability,
            "direction": f.direction,
        }
        if f.values is not None:
            d["values"] = list(f.values)
        if f.step is not None:
            d["step"] = f.step
        out.append(d)
    return {"features": out}


def schema_from_dict(data: Mapping) -> FeatureSchema:
    feats = []
    for d in data["features"]:
        feats.append(
            FeatureSpec(
                name=d["name"],
                kind=d.get("kind", "continuous"),
                bounds=tuple(d.get("bounds", (0.0, 1.0))),
                unit=d.get("unit", ""),
                mutability=d.get("mutability", "actionable"),
                direction=d.get("direction", "free"),
                values=tuple(d["values"]) if "values" in d else None,
                step=d.get("step"),
            )
        )
    return FeatureSchema(tuple(feats))


def vector_values(schema: FeatureSchema, x: Mapping[str, float]) -> list[float]:
    """Values of ``x`` in schema feature order."""
    return [float(x[name]) for name in schema.names]
