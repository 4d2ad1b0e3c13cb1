"""Exception types shared across the engine."""


class SchemaError(ValueError):
    """A feature vector, dataset row, or model does not conform to its schema."""


class NoRecourseError(RuntimeError):
    """Recourse was requested but every feature is immutable."""


class InfeasibleError(RuntimeError):
    """No reachable state, grid point, or delta combination achieves the goal."""


class StateCapError(RuntimeError):
    """Reachable state closure exceeded the configured cap."""

    def __init__(self, cap: int, reached: int):
        super().__init__(
            f"state closure exceeded cap: cap={cap}, reachable states so far={reached}"
        )
        self.cap = cap
        self.reached = reached


class TemplateError(KeyError):
    """A template references a slot that cannot be filled."""


class CatalogError(ValueError):
    """An action catalog violates its contract."""
