"""Exception and warning types shared across the package."""


class InvalidArgumentError(ValueError):
    """An argument is outside the domain of the operation."""


class GeometryError(InvalidArgumentError):
    """The deployment geometry violates one of the placement constraints."""

    def __init__(self, constraint: str, message: str):
        self.constraint = constraint
        super().__init__(f"[{constraint}] {message}")


class ConfigError(ValueError):
    """An experiment configuration could not be parsed or validated."""

    def __init__(self, message: str, field: str | None = None):
        self.field = field
        super().__init__(message if field is None else f"{field}: {message}")


class DegenerateGeometryWarning(UserWarning):
    """No stationary point was found where one was expected."""


class InteriorOptimumWarning(UserWarning):
    """An interior offset beats both endpoint candidates of the non-linear model."""
