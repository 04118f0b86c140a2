"""Exception types shared across the package."""


class InvalidInputError(ValueError):
    """An argument is outside the domain of an operation."""


class ResolutionError(InvalidInputError):
    """A time grid is too coarse for the requested integration."""

    def __init__(self, message: str, required_spacing: float):
        super().__init__(message)
        self.required_spacing = required_spacing


class InvalidWindowError(InvalidInputError):
    """A projection window does not span a whole number of drive periods."""
