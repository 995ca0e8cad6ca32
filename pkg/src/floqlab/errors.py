"""Exception types shared across the package."""


class ValidationError(ValueError):
    """An input failed a numerical validity check (hermiticity, unitarity, ...).

    Carries the measured defect so callers can report how badly the check failed.
    """

    def __init__(self, message: str, defect: float | None = None):
        if defect is not None:
            message = f"{message} (measured defect {defect:.3e})"
        super().__init__(message)
        self.defect = defect


class ConvergenceError(RuntimeError):
    """An iterative procedure ran out of budget before reaching its tolerance."""

    def __init__(self, message: str, history: list[tuple[int, float]] | None = None):
        super().__init__(message)
        self.history = history or []
