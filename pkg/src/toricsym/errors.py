"""Shared exception types."""


class InternalInvariantError(RuntimeError):
    """A structural fact that must hold for valid input failed.

    Raised when a certified property (type-A factor shape, reflection
    realizability, nonface preservation, ...) is contradicted at runtime.
    Indicates a bug or input that slipped past validation, never a normal
    outcome; maps to exit status 3 in the CLI.
    """


class WeylOrderCapExceeded(RuntimeError):
    """Weyl group enumeration refused because the order exceeds the cap."""

    def __init__(self, order: int, formula: str, cap: int):
        self.order = order
        self.formula = formula
        self.cap = cap
        super().__init__(
            f"Weyl group order {order} = {formula} exceeds enumeration cap {cap}"
        )
