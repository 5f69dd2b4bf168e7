"""Exception types shared across the engine."""


class InputError(ValueError):
    """Malformed input: wrong shapes, out-of-range entries, mismatched domains."""


class PropertyViolation(AssertionError):
    """A checked theorem failed on concrete data.

    This is never expected; raising it means either the implementation or
    the mathematics it encodes is wrong, and the witness should be kept.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness
