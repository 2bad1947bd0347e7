class SingularCoefficientError(ZeroDivisionError):
    """A coefficient function hit a pole at the requested point."""

    def __init__(self, kind: str, indices, argument):
        self.kind = kind
        self.indices = indices
        self.argument = argument
        super().__init__(f"singular {kind} factor at indices {indices}, argument q^z = {argument}")


class NonGenericParametersError(ArithmeticError):
    """Eigenvalue collision or vanishing product at the chosen parameters."""


class InternalConsistencyError(RuntimeError):
    """An identity that must hold by construction failed; points to a transcription bug."""
