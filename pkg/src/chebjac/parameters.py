"""Jacobi parameter pairs and their admissibility classification."""

from dataclasses import dataclass


class ParameterRangeError(ValueError):
    """Raised when (alpha, beta) lie outside the range an operation supports."""


@dataclass(frozen=True)
class JacobiParameters:
    """The weight exponents (alpha, beta) of a Jacobi polynomial family.

    Admissible parameters satisfy alpha > -1 and beta > -1.  The half-open
    square (-1/2, 1/2]^2 is the "core" region where the interior-asymptotics
    remainder bounds and the moment recurrences are valid; parameters outside
    it must be reached through integer increments/decrements.
    """

    alpha: float
    beta: float

    def __post_init__(self):
        if not (self.alpha > -1.0 and self.beta > -1.0):
            raise ParameterRangeError(
                f"Jacobi parameters require alpha, beta > -1, got "
                f"({self.alpha}, {self.beta})"
            )

    @property
    def core(self) -> bool:
        """True iff (alpha, beta) lie in the half-open square (-1/2, 1/2]^2."""
        return (-0.5 < self.alpha <= 0.5) and (-0.5 < self.beta <= 0.5)

    def swapped(self) -> "JacobiParameters":
        return JacobiParameters(self.beta, self.alpha)

    def require_core(self, context: str = "this operation"):
        if not self.core:
            raise ParameterRangeError(
                f"{context} requires (alpha, beta) in (-1/2, 1/2]^2, got "
                f"({self.alpha}, {self.beta}); reduce the parameters with "
                f"integer increments/decrements first"
            )
