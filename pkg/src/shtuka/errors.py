"""Named error types shared across the package."""

from .laurent import InexactRoot, PrecisionLoss, RootBranchMismatch

__all__ = [
    "PrecisionLoss",
    "RootBranchMismatch",
    "InexactRoot",
    "EvalAtInfinity",
    "PoleAtPoint",
    "IndeterminateEval",
    "HigherOrderPole",
    "NegativeTwistUnsupported",
    "VEquationFailed",
    "WrongClassFieldDegree",
    "GaloisTableInvalid",
    "ArtinNotFound",
    "ArtinAmbiguous",
    "ZeroToPrecision",
    "VSolveDiverged",
    "SlopeMismatch",
    "RouteDisagreement",
    "CommutationFailed",
    "DecompositionStuck",
    "IdealShapeUnsupported",
    "CrossCheckFailed",
    "TruncationInsufficient",
    "IdentityViolated",
    "DegenerateSlope",
    "NotConverging",
    "TermNotOne",
    "NotPolynomial",
    "LeadingNotOne",
    "ConfigError",
]


class EvalAtInfinity(Exception):
    """Evaluation of a coordinate-ring element at the point at infinity."""


class PoleAtPoint(Exception):
    """A function was evaluated at one of its poles."""


class IndeterminateEval(Exception):
    """Numerator and denominator both vanish beyond the probed order."""


class HigherOrderPole(Exception):
    """A residue was requested at a pole of order greater than one."""


class NegativeTwistUnsupported(Exception):
    """Frobenius twisting by a negative amount is deliberately not offered."""


class VEquationFailed(Exception):
    """The configured point V does not satisfy V - frob(V) = (theta, eta)."""


class WrongClassFieldDegree(Exception):
    """Degree of the configured extension does not match #E(F_q)."""


class GaloisTableInvalid(Exception):
    """The configured Galois images do not form the expected group."""


class ArtinNotFound(Exception):
    """No Galois element realizes V - P on the configured generators."""


class ArtinAmbiguous(Exception):
    """More than one Galois element realizes V - P."""


class ZeroToPrecision(Exception):
    """A Laurent series is indistinguishable from zero at its precision."""


class VSolveDiverged(Exception):
    """The fixed-point iteration for V failed to stabilize."""


class SlopeMismatch(Exception):
    """The alternative closed forms for the shtuka slope disagree."""


class RouteDisagreement(Exception):
    """Two independent computation routes produced different results."""


class CommutationFailed(Exception):
    """Images of the two coordinate generators do not commute."""


class DecompositionStuck(Exception):
    """Greedy pole-order elimination left a nonzero residual."""


class IdealShapeUnsupported(Exception):
    """Only principal, degree-1 prime, and prime-power ideals are supported."""


class CrossCheckFailed(Exception):
    """A brute-force recomputation disagreed with the primary route."""


class TruncationInsufficient(Exception):
    """A truncated product or series tail is not settled at the working precision."""


class IdentityViolated(Exception):
    """An exact identity that must hold for a valid construction failed."""


class DegenerateSlope(Exception):
    """A chord or tangent slope needed by an auxiliary function does not
    exist (coincident abscissas or a two-torsion translate)."""


class NotConverging(Exception):
    """A truncated series or product failed its tail-stability test."""


class TermNotOne(Exception):
    """A Galois-orbit factor expected to collapse to 1 did not."""


class NotPolynomial(Exception):
    """A series expected to terminate kept producing nonzero terms."""


class LeadingNotOne(Exception):
    """A polynomial expected to be monic has a different leading term."""


class ConfigError(Exception):
    """Malformed configuration input."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        loc = ""
        if line is not None:
            loc = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + loc)
        self.line = line
        self.column = column
