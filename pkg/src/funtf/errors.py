"""
Exception hierarchy for funtf.

All funtf exceptions inherit from FuntfError, allowing callers to catch
every library failure with a single except clause.

Exception Categories:
    - NumericsError: dense linear-algebra preconditions (1xxx)
    - EigenstepsError: invalid or incompatible eigensteps tables (2xxx)
    - FrameError: frame structure and file format problems (3xxx)
    - LiftingError: synthesis, recovery and path lifting (4xxx)
    - MotionError: frame-operator-preserving motions (5xxx)
    - CommandError: orchestration refusals raised by the CLI layer (6xxx)

Design Principles:
    - All errors have error codes for programmatic handling
    - All errors carry the numbers that explain the failure in ``context``
    - All errors provide actionable suggestions where possible
    - Errors are designed to be both human-readable and machine-parseable
"""

from dataclasses import dataclass, field
from typing import Any

# =============================================================================
# Error Codes
# =============================================================================

# Numerics errors: 1xxx
ERROR_NOT_SELF_ADJOINT = 1001
ERROR_NOT_UNITARY = 1002
ERROR_ORIENTATION_MISMATCH = 1003
ERROR_NOT_ORTHONORMAL = 1004

# Eigensteps errors: 2xxx
ERROR_INVALID_TABLE = 2001
ERROR_DIMENSION_MISMATCH = 2002
ERROR_EMPTY_INTERIOR = 2003

# Frame errors: 3xxx
ERROR_NOT_FUNTF = 3001
ERROR_NO_COMPLEMENT = 3002
ERROR_TOO_LARGE = 3003
ERROR_NOT_A_PERMUTATION = 3004
ERROR_FRAME_IS_OD = 3005
ERROR_NOT_OD = 3006
ERROR_FILE_FORMAT = 3007

# Lifting errors: 4xxx
ERROR_VANISHING_DENOMINATOR = 4001
ERROR_NEGATIVE_RADICAND = 4002
ERROR_NONCANCELLING_POWERS = 4003
ERROR_DEGENERATE_SPECTRA = 4004
ERROR_NOT_INTERIOR = 4005
ERROR_EIGENSTEPS_MISMATCH = 4006
ERROR_ORIENTATION_OBSTRUCTION = 4007
ERROR_INVALID_BASE_DATA = 4008

# Motion errors: 5xxx
ERROR_NOT_TIGHT_ON_SPAN = 5001
ERROR_ROTATION_LEAKS_SUBSPACE = 5002
ERROR_NOT_TWO_ONBS = 5003
ERROR_MISSING_CHAPERONE = 5004
ERROR_SAME_SUBFRAME = 5005
ERROR_NOT_TIGHT = 5006
ERROR_NOT_SIMPLEX = 5007
ERROR_DEGENERATE_ALIGNMENT = 5008
ERROR_BAD_SUBFRAME = 5009

# Command errors: 6xxx
ERROR_FIELD_UNSUPPORTED = 6001
ERROR_ENDPOINT_OD = 6002
ERROR_NO_NOD_START = 6003


# =============================================================================
# Base Exception
# =============================================================================


@dataclass
class FuntfError(Exception):
    """
    Base exception for all funtf errors.

    All funtf exceptions inherit from this class, providing:
    - Consistent error code for programmatic handling
    - Human-readable message
    - Optional suggestion for resolution
    - Optional context dict for debugging

    Attributes:
        message: Human-readable error description
        code: Numeric error code for programmatic handling
        suggestion: Optional hint for how to resolve the error
        context: Optional dict with additional debugging info
    """

    message: str = ""
    code: int = 0
    suggestion: str | None = None
    context: dict[str, Any] = field(default_factory=dict)

    def __str__(self) -> str:
        """Format error for display."""
        parts = [f"[E{self.code}] {self.message}"]
        if self.suggestion:
            parts.append(f"\nSuggestion: {self.suggestion}")
        return "".join(parts)

    def __repr__(self) -> str:
        """Format error for debugging."""
        return (
            f"{self.__class__.__name__}("
            f"message={self.message!r}, "
            f"code={self.code}, "
            f"context={self.context!r})"
        )

    def to_dict(self) -> dict[str, Any]:
        """Convert to dictionary for JSON serialization."""
        return {
            "error_type": self.__class__.__name__,
            "message": self.message,
            "code": self.code,
            "suggestion": self.suggestion,
            "context": self.context,
        }


# =============================================================================
# Numerics Errors
# =============================================================================


@dataclass
class NumericsError(FuntfError):
    """Base class for linear-algebra precondition failures."""


@dataclass
class NotSelfAdjointError(NumericsError):
    """
    Raised when a matrix handed to the Hermitian eigensolver is not self-adjoint.

    Attributes:
        asymmetry: max |A - A*| entry
        tolerance: allowed asymmetry
    """

    asymmetry: float = 0.0
    tolerance: float = 0.0

    def __post_init__(self) -> None:
        """Set defaults after dataclass init."""
        if not self.message:
            self.message = (
                f"Matrix is not self-adjoint: asymmetry {self.asymmetry:.3e} "
                f"exceeds {self.tolerance:.1e}"
            )
        if self.code == 0:
            self.code = ERROR_NOT_SELF_ADJOINT
        self.context.update({"asymmetry": self.asymmetry, "tolerance": self.tolerance})


@dataclass
class NotUnitaryError(NumericsError):
    """Raised when a matrix expected to be unitary is not."""

    residual: float = 0.0
    tolerance: float = 0.0
    name: str = "matrix"

    def __post_init__(self) -> None:
        """Set defaults after dataclass init."""
        if not self.message:
            self.message = (
                f"{self.name} is not unitary: |U*U - I| = {self.residual:.3e} "
                f"exceeds {self.tolerance:.1e}"
            )
        if self.code == 0:
            self.code = ERROR_NOT_UNITARY
        self.context.update(
            {"residual": self.residual, "tolerance": self.tolerance, "name": self.name}
        )


@dataclass
class OrientationMismatchError(NumericsError):
    """Raised when two real orthogonal matrices lie in different components of O(d)."""

    det_start: float = 0.0
    det_end: float = 0.0

    def __post_init__(self) -> None:
        """Set defaults after dataclass init."""
        if not self.message:
            self.message = (
                f"Orthogonal matrices have opposite orientation "
                f"(det {self.det_start:+.0f} vs {self.det_end:+.0f})"
            )
        if self.code == 0:
            self.code = ERROR_ORIENTATION_MISMATCH
        if not self.suggestion:
            self.suggestion = "Only SO(d) is connected; flip one column to match determinants"
        self.context.update({"det_start": self.det_start, "det_end": self.det_end})


@dataclass
class NotOrthonormalError(NumericsError):
    """Raised when columns offered for completion are not orthonormal."""

    residual: float = 0.0
    tolerance: float = 0.0

    def __post_init__(self) -> None:
        """Set defaults after dataclass init."""
        if not self.message:
            self.message = (
                f"Columns are not orthonormal: |V*V - I| = {self.residual:.3e} "
                f"exceeds {self.tolerance:.1e}"
            )
        if self.code == 0:
            self.code = ERROR_NOT_ORTHONORMAL
        self.context.update({"residual": self.residual, "tolerance": self.tolerance})


# =============================================================================
# Eigensteps Errors
# =============================================================================


@dataclass
class EigenstepsError(FuntfError):
    """Base class for eigensteps table errors."""


@dataclass
class InvalidTableError(EigenstepsError):
    """
    Raised when an eigensteps table violates the defining conditions.

    Attributes:
        violations: Short descriptions of the failed conditions
    """

    violations: list[str] = field(default_factory=list)

    def __post_init__(self) -> None:
        """Set defaults after dataclass init."""
        if not self.message:
            shown = "; ".join(self.violations[:3])
            more = f" (+{len(self.violations) - 3} more)" if len(self.violations) > 3 else ""
            self.message = f"Invalid eigensteps table: {shown}{more}"
        if self.code == 0:
            self.code = ERROR_INVALID_TABLE
        if not self.suggestion:
            self.suggestion = "Run `funtf eigensteps` on a FUNTF to obtain a valid table"
        self.context["violations"] = self.violations


@dataclass
class DimensionMismatchError(EigenstepsError):
    """Raised when two objects disagree on (N, d) or matrix shape."""

    expected: tuple[int, ...] = ()
    actual: tuple[int, ...] = ()
    what: str = "shape"

    def __post_init__(self) -> None:
        """Set defaults after dataclass init."""
        if not self.message:
            self.message = f"Dimension mismatch in {self.what}: expected {self.expected}, got {self.actual}"
        if self.code == 0:
            self.code = ERROR_DIMENSION_MISMATCH
        self.context.update(
            {"expected": list(self.expected), "actual": list(self.actual), "what": self.what}
        )


@dataclass
class EmptyInteriorError(EigenstepsError):
    """Raised when the eigensteps polytope has no interior (N < d + 2)."""

    N: int = 0
    d: int = 0

    def __post_init__(self) -> None:
        """Set defaults after dataclass init."""
        if not self.message:
            self.message = (
                f"The eigensteps polytope for N={self.N}, d={self.d} has empty interior"
            )
        if self.code == 0:
            self.code = ERROR_EMPTY_INTERIOR
        if not self.suggestion:
            self.suggestion = "Interior points exist only when N >= d + 2"
        self.context.update({"N": self.N, "d": self.d})


# =============================================================================
# Frame Errors
# =============================================================================


@dataclass
class FrameError(FuntfError):
    """Base class for frame structure errors."""


@dataclass
class NotFUNTFError(FrameError):
    """Raised when a frame is required to be a FUNTF and is not."""

    unit_norm_resid: float = 0.0
    tightness_resid: float = 0.0
    tolerance: float = 0.0

    def __post_init__(self) -> None:
        """Set defaults after dataclass init."""
        if not self.message:
            self.message = (
                f"Frame is not a FUNTF (unit-norm residual {self.unit_norm_resid:.3e}, "
                f"tightness residual {self.tightness_resid:.3e}, tol {self.tolerance:.1e})"
            )
        if self.code == 0:
            self.code = ERROR_NOT_FUNTF
        if not self.suggestion:
            self.suggestion = "Check with `funtf verify`"
        self.context.update({
            "unit_norm_resid": self.unit_norm_resid,
            "tightness_resid": self.tightness_resid,
            "tolerance": self.tolerance,
        })


@dataclass
class NoComplementError(FrameError):
    """Raised when a Naimark complement is requested for N = d."""

    N: int = 0
    d: int = 0

    def __post_init__(self) -> None:
        """Set defaults after dataclass init."""
        if not self.message:
            self.message = f"No Naimark complement exists for N = d = {self.d}"
        if self.code == 0:
            self.code = ERROR_NO_COMPLEMENT
        self.context.update({"N": self.N, "d": self.d})


@dataclass
class TooLargeError(FrameError):
    """Raised when a subset enumeration would exceed its budget."""

    required: int = 0
    budget: int = 0

    def __post_init__(self) -> None:
        """Set defaults after dataclass init."""
        if not self.message:
            self.message = (
                f"Subset enumeration needs {self.required} checks, budget is {self.budget}"
            )
        if self.code == 0:
            self.code = ERROR_TOO_LARGE
        if not self.suggestion:
            self.suggestion = "Raise the budget explicitly or use a smaller frame"
        self.context.update({"required": self.required, "budget": self.budget})


@dataclass
class NotAPermutationError(FrameError):
    """Raised when a sequence is not a bijection on range(N)."""

    sigma: list[int] = field(default_factory=list)
    N: int = 0

    def __post_init__(self) -> None:
        """Set defaults after dataclass init."""
        if not self.message:
            self.message = f"{self.sigma} is not a permutation of 0..{self.N - 1}"
        if self.code == 0:
            self.code = ERROR_NOT_A_PERMUTATION
        self.context.update({"sigma": self.sigma, "N": self.N})


@dataclass
class FrameIsODError(FrameError):
    """Raised when an operation needs a NOD frame and receives an OD one."""

    components: list[list[int]] = field(default_factory=list)

    def __post_init__(self) -> None:
        """Set defaults after dataclass init."""
        if not self.message:
            self.message = "Frame is orthodecomposable"
        if self.code == 0:
            self.code = ERROR_FRAME_IS_OD
        self.context["components"] = self.components


@dataclass
class NotODError(FrameError):
    """Raised when od_perturb receives a frame that is already NOD."""

    def __post_init__(self) -> None:
        """Set defaults after dataclass init."""
        if not self.message:
            self.message = "Frame is already NOD; nothing to perturb"
        if self.code == 0:
            self.code = ERROR_NOT_OD


@dataclass
class FileFormatError(FrameError):
    """Raised when a frame or eigensteps file cannot be parsed."""

    path: str = ""
    reason: str = ""

    def __post_init__(self) -> None:
        """Set defaults after dataclass init."""
        if not self.message:
            self.message = f"Malformed file {self.path}: {self.reason}"
        if self.code == 0:
            self.code = ERROR_FILE_FORMAT
        self.context.update({"path": self.path, "reason": self.reason})


# =============================================================================
# Lifting Errors
# =============================================================================


@dataclass
class LiftingError(FuntfError):
    """Base class for synthesis and lifting errors."""


@dataclass
class VanishingDenominatorError(LiftingError):
    """Raised when a v/w/W denominator vanishes at a direct evaluation."""

    step: int = 0
    quantity: str = ""
    value: float = 0.0

    def __post_init__(self) -> None:
        """Set defaults after dataclass init."""
        if not self.message:
            self.message = (
                f"Vanishing denominator in {self.quantity} at step {self.step} "
                f"(|value| = {abs(self.value):.3e})"
            )
        if self.code == 0:
            self.code = ERROR_VANISHING_DENOMINATOR
        if not self.suggestion:
            self.suggestion = "Evaluate the endpoint with eval_vwW_limit"
        self.context.update({"step": self.step, "quantity": self.quantity, "value": self.value})


@dataclass
class NegativeRadicandError(LiftingError):
    """Raised when a squared coordinate comes out negative beyond tolerance."""

    step: int = 0
    quantity: str = ""
    value: float = 0.0

    def __post_init__(self) -> None:
        """Set defaults after dataclass init."""
        if not self.message:
            self.message = f"Negative radicand {self.value:.3e} for {self.quantity} at step {self.step}"
        if self.code == 0:
            self.code = ERROR_NEGATIVE_RADICAND
        self.context.update({"step": self.step, "quantity": self.quantity, "value": self.value})


@dataclass
class NoncancellingPowersError(LiftingError):
    """Raised when a limit expression has more vanishing factors below than above."""

    step: int = 0
    quantity: str = ""
    order: float = 0.0

    def __post_init__(self) -> None:
        """Set defaults after dataclass init."""
        if not self.message:
            self.message = (
                f"(1-t) powers do not cancel in {self.quantity} at step {self.step} "
                f"(net order {self.order:g})"
            )
        if self.code == 0:
            self.code = ERROR_NONCANCELLING_POWERS
        if not self.suggestion:
            self.suggestion = "The start of the lift must have interior eigensteps"
        self.context.update({"step": self.step, "quantity": self.quantity, "order": self.order})


@dataclass
class DegenerateSpectraError(LiftingError):
    """Raised when base data is requested for a frame whose eigensteps are on the boundary."""

    def __post_init__(self) -> None:
        """Set defaults after dataclass init."""
        if not self.message:
            self.message = "Frame eigensteps are not interior"
        if self.code == 0:
            self.code = ERROR_DEGENERATE_SPECTRA
        if not self.suggestion:
            self.suggestion = "Move the frame along a lifted path to interior eigensteps first"


@dataclass
class NotInteriorError(LiftingError):
    """Raised when a path lift starts from boundary eigensteps."""

    def __post_init__(self) -> None:
        """Set defaults after dataclass init."""
        if not self.message:
            self.message = "Lift start has boundary eigensteps"
        if self.code == 0:
            self.code = ERROR_NOT_INTERIOR
        if not self.suggestion:
            self.suggestion = "Use `funtf connect`, which re-routes through an interior anchor"


@dataclass
class EigenstepsMismatchError(LiftingError):
    """Raised when two frames in a fiber path do not share eigensteps."""

    deviation: float = 0.0
    tolerance: float = 0.0

    def __post_init__(self) -> None:
        """Set defaults after dataclass init."""
        if not self.message:
            self.message = (
                f"Frames have different eigensteps (max deviation {self.deviation:.3e}, "
                f"tol {self.tolerance:.1e})"
            )
        if self.code == 0:
            self.code = ERROR_EIGENSTEPS_MISMATCH
        self.context.update({"deviation": self.deviation, "tolerance": self.tolerance})


@dataclass
class OrientationObstructionError(LiftingError):
    """Raised when real base data of two frames lie in different orientation classes."""

    block: str = ""

    def __post_init__(self) -> None:
        """Set defaults after dataclass init."""
        if not self.message:
            self.message = f"Real fiber path blocked by an orientation flip in {self.block}"
        if self.code == 0:
            self.code = ERROR_ORIENTATION_OBSTRUCTION
        if not self.suggestion:
            self.suggestion = "Use the real motion primitives (swap, negate) instead"
        self.context["block"] = self.block


@dataclass
class InvalidBaseDataError(LiftingError):
    """Raised when base data is not unitary or not block-diagonal for the table."""

    step: int = 0
    reason: str = ""

    def __post_init__(self) -> None:
        """Set defaults after dataclass init."""
        if not self.message:
            self.message = f"Invalid base data at step {self.step}: {self.reason}"
        if self.code == 0:
            self.code = ERROR_INVALID_BASE_DATA
        self.context.update({"step": self.step, "reason": self.reason})


# =============================================================================
# Motion Errors
# =============================================================================


@dataclass
class MotionError(FuntfError):
    """Base class for frame-motion errors."""


@dataclass
class NotTightOnSpanError(MotionError):
    """Raised when a spun subframe is not tight for its span."""

    residual: float = 0.0

    def __post_init__(self) -> None:
        """Set defaults after dataclass init."""
        if not self.message:
            self.message = f"Selected subframe is not tight on its span (residual {self.residual:.3e})"
        if self.code == 0:
            self.code = ERROR_NOT_TIGHT_ON_SPAN
        self.context["residual"] = self.residual


@dataclass
class RotationLeaksSubspaceError(MotionError):
    """Raised when a rotation does not map the spun subspace to itself."""

    t: float = 0.0
    leak: float = 0.0

    def __post_init__(self) -> None:
        """Set defaults after dataclass init."""
        if not self.message:
            self.message = f"Rotation leaks out of the subspace at t={self.t:.4f} (leak {self.leak:.3e})"
        if self.code == 0:
            self.code = ERROR_ROTATION_LEAKS_SUBSPACE
        self.context.update({"t": self.t, "leak": self.leak})


@dataclass
class NotTwoONBsError(MotionError):
    """Raised when a frame cannot be split into two orthonormal bases."""

    def __post_init__(self) -> None:
        """Set defaults after dataclass init."""
        if not self.message:
            self.message = "Frame is not a union of two orthonormal bases"
        if self.code == 0:
            self.code = ERROR_NOT_TWO_ONBS


@dataclass
class MissingChaperoneError(MotionError):
    """Raised when a same-block swap is requested without a chaperone."""

    i: int = 0
    j: int = 0

    def __post_init__(self) -> None:
        """Set defaults after dataclass init."""
        if not self.message:
            self.message = f"Columns {self.i} and {self.j} share a basis; a chaperone is required"
        if self.code == 0:
            self.code = ERROR_MISSING_CHAPERONE
        if not self.suggestion:
            self.suggestion = "Pass a column index from the other basis as chaperone"
        self.context.update({"i": self.i, "j": self.j})


@dataclass
class SameSubframeError(MotionError):
    """Raised when the target and the chaperone belong to the same tight subframe."""

    target: int = 0
    chaperone: int = 0

    def __post_init__(self) -> None:
        """Set defaults after dataclass init."""
        if not self.message:
            self.message = (
                f"Target {self.target} and chaperone {self.chaperone} are in the same tight subframe"
            )
        if self.code == 0:
            self.code = ERROR_SAME_SUBFRAME
        self.context.update({"target": self.target, "chaperone": self.chaperone})


@dataclass
class NotTightError(MotionError):
    """Raised when a frame has no split into two spanning tight subframes."""

    def __post_init__(self) -> None:
        """Set defaults after dataclass init."""
        if not self.message:
            self.message = "Frame does not split into two spanning tight subframes"
        if self.code == 0:
            self.code = ERROR_NOT_TIGHT


@dataclass
class NotSimplexError(MotionError):
    """Raised when a matrix offered as a simplex is not a FUNTF of d vectors in d-1 dimensions."""

    name: str = "H"

    def __post_init__(self) -> None:
        """Set defaults after dataclass init."""
        if not self.message:
            self.message = f"{self.name} is not a simplex"
        if self.code == 0:
            self.code = ERROR_NOT_SIMPLEX
        self.context["name"] = self.name


@dataclass
class DegenerateAlignmentError(MotionError):
    """Raised when the morph nondegeneracy condition fails."""

    index: int = 0
    value: float = 0.0

    def __post_init__(self) -> None:
        """Set defaults after dataclass init."""
        if not self.message:
            self.message = (
                f"Morph nondegeneracy fails at column {self.index} (value {self.value:.3e})"
            )
        if self.code == 0:
            self.code = ERROR_DEGENERATE_ALIGNMENT
        if not self.suggestion:
            self.suggestion = "Pre-rotate H' with align_simplex"
        self.context.update({"index": self.index, "value": self.value})


@dataclass
class BadSubframeError(MotionError):
    """Raised when the small frame of the two-basis construction has the wrong shape."""

    expected: tuple[int, int] = (0, 0)
    actual: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        """Set defaults after dataclass init."""
        if not self.message:
            self.message = (
                f"Subframe must be a FUNTF of shape {self.expected}, got {self.actual}"
            )
        if self.code == 0:
            self.code = ERROR_BAD_SUBFRAME
        self.context.update({"expected": list(self.expected), "actual": list(self.actual)})


# =============================================================================
# Command Errors
# =============================================================================


@dataclass
class CommandError(FuntfError):
    """Base class for refusals raised by the orchestration layer."""


@dataclass
class FieldUnsupportedError(CommandError):
    """Raised when a command does not support the requested field."""

    field_name: str = ""
    command: str = ""

    def __post_init__(self) -> None:
        """Set defaults after dataclass init."""
        if not self.message:
            self.message = f"`{self.command}` does not support {self.field_name} frames"
        if self.code == 0:
            self.code = ERROR_FIELD_UNSUPPORTED
        if not self.suggestion:
            self.suggestion = "Real frames are connected with `funtf swap`, `funtf negate` and `funtf morph`"
        self.context.update({"field": self.field_name, "command": self.command})


@dataclass
class EndpointODError(CommandError):
    """Raised when connect-nod receives an orthodecomposable endpoint."""

    endpoint: str = ""

    def __post_init__(self) -> None:
        """Set defaults after dataclass init."""
        if not self.message:
            self.message = f"Endpoint {self.endpoint} is orthodecomposable"
        if self.code == 0:
            self.code = ERROR_ENDPOINT_OD
        if not self.suggestion:
            self.suggestion = "Perturb it first with `funtf od --perturb DELTA`"
        self.context["endpoint"] = self.endpoint


@dataclass
class NoNODStartError(CommandError):
    """Raised when connect-nod finds no random start interior in both column orders."""

    endpoint: str = ""
    attempts: int = 0

    def __post_init__(self) -> None:
        """Set defaults after dataclass init."""
        if not self.message:
            self.message = (
                f"No interior start found for endpoint {self.endpoint} "
                f"after {self.attempts} draws"
            )
        if self.code == 0:
            self.code = ERROR_NO_NOD_START
        if not self.suggestion:
            self.suggestion = "Retry with another --seed"
        self.context.update({"endpoint": self.endpoint, "attempts": self.attempts})
