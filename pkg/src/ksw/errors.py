"""Exception hierarchy for the workbench.

Every failure mode named in a module contract gets its own class so callers
(and the CLI) can map violations to exit codes without string matching.
"""


class WorkbenchError(Exception):
    """Base class for all workbench errors."""


# --- linear algebra ---------------------------------------------------------

class Singular(WorkbenchError):
    """Matrix inversion requested on a rank-deficient matrix."""


# --- quadratic spaces -------------------------------------------------------

class NotSymmetric(WorkbenchError):
    """Gram matrix is not symmetric."""


class Degenerate(WorkbenchError):
    """Quadratic form has zero determinant."""


# --- Clifford algebra -------------------------------------------------------

class SpaceMismatch(WorkbenchError):
    """Operands live over different quadratic spaces."""


class ParityViolation(WorkbenchError):
    """Graded-operator request incompatible with the element's parity."""


class CapExceeded(WorkbenchError):
    """Requested dimension exceeds the configured desk-scale cap."""


# --- periods and Hodge data -------------------------------------------------

class NotOrthogonal(WorkbenchError):
    """Period vectors are not orthogonal for the form."""


class UnequalNorm(WorkbenchError):
    """Period vectors have different norms."""


class NotPositive(WorkbenchError):
    """Period plane is not positive for the form."""


class DependentVectors(WorkbenchError):
    """Period vectors are linearly dependent."""


class InconsistentWeight(WorkbenchError):
    """Kernel ranks fail to partition the ambient space symmetrically."""


# --- Kuga-Satake structures -------------------------------------------------

class CommutatorViolation(WorkbenchError):
    """A structure commutation identity failed; the message names it."""


class NullReference(WorkbenchError):
    """Reference vector has vanishing norm."""


# --- quadratic endomorphisms ------------------------------------------------

class NotQuadratic(WorkbenchError):
    """phi^2 is not -d times the identity for a positive rational d."""


class NonScalarSquare(WorkbenchError):
    """phi^2 is not a scalar matrix."""


class NotCommutingWithJ(WorkbenchError):
    """Candidate endomorphism does not commute with the complex structure."""


class UnexpectedDimension(WorkbenchError):
    """A subspace came out with a dimension the theory forbids."""


# --- symmetric powers -------------------------------------------------------

class DecompositionFailure(WorkbenchError):
    """Harmonic blocks failed to span; signals an arithmetic bug."""


class NotApplicable(WorkbenchError):
    """Check requires rational isotropic vectors and the form has none."""


class LevelMismatch(WorkbenchError):
    """Level-filtration kernel and multiplication image disagree."""


# --- Betti audits -----------------------------------------------------------

class TooSmall(WorkbenchError):
    """Input below the range the bound formulas cover."""


class MissingHypothesisData(WorkbenchError):
    """Catalog entry lacks the vanishing flag the audit hypothesis needs."""


# --- formal correspondence --------------------------------------------------

class IndexOutOfRange(WorkbenchError, IndexError):
    """Generator index outside the configured range."""


# --- CLI --------------------------------------------------------------------

class UsageError(WorkbenchError):
    """Malformed input; mapped to exit code 2."""
