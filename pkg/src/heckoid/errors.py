"""Exception hierarchy; the CLI maps these onto exit codes."""


class HeckoidError(Exception):
    """Base class for all package errors."""

    code = "error"


class DomainError(HeckoidError):
    """Input outside the range a theorem covers (exit code 1)."""

    code = "domain_error"


class DegenerateDomain(DomainError):
    code = "degenerate_domain"


class OddIndexUnsupported(DomainError):
    code = "odd_index_unsupported"


class NotDecomposable(DomainError):
    code = "not_decomposable"


class IterationCapExceeded(HeckoidError):
    """Reduction failed to terminate; always a bug, never bad input."""

    code = "iteration_cap_exceeded"


class NumericalError(HeckoidError):
    """Floating point stage failed (exit code 3)."""

    code = "numerical_error"


class RootFindingFailed(NumericalError):
    code = "root_finding_failed"


class NoGeometricCandidate(NumericalError):
    code = "no_geometric_candidate"

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = list(diagnostics or [])
