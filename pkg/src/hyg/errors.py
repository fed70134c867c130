"""Exception hierarchy shared by all modules."""


class HypergroupError(Exception):
    """Base class for every error raised by this package."""


class StructuralError(HypergroupError, ValueError):
    """Malformed input: wrong shapes, unknown names, missing convolution pairs."""


class AxiomError(HypergroupError):
    """A table is well formed but violates one of the hypergroup axioms."""

    def __init__(self, axiom, residual, witness=None):
        self.axiom = axiom
        self.residual = residual
        self.witness = witness
        msg = f"axiom {axiom} failed (residual {residual:.3g})"
        if witness is not None:
            msg += f" at {witness}"
        super().__init__(msg)


class DegenerateInputError(HypergroupError):
    """Haar invariance system has no unique strictly positive solution."""


class SizeCapError(HypergroupError):
    """Subset enumeration refused because the hypergroup is too large."""


class DomainError(HypergroupError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class SpectralError(HypergroupError):
    """Dual computation failed: missing characters or residuals above tolerance."""


class CertificateInconsistency(HypergroupError):
    """A function attains equality but does not decompose as the structure theorem says."""


class SearchFailure(HypergroupError):
    """Best-constant search stayed below its target; ``result`` holds the best iterate."""

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result
