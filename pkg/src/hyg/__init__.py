"""Harmonic analysis on finite commutative hypergroups and Hausdorff-Young extremizers."""

__version__ = "0.1.0"

from .core import (
    FiniteHypergroup,
    ValidationReport,
    center,
    convolve_functions,
    convolve_measures,
    generated_subhypergroup,
    haar,
    hypergroup_from_array,
    hypergroup_from_terms,
    indicator,
    make_hypergroup,
    set_convolve,
    subhypergroups,
    translate,
    validate,
)
from .constructors import (
    GroupTable,
    conjugacy_class_hypergroup,
    cyclic_group,
    direct_product,
    examples_registry,
    from_group,
    join,
    symmetric_group,
    two_element,
)
from .errors import (
    AxiomError,
    CertificateInconsistency,
    DomainError,
    HypergroupError,
    SearchFailure,
    SpectralError,
    StructuralError,
)
from .extremal import (
    EqualityCertificate,
    SearchConfig,
    best_constant_search,
    equality_certificate,
    structured_scan,
    translate_span_dim,
)
from .spectral import DualObject, annihilator, dual, measure_fourier, plancherel_weights
from .transform import (
    ExponentPair,
    complexify,
    f_star,
    fourier,
    holder_equality_check,
    hy_ratio,
    inverse_fourier,
    lp_norm,
    omega,
)
