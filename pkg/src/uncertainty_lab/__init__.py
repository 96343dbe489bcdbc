"""Numerical checks of pairwise and three-observable uncertainty relations."""
from .errors import (
    DegenerateError,
    DimensionError,
    NumericalError,
    PreconditionError,
    UncertaintyLabError,
)
from .hilbert import (
    DEFAULT_TOL,
    PsdVerdict,
    gram_matrix,
    inner_product,
    linear_dependence_check,
    normalize,
    principal_minor,
    psd_check,
    quadratic_form,
)
from .instances import Instance, load_instance, save_instance
from .moments import (
    MomentSet,
    NormalizedCorrelations,
    RJDecomposition,
    center_observable,
    correlator,
    dispersion,
    moments_from_density,
    moments_from_state,
    normalized_correlations,
    rj_split,
)
from .relations import (
    RelationReport,
    RhoSigmaPoint,
    cauchy_pair,
    forbidden_region_check,
    gci_triple,
    gur_n,
    gur_normalized,
    gur_raw,
    gur_weakened,
    heisenberg_pair,
    orthogonal_special,
    rho_sigma_point,
    schroedinger_pair,
)

__version__ = "0.1.0"
