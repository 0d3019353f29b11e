"""Bivariate Bernstein-Szasz-Stancu positive linear operators.

Numerical toolkit for a family of bivariate positive linear operators built
from Bernstein weights in x and Poisson (Szasz) weights in y at shifted
nodes, together with estimators and checkers for their approximation-rate
bounds on compact rectangles and in polynomially weighted spaces.
"""

__version__ = "0.1.0"

from .basis import (
    DEFAULT_POLICY,
    DomainError,
    TruncationError,
    TruncationPolicy,
    WeightVector,
    bernstein_weights,
    szasz_weights,
)
from .operators import (
    CompactRegion,
    Function2D,
    KernelFamily,
    MomentSet,
    Point2D,
    StancuParams,
    apply,
    apply_1d_bernstein,
    apply_1d_stancu,
    apply_1d_szasz,
    apply_on_grid,
    korovkin_gaps,
    moments_closed_form,
    second_central_moment,
    second_central_moment_grid,
    stancu_node,
)
from .moduli import (
    LipschitzWitness,
    ModulusEstimate,
    full_modulus,
    lipschitz_ratio,
    modulus_subadditivity_check,
    partial_moduli,
    weighted_modulus,
)
from .bounds import (
    DeltaTriple,
    beta_func,
    beta_func_loggamma,
    check_theorem_3_3,
    corollary_3_4_bound,
    corollary_3_5_bound,
    deltas,
    sup_distance_power_operator,
    sup_error_on_grid,
    theorem_4_1_bound,
)
from .reporting import BoundReport
from .taylor import (
    DirectionalFrame,
    PartialDerivativeSet,
    apply_rth,
    directional_rth_derivative,
    f_rth_lipschitz_estimate,
    finite_difference_derivs,
    taylor_poly,
)
from .weighted import (
    TruncatedStrip,
    WeightSpec,
    check_theorem_5_2,
    check_theorem_5_3,
    operator_rho_norm_bound,
    weighted_norm,
)
from .corpus import CorpusEntry, CorpusLookupError, corpus_lookup, corpus_names
