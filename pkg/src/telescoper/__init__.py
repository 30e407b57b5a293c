"""Creative telescoping for bivariate hyperexponential terms.

Exact computation of telescoping relations (telescoper + certificate) via
shaped ansatz linear systems, the order/degree trade-off curves that
predict where relations exist, optimizers over those curves, and the
application to differential equations for algebraic power series.
"""

from .polyarith import (
    BiPoly,
    MINUS_INFINITY,
    ParseError,
    Rat,
    RatFun,
    degree,
    exact_div,
    gcd_poly,
    leading_coeff,
    parse_poly,
    poly_str,
    rf_diff,
    rf_normalize,
    squarefree_part,
)
from .hyperexp import (
    GreekParams,
    HyperexpTerm,
    NumeratorProfile,
    TermError,
    derivative_quotient,
    dlog,
    greek_params,
    lifted_numerator,
    numerator_profile,
    validate,
)
from .ansatz import (
    AnsatzShape,
    CertificateShape,
    CoupledTerm,
    LinearSystem,
    ShapeError,
    build_system,
    certificate_shape,
    count,
    optimal_w,
    telescoper_shape,
    w_range,
)
from .exactsolve import NullspaceBasis, QMatrix, nullspace, solution_with_nonzero_block
from .telescope import (
    RegionReport,
    TelescopingRelation,
    feasible,
    minimal_order_relation,
    region_scan,
    scalar_equivalent,
    telescope_at,
    verify_relation,
)
from .bounds import (
    BoundCurve,
    MetricReport,
    algebraic_size_formulas,
    asymptotic_choice,
    curve,
    degree_for_order,
    extremal_corollary,
    metrics,
    optimize_metric,
)
from .algebraic import (
    AlgebraicInput,
    TruncatedSeries,
    annihilates,
    apply_operator,
    series_solve,
    to_hyperexp,
)

__version__ = "0.1.0"
