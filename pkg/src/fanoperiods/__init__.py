"""Exact mirror-symmetry computations for Fano manifolds.

Classical periods of Laurent polynomials, Picard-Fuchs operator fitting,
reflexive polytopes and the Minkowski ansatz, ramification analysis of
Fuchsian operators, and quantum periods of toric Fano manifolds.
"""

__version__ = "0.1.0"

from .laurent import (  # noqa: F401
    LaurentPolynomial,
    PeriodSequence,
    constant_term,
    kernel_in_use,
    multiply,
    parse_polynomial,
    format_polynomial,
    parse_period,
    format_period,
    period_sequence,
)
from .polytope import (  # noqa: F401
    AffineLattice,
    Face,
    LatticePolytope,
    MinkowskiDecomposition,
    affine_lattice,
    lattice_minkowski_decompositions,
    minkowski_sum,
    parse_polytope,
    format_polytope,
)
from .minkowski import (  # noqa: F401
    AnsatzResult,
    EdgeTermSpec,
    boundary_polynomial,
    edge_term,
    face_terms,
    minkowski_polynomials,
)
from .pf import (  # noqa: F401
    DifferentialOperator,
    FitConfig,
    ZeroTypeReport,
    apply_operator,
    extend_sequence,
    fit_operator,
    format_operator,
    operator_at_zero,
    parse_operator,
)
from .fuchs import (  # noqa: F401
    LocalData,
    RamificationReport,
    SingularPlace,
    indicial_data,
    invariant_dimension,
    ramification_report,
    singular_places,
)
from .quantum import (  # noqa: F401
    BundleData,
    MatchVerdict,
    QuantumMatrix,
    ToricData,
    ci_quantum_period,
    format_toric,
    matrix_quantum_period,
    mirror_match,
    parse_quantum_matrix,
    parse_toric,
    regularize,
    toric_quantum_period,
)
from .survey import (  # noqa: F401
    SurveyConfig,
    SurveyRecord,
    SurveyStore,
    run_survey,
    survey_polytope,
)
