"""Exact z-measures, matchings and zonal spherical functions of ``(S(2n), H(n))``."""
from .errors import CapacityError, LevelMismatchError, PoleError, ZMeasureError
from .groups import (
    CharacterTable,
    ClassFunctionOnCosets,
    SignedPermutation,
    act,
    character,
    character_table,
    check_cocycle_additivity,
    check_cocycle_stability,
    check_quasi_invariance,
    cocycle,
    coset_representative,
    coset_type,
    t_breve,
)
from .matchings import (
    CycleDecomposition,
    Matching,
    canonical_projection,
    check_ewens_normalization,
    check_pushforward,
    cycle_count,
    cycle_decomposition,
    enumerate_matchings,
    ewens_weight,
    parse_cycles,
    render_cycles,
    sample_matching,
    sample_matchings,
)
from .partitions import (
    dimension,
    enumerate_partitions,
    generalized_pochhammer,
    hook_length_product,
    hook_products,
    pochhammer,
    transpose,
)
from .reports import CheckReport, SuiteReport
from .scalar import ExactScalar, parse_scalar
from .spherical import (
    SphericalFunctionTable,
    check_decomposition,
    check_embedding_L,
    check_explicit_formula,
    check_reproducing_identity,
    check_zonal_orthogonality,
    explicit_zmeasure,
    spherical_function_phi,
    zmeasure_by_inner_product,
    zonal_spherical_table,
)
from .symfunc import (
    JackPolynomial,
    SymFunc,
    characteristic_map,
    check_generating_identity,
    convert_basis,
    jack_inner_product,
    jack_polynomial,
)
from .zmeasure import (
    MeasureTable,
    Plancherel,
    Series,
    ZMeasureParams,
    check_normalization,
    check_transposition_symmetry,
    classify_parameters,
    plancherel_table,
    plancherel_weight,
    sample_partitions,
    zmeasure_table,
    zmeasure_weight,
)

__version__ = "0.1.0"
