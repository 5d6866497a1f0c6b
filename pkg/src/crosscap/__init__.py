"""crosscap: combinatorial curves and 1-systems on non-orientable surfaces.

Surfaces are polygon gluing schemas, simple closed curves are cyclic chord
sequences with exact rational positions, and everything claimed about the
built families (crossing counts, sidedness, essentiality, pairwise
non-homotopy) is certified mechanically by exact combinatorics.
"""

from .schema import (
    FaceWord,
    SchemaError,
    SurfaceSchema,
    SurfaceType,
    boundary_cycles,
    classify_surface,
    connected_components,
    euler_characteristic,
    is_orientable,
    schema_from_words,
    standard_schema,
    validate_schema,
)
from .curve import (
    Chord,
    Curve,
    CurveError,
    CurveFamily,
    CurvePoint,
    GenericityError,
    cap_chain_curve,
    core_curve,
    crosscap_parity_profile,
    crosscap_passes,
    crossings,
    is_simple,
    mod2_intersection,
    sidedness,
    validate_curve,
)
from .cut import (
    CutResult,
    annulus_certificate,
    cut_along,
    cut_classification,
    is_essential,
    is_peripheral,
    orientable_after_cut,
)
from .construct import (
    ConstructionError,
    ConstructionState,
    DiscRegion,
    LevelTag,
    build_mrt,
    build_theorem_a,
    build_theorem_b,
    crosscap_step,
    glue_handles_with_meridians,
    mrt_base,
    mrt_shift_step,
    optimal_k_a,
    optimal_k_b,
    predicted_sizes,
    theorem_a_bound,
    theorem_b_bound,
)
from .verify import (
    BudgetExceeded,
    VerificationReport,
    enumerate_small_curves,
    expected_crossings,
    iter_small_curves,
    verify_construction,
    verify_one_system,
    verify_tagged_family,
)

__version__ = "0.1.0"
