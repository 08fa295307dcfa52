"""Exact order types of point tuples, motion-cost counting and planning,
cloud blow-ups, and good-rotation experiments."""

from .blowup import (
    BlowupReport,
    BlowupResult,
    CloudSpec,
    LowerBoundCertificate,
    build_blowup,
    choose_directions,
    lower_bound_certificate,
    match_directions,
    side_partition,
    verify_blowup,
)
from .errors import (
    DegenerateTupleError,
    DimensionMismatchError,
    EndpointRootError,
    InternalInvariantError,
    OrderMotionError,
    OrderTypeMismatchError,
    ParityError,
    PreconditionError,
    RetryBudgetError,
    ShapeMismatchError,
    ZeroPolynomialError,
)
from .geometry import (
    OrderType,
    PointTuple,
    RobustRadius,
    apply_linear_map,
    as_scalar,
    colex_rank,
    colex_subsets,
    hamming,
    is_general_position,
    mirror,
    order_type,
    orient,
    orientation_det,
    point_tuple,
    robust_radius,
)
from .motion import (
    MotionPlan,
    MotionSegment,
    certify_decay_scale,
    discretized_cost,
    even_parity_sign_vectors,
    linear_cost,
    perturb_general,
    plan_even_d,
    plan_odd_d,
    scale_tuple,
    scaling_segment,
    sign_rule_ledger,
    verify_zero_cost_map_path,
    verify_zero_cost_scaling,
)
from .pencil import (
    CoefficientDecayReport,
    CoefficientProfile,
    PencilPolynomial,
    build_pencil,
    certified_decay_eta,
    coefficient_decay_report,
    coefficient_profile,
    decay_intervals,
    decay_lambdas,
    localization_certified,
    sign_rule_flips,
)
from .polynomial import (
    RationalPolynomial,
    odd_multiplicity_part,
    poly_gcd,
    sign_change_count,
    square_free_decomposition,
    square_free_part,
    sturm_distinct_roots,
)
from .rotation import (
    AspectRatio,
    GoodnessSample,
    MeasureEstimate,
    Rotation,
    RotationCostReport,
    aspect_ratio,
    cyclic_vertex_rotation,
    eigen_margin,
    estimate_measure,
    haar_rotation,
    is_good,
    non_elongated,
    pick_rho,
    regular_simplex,
    rotation_2d,
    rotation_cost_experiment,
    rotation_path_samples,
    simplex_motion_constant,
    triple_aspect_squares,
    tuple_to_array,
)

__version__ = "0.1.0"
