"""darbouxkit: numerical verification of curve frames on parametric surfaces,
rectifying position decompositions, and transfer identities across isometries."""

from .numerics import (
    ClassMismatchError,
    ConfigError,
    CurvatureDegenerateError,
    DEFAULT_POLICY,
    DegeneratePatchError,
    DomainError,
    FixtureError,
    IdentityDeviationError,
    NonRectifyingError,
    NotIsometricError,
    TolerancePolicy,
    ToolkitError,
    cross,
    diff,
    dot,
    norm,
    normalize,
    vec3,
)
from .surfaces import (
    CATALOG_NAMES,
    FundamentalForm,
    RegularityReport,
    SurfacePatch,
    catalog,
    check_domain,
    first_form,
    partials,
    regularity_report,
    second_partials,
    uniform_grid,
    unit_normal,
)
from .frames import (
    CURVE_FIXTURE_NAMES,
    DarbouxFrame,
    FrameRelationReport,
    FrenetFrame,
    SurfaceCurve,
    UnitSpeedReport,
    acceleration,
    arc_length_reparam,
    curve_fixture,
    curve_from_series,
    darboux,
    embed,
    frame_relation_check,
    frenet,
    s_grid,
    unit_speed_check,
    velocity,
)
from .rectifying import (
    CurveClass,
    RectifyingDecomposition,
    RectifyingSummary,
    chart_components_closed_form,
    classify,
    component_P,
    component_chart,
    component_normal,
    component_tangent,
    decompose,
    fixture_rectifying,
    reconstruct,
    rectifying_summary,
)
from .isometry import (
    GeodesicPreservationReport,
    IsometryPair,
    MetricDeviation,
    PAIR_NAMES,
    PushforwardVector,
    canonical_transfer_curves,
    geodesic_preservation_check,
    heatmap_rows,
    metric_deviation,
    pair_catalog,
    pushforward,
    transfer_curve,
)
from .theorems import (
    CurvePair,
    HypothesisReport,
    SampleRow,
    THEOREM_FIXTURE_NAMES,
    THEOREM_IDS,
    TheoremReport,
    check_T3_1,
    check_T3_3,
    check_T3_5,
    check_T3_7,
    check_kn_zero_variants,
    check_note,
    default_coefficients,
    fixture_search,
    hypotheses,
    run_all,
    theorem_fixture,
)

__version__ = "0.1.0"
