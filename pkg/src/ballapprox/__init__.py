"""Best approximation by members of the compact-operator unit ball.

Exact distances, optimal approximants, and independent verification
oracles for structured operator families on l2 and l1, plus radial
projections of scaled extreme points in finite-dimensional balls.
"""

from .extreme import (
    NormedSpacePoint,
    ProjectionReport,
    Space,
    is_extreme,
    project_scalar_multiple,
    verify_unique_projection,
)
from .hilbert import (
    best_ball_approx_h,
    dist_ball_h,
    isometry_distance_check,
    positive_ball_approx,
    soft_threshold_approx,
)
from .jacobi import NumericError, jacobi_singular_values, jacobi_svd
from .l1 import best_ball_approx_l1, dist_ball_l1, finite_column_oracle, truncate_column
from .models import (
    BallApproxResult,
    Branch,
    Certificate,
    HilbertOperator,
    L1Operator,
    Shape,
    TailKind,
    TailRule,
    ValidationError,
    attains_norm,
    ball_distance,
    ess_norm,
    finite_section,
    op_norm,
    residual_norm,
    scale,
)
from .oracles import (
    CertificationError,
    SearchReport,
    competitor_search,
    finite_section_bounds,
    svd_clip_oracle,
)

__version__ = "0.1.0"

__all__ = [
    "BallApproxResult",
    "Branch",
    "Certificate",
    "CertificationError",
    "HilbertOperator",
    "L1Operator",
    "NormedSpacePoint",
    "NumericError",
    "ProjectionReport",
    "SearchReport",
    "Shape",
    "Space",
    "TailKind",
    "TailRule",
    "ValidationError",
    "attains_norm",
    "ball_distance",
    "best_ball_approx_h",
    "best_ball_approx_l1",
    "competitor_search",
    "dist_ball_h",
    "dist_ball_l1",
    "ess_norm",
    "finite_column_oracle",
    "finite_section",
    "finite_section_bounds",
    "is_extreme",
    "isometry_distance_check",
    "jacobi_singular_values",
    "jacobi_svd",
    "op_norm",
    "positive_ball_approx",
    "project_scalar_multiple",
    "residual_norm",
    "scale",
    "soft_threshold_approx",
    "svd_clip_oracle",
    "truncate_column",
    "verify_unique_projection",
]
