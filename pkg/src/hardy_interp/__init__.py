"""Outer-function interpolation, inner-factor diagnostics and model-space
range tests on the unit disk."""
__version__ = "0.1.0"

from .kernels import BACKEND  # noqa: E402
from .disk_geometry import PointSequence, SeparationReport, pseudo_hyperbolic, separation_delta  # noqa: E402
from .boundary_calculus import (  # noqa: E402
    BoundaryFunction,
    WeightProfile,
    a_h,
    conjugate_function,
    hl_pairing_check,
    herglotz_eval,
    poisson_eval,
    rearrange_decreasing,
)
from .hardy_functions import (  # noqa: E402
    ClosedForm,
    Constant,
    HardyFunction,
    InnerFunction,
    InnerSpec,
    OuterFunction,
    outer_deficit,
    outer_from_log_modulus,
    power_fn,
    power_outer,
)
from .interpolation import (  # noqa: E402
    TargetSequence,
    circle_interpolate,
    exact_decay_interpolate,
    gap_power_interpolate,
    growth_interpolate,
    outer_interpolate_bounded_below,
    pick_matrix,
    schur_interpolate,
    transfer_ratio,
)
from .obstructions import (  # noqa: E402
    classify_decay,
    inner_liminf_check,
    mtone_envelope,
    radial_outer_decay_check,
    zero_free_envelope_check,
)
from .model_space import (  # noqa: E402
    CoefficientSequence,
    cauchy_kernel,
    density_demo,
    membership_tests,
    range_description_check,
    sufficient_class_check,
    toeplitz_apply,
)
