"""Discrete solar-tracking schedules over step-function irradiance profiles."""

from .errors import (
    HeliotrackError,
    InstanceTooLargeError,
    InternalInconsistencyError,
    NoFeasibleIntervalError,
    NotUnimodalError,
    ValidationError,
)
from .mec import (
    MECSolution,
    csp_track_gain,
    emit_schedule,
    greedy_baseline,
    solve_mec,
    solve_mec_unimodal,
)
from .mtm import MTMQuery, MTMSolution, solve_mtm
from .stepfn import (
    GainProfile,
    Interval,
    Solution,
    StepFunction,
    gain,
    gain_profile,
    is_unimodal,
    local_maxima,
    max_gain_window,
    quantize,
    total_gain,
)

__version__ = "0.1.0"
