"""Near-field channel gain of discrete and continuous antenna arrays,
including the reactive (evanescent-wave) field terms."""

from .closed_forms import (
    AsymptoticGain,
    cap_asymptotic,
    ratio_spd,
    ratio_spd_threshold,
    ula_asymptotic,
    ula_gain_closed,
    upa_asymptotic,
)
from .config import ScenarioConfig, dump_config, load_config
from .discrete import GainBreakdown, far_field_gain, gain_breakdown, spd_gain_sum
from .disk_bounds import (
    DiskBounds,
    SandwichCheck,
    disk_integral,
    integral_limit,
    sandwich_check,
)
from .geometry import (
    CapAperture,
    DirectionCosines,
    Medium,
    Region,
    SpdArray,
    UserPosition,
    cap_region,
    direction_cosines,
    element_distance,
    spd_region,
)
from .kernels import (
    ReactiveKernelParams,
    f_n,
    green_magnitude_sq,
    kernel_base,
    radiating_kernel,
    reactive_kernel,
)
from .quadrature import (
    QuadratureResult,
    QuadratureSpec,
    cap_gain_integral,
    integrate_1d,
    integrate_2d,
    spd_gain_integral,
    ula_gain_1d,
)
from .sweeps import SweepRecord, aperture_sweep, elements_sweep, ratio_sweep
from .verify import CheckResult, run_verification

__version__ = "0.1.0"

__all__ = [
    "AsymptoticGain",
    "CapAperture",
    "CheckResult",
    "DirectionCosines",
    "DiskBounds",
    "GainBreakdown",
    "Medium",
    "QuadratureResult",
    "QuadratureSpec",
    "ReactiveKernelParams",
    "Region",
    "SandwichCheck",
    "ScenarioConfig",
    "SpdArray",
    "SweepRecord",
    "UserPosition",
    "aperture_sweep",
    "cap_asymptotic",
    "cap_gain_integral",
    "cap_region",
    "direction_cosines",
    "disk_integral",
    "dump_config",
    "element_distance",
    "elements_sweep",
    "f_n",
    "far_field_gain",
    "gain_breakdown",
    "green_magnitude_sq",
    "integral_limit",
    "integrate_1d",
    "integrate_2d",
    "kernel_base",
    "load_config",
    "radiating_kernel",
    "ratio_spd",
    "ratio_spd_threshold",
    "ratio_sweep",
    "reactive_kernel",
    "run_verification",
    "sandwich_check",
    "spd_gain_integral",
    "spd_gain_sum",
    "spd_region",
    "ula_asymptotic",
    "ula_gain_1d",
    "ula_gain_closed",
    "upa_asymptotic",
]
