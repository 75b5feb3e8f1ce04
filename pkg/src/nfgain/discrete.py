"""Channel gain by direct summation over array elements.

The element sum is the pre-integral form of the gain and doubles as the
reference the integral form is checked against.  Sums run in fixed row-major
blocks with numpy's pairwise reduction inside each block and a pairwise
reduction over block partials, so error growth stays logarithmic in the
element count and results are bit-reproducible for a given array shape.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import Medium, SpdArray, UserPosition
from .kernels import ReactiveKernelParams, radiating_kernel, reactive_kernel

# Fixed block size: the reduction tree must not depend on the environment.
_BLOCK_ELEMENTS = 4_000_000


@dataclass(frozen=True)
class GainBreakdown:
    """The three gain models for one scenario plus the reactive/radiating ratio."""

    with_reactive: float
    radiating_only: float
    far_field: float
    ratio_eva_over_rad: float


def _axis_offsets(count: int, eps: float) -> np.ndarray:
    half = (count - 1) // 2
    return np.arange(-half, half + 1, dtype=float) * eps


def _min_distance(array: SpdArray, user: UserPosition) -> float:
    """Distance from the user to the nearest element center, in meters."""
    c = user.cosines
    eps = array.d / user.r

    def min_off_sq(count: int, coord: float) -> float:
        half = (count - 1) // 2
        m_near = int(np.clip(round(coord / eps), -half, half))
        candidates = {max(-half, m_near - 1), m_near, min(half, m_near + 1)}
        return min((m * eps - coord) ** 2 for m in candidates)

    base = min_off_sq(array.m_x, c.big_phi) + c.big_psi**2 + min_off_sq(array.m_z, c.big_theta)
    return user.r * math.sqrt(base)


def spd_gain_sum(
    array: SpdArray,
    user: UserPosition,
    medium: Medium,
    include_reactive: bool = True,
) -> float:
    """Channel gain as the explicit sum over all m_x * m_z elements.

    Refuses scenarios where the user is closer than sqrt(A) to some element:
    there the constant-field-per-element simplification behind the sum stops
    holding, and a wrong answer is worse than a refusal.
    """
    if _min_distance(array, user) < math.sqrt(array.a):
        raise ValueError(
            "user is closer than sqrt(element area) to the nearest element; "
            "the per-element constant-field model is invalid this close"
        )
    c = user.cosines
    eps = array.d / user.r
    xs = _axis_offsets(array.m_x, eps)
    zs = _axis_offsets(array.m_z, eps)
    params = ReactiveKernelParams(c, medium.k0 * user.r)

    rows_per_block = max(1, _BLOCK_ELEMENTS // len(zs))
    partials = []
    z_row = zs[None, :]
    for i0 in range(0, len(xs), rows_per_block):
        x_col = xs[i0 : i0 + rows_per_block, None]
        if include_reactive:
            terms = reactive_kernel(x_col, z_row, params)
        else:
            terms = radiating_kernel(x_col, z_row, c)
        partials.append(np.sum(terms))
    total = float(np.sum(np.array(partials)))

    pref = medium.radiation_factor * array.a * c.big_psi / (4.0 * math.pi * array.d**2)
    return pref * (eps * eps) * total


def far_field_gain(array: SpdArray, user: UserPosition, medium: Medium) -> float:
    """Planar-wave gain radiation_factor * A * Psi * M / (4 pi r^2).

    Grows without bound in M by design: the divergence (received power
    exceeding transmitted power) is the planar-wave model's failure to
    describe large arrays, and the sweeps are meant to expose it.
    """
    c = user.cosines
    return (
        medium.radiation_factor
        * array.a
        * c.big_psi
        * array.m_total
        / (4.0 * math.pi * user.r**2)
    )


def gain_breakdown(array: SpdArray, user: UserPosition, medium: Medium) -> GainBreakdown:
    """Evaluate all three gain models for one scenario."""
    eva = spd_gain_sum(array, user, medium, include_reactive=True)
    rad = spd_gain_sum(array, user, medium, include_reactive=False)
    return GainBreakdown(
        with_reactive=eva,
        radiating_only=rad,
        far_field=far_field_gain(array, user, medium),
        ratio_eva_over_rad=eva / rad,
    )
