"""Independent verification machinery for the large-aperture limits.

The rectangle integral of the centered kernel 1/(x^2 + z^2 + Psi^2)^(n/2) is
pinned between the closed-form integrals over its inscribed and circumscribed
disks; both disk integrals share the limit pi * Psi^(2-n) / (n/2 - 1), which
squeezes the rectangle integral to the same limit as the region grows.

The centered integrand here is written locally with its own floating-point
decomposition (a direct fractional power) precisely so that this module never
reuses the kernel code it is meant to check; only the generic panel
integrator is shared.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import Region
from .kernels import KERNEL_ORDERS
from .quadrature import QuadratureResult, QuadratureSpec, integrate_2d

# Strict containment is asserted up to a floating-point margin: exact
# strictness is unfalsifiable in floating point, and for high kernel orders
# over large regions the true bound gap shrinks below double-precision
# resolution of the integral.  Only violations exceeding the margin are
# treated as real (they indicate a quadrature or formula bug).
_STRICT_MARGIN_FRACTION = 1e-12


@dataclass(frozen=True)
class DiskBounds:
    """Inscribed/circumscribed disk radii and the integral bounds they give."""

    r_in: float
    r_out: float
    lower: float
    upper: float

    def __post_init__(self) -> None:
        if not self.lower < self.upper:
            raise ValueError(f"disk bounds must satisfy lower < upper, got {self!r}")


@dataclass(frozen=True)
class SandwichCheck:
    """Result of one containment check: bounds, integral, and the verdict."""

    bounds: DiskBounds
    integral: float
    quadrature: QuadratureResult
    strict: bool


def _check_order(n: int) -> None:
    if n not in KERNEL_ORDERS:
        raise ValueError(f"kernel order must be one of {KERNEL_ORDERS}, got {n!r}")


def disk_integral(n: int, psi: float, radius: float) -> float:
    """Centered kernel integrated over a disk of the given radius.

    pi / (n/2 - 1) * (psi^(2-n) - (psi^2 + radius^2)^(1 - n/2)); strictly
    increasing in the radius with limit pi * psi^(2-n) / (n/2 - 1).
    """
    _check_order(n)
    if not psi > 0.0:
        raise ValueError(f"psi must be > 0, got {psi!r}")
    if radius < 0.0:
        raise ValueError(f"radius must be >= 0, got {radius!r}")
    exponent = 1.0 - n / 2.0
    # Both terms share one decomposition so an empty disk is exactly zero.
    psi_sq = psi * psi
    return (
        math.pi / (n / 2.0 - 1.0) * (psi_sq**exponent - (psi_sq + radius**2) ** exponent)
    )


def integral_limit(n: int, psi: float) -> float:
    """Infinite-plane value of the centered kernel integral.

    pi * psi^(2-n) / (n/2 - 1): 2 pi / psi, (2 pi / 3) psi^-3, (2 pi / 5) psi^-5
    for n = 3, 5, 7.
    """
    _check_order(n)
    if not psi > 0.0:
        raise ValueError(f"psi must be > 0, got {psi!r}")
    return math.pi * psi ** (2.0 - n) / (n / 2.0 - 1.0)


def strictly_inside(bounds: DiskBounds, value: float) -> bool:
    """Containment up to a noise margin of 1e-12 * upper on both sides."""
    margin = _STRICT_MARGIN_FRACTION * abs(bounds.upper)
    return (value - bounds.lower) > -margin and (bounds.upper - value) > -margin


def sandwich_check(
    m_x: int,
    m_z: int,
    epsilon: float,
    n: int,
    psi: float,
    spec: QuadratureSpec | None = None,
) -> SandwichCheck:
    """Pin the centered rectangle integral between its disk bounds.

    The rectangle has half-widths m_x*epsilon/2 and m_z*epsilon/2; the
    inscribed radius is set by the short side, the circumscribed one by the
    half-diagonal.  A violated containment indicates a quadrature or formula
    bug, not a property of the geometry.
    """
    _check_order(n)
    if not (m_x > 0 and m_z > 0 and epsilon > 0.0):
        raise ValueError(
            f"need positive m_x, m_z, epsilon; got {m_x!r}, {m_z!r}, {epsilon!r}"
        )
    r_in = 0.5 * epsilon * min(m_x, m_z)
    r_out = 0.5 * epsilon * math.hypot(m_x, m_z)
    bounds = DiskBounds(
        r_in=r_in,
        r_out=r_out,
        lower=disk_integral(n, psi, r_in),
        upper=disk_integral(n, psi, r_out),
    )

    psi_sq = psi * psi
    exponent = -n / 2.0

    def centered_kernel(x, z):
        return np.power(x * x + z * z + psi_sq, exponent)

    hx = 0.5 * m_x * epsilon
    hz = 0.5 * m_z * epsilon
    result = integrate_2d(
        centered_kernel,
        Region(-hx, hx, -hz, hz),
        spec,
        peak=(0.0, 0.0),
        peak_scale=psi,
    )
    return SandwichCheck(
        bounds=bounds,
        integral=result.value,
        quadrature=result,
        strict=strictly_inside(bounds, result.value),
    )
