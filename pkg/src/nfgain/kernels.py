"""Scalar field kernels for the channel-gain integrands.

The whole gain analysis rests on one kernel family

    f_n(x, z) = ((x - Phi)^2 + Psi^2 + (z - Theta)^2)^(-n/2),   n in {3, 5, 7}

and on the squared magnitude of the free-space propagation factor
|1 + j*u - u^2|^2 = 1 - u^2 + u^4, where u is the inverse electrical distance
1/(k0 * delta).  The reactive integrand combines them:

    f_3 - f_5/(k0 r)^2 + f_7/(k0 r)^4  ==  f_3 * (1 - u^2 + u^4)

with u = 1/(k0 * r * rho) and rho the normalized source-observer distance.
All functions accept scalars or broadcastable numpy arrays.

All three orders share one base evaluation b = (x-Phi)^2 + Psi^2 + (z-Theta)^2
(one reciprocal, one square root, then multiplies); the orders are always
needed together, so this halves kernel cost.  Psi > 0 bounds b away from zero,
and 1 - u^2 + u^4 >= 3/4 rules out cancellation, so double precision is safe
throughout.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import DirectionCosines

KERNEL_ORDERS = (3, 5, 7)


@dataclass(frozen=True)
class ReactiveKernelParams:
    """Direction cosines plus the electrical distance k0*r of the array center."""

    cosines: DirectionCosines
    k0r: float

    def __post_init__(self) -> None:
        if not self.k0r > 0.0:
            raise ValueError(f"k0r must be > 0, got {self.k0r!r}")


def kernel_base(x, z, cosines: DirectionCosines):
    """Squared normalized distance b = (x-Phi)^2 + Psi^2 + (z-Theta)^2."""
    dx = np.asarray(x, dtype=float) - cosines.big_phi
    dz = np.asarray(z, dtype=float) - cosines.big_theta
    return dx * dx + cosines.big_psi**2 + dz * dz


def f_n(x, z, cosines: DirectionCosines, n: int):
    """Kernel b^(-n/2) for n in {3, 5, 7}.

    Strictly positive, maximized at (Phi, Theta) with peak value Psi^(-n).
    """
    if n not in KERNEL_ORDERS:
        raise ValueError(f"kernel order must be one of {KERNEL_ORDERS}, got {n!r}")
    inv = 1.0 / kernel_base(x, z, cosines)
    s = np.sqrt(inv)
    if n == 3:
        return inv * s
    if n == 5:
        return inv * inv * s
    return inv * inv * inv * s


def green_magnitude_sq(u):
    """|1 + j*u - u^2|^2 = 1 - u^2 + u^4 for u = 1/(k0 * distance).

    Bounded below by 3/4 (minimum at u^2 = 1/2); equals 1 at u = 0 and u = 1,
    so the reactive terms degrade the gain exactly when u < 1, i.e. beyond
    distance 1/k0 = wavelength/(2*pi).
    """
    u = np.asarray(u, dtype=float)
    u2 = u * u
    return 1.0 - u2 + u2 * u2


def inverse_electrical_distance(x, z, params: ReactiveKernelParams):
    """u(x, z) = 1/(k0 * r * rho), with rho = sqrt(kernel_base)."""
    inv = 1.0 / kernel_base(x, z, params.cosines)
    return np.sqrt(inv) * (1.0 / params.k0r)


def reactive_kernel(x, z, params: ReactiveKernelParams):
    """Full gain integrand f_3 - f_5/(k0 r)^2 + f_7/(k0 r)^4.

    Computed in the factored form f_3(x, z) * green_magnitude_sq(u(x, z)),
    which is the identical floating-point decomposition (f_5 = f_3/b,
    f_7 = f_3/b^2).  Strictly positive everywhere.
    """
    inv = 1.0 / kernel_base(x, z, params.cosines)
    s = np.sqrt(inv)
    u = s * (1.0 / params.k0r)
    return inv * s * green_magnitude_sq(u)


def radiating_kernel(x, z, cosines: DirectionCosines):
    """Radiating-only integrand, i.e. f_3 alone."""
    inv = 1.0 / kernel_base(x, z, cosines)
    return inv * np.sqrt(inv)
