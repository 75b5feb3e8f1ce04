"""Array and user geometry.

Coordinate conventions: the receive array lies in the x-z plane, centered at
the origin, with normal vector +y.  The user sits at distance r in direction
(theta, phi), giving direction cosines (Phi, Psi, Theta) with Psi > 0, i.e.
the user is strictly off the array plane.  All lengths are in meters, all
angles in radians.  Normalized in-plane coordinates are x = X/r.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

_UNIT_NORM_TOL = 1e-12

# Integral-versus-sum approximation degrades once the element spacing stops
# being small against the propagation distance.
COARSE_GRID_EPSILON = 0.1


@dataclass(frozen=True)
class DirectionCosines:
    """Unit direction (big_phi, big_psi, big_theta) locating the user.

    big_psi is the cosine against the array normal; r * big_psi is the
    perpendicular distance from the user to the array plane.
    """

    big_phi: float
    big_psi: float
    big_theta: float

    def __post_init__(self) -> None:
        norm_sq = self.big_phi**2 + self.big_psi**2 + self.big_theta**2
        if abs(norm_sq - 1.0) > _UNIT_NORM_TOL:
            raise ValueError(
                f"direction cosines must have unit norm, got |.|^2 = {norm_sq!r}"
            )
        if not self.big_psi > 0.0:
            raise ValueError(
                "big_psi must be > 0 (user strictly off the array plane); "
                f"got {self.big_psi!r}"
            )

    @property
    def a_phi_sq(self) -> float:
        """1 - big_phi**2, the squared in-plane complement used by linear arrays."""
        return 1.0 - self.big_phi**2

    @property
    def a_phi(self) -> float:
        return math.sqrt(self.a_phi_sq)


def direction_cosines(theta: float, phi: float) -> DirectionCosines:
    """Direction cosines (cos(phi)sin(theta), sin(phi)sin(theta), cos(theta)).

    Both angles must lie strictly inside (0, pi); the endpoints put the user
    in the array plane where the field kernels are singular.
    """
    if not (0.0 < theta < math.pi):
        raise ValueError(f"theta must lie strictly in (0, pi), got {theta!r}")
    if not (0.0 < phi < math.pi):
        raise ValueError(f"phi must lie strictly in (0, pi), got {phi!r}")
    sin_theta = math.sin(theta)
    return DirectionCosines(
        big_phi=math.cos(phi) * sin_theta,
        big_psi=math.sin(phi) * sin_theta,
        big_theta=math.cos(theta),
    )


@dataclass(frozen=True)
class UserPosition:
    """User location in spherical form: distance r and angles (theta, phi)."""

    r: float
    theta: float
    phi: float

    def __post_init__(self) -> None:
        if not (self.r > 0.0 and math.isfinite(self.r)):
            raise ValueError(f"r must be finite and > 0, got {self.r!r}")
        # Angle bounds are enforced by the cosine constructor.
        direction_cosines(self.theta, self.phi)

    @property
    def cosines(self) -> DirectionCosines:
        return direction_cosines(self.theta, self.phi)

    def cartesian(self) -> np.ndarray:
        """User center [r*Phi, r*Psi, r*Theta] in meters."""
        c = self.cosines
        return np.array([self.r * c.big_phi, self.r * c.big_psi, self.r * c.big_theta])


@dataclass(frozen=True)
class SpdArray:
    """Spatially-discrete m_x-by-m_z array: spacing d, per-element area a.

    Element counts must be odd so the grid keeps a center element at the
    origin; re-centering an even grid would silently change every element
    distance.
    """

    m_x: int
    m_z: int
    d: float
    a: float

    def __post_init__(self) -> None:
        for name, m in (("m_x", self.m_x), ("m_z", self.m_z)):
            if not (isinstance(m, int) and m > 0):
                raise ValueError(f"{name} must be a positive integer, got {m!r}")
            if m % 2 == 0:
                raise ValueError(
                    f"{name} must be odd (the element grid needs a center element), "
                    f"got {m}"
                )
        if not (self.a > 0.0 and math.isfinite(self.a)):
            raise ValueError(f"element area a must be finite and > 0, got {self.a!r}")
        if not (self.d >= math.sqrt(self.a) and math.isfinite(self.d)):
            raise ValueError(
                f"spacing d must satisfy d >= sqrt(a); got d={self.d!r}, "
                f"sqrt(a)={math.sqrt(self.a)!r}"
            )

    @property
    def m_total(self) -> int:
        return self.m_x * self.m_z

    @property
    def mu_oc(self) -> float:
        """Occupation ratio a/d^2, in (0, 1] by the d >= sqrt(a) invariant."""
        return self.a / self.d**2

    @property
    def length_x(self) -> float:
        """Physical x-extent; L = m * d throughout (used for CAP comparisons)."""
        return self.m_x * self.d

    @property
    def length_z(self) -> float:
        return self.m_z * self.d


@dataclass(frozen=True)
class CapAperture:
    """Continuous aperture with physical dimensions l_x by l_z meters."""

    l_x: float
    l_z: float

    def __post_init__(self) -> None:
        for name, val in (("l_x", self.l_x), ("l_z", self.l_z)):
            if not (val > 0.0 and math.isfinite(val)):
                raise ValueError(f"{name} must be finite and > 0, got {val!r}")

    @property
    def area(self) -> float:
        return self.l_x * self.l_z


@dataclass(frozen=True)
class Medium:
    """Wavelength plus the scalar radiation factor eta/(8*R_rad).

    The source current and field amplitudes cancel in the received/transmitted
    power ratio, so this factor is the only hardware constant that survives.
    """

    wavelength: float
    radiation_factor: float = 1.0

    def __post_init__(self) -> None:
        if not (self.wavelength > 0.0 and math.isfinite(self.wavelength)):
            raise ValueError(f"wavelength must be finite and > 0, got {self.wavelength!r}")
        if not (self.radiation_factor > 0.0 and math.isfinite(self.radiation_factor)):
            raise ValueError(
                f"radiation_factor must be finite and > 0, got {self.radiation_factor!r}"
            )

    @property
    def k0(self) -> float:
        """Free-space wavenumber 2*pi/wavelength."""
        return 2.0 * math.pi / self.wavelength


@dataclass(frozen=True)
class Region:
    """Axis-aligned rectangle in normalized (x, z) coordinates."""

    x_lo: float
    x_hi: float
    z_lo: float
    z_hi: float

    def __post_init__(self) -> None:
        if not (self.x_lo < self.x_hi and self.z_lo < self.z_hi):
            raise ValueError(f"degenerate region {self!r}")

    @property
    def width(self) -> float:
        return self.x_hi - self.x_lo

    @property
    def height(self) -> float:
        return self.z_hi - self.z_lo

    @property
    def area(self) -> float:
        return self.width * self.height


def element_distance(user: UserPosition, m_x_idx: int, m_z_idx: int, d: float) -> float:
    """Distance in meters from the user to element (m_x_idx, m_z_idx).

    Indices count from the center element (0, 0); the caller is responsible
    for keeping them inside the array's index sets.
    """
    c = user.cosines
    eps = d / user.r
    return user.r * math.sqrt(
        (m_x_idx * eps - c.big_phi) ** 2
        + c.big_psi**2
        + (m_z_idx * eps - c.big_theta) ** 2
    )


def spd_region(array: SpdArray, user: UserPosition) -> Region:
    """Normalized integration rectangle [-m_x*eps/2, m_x*eps/2] x (same in z).

    Warns when eps = d/r exceeds 0.1: the midpoint-sum reading of the region
    integral loses accuracy for such coarse grids.
    """
    eps = array.d / user.r
    if eps > COARSE_GRID_EPSILON:
        warnings.warn(
            f"eps = d/r = {eps:.4g} > {COARSE_GRID_EPSILON}: integral approximation "
            "of the element sum degrades",
            stacklevel=2,
        )
    hx = array.m_x * eps / 2.0
    hz = array.m_z * eps / 2.0
    return Region(-hx, hx, -hz, hz)


def cap_region(aperture: CapAperture, user: UserPosition) -> Region:
    """Normalized integration rectangle [-l_x/2r, l_x/2r] x [-l_z/2r, l_z/2r]."""
    hx = aperture.l_x / (2.0 * user.r)
    hz = aperture.l_z / (2.0 * user.r)
    return Region(-hx, hx, -hz, hz)
