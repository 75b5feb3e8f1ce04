"""Closed-form gains: large-aperture limits, the finite linear-array gain,
and the reactive-to-radiating degradation ratio.

Everything here is straight expression evaluation.  The only guard is the
endfire rejection a_Phi -> 0 in the linear-array forms, which divide by
powers of a_Phi; valid direction cosines already exclude it (a_Phi^2 =
Psi^2 + Theta^2 >= Psi^2 > 0), so the guard only documents the boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .geometry import Medium, SpdArray, UserPosition

GAIN_FAMILIES = frozenset(
    {"upa_eva", "upa_rad", "cap_eva", "cap_rad", "ula_eva", "ula_rad"}
)


@dataclass(frozen=True)
class AsymptoticGain:
    """A large-aperture gain limit tagged with the model family it belongs to."""

    value: float
    family: str

    def __post_init__(self) -> None:
        if self.family not in GAIN_FAMILIES:
            raise ValueError(f"unknown gain family {self.family!r}")
        if not self.value > 0.0:
            raise ValueError(f"asymptotic gain must be > 0, got {self.value!r}")


def upa_asymptotic(
    user: UserPosition,
    medium: Medium,
    mu_oc: float,
    include_reactive: bool = True,
) -> AsymptoticGain:
    """Infinite-planar-array gain limit.

    radiation_factor * mu_oc * (1/2 - (lambda/(r Psi))^2 / (24 pi^2)
                                    + (lambda/(r Psi))^4 / (160 pi^4));
    without the reactive terms only the 1/2 survives.
    """
    if not 0.0 < mu_oc <= 1.0:
        raise ValueError(f"occupation ratio must lie in (0, 1], got {mu_oc!r}")
    if include_reactive:
        y = medium.wavelength / (user.r * user.cosines.big_psi)
        bracket = 0.5 - y**2 / (24.0 * math.pi**2) + y**4 / (160.0 * math.pi**4)
        family = "upa_eva"
    else:
        bracket = 0.5
        family = "upa_rad"
    return AsymptoticGain(medium.radiation_factor * mu_oc * bracket, family)


def cap_asymptotic(
    user: UserPosition, medium: Medium, include_reactive: bool = True
) -> AsymptoticGain:
    """Infinite continuous-aperture gain limit: the planar limit at mu_oc = 1."""
    g = upa_asymptotic(user, medium, 1.0, include_reactive)
    return AsymptoticGain(g.value, "cap_eva" if include_reactive else "cap_rad")


def ratio_spd(user: UserPosition, medium: Medium) -> float:
    """Asymptotic reactive/radiating gain ratio.

    1 - (lambda/(r Psi))^2 / (12 pi^2) + (lambda/(r Psi))^4 / (80 pi^4).
    Below one exactly when r * Psi exceeds sqrt(3/20) * lambda / pi; the same
    expression applies to planar-array and continuous-aperture limits.
    """
    y = medium.wavelength / (user.r * user.cosines.big_psi)
    return 1.0 - y**2 / (12.0 * math.pi**2) + y**4 / (80.0 * math.pi**4)


def ratio_spd_threshold(medium: Medium) -> float:
    """Perpendicular distance r * Psi at which ratio_spd crosses one."""
    return math.sqrt(3.0 / 20.0) * medium.wavelength / math.pi


def _a_phi_sq(user: UserPosition) -> float:
    a2 = user.cosines.a_phi_sq
    if a2 <= 0.0:
        raise ValueError("endfire direction (a_Phi = 0) is outside the model's domain")
    return a2


def ula_gain_closed(array: SpdArray, user: UserPosition, medium: Medium) -> float:
    """Finite single-row-array gain in closed form (m_z must be 1).

    Sum over the two branch points x = M*eps/2 +/- Phi of the antiderivatives
    of the three kernel orders along the array axis.  Both branches are always
    summed; the antiderivatives are odd, so a projection point outside the
    array (|Phi| > M*eps/2) is handled by the sign of the minus branch.
    """
    if array.m_z != 1:
        raise ValueError(f"ula_gain_closed requires m_z = 1, got m_z = {array.m_z}")
    c = user.cosines
    a2 = _a_phi_sq(user)
    eps = array.d / user.r
    half = array.m_x * eps / 2.0
    k0r_sq = (medium.k0 * user.r) ** 2
    c2 = 1.0 / k0r_sq
    c4 = c2 * c2

    total = 0.0
    for x in (half + c.big_phi, half - c.big_phi):
        x2 = x * x
        s = math.sqrt(x2 + a2)
        t3 = x / (a2 * s)
        t5 = x * (3.0 * a2 + 2.0 * x2) / (3.0 * a2 * a2 * (a2 + x2) * s)
        t7 = (
            x
            * (15.0 * a2 * a2 + 20.0 * a2 * x2 + 8.0 * x2 * x2)
            / (15.0 * a2**3 * (a2 + x2) ** 2 * s)
        )
        total += t3 - c2 * t5 + c4 * t7

    pref = (
        medium.radiation_factor
        * array.a
        * c.big_psi
        / (4.0 * math.pi * array.d * user.r)
    )
    return pref * total


def ula_asymptotic(
    user: UserPosition,
    medium: Medium,
    d: float,
    a: float,
    include_reactive: bool = True,
) -> AsymptoticGain:
    """Infinite single-row-array gain limit.

    radiation_factor * A * Psi / (2 pi d r a_Phi^2) times
    (1 - (2/3)/(k0 r a_Phi)^2 + (8/15)/(k0 r a_Phi)^4), the parenthetical
    dropping when the reactive terms are excluded.
    """
    c = user.cosines
    a2 = _a_phi_sq(user)
    pref = (
        medium.radiation_factor * a * c.big_psi / (2.0 * math.pi * d * user.r * a2)
    )
    if include_reactive:
        v2 = 1.0 / ((medium.k0 * user.r) ** 2 * a2)
        bracket = 1.0 - (2.0 / 3.0) * v2 + (8.0 / 15.0) * v2 * v2
        family = "ula_eva"
    else:
        bracket = 1.0
        family = "ula_rad"
    return AsymptoticGain(pref * bracket, family)
