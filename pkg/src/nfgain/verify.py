"""Self-verification suite: every consistency chain the library promises.

Each check pits an implementation against an independent route to the same
number (complex arithmetic vs the expanded magnitude, element sums vs panel
integrals, antiderivatives vs adaptive quadrature, disk bounds vs rectangle
integrals).  A perturbation factor can be injected into the order-5 kernel
path to confirm the checks actually bite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .closed_forms import ratio_spd, ula_gain_closed, upa_asymptotic
from .config import ScenarioConfig
from .discrete import spd_gain_sum
from .disk_bounds import disk_integral, integral_limit, sandwich_check, strictly_inside
from .geometry import Medium, UserPosition
from .kernels import green_magnitude_sq
from .quadrature import QuadratureSpec, spd_gain_integral, ula_gain_1d

_SEED = 20240917

SANDWICH_PSIS = (0.1, 0.433, 0.9)
SANDWICH_HALF_WIDTHS = (1.0, 4.0, 16.0)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _grid_for_half_width(half_width: float) -> tuple[int, int, float]:
    # Square region with an odd nominal element count; epsilon follows.
    m = 201
    return m, m, 2.0 * half_width / m


def check_green_identity() -> CheckResult:
    rng = np.random.default_rng(_SEED)
    u = rng.uniform(0.0, 10.0, 1000)
    via_complex = np.abs((1.0 - u * u) + 1j * u) ** 2
    direct = green_magnitude_sq(u)
    worst = float(np.max(np.abs(via_complex - direct) / via_complex))
    return CheckResult(
        name="green_identity",
        passed=worst <= 1e-13,
        detail=f"max rel diff vs complex arithmetic = {worst:.3e} (tol 1e-13)",
    )


def check_limit_recombination(perturb_n5: float = 1.0) -> CheckResult:
    """Recombine the three kernel-order limits into the planar gain limit."""
    rng = np.random.default_rng(_SEED + 1)
    worst = 0.0
    for _ in range(1000):
        theta = rng.uniform(0.15, math.pi - 0.15)
        phi = rng.uniform(0.15, math.pi - 0.15)
        user = UserPosition(r=float(np.exp(rng.uniform(-0.5, 4.0))), theta=theta, phi=phi)
        medium = Medium(
            wavelength=float(np.exp(rng.uniform(-4.0, 0.0))),
            radiation_factor=float(np.exp(rng.uniform(-2.0, 2.0))),
        )
        mu_oc = float(rng.uniform(0.05, 1.0))
        psi = user.cosines.big_psi
        c2 = 1.0 / (medium.k0 * user.r) ** 2
        recombined = (
            medium.radiation_factor
            * (mu_oc / (4.0 * math.pi))
            * psi
            * (
                integral_limit(3, psi)
                - c2 * integral_limit(5, psi) * perturb_n5
                + c2 * c2 * integral_limit(7, psi)
            )
        )
        reference = upa_asymptotic(user, medium, mu_oc, include_reactive=True).value
        worst = max(worst, abs(recombined - reference) / reference)
    return CheckResult(
        name="limit_recombination",
        passed=worst <= 1e-12,
        detail=f"max rel diff over 1000 random scenarios = {worst:.3e} (tol 1e-12)",
    )


def check_sum_vs_integral(config: ScenarioConfig | None = None) -> CheckResult:
    config = config or ScenarioConfig()
    user = config.user()
    medium = config.medium()
    eps = config.d / config.r
    bound = 10.0 * eps * eps
    worst = 0.0
    for m in (25, 51, 101):
        array = config.spd_array(m, m)
        total = spd_gain_sum(array, user, medium)
        integral = spd_gain_integral(array, user, medium).value
        worst = max(worst, abs(total - integral) / integral)
    return CheckResult(
        name="sum_vs_integral",
        passed=worst <= bound,
        detail=f"max rel diff over m in (25, 51, 101) = {worst:.3e} (tol {bound:.3e})",
    )


def check_ula_closed_vs_quadrature(config: ScenarioConfig | None = None) -> CheckResult:
    config = config or ScenarioConfig()
    user = config.user()
    medium = config.medium()
    spec = QuadratureSpec(rel_tol=1e-12)
    worst = 0.0
    for m in (11, 101, 1001):
        array = config.spd_array(m, 1)
        closed = ula_gain_closed(array, user, medium)
        quad = ula_gain_1d(array, user, medium, spec).value
        worst = max(worst, abs(closed - quad) / quad)
    return CheckResult(
        name="ula_closed_vs_quadrature",
        passed=worst <= 1e-9,
        detail=f"max rel diff over m in (11, 101, 1001) = {worst:.3e} (tol 1e-9)",
    )


def check_sandwich(n: int, perturb_n5: float = 1.0) -> CheckResult:
    """Strict disk-bound containment plus monotone approach to the limit."""
    failures = []
    for psi in SANDWICH_PSIS:
        previous_gap = None
        for half_width in SANDWICH_HALF_WIDTHS:
            m_x, m_z, epsilon = _grid_for_half_width(half_width)
            result = sandwich_check(m_x, m_z, epsilon, n, psi)
            integral = result.integral * (perturb_n5 if n == 5 else 1.0)
            if not strictly_inside(result.bounds, integral):
                failures.append(
                    f"psi={psi} half={half_width}: {result.bounds.lower:.6g} < "
                    f"{integral:.6g} < {result.bounds.upper:.6g} violated"
                )
            gap = abs(integral_limit(n, psi) - integral)
            if previous_gap is not None and gap >= previous_gap:
                failures.append(
                    f"psi={psi} half={half_width}: gap to limit not decreasing "
                    f"({gap:.3e} >= {previous_gap:.3e})"
                )
            previous_gap = gap
    detail = (
        f"{len(SANDWICH_PSIS) * len(SANDWICH_HALF_WIDTHS)} containment checks"
        if not failures
        else "; ".join(failures[:3])
    )
    return CheckResult(name=f"sandwich_n{n}", passed=not failures, detail=detail)


def check_disk_integral_shape() -> CheckResult:
    """Monotone growth in radius and the correct infinite-radius limit."""
    failures = []
    for n in (3, 5, 7):
        for psi in SANDWICH_PSIS:
            radii = np.geomspace(0.1, 1e6, 30)
            values = [disk_integral(n, psi, r) for r in radii]
            if not all(a < b for a, b in zip(values, values[1:])):
                failures.append(f"n={n} psi={psi}: not strictly increasing")
            limit = integral_limit(n, psi)
            if abs(values[-1] - limit) / limit > 1e-9:
                failures.append(f"n={n} psi={psi}: tail misses limit")
    return CheckResult(
        name="disk_integral_shape",
        passed=not failures,
        detail="; ".join(failures) if failures else "monotone, correct limits",
    )


def check_ratio_threshold(config: ScenarioConfig | None = None) -> CheckResult:
    """ratio crosses one exactly at perpendicular distance sqrt(3/20)*lambda/pi."""
    config = config or ScenarioConfig()
    medium = config.medium()
    psi = config.user().cosines.big_psi
    r_threshold = math.sqrt(3.0 / 20.0) * medium.wavelength / math.pi / psi
    at_threshold = ratio_spd(
        UserPosition(r=r_threshold, theta=config.theta, phi=config.phi), medium
    )
    below = ratio_spd(
        UserPosition(r=0.5 * r_threshold, theta=config.theta, phi=config.phi), medium
    )
    above = ratio_spd(
        UserPosition(r=2.0 * r_threshold, theta=config.theta, phi=config.phi), medium
    )
    ok = abs(at_threshold - 1.0) <= 1e-12 and below > 1.0 and above < 1.0
    return CheckResult(
        name="ratio_threshold",
        passed=ok,
        detail=f"ratio(threshold) = {at_threshold!r}, below = {below:.6f}, above = {above:.6f}",
    )


def run_verification(perturb_n5: float = 1.0) -> list[CheckResult]:
    """Run every check; perturb_n5 != 1 must make at least one check fail."""
    results = [
        check_green_identity(),
        check_limit_recombination(perturb_n5),
        check_sum_vs_integral(),
        check_ula_closed_vs_quadrature(),
        check_disk_integral_shape(),
        check_ratio_threshold(),
    ]
    for n in (3, 5, 7):
        results.append(check_sandwich(n, perturb_n5))
    return results
