import math

import numpy as np
import pytest

from nfgain import (
    CapAperture,
    Medium,
    QuadratureSpec,
    Region,
    UserPosition,
    cap_asymptotic,
    cap_gain_integral,
    integrate_1d,
    integrate_2d,
    spd_gain_integral,
    spd_gain_sum,
    ula_gain_1d,
    ula_gain_closed,
    upa_asymptotic,
)
from nfgain.kernels import ReactiveKernelParams, radiating_kernel, reactive_kernel

# Adaptive result for the sharp-peak scenario below was cross-checked against
# a 31623 x 31623 (1e9-point) midpoint rule; that run is frozen here and a
# 1e7-point version is recomputed at test time.
PEAK_MIDPOINT_1E9 = 586.0370068969532


class TestEngine:
    def test_spec_validation(self):
        with pytest.raises(ValueError):
            QuadratureSpec(rel_tol=0.5)
        with pytest.raises(ValueError):
            QuadratureSpec(rel_tol=1e-15)
        with pytest.raises(ValueError):
            QuadratureSpec(base_order=2)
        with pytest.raises(ValueError):
            QuadratureSpec(max_panels=0)

    def test_polynomial_exactness(self):
        res = integrate_2d(lambda x, z: x * x * z * z + 1.0, Region(-1, 1, -1, 1))
        assert res.value == pytest.approx(4.0 / 9.0 + 4.0, rel=1e-14)
        assert res.converged

    def test_tiny_region_is_midpoint_times_area(self, user, medium):
        c = user.cosines
        reg = Region(-1e-4, 1e-4, -1e-4, 1e-4)
        res = integrate_2d(lambda x, z: radiating_kernel(x, z, c), reg)
        # f_3(0, 0) = 1, so the integral is essentially the area.
        assert res.value == pytest.approx(reg.area, rel=1e-6)

    def test_region_additivity(self, user, medium):
        c = user.cosines
        params = ReactiveKernelParams(c, medium.k0 * user.r)
        func = lambda x, z: reactive_kernel(x, z, params)
        spec = QuadratureSpec(rel_tol=1e-11)
        whole = integrate_2d(func, Region(-1.0, 1.0, -0.5, 1.5), spec).value
        parts = sum(
            integrate_2d(func, Region(x0, x1, z0, z1), spec).value
            for x0, x1 in ((-1.0, 0.3), (0.3, 1.0))
            for z0, z1 in ((-0.5, 0.7), (0.7, 1.5))
        )
        assert parts == pytest.approx(whole, rel=1e-10)

    def test_refinement_convergence(self, user, medium):
        c = user.cosines
        func = lambda x, z: radiating_kernel(x, z, c)
        reg = Region(-5.0, 5.0, -5.0, 5.0)
        coarse = integrate_2d(func, reg, QuadratureSpec(rel_tol=1e-6), peak=(c.big_phi, c.big_theta), peak_scale=c.big_psi)
        fine = integrate_2d(func, reg, QuadratureSpec(rel_tol=5e-7), peak=(c.big_phi, c.big_theta), peak_scale=c.big_psi)
        assert abs(fine.value - coarse.value) <= max(coarse.error, 1e-15 * abs(coarse.value))

    def test_unconverged_flag_returns_best_estimate(self, user, medium):
        c = user.cosines
        func = lambda x, z: radiating_kernel(x, z, c)
        reg = Region(-50.0, 50.0, -50.0, 50.0)
        res = integrate_2d(
            func, reg, QuadratureSpec(rel_tol=1.1e-14, max_panels=8),
            peak=(c.big_phi, c.big_theta), peak_scale=c.big_psi,
        )
        assert not res.converged
        assert res.value > 0.0
        # No refinement happened beyond the seeded grid (budget exhausted).
        assert res.panels == 16

    def test_deterministic(self, user, medium):
        c = user.cosines
        func = lambda x, z: radiating_kernel(x, z, c)
        reg = Region(-8.0, 8.0, -8.0, 8.0)
        a = integrate_2d(func, reg, peak=(c.big_phi, c.big_theta), peak_scale=c.big_psi)
        b = integrate_2d(func, reg, peak=(c.big_phi, c.big_theta), peak_scale=c.big_psi)
        assert a.value == b.value and a.error == b.error

    def test_sharp_peak_vs_brute_force_midpoint(self):
        # Psi ~ 0.01: the integrand peaks at 1e6 inside the region.
        user = UserPosition(r=5.0, theta=math.pi / 2, phi=0.01)
        medium = Medium(wavelength=0.1256)
        c = user.cosines
        assert c.big_psi == pytest.approx(0.01, rel=1e-3)
        params = ReactiveKernelParams(c, medium.k0 * user.r)
        func = lambda x, z: reactive_kernel(x, z, params)
        res = integrate_2d(
            func, Region(-1.2, 1.2, -1.2, 1.2), QuadratureSpec(rel_tol=1e-9),
            peak=(c.big_phi, c.big_theta), peak_scale=c.big_psi,
        )
        assert res.converged
        assert res.value == pytest.approx(PEAK_MIDPOINT_1E9, rel=1e-6)
        # Runtime oracle at 1e7 points (same rule, coarser grid).
        n_side = 3163
        h = 2.4 / n_side
        xs = -1.2 + (np.arange(n_side) + 0.5) * h
        partials = [
            np.sum(func(xs[i0 : i0 + 400, None], xs[None, :]))
            for i0 in range(0, n_side, 400)
        ]
        midpoint = float(np.sum(np.array(partials))) * h * h
        assert midpoint == pytest.approx(PEAK_MIDPOINT_1E9, rel=1e-6)
        assert res.value == pytest.approx(midpoint, rel=1e-6)


class TestSpdIntegral:
    def test_matches_discrete_sum(self, config, user, medium):
        eps = config.d / config.r
        for m in (25, 51, 101):
            array = config.spd_array(m, m)
            total = spd_gain_sum(array, user, medium)
            res = spd_gain_integral(array, user, medium)
            assert res.converged
            assert abs(total - res.value) / res.value <= 10 * eps * eps

    def test_midpoint_error_shrinks_with_spacing(self, config, user, medium):
        # Fixed aperture m * d, finer grids: the sum approaches the integral.
        from nfgain import SpdArray

        aperture = 25 * 0.0628
        rels = []
        for m in (25, 101, 401):
            d = aperture / m
            array = SpdArray(m_x=m, m_z=m, d=d, a=d * d)
            total = spd_gain_sum(array, user, medium)
            res = spd_gain_integral(array, user, medium)
            rels.append(abs(total - res.value) / res.value)
        assert rels[2] < rels[1] < rels[0]

    def test_large_region_approaches_limit(self, config, user, medium):
        # Half-width 50 surrogate for the infinite array.  The order-3 kernel
        # converges like 0.9 * Psi / half-width, i.e. ~0.78% here.
        m_sur = 7963  # m * eps / 2 ~ 50
        res = spd_gain_integral(config.spd_array(m_sur, m_sur), user, medium)
        limit = upa_asymptotic(user, medium, config.mu_oc, include_reactive=True).value
        gap = abs(res.value - limit) / limit
        assert gap < 0.01
        # Quadrupling the half-width shrinks the deficit accordingly.
        res2 = spd_gain_integral(config.spd_array(4 * m_sur + 1, 4 * m_sur + 1), user, medium)
        gap2 = abs(res2.value - limit) / limit
        assert gap2 < 0.3 * gap

    def test_include_reactive_flag(self, config, user, medium):
        array = config.spd_array(25, 25)
        eva = spd_gain_integral(array, user, medium, include_reactive=True).value
        rad = spd_gain_integral(array, user, medium, include_reactive=False).value
        assert eva < rad
        assert eva / rad == pytest.approx(1.0, abs=1e-4)


class TestCapIntegral:
    def test_occupation_ratio_link_at_matched_aperture(self, config, user, medium):
        array = config.spd_array(25, 25)
        cap = CapAperture(l_x=array.length_x, l_z=array.length_z)
        spd = spd_gain_integral(array, user, medium).value
        capg = cap_gain_integral(cap, user, medium).value
        assert capg * config.mu_oc == pytest.approx(spd, rel=1e-9)
        assert capg / spd == pytest.approx(math.pi, rel=1e-9)

    def test_large_aperture_approaches_limit(self, config, user, medium):
        cap = CapAperture(l_x=2000.0, l_z=2000.0)  # half-width 200 in normalized units
        res = cap_gain_integral(cap, user, medium)
        limit = cap_asymptotic(user, medium, include_reactive=True).value
        assert res.value == pytest.approx(limit, rel=3e-3)
        assert res.value < limit

    def test_thin_aperture_vanishes_linearly(self, config, user, medium):
        wide = cap_gain_integral(CapAperture(l_x=1.0, l_z=1e-3), user, medium).value
        thin = cap_gain_integral(CapAperture(l_x=1.0, l_z=5e-4), user, medium).value
        assert wide / thin == pytest.approx(2.0, rel=1e-4)


class TestUla1d:
    def test_matches_closed_form(self, config, user, medium):
        spec = QuadratureSpec(rel_tol=1e-12)
        for m in (11, 101, 1001):
            array = config.spd_array(m, 1)
            quad = ula_gain_1d(array, user, medium, spec)
            assert quad.converged
            closed = ula_gain_closed(array, user, medium)
            assert abs(closed - quad.value) / quad.value < 1e-9

    def test_requires_single_row(self, config, user, medium):
        with pytest.raises(ValueError, match="m_z"):
            ula_gain_1d(config.spd_array(11, 3), user, medium)

    def test_broadside_symmetry(self, config, medium, broadside_user):
        # Phi = 0: the integrand is even, so the full integral equals twice
        # the half-range integral.
        c = broadside_user.cosines
        params = ReactiveKernelParams(c, medium.k0 * broadside_user.r)
        func = lambda x: reactive_kernel(x, 0.0, params)
        half_width = 101 * config.d / broadside_user.r / 2
        full = integrate_1d(func, -half_width, half_width, peak=c.big_phi, peak_scale=c.a_phi)
        half = integrate_1d(func, 0.0, half_width)
        assert full.value == pytest.approx(2 * half.value, rel=1e-10)
