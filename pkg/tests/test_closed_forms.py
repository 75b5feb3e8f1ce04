import math

import pytest

from nfgain import (
    AsymptoticGain,
    Medium,
    QuadratureSpec,
    UserPosition,
    cap_asymptotic,
    ratio_spd,
    ratio_spd_threshold,
    ula_asymptotic,
    ula_gain_1d,
    ula_gain_closed,
    upa_asymptotic,
)

WAVELENGTH = 0.1256


def user_at_perpendicular_distance(rpsi: float, config) -> UserPosition:
    """User placed so that r * Psi equals the requested perpendicular distance."""
    psi = config.user().cosines.big_psi
    return UserPosition(r=rpsi / psi, theta=config.theta, phi=config.phi)


class TestUpaAsymptotic:
    def test_radiating_normalized_half(self, user, medium):
        assert upa_asymptotic(user, medium, 1.0, include_reactive=False).value == 0.5

    def test_value_at_one_wavelength(self, config, medium):
        user = user_at_perpendicular_distance(WAVELENGTH, config)
        g = upa_asymptotic(user, medium, 1.0, include_reactive=True)
        assert g.value == pytest.approx(0.4958424464039944, rel=1e-12)
        # Doubling recovers the degradation ratio anchor.
        assert 2 * g.value == pytest.approx(2 * 0.5 * 0.9916848928079888, rel=1e-12)

    def test_far_user_reduces_to_radiating(self, config, medium):
        far = UserPosition(r=1e9, theta=config.theta, phi=config.phi)
        eva = upa_asymptotic(far, medium, 0.7, include_reactive=True).value
        rad = upa_asymptotic(far, medium, 0.7, include_reactive=False).value
        assert eva == pytest.approx(rad, rel=1e-12)

    def test_occupation_ratio_validated(self, user, medium):
        with pytest.raises(ValueError, match="occupation"):
            upa_asymptotic(user, medium, 0.0)
        with pytest.raises(ValueError, match="occupation"):
            upa_asymptotic(user, medium, 1.5)

    def test_families(self, user, medium):
        assert upa_asymptotic(user, medium, 0.5, True).family == "upa_eva"
        assert upa_asymptotic(user, medium, 0.5, False).family == "upa_rad"
        with pytest.raises(ValueError, match="family"):
            AsymptoticGain(1.0, "bogus")


class TestCapAsymptotic:
    def test_bit_identical_to_unit_occupation(self, user, medium):
        for reactive in (True, False):
            cap = cap_asymptotic(user, medium, reactive)
            upa = upa_asymptotic(user, medium, 1.0, reactive)
            assert cap.value == upa.value  # exact, same arithmetic

    def test_default_scenario_value(self, user, medium):
        assert cap_asymptotic(user, medium, True).value == pytest.approx(
            0.49998579292094597, rel=1e-12
        )
        assert cap_asymptotic(user, medium, False).value == 0.5


class TestRatio:
    def test_anchor_at_one_wavelength(self, config, medium):
        user = user_at_perpendicular_distance(WAVELENGTH, config)
        assert ratio_spd(user, medium) == pytest.approx(0.9916848928079888, rel=1e-12)

    def test_crosses_one_exactly_at_threshold(self, config, medium):
        rpsi = ratio_spd_threshold(medium)
        assert rpsi == pytest.approx(math.sqrt(3 / 20) * WAVELENGTH / math.pi, rel=1e-15)
        user = user_at_perpendicular_distance(rpsi, config)
        assert ratio_spd(user, medium) == pytest.approx(1.0, abs=1e-12)

    def test_sign_flips_around_threshold(self, config, medium):
        rpsi = ratio_spd_threshold(medium)
        assert ratio_spd(user_at_perpendicular_distance(0.9 * rpsi, config), medium) > 1.0
        assert ratio_spd(user_at_perpendicular_distance(1.1 * rpsi, config), medium) < 1.0

    def test_tends_to_one_far_away(self, config, medium):
        user = UserPosition(r=1e6, theta=config.theta, phi=config.phi)
        assert ratio_spd(user, medium) == pytest.approx(1.0, abs=1e-15)

    def test_matches_cap_and_upa_limit_ratio(self, user, medium):
        # The same expression governs both array families.
        cap_ratio = cap_asymptotic(user, medium, True).value / cap_asymptotic(user, medium, False).value
        upa_ratio = (
            upa_asymptotic(user, medium, 0.37, True).value
            / upa_asymptotic(user, medium, 0.37, False).value
        )
        assert cap_ratio == pytest.approx(ratio_spd(user, medium), rel=1e-14)
        assert upa_ratio == pytest.approx(ratio_spd(user, medium), rel=1e-14)


class TestUlaClosed:
    def test_requires_single_row(self, config, user, medium):
        with pytest.raises(ValueError, match="m_z"):
            ula_gain_closed(config.spd_array(11, 3), user, medium)

    def test_matches_quadrature(self, config, user, medium):
        spec = QuadratureSpec(rel_tol=1e-12)
        for m in (11, 101, 1001):
            array = config.spd_array(m, 1)
            quad = ula_gain_1d(array, user, medium, spec).value
            assert ula_gain_closed(array, user, medium) == pytest.approx(quad, rel=1e-9)

    def test_projection_outside_array_still_consistent(self, config, medium):
        # Phi = 0.25 with half-extent 0.069 at m = 11: the projected user point
        # lies outside the array; both branch signs must still be summed.
        user = config.user()
        array = config.spd_array(11, 1)
        eps = config.d / config.r
        assert abs(user.cosines.big_phi) > array.m_x * eps / 2
        quad = ula_gain_1d(array, user, medium, QuadratureSpec(rel_tol=1e-12)).value
        assert ula_gain_closed(array, user, medium) == pytest.approx(quad, rel=1e-10)

    def test_broadside_doubles_single_branch(self, config, medium, broadside_user):
        array = config.spd_array(101, 1)
        c = broadside_user.cosines
        assert c.big_phi == pytest.approx(0.0, abs=1e-15)
        # Single-branch oracle evaluated by hand at x = half-extent.
        a2 = c.a_phi_sq
        x = array.m_x * (config.d / config.r) / 2
        s = math.sqrt(x * x + a2)
        c2 = 1.0 / (medium.k0 * broadside_user.r) ** 2
        t3 = x / (a2 * s)
        t5 = x * (3 * a2 + 2 * x * x) / (3 * a2 * a2 * (a2 + x * x) * s)
        t7 = x * (15 * a2 * a2 + 20 * a2 * x * x + 8 * x**4) / (
            15 * a2**3 * (a2 + x * x) ** 2 * s
        )
        pref = config.element_area * c.big_psi / (4 * math.pi * config.d * broadside_user.r)
        expected = pref * 2 * (t3 - c2 * t5 + c2 * c2 * t7)
        assert ula_gain_closed(array, broadside_user, medium) == pytest.approx(
            expected, rel=1e-13
        )

    def test_large_count_reaches_asymptotic(self, config, user, medium):
        closed = ula_gain_closed(config.spd_array(10_000_001, 1), user, medium)
        limit = ula_asymptotic(user, medium, config.d, config.element_area, True).value
        assert closed == pytest.approx(limit, rel=1e-4)


class TestUlaAsymptotic:
    def test_ratio_anchor_at_one_wavelength(self, config):
        medium = Medium(wavelength=WAVELENGTH)
        a_phi = config.user().cosines.a_phi
        user = UserPosition(r=WAVELENGTH / a_phi, theta=config.theta, phi=config.phi)
        eva = ula_asymptotic(user, medium, config.d, config.element_area, True).value
        rad = ula_asymptotic(user, medium, config.d, config.element_area, False).value
        assert eva / rad == pytest.approx(0.9834553354680998, rel=1e-12)
        # Same number from the direct bracket at k0 * r * a_phi = 2 pi.
        direct = 1 - (2 / 3) / (4 * math.pi**2) + (8 / 15) / (16 * math.pi**4)
        assert eva / rad == pytest.approx(direct, rel=1e-10)

    def test_ratio_tends_to_one(self, config, medium):
        user = UserPosition(r=1e3, theta=config.theta, phi=config.phi)
        eva = ula_asymptotic(user, medium, config.d, config.element_area, True).value
        rad = ula_asymptotic(user, medium, config.d, config.element_area, False).value
        assert eva / rad == pytest.approx(1.0, abs=1e-9)
        assert eva < rad  # still strictly degraded while the term is representable
