"""Special-function layer: values, identities, monotonicity, quadrature."""

import math

import mpmath as mp
import numpy as np
import pytest

from magnus2.specfun import (ReFamily, ac, as_at, cos_big, ell, g_loxo,
                             j_pi_constant, j_upper, jj_integrand, quad_gk,
                             re_family, script_ef, sin_big)

mp.mp.dps = 40


def test_cos_sin_special_values():
    assert cos_big(0.0) == pytest.approx(1.0)
    assert sin_big(0.0) == pytest.approx(1.0)
    assert cos_big(math.pi ** 2) == pytest.approx(-1.0, abs=1e-15)
    assert sin_big(-1.0) == pytest.approx(math.sinh(1.0), rel=1e-15)


def test_cos_sin_fundamental_identity(rng):
    # z = (1 - Cos^2)/Sin^2 wherever Sin is not tiny
    done = 0
    while done < 100:
        z = complex(*rng.uniform(-4, 4, 2))
        s = sin_big(z)
        if abs(s) < 1e-6:
            continue
        assert abs((1 - cos_big(z) ** 2) / s ** 2 - z) < 1e-10 * max(1, abs(z))
        done += 1


def test_cos_sin_derivatives(rng):
    h = 1e-6
    for _ in range(40):
        z = rng.uniform(-5, 5)
        dcos = (cos_big(z + h) - cos_big(z - h)) / (2 * h)
        assert dcos == pytest.approx(-0.5 * sin_big(z), abs=1e-6)
        dsin = (sin_big(z + h) - sin_big(z - h)) / (2 * h)
        if abs(z) > 0.1:
            assert dsin == pytest.approx((cos_big(z) - sin_big(z)) / (2 * z),
                                         abs=1e-6)


class TestAC:
    def test_special_values(self):
        assert ac(1.0) == 1.0
        assert ac(0.0) == pytest.approx(math.pi / 2)

    def test_cut_raises(self):
        with pytest.raises(ValueError):
            ac(-1.0)
        with pytest.raises(ValueError):
            ac(-3.0)
        with pytest.raises(ValueError):
            ac(complex(-2.0, 0.0))

    def test_branch_values(self):
        for x in (0.95001, 0.94999, 1.04999, 1.05001, -0.999, 7.0):
            if x < 1:
                ref = mp.acos(x) / mp.sqrt(1 - mp.mpf(x) ** 2)
            else:
                ref = mp.acosh(x) / mp.sqrt(mp.mpf(x) ** 2 - 1)
            assert ac(x) == pytest.approx(float(ref), rel=1e-14)

    def test_inverse_relation(self):
        # AC(Cos(x)) = 1/Sin(x) on (-inf, pi^2)
        for x in (-4.0, -1.0, 0.5, 2.0, 9.0):
            assert ac(cos_big(x)) == pytest.approx(1.0 / sin_big(x), rel=1e-12)

    def test_derivative_ode(self, rng):
        # AC' = (z AC - 1)/(1 - z^2) off the cut and away from +-1
        h = 1e-6
        done = 0
        while done < 50:
            x = rng.uniform(-0.98, 6.0)
            if abs(x - 1.0) < 0.02:
                continue
            fd = (ac(x + h) - ac(x - h)) / (2 * h)
            assert fd == pytest.approx((x * ac(x) - 1) / (1 - x * x), abs=1e-6)
            done += 1

    def test_monotone_decreasing(self):
        xs = np.linspace(-0.999, 8.0, 100)
        vals = [ac(float(x)) for x in xs]
        assert all(b < a for a, b in zip(vals, vals[1:]))

    def test_asymptotic_ratio(self, rng):
        # AC(y2-1)/AC(y1-1) < sqrt(y1/y2) for 0 < y1 < y2
        for _ in range(50):
            y1, y2 = sorted(rng.uniform(1e-3, 6.0, 2))
            if y2 - y1 < 1e-6:
                continue
            assert ac(y2 - 1) / ac(y1 - 1) < math.sqrt(y1 / y2)

    def test_complex_matches_integral(self):
        def ac_int(z):
            re = quad_gk(lambda t: (1.0 / (1 + 2 * t * (1 - t) * (z - 1))).real, 0, 1)
            im = quad_gk(lambda t: (1.0 / (1 + 2 * t * (1 - t) * (z - 1))).imag, 0, 1)
            return complex(re, im)

        for z in (0.3 + 0.4j, -2 + 0.01j, 1.2 - 3j, 0.98 + 0.001j, 2.5 + 0j):
            assert abs(ac(complex(z)) - ac_int(complex(z))) < 1e-9


class TestASAT:
    def test_values_at_one(self):
        asv, atv = as_at(1.0)
        assert asv == pytest.approx(math.sqrt(3) / 3, abs=1e-14)
        assert atv == pytest.approx(0.0, abs=1e-14)

    def test_formula_off_band(self):
        for x in (-0.8, 0.3, 0.94999, 1.05001, 3.0):
            asv, atv = as_at(x)
            want = math.sqrt((ac(x) ** 2 - 1) / (1 - x * x))
            assert asv == pytest.approx(want, rel=1e-12)
            assert atv == pytest.approx((ac(x) - 1) / want, rel=1e-10, abs=1e-12)

    def test_as_monotone_decreasing(self):
        xs = np.linspace(-0.99, 5.0, 200)
        vals = [as_at(float(x))[0] for x in xs]
        assert all(b < a for a, b in zip(vals, vals[1:]))

    def test_x_plus_at_monotone(self):
        xs = np.linspace(-0.99, 1.0, 50)
        vals = [x + as_at(float(x))[1] for x in xs]
        assert all(b > a for a, b in zip(vals, vals[1:]))


FAMILY_ZERO = {
    "C": 1 / 3, "D": 1 / 3, "W": 2 / 45, "P": 1 / 15,
    "G": 1 / 15, "L": 1 / 135, "X": 16 / 2835,
}


class TestReFamily:
    def test_values_at_zero(self):
        for tag, want in FAMILY_ZERO.items():
            assert re_family(tag, 0.0) == pytest.approx(want, rel=1e-15)

    def test_pole_orders_metadata(self):
        orders = {t.tag: t.pole_order for t in ReFamily}
        assert orders == {"C": 1, "D": 2, "W": 2, "P": 1, "G": 3, "L": 3, "X": 3}

    @pytest.mark.parametrize("x", [-10.0, -1.0, 0.3, 5.0, 9.0])
    def test_product_identities(self, x):
        c = re_family("C", x)
        d = re_family("D", x)
        w = re_family("W", x)
        p = re_family("P", x)
        g = re_family("G", x)
        el = re_family("L", x)
        xx = re_family("X", x)
        assert c * c == pytest.approx(w + p, abs=1e-12, rel=1e-11)
        assert c * d == pytest.approx(w + g, abs=1e-12, rel=1e-11)
        assert c * g == pytest.approx(d * w + el, abs=1e-12, rel=1e-11)
        assert p * d == pytest.approx(c * w + el, abs=1e-12, rel=1e-11)
        assert g * p == pytest.approx(c * el + w * w, abs=1e-12, rel=1e-11)
        assert c * c * d == pytest.approx(c * w + d * w + el, abs=1e-12, rel=1e-11)
        assert c * p + 2 * c * w == pytest.approx(el + w, abs=1e-12, rel=1e-11)
        assert xx > 0.0

    def test_positive_and_increasing(self):
        xs = np.linspace(-20.0, math.pi ** 2 - 0.1, 100)
        for tag in ReFamily:
            vals = [re_family(tag, float(x)) for x in xs]
            assert all(v > 0 for v in vals)
            assert all(b > a for a, b in zip(vals, vals[1:]))

    def test_pole_proximity_error(self):
        with pytest.raises(ValueError):
            re_family("C", math.pi ** 2 + 1e-9)
        with pytest.raises(ValueError):
            re_family("D", (2 * math.pi) ** 2 - 1e-9)

    def test_series_band_continuity(self):
        for tag in ReFamily:
            for edge in (0.25, -0.25):
                lo = re_family(tag, edge - 1e-7)
                hi = re_family(tag, edge + 1e-7)
                assert lo == pytest.approx(hi, rel=1e-6)
            # inside the band the series agrees with high-precision values
            import mpmath as mp
            mp.mp.dps = 40
            x = mp.mpf("0.2")
            cot = mp.sqrt(x) * mp.cos(mp.sqrt(x)) / mp.sin(mp.sqrt(x))
            forms = {
                "C": (1 - cot) / x,
                "D": (cot ** 2 + x - 1) / x,
                "W": (cot ** 2 + cot + x - 2) / x ** 2,
                "P": (-3 * cot - x + 3) / x ** 2,
                "G": (-cot ** 3 - x * cot + 1) / x ** 2,
                "L": (-2 * cot ** 3 - x * cot ** 2 + 3 * cot ** 2
                      - 2 * x * cot - x ** 2 + 3 * x - 1) / x ** 3,
                "X": (-2 * cot ** 3 - 3 * cot ** 2 - 2 * x * cot - 3 * cot
                      - 3 * x + 8) / (3 * x ** 3),
            }
            assert re_family(tag, 0.2) == pytest.approx(
                float(forms[tag.tag]), rel=1e-13)


class TestScriptEF:
    def test_special_values(self):
        e0, f0 = script_ef(0.0)
        assert e0 == pytest.approx(math.sqrt(3), abs=1e-14)
        assert f0 == pytest.approx(1 / math.sqrt(3), abs=1e-14)
        epi, fpi = script_ef(math.pi ** 2)
        assert epi == pytest.approx(0.0, abs=1e-12)
        assert fpi == pytest.approx(1 / math.pi, abs=1e-12)

    def test_matches_inverse_sqrt_d(self):
        for x in (-7.0, -1.0, 0.7, 5.0, 9.0):
            e, f = script_ef(x)
            d = re_family("D", x)
            assert e == pytest.approx(1 / math.sqrt(d), rel=1e-12)
            assert f == pytest.approx(re_family("C", x) / math.sqrt(d), rel=1e-12)

    @pytest.mark.parametrize("x", [-2.0, 1.0, 6.0])
    def test_derivatives(self, x):
        h = 1e-6
        de = (script_ef(x + h)[0] - script_ef(x - h)[0]) / (2 * h)
        df = (script_ef(x + h)[1] - script_ef(x - h)[1]) / (2 * h)
        e = script_ef(x)[0]
        assert de == pytest.approx(-0.5 * re_family("G", x) * e ** 3, abs=1e-6)
        assert df == pytest.approx(-0.5 * re_family("L", x) * e ** 3, abs=1e-6)

    def test_decreasing_up_to_pi_squared(self):
        xs = np.linspace(-10.0, math.pi ** 2, 80)
        es = [script_ef(float(x))[0] for x in xs]
        fs = [script_ef(float(x))[1] for x in xs]
        assert all(b < a for a, b in zip(es, es[1:]))
        assert all(b < a for a, b in zip(fs, fs[1:]))


class TestGrowthFunctions:
    def test_ell_equation(self):
        for p in (0.3, 1.0, math.pi, 10.0):
            x = ell(p)
            assert 0 < x < math.pi / 2
            assert x + p * math.sin(x) == pytest.approx(math.pi / 2, abs=1e-12)

    def test_ell_pi_value(self):
        assert ell(math.pi) == pytest.approx(0.386519539, abs=1e-8)

    def test_j_small_p_series(self):
        # J(p) = p + p^3/6 - p^5/72 + 211 p^7/15120 + O(p^9)
        for p in (0.05, 0.1, 0.2):
            resid = j_upper(p) - (p + p ** 3 / 6 - p ** 5 / 72)
            assert resid / (211 / 15120 * p ** 7) == pytest.approx(1.0, abs=0.05)

    def test_j_pi_constant(self):
        assert j_pi_constant() == pytest.approx(-3.0222, abs=5e-4)

    def test_j_pi_extrapolation(self):
        # J(p) - pi sqrt((pi+p)/(pi-p)) -> J_pi as p -> pi
        jpi = j_pi_constant()
        errs = []
        for eps in (1e-3, 1e-4):
            p = math.pi - eps
            val = j_upper(p) - math.pi * math.sqrt((math.pi + p) / (math.pi - p))
            errs.append(abs(val - jpi))
        assert errs[1] < errs[0]
        assert errs[1] < 5e-4

    def test_jj_integrand_finite_at_midpoint(self):
        # the J_pi integrand (with the 2/cos^2 subtraction) stays finite
        from magnus2.specfun import _jpi_integrand
        vals = [_jpi_integrand(math.pi / 2 + u) for u in (-1e-3, 0.0, 1e-3)]
        assert all(abs(v) < 1.0 for v in vals)
        assert _jpi_integrand(math.pi / 2) == pytest.approx(-0.5, abs=1e-12)

    def test_g_loxo_special_value(self):
        want = (math.pi / 2) * math.exp(math.pi / 2)
        assert g_loxo(math.pi / 2) == pytest.approx(want, rel=1e-14)

    def test_g_loxo_monotone(self):
        ps = np.linspace(math.pi / 2, math.pi - 1e-3, 50)
        vals = [g_loxo(float(p)) for p in ps]
        assert all(b > a for a, b in zip(vals, vals[1:]))


class TestQuadrature:
    def test_polynomial_exact(self):
        assert quad_gk(lambda x: x ** 4, 0.0, 1.0) == pytest.approx(0.2, abs=1e-14)

    def test_vs_mpmath(self):
        val = quad_gk(lambda x: math.exp(-x * x), -3.0, 3.0)
        ref = float(mp.quad(lambda x: mp.exp(-x * x), [-3, 3]))
        assert val == pytest.approx(ref, abs=1e-10)

    def test_needs_subdivision(self):
        val = quad_gk(lambda x: 1.0 / math.sqrt(abs(x) + 1e-6), -1.0, 1.0)
        ref = float(mp.quad(lambda x: 1 / mp.sqrt(abs(x) + 1e-6), [-1, 0, 1]))
        assert val == pytest.approx(ref, rel=1e-8)

    def test_deterministic(self):
        f = lambda x: math.sin(17 * x) / (1 + x * x)
        assert quad_gk(f, 0, 5) == quad_gk(f, 0, 5)
