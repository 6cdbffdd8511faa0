import cmath
import math

import numpy as np
import pytest

from sectionzeros import (IntegrandSpec, SlitProximityError, WatsonProblem,
                          evaluate_F, F_asymptotic, gauss_jacobi_rule, moment,
                          moment_asymptotic, moment_closed_form, tail_asymptotic,
                          tail_integral, watson_check)


def beta_real(x: float, y: float) -> float:
    return math.exp(math.lgamma(x) + math.lgamma(y) - math.lgamma(x + y))


def jacobi_monomial_oracle(alpha: float, beta: float, j: int) -> float:
    """int_{-1}^{1} (1-x)^alpha (1+x)^beta x^j dx via the Beta function.

    Substituting x = 2u - 1 and expanding (2u-1)^j binomially gives a short
    exact sum independent of any quadrature code.
    """
    total = 0.0
    for i in range(j + 1):
        total += (math.comb(j, i) * 2.0 ** i * (-1.0) ** (j - i)
                  * beta_real(beta + i + 1, alpha + 1))
    return 2.0 ** (alpha + beta + 1) * total


class TestGaussJacobi:
    def test_midpoint_legendre(self):
        nodes, weights = gauss_jacobi_rule(0.0, 0.0, 1)
        assert nodes[0] == pytest.approx(0.0, abs=1e-15)
        assert weights[0] == pytest.approx(2.0, rel=1e-14)

    def test_chebyshev(self):
        m = 9
        nodes, weights = gauss_jacobi_rule(-0.5, -0.5, m)
        expected = np.cos((2 * np.arange(1, m + 1) - 1) * math.pi / (2 * m))
        assert np.allclose(np.sort(nodes), np.sort(expected), atol=1e-13)
        assert np.allclose(weights, math.pi / m, atol=1e-13)

    def test_beta_moment_oracle(self):
        alpha, beta, m = 1.5, -0.5, 8
        nodes, weights = gauss_jacobi_rule(alpha, beta, m)
        for j in range(16):  # exact through degree 2m - 1
            got = float(np.sum(weights * nodes ** j))
            want = jacobi_monomial_oracle(alpha, beta, j)
            assert got == pytest.approx(want, rel=1e-12, abs=1e-13)

    def test_invalid_args(self):
        with pytest.raises(ValueError):
            gauss_jacobi_rule(-1.0, 0.0, 4)
        with pytest.raises(ValueError):
            gauss_jacobi_rule(0.0, 0.0, 0)


class TestMoment:
    def test_uniform(self, uniform_spec):
        for k in (0, 1, 5, 12):
            mv = moment(uniform_spec, k)
            assert mv.value == pytest.approx(1.0 / (k + 1), rel=1e-12)
            assert mv.converged

    def test_arcsine(self, arcsine_spec):
        assert moment(arcsine_spec, 0).value == pytest.approx(math.pi, rel=1e-12)
        assert abs(moment(arcsine_spec, 1).value) < 1e-12

    def test_fig3_matches_closed_form(self, fig3_spec):
        mv = moment(fig3_spec, 5)
        cf = moment_closed_form(fig3_spec, 5)
        assert mv.value == pytest.approx(cf, rel=1e-11)

    def test_negative_index_rejected(self, uniform_spec):
        with pytest.raises(ValueError):
            moment(uniform_spec, -1)


class TestClosedForm:
    def test_uniform_quarter(self, uniform_spec):
        assert moment_closed_form(uniform_spec, 3) == pytest.approx(0.25, rel=1e-13)

    def test_arcsine_pi(self, arcsine_spec):
        assert moment_closed_form(arcsine_spec, 0) == pytest.approx(
            math.pi, rel=1e-13)

    def test_fig2_k10_cross_route(self, fig2_spec):
        cf = moment_closed_form(fig2_spec, 10)
        mv = moment(fig2_spec, 10)
        assert abs(mv.value - cf) <= 1e-10 * max(1.0, abs(cf))

    def test_matrix_agreement(self, fig2_spec, fig3_spec, bessel0_spec,
                              bessel25_spec):
        for spec in (fig2_spec, fig3_spec, bessel0_spec, bessel25_spec):
            for k in range(0, 51, 5):
                cf = moment_closed_form(spec, k)
                mv = moment(spec, k)
                assert abs(mv.value - cf) <= 1e-9 * max(1.0, abs(cf)), \
                    f"{spec.name} k={k}"

    def test_polynomial_smooth_factor(self):
        # g(t) = 2 + t against the uniform weight: m_k = 2/(k+1) + 1/(k+2)
        spec = IntegrandSpec(0.0, 1.0, 0.0, 0.0, g=(2.0, 1.0))
        for k in (0, 3, 7):
            want = 2.0 / (k + 1) + 1.0 / (k + 2)
            assert moment_closed_form(spec, k) == pytest.approx(want, rel=1e-12)
            assert moment(spec, k).value == pytest.approx(want, rel=1e-11)


class TestMomentAsymptotic:
    def test_bessel_even_formula(self, bessel0_spec):
        # both endpoint terms equal: 2 f1(0) Gamma(1/2) n^{-1/2} = sqrt(2 pi/n)
        for n in (10, 50, 200):
            want = math.sqrt(2.0 * math.pi / n)
            assert moment_asymptotic(bessel0_spec, n) == pytest.approx(
                want, rel=1e-12)

    def test_bessel_odd_cancels(self, bessel0_spec):
        assert abs(moment_asymptotic(bessel0_spec, 11)) < 1e-14

    def test_ratio_tends_to_one(self, bessel0_spec):
        errs = []
        for n in (20, 40, 80, 160):
            ratio = moment(bessel0_spec, n).value / moment_asymptotic(bessel0_spec, n)
            errs.append(n * abs(ratio - 1.0))
        assert max(errs) < 2.0  # O(1/n) error order, constant recorded here

    def test_fig3_ratio_tends_to_one(self, fig3_spec):
        devs = []
        for n in (40, 80, 160):
            ratio = moment(fig3_spec, n).value / moment_asymptotic(fig3_spec, n)
            devs.append(abs(ratio - 1.0))
        assert devs[-1] < devs[0]
        assert devs[-1] < 0.05


class TestEvaluateF:
    def test_zero_is_first_moment(self, fig2_spec):
        assert evaluate_F(fig2_spec, 0.0) == pytest.approx(
            moment(fig2_spec, 0).value, rel=1e-11)

    def test_uniform_closed_form(self, uniform_spec):
        want = (math.exp(2.0) - 1.0) / 2.0
        assert evaluate_F(uniform_spec, 2.0) == pytest.approx(want, rel=1e-12)

    @pytest.mark.parametrize("y", [1.0, 10.0, 100.0])
    def test_imaginary_axis_bound(self, fig2_spec, y):
        # |F(iy)| <= int |phi|; the right side is the k = 0 moment of |phi|
        aspec = IntegrandSpec(fig2_spec.a, fig2_spec.b, fig2_spec.mu.real,
                              fig2_spec.nu.real)
        bound = moment(aspec, 0).value.real
        assert abs(evaluate_F(fig2_spec, 1j * y)) <= bound + 1e-10


class TestFAsymptotic:
    @pytest.mark.parametrize("z", [-0.4, 0.4])
    def test_ratio_limit(self, bessel0_spec, z):
        prev = None
        for n in (25, 50, 100, 200):
            ratio = evaluate_F(bessel0_spec, n * z) / F_asymptotic(bessel0_spec, n, z)
            err = abs(ratio - 1.0)
            assert n * err < 3.0  # O(1/n) error order
            prev = err

    def test_axis_rejected(self, bessel0_spec):
        with pytest.raises(ValueError):
            F_asymptotic(bessel0_spec, 10, 1j)


class TestTail:
    def test_z_zero_is_shifted_moment(self, fig2_spec):
        n = 12
        got = tail_integral(fig2_spec, 0.0, n)
        want = moment_closed_form(fig2_spec, n + 1)
        assert got == pytest.approx(want, rel=1e-10)
        # the asymptotic side reduces to the (n+1)-moment approximation
        ta = tail_asymptotic(fig2_spec, 0.0, n)
        ma = moment_asymptotic(fig2_spec, n + 1)
        assert abs(ta - ma) / abs(ma) < 0.2

    def test_bessel_ratio_on_imaginary_point(self, bessel0_spec):
        errs = []
        for n in (20, 40, 80):
            got = tail_integral(bessel0_spec, 0.5j, n)
            ta = tail_asymptotic(bessel0_spec, 0.5j, n)
            errs.append(abs(got / ta - 1.0))
        assert errs[-1] < errs[0]
        assert errs[-1] < 0.05

    def test_fig2_ratio(self, fig2_spec):
        errs = []
        for n in (20, 40, 80):
            got = tail_integral(fig2_spec, 0.3, n)
            ta = tail_asymptotic(fig2_spec, 0.3, n)
            errs.append(abs(got / ta - 1.0))
        assert errs[-1] < errs[0]

    def test_slit_rejected(self, bessel0_spec):
        with pytest.raises(SlitProximityError):
            tail_integral(bessel0_spec, 2.0, 10)  # on the slit [1/b, inf)
        with pytest.raises(SlitProximityError):
            tail_integral(bessel0_spec, -1.5, 10)


class TestWatson:
    def test_sigma_zero_closed_form(self):
        prob = WatsonProblem(0.0, 1.0)
        rows = watson_check(prob, [5.0, 20.0, 60.0])
        for r in rows:
            exact = (1.0 - math.exp(-r.lam)) / r.lam
            assert r.numeric == pytest.approx(exact, rel=1e-11)
            assert r.leading == pytest.approx(1.0 / r.lam, rel=1e-13)
            # scaled error = lam^2 e^{-lam}/lam -> 0
            assert r.scaled_error == pytest.approx(
                r.lam * math.exp(-r.lam), rel=1e-6, abs=1e-12)

    def test_sigma_minus_half_bounded(self):
        prob = WatsonProblem(-0.5, 1.0, h=(1.0, 1.0))  # h = 1 + t
        rows = watson_check(prob, list(np.geomspace(10, 1000, 6)))
        # scaled error tends to |h'(0) Gamma(sigma + 2)| = Gamma(3/2)
        limit = math.gamma(1.5)
        for r in rows:
            assert r.scaled_error < 2.0 * limit + 0.5
        assert rows[-1].scaled_error == pytest.approx(limit, rel=0.1)

    def test_corollary_side_bounded(self):
        prob = WatsonProblem(1.0, 1.0, h=(1.0, 0.5), side="right")
        rows = watson_check(prob, list(np.geomspace(10, 1000, 6)))
        limit = 0.5 * math.gamma(3.0)
        for r in rows:
            assert r.scaled_error < 2.0 * limit + 0.5

    def test_validation(self):
        with pytest.raises(ValueError):
            WatsonProblem(-1.5, 1.0)
        with pytest.raises(ValueError):
            WatsonProblem(0.0, 0.0)
        with pytest.raises(ValueError):
            WatsonProblem(0.0, 1.0, h=(0.0, 1.0))
        with pytest.raises(ValueError):
            watson_check(WatsonProblem(0.0, 1.0), [-1.0])
