import cmath
import math

import mpmath as mp
import numpy as np
import pytest
from scipy.integrate import quad

from sectionzeros import (PoleError, complex_erfc, complex_gamma,
                          complex_log_gamma, first_erfc_zero_upper, real_power)
from sectionzeros.specfun import NonConvergenceError

# golden values frozen from a 30-digit computation
T1_GOLDEN = -1.35481012811200624889985054089 + 1.99146684283387957728215784262j
CVW_GOLDEN = 0.636656714721873328
GAMMA_1PI = 0.498015668118356042713691117462 - 0.154949828301810685124955130484j
ERFC_2 = 0.00467773498104726583793074363275


def erfc_integral_oracle(z: complex) -> complex:
    """(2/sqrt(pi)) int_z^inf e^{-t^2} dt along the rightward ray t = z + s."""
    def f(s, part):
        v = cmath.exp(-(z + s) ** 2)
        return v.real if part == 0 else v.imag

    re, _ = quad(f, 0.0, 40.0, args=(0,), limit=400)
    im, _ = quad(f, 0.0, 40.0, args=(1,), limit=400)
    return 2.0 / math.sqrt(math.pi) * complex(re, im)


class TestGamma:
    def test_gamma_one(self):
        assert complex_gamma(1.0) == pytest.approx(1.0, rel=1e-14)

    def test_gamma_half(self):
        assert complex_gamma(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-14)

    def test_gamma_one_plus_i_frozen(self):
        assert complex_gamma(1 + 1j) == pytest.approx(GAMMA_1PI, rel=1e-13)

    def test_gamma_against_multiprecision_grid(self):
        rng = np.random.default_rng(11)
        with mp.workdps(30):
            for _ in range(150):
                x = rng.uniform(-50, 50)
                y = rng.uniform(-50, 50)
                if x * x + y * y > 2500:
                    continue
                if abs(y) < 0.05 and x < 0.5:
                    continue
                z = complex(x, y)
                ref = complex(mp.gamma(mp.mpc(x, y)))
                assert complex_gamma(z) == pytest.approx(ref, rel=1e-12)

    def test_recurrence(self):
        rng = np.random.default_rng(5)
        for _ in range(200):
            z = complex(rng.uniform(-20, 20), rng.uniform(-20, 20))
            if abs(z.imag) < 0.1 and z.real < 0.5:
                continue
            lhs = complex_gamma(z + 1)
            rhs = z * complex_gamma(z)
            assert lhs == pytest.approx(rhs, rel=1e-11)

    @pytest.mark.parametrize("z", [0.0, -1.0, -7.0])
    def test_pole_raises(self, z):
        with pytest.raises(PoleError):
            complex_gamma(z)

    def test_log_gamma_consistent(self):
        rng = np.random.default_rng(3)
        for _ in range(60):
            z = complex(rng.uniform(-15, 30), rng.uniform(-20, 20))
            if abs(z.imag) < 0.1 and z.real < 0.5:
                continue
            assert cmath.exp(complex_log_gamma(z)) == pytest.approx(
                complex_gamma(z), rel=1e-10)


class TestErfc:
    def test_at_zero(self):
        assert complex_erfc(0.0) == pytest.approx(1.0, rel=1e-14)

    def test_reflection_specific(self):
        z = 0.7 + 0.3j
        assert complex_erfc(z) + complex_erfc(-z) == pytest.approx(2.0, abs=1e-13)

    def test_erfc_2_against_integral_oracle(self):
        oracle = erfc_integral_oracle(2.0)
        assert oracle == pytest.approx(ERFC_2, rel=1e-10)  # oracle sanity
        assert complex_erfc(2.0) == pytest.approx(oracle, rel=1e-10)

    def test_complex_point_against_integral_oracle(self):
        z = 1.3 - 0.8j
        assert complex_erfc(z) == pytest.approx(erfc_integral_oracle(z), rel=1e-9)

    def test_reflection_random_grid(self):
        # the identity erfc(z) + erfc(-z) = 2 holds to relative accuracy of
        # the larger summand; erfc reaches ~e^100 on this grid
        rng = np.random.default_rng(42)
        for _ in range(300):
            z = complex(rng.uniform(-10, 10), rng.uniform(-10, 10))
            v = complex_erfc(z)
            total = v + complex_erfc(-z)
            assert abs(total - 2.0) < 1e-10 * max(1.0, abs(v))

    def test_against_multiprecision_grid(self):
        rng = np.random.default_rng(7)
        with mp.workdps(30):
            for _ in range(200):
                z = complex(rng.uniform(-10, 10), rng.uniform(-10, 10))
                ref = complex(mp.erfc(mp.mpc(z)))
                assert complex_erfc(z) == pytest.approx(ref, rel=1e-10)


class TestFirstErfcZero:
    def test_constant_matches_reported_value(self):
        res = first_erfc_zero_upper()
        assert abs(res.cvw_constant - 0.636657) < 1e-4

    def test_is_a_zero(self):
        res = first_erfc_zero_upper()
        assert abs(complex_erfc(res.t1)) < 1e-10
        assert res.residual < 1e-10
        assert res.t1.imag > 0

    def test_golden_location(self):
        res = first_erfc_zero_upper()
        assert res.t1 == pytest.approx(T1_GOLDEN, abs=1e-10)
        assert res.cvw_constant == pytest.approx(CVW_GOLDEN, abs=1e-10)


class TestRealPower:
    def test_base_one(self):
        assert real_power(1.0, 3.7 - 2.2j) == pytest.approx(1.0, rel=1e-14)

    def test_sqrt(self):
        assert real_power(4.0, 0.5) == pytest.approx(2.0, rel=1e-14)

    def test_unimodular(self):
        assert abs(real_power(2.0, 1j)) == pytest.approx(1.0, rel=1e-14)

    def test_additivity(self):
        rng = np.random.default_rng(1)
        for _ in range(100):
            x = rng.uniform(0.01, 50.0)
            w1 = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
            w2 = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
            lhs = real_power(x, w1 + w2)
            rhs = real_power(x, w1) * real_power(x, w2)
            assert lhs == pytest.approx(rhs, rel=1e-12)

    def test_domain_error(self):
        with pytest.raises(ValueError):
            real_power(-1.0, 0.5)
        with pytest.raises(ValueError):
            real_power(0.0, 0.5)
