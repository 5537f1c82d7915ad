import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from orlicz_lorentz import Custom, ExpM, NumericConjugate, OrliczFn, Power, conjugate, young_gap
from orlicz_lorentz.orlicz import is_n_function, midpoint_convex

from .strategies import orlicz_fns


def expm_star(s):
    return (1.0 + s) * np.log1p(s) - s


class TestEval:
    def test_power_example(self):
        assert Power(2, 1).eval(2.5) == 6.25

    @pytest.mark.parametrize("phi", [Power(2, 1), Power(3.5, 0.2), ExpM()])
    def test_zero(self, phi):
        assert phi.eval(0.0) == 0.0

    def test_expm_one(self):
        assert ExpM().eval(1.0) == pytest.approx(math.e - 2, rel=1e-15)

    def test_expm_small_argument_accuracy(self):
        assert ExpM().eval(1e-8) == pytest.approx(5e-17, rel=1e-7)

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            Power(2, 1).eval(-1.0)

    def test_array_eval(self):
        assert Power(2, 1).eval(np.array([1.0, 2.0])).tolist() == [1.0, 4.0]

    def test_power_validation(self):
        with pytest.raises(ValueError):
            Power(1.0, 1.0)
        with pytest.raises(ValueError):
            Power(2.0, 0.0)

    def test_dict_round_trip(self):
        for phi in (Power(2.5, 0.3), ExpM()):
            assert OrliczFn.from_dict(phi.to_dict()).eval(1.7) == phi.eval(1.7)
        with pytest.raises(ValueError):
            OrliczFn.from_dict({"family": "nope"})


class TestInverse:
    def test_power(self):
        assert Power(2, 1).inverse(4.0) == pytest.approx(2.0, rel=1e-15)

    @pytest.mark.parametrize("phi", [Power(2, 1), ExpM(), Custom(lambda t: t * t * (1 + t))])
    def test_zero(self, phi):
        assert phi.inverse(0.0) == 0.0

    def test_expm_round_trip(self):
        assert ExpM().inverse(math.e - 2) == pytest.approx(1.0, abs=1e-10)

    @given(orlicz_fns(), st.floats(1e-6, 1e3))
    def test_round_trip(self, phi, y):
        assert phi.eval(phi.inverse(y)) == pytest.approx(y, rel=1e-9)


class TestConvexity:
    @given(orlicz_fns(), st.floats(0, 20), st.floats(0, 20))
    def test_midpoint(self, phi, x, y):
        assert midpoint_convex(phi, x, y)

    @pytest.mark.parametrize("phi", [Power(2, 1), Power(1.3, 4.0), ExpM()])
    def test_n_function_limits(self, phi):
        assert phi.eval(1e-8) / 1e-8 < min(phi.eval(1e-4) / 1e-4, 0.05)
        assert phi.eval(50.0) / 50.0 > 10.0
        assert is_n_function(phi)

    def test_custom_check(self):
        assert Custom(lambda t: t**2 + t**4).check_n_function()
        linear = Custom(lambda t: 3.0 * t, n_function=False)
        assert not linear.check_n_function()
        assert not is_n_function(linear)
        with pytest.raises(ValueError):
            linear.conjugate()


class TestConjugate:
    def test_self_conjugate(self):
        assert Power(2, 0.5).conjugate() == Power(2, 0.5)

    def test_young_pair(self):
        star = Power(3, 1 / 3).conjugate()
        assert star.p == pytest.approx(1.5, rel=1e-15)
        assert star.c == pytest.approx(2 / 3, rel=1e-15)

    def test_expm_at_one(self):
        assert ExpM().conjugate().eval(1.0) == pytest.approx(2 * math.log(2) - 1, abs=1e-8)

    def test_expm_closed_form_grid(self):
        s = np.linspace(0, 50, 201)
        assert np.max(np.abs(conjugate(ExpM()).eval(s) - expm_star(s))) <= 1e-8

    @given(st.floats(1.2, 5.0), st.floats(0.1, 5.0), st.floats(0.0, 10.0))
    def test_power_closed_form_vs_numeric(self, p, c, s):
        phi = Power(p, c)
        assert phi.conjugate().eval(s) == pytest.approx(NumericConjugate(phi).eval(s), rel=1e-8, abs=1e-12)

    @given(st.floats(0.0, 20.0))
    def test_biconjugate(self, t):
        phi = Power(2.5, 0.7)
        assert phi.conjugate().conjugate().eval(t) == pytest.approx(phi.eval(t), rel=1e-12, abs=1e-14)

    @given(orlicz_fns(), st.floats(0, 30), st.floats(0, 8))
    def test_young(self, phi, s, t):
        assert young_gap(phi, phi.conjugate(), s, t) >= -1e-9

    def test_young_equality_at_derivative(self):
        phi = ExpM()
        t = 1.3
        s = float(phi.derivative(t))
        assert young_gap(phi, phi.conjugate(), s, t) == pytest.approx(0.0, abs=1e-9)
