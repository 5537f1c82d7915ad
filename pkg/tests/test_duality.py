import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.optimize import minimize_scalar

from orlicz_lorentz import (
    Custom,
    DualNormRequest,
    ExpM,
    Power,
    StepFunction,
    StepWeight,
    aligned_dual_witness,
    dual_norm,
    halperin_dual_q_norm,
    hoelder_check,
)

from .strategies import example_f, orlicz_fns, step_functions, step_weights, weights

KINDS = st.sampled_from(["luxemburg", "amemiya"])


class TestDualNorm:
    def test_indicator_amemiya_primal(self, unit_weight):
        req = DualNormRequest("amemiya", Power(2, 0.5), unit_weight, StepFunction([0, 1], [1]))
        assert dual_norm(req).value == pytest.approx(1 / math.sqrt(2), rel=1e-12)

    def test_restricted_weight_luxemburg_primal(self):
        w = StepWeight([0, 1, 2], [2.0, 0.5])
        T = 3.0
        phi = Power(3.0, 0.5)
        star = phi.conjugate()
        WT = float(w.cumulative(T))
        ref = minimize_scalar(lambda k: (1 + star.eval(k) * WT) / k, bounds=(1e-6, 100), method="bounded",
                              options={"xatol": 1e-12}).fun
        got = dual_norm(DualNormRequest("luxemburg", phi, w, w.restrict(T))).value
        assert got == pytest.approx(ref, rel=1e-9)

    @given(step_functions(max_pieces=5), weights(), orlicz_fns(expm=False), KINDS)
    def test_homogeneous(self, f, w, phi, kind):
        a = dual_norm(DualNormRequest(kind, phi, w, f)).value
        b = dual_norm(DualNormRequest(kind, phi, w, f.scale(2.0))).value
        assert b == pytest.approx(2 * a, rel=1e-10)

    def test_reuses_conjugate(self, sqrt_weight):
        phi = ExpM()
        star = phi.conjugate()
        req = DualNormRequest("amemiya", phi, sqrt_weight, example_f(2.0).scale(0.3))
        assert dual_norm(req, star).value == dual_norm(req).value

    def test_request_validation(self, sqrt_weight):
        with pytest.raises(ValueError):
            DualNormRequest("orlicz", Power(2, 1), sqrt_weight, example_f(2.0))
        with pytest.raises(ValueError):
            DualNormRequest("luxemburg", Custom(lambda t: t, n_function=False), sqrt_weight, example_f(2.0))


class TestHalperin:
    def test_indicator(self, unit_weight):
        assert halperin_dual_q_norm(2.0, unit_weight, StepFunction([0, 1], [1])) == 1.0

    def test_worked_example(self, sqrt_weight):
        assert halperin_dual_q_norm(2.0, sqrt_weight, example_f(4.0)) == 5.0

    def test_bad_p(self, sqrt_weight):
        with pytest.raises(ValueError):
            halperin_dual_q_norm(1.0, sqrt_weight, example_f(4.0))

    @given(step_functions(max_pieces=6), weights(), st.floats(1.3, 5.0))
    def test_matches_dual_machinery(self, f, w, p):
        # phi(u) = u^p / p; the dual norms differ from Halperin's by constants
        q = p / (p - 1)
        h = halperin_dual_q_norm(p, w, f)
        phi = Power(p, 1 / p)
        lux_dual = dual_norm(DualNormRequest("luxemburg", phi, w, f)).value
        am_dual = dual_norm(DualNormRequest("amemiya", phi, w, f)).value
        assert lux_dual == pytest.approx(p ** (1 / p) * h, rel=1e-8)
        assert am_dual == pytest.approx(q ** (-1 / q) * h, rel=1e-8)


class TestHoelder:
    def test_indicator(self, unit_weight):
        f = StepFunction([0, 1], [1])
        lhs, rhs = hoelder_check(Power(2, 0.5), unit_weight, f, f)
        assert lhs == 1.0
        assert lhs <= rhs

    @given(step_functions(max_pieces=5), step_functions(max_pieces=5), weights(), orlicz_fns(expm=False), KINDS)
    def test_inequality(self, f, g, w, phi, kind):
        lhs, rhs = hoelder_check(phi, w, f, g, primal=kind)
        assert lhs <= rhs + 1e-9

    def test_zero(self, sqrt_weight):
        assert hoelder_check(Power(2, 1), sqrt_weight, StepFunction.zero(), example_f(2.0)) == (0.0, 0.0)

    @given(step_functions(max_pieces=5), step_weights(), orlicz_fns())
    def test_aligned_witness_near_tight(self, f, w, phi):
        if isinstance(phi, ExpM):
            f = f.scale(0.3)
        g = aligned_dual_witness(phi, w, f)
        lhs, rhs = hoelder_check(phi, w, f, g, primal="luxemburg")
        assert lhs <= rhs + 1e-9
        assert rhs / lhs <= 2.05
        # observed: the pairing is attained up to solver tolerance
        assert rhs / lhs == pytest.approx(1.0, abs=1e-8)
