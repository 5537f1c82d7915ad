import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from orlicz_lorentz import (
    PowerWeight,
    ShiftedWeight,
    StepFunction,
    StepWeight,
    Weight,
    inner,
    integrate,
    marcinkiewicz_norm,
    rearrange,
    submajorized,
)

from .strategies import example_f, step_functions, weights


class TestStepFunction:
    def test_canonical_merge_and_trim(self):
        f = StepFunction([0, 1, 2, 2, 3, 5], [2, 2, 7, 1, 0])
        assert f.breakpoints.tolist() == [0, 2, 3]
        assert f.values.tolist() == [2, 1]

    def test_zero_function(self):
        z = StepFunction.zero()
        assert z.is_zero() and z.n == 0 and z.integral() == 0.0
        assert StepFunction([0, 1], [0.0]) == z

    @pytest.mark.parametrize(
        "t, a",
        [([1, 2], [1]), ([0, 2, 1], [1, 1]), ([0, 1], [-1]), ([0, 1], [np.inf]), ([0, 1, 2], [1])],
    )
    def test_rejects_bad_input(self, t, a):
        with pytest.raises(ValueError):
            StepFunction(t, a)

    def test_immutable(self):
        f = example_f(2.0)
        with pytest.raises(ValueError):
            f.values[0] = 3.0

    def test_eval_right_open(self):
        f = example_f(2.0)
        assert f(np.array([0.0, 0.999, 1.0, 3.999, 4.0, 10.0])).tolist() == [2, 2, 1, 1, 0, 0]

    def test_dict_round_trip_and_abs(self):
        f = StepFunction.from_dict({"breakpoints": [0, 1, 3], "values": [-2, 1]})
        assert f.values.tolist() == [2, 1]
        assert StepFunction.from_dict(f.to_dict()) == f

    def test_scale(self):
        f = example_f(2.0)
        assert (3 * f).values.tolist() == [6, 3]
        with pytest.raises(ValueError):
            f.scale(-1)


class TestRearrange:
    def test_two_piece_sort(self):
        f = StepFunction([0, 1, 2], [1, 3])
        assert rearrange(f) == StepFunction([0, 1, 2], [3, 1])

    def test_decreasing_unchanged(self):
        f = example_f(4.0)
        assert rearrange(f) == f

    def test_gap_pieces_pack(self):
        f = StepFunction([0, 1, 3, 4], [2, 0, 2])
        assert rearrange(f) == StepFunction([0, 2], [2])

    @given(step_functions(allow_zero=True))
    def test_equimeasurable(self, f):
        fs = rearrange(f)
        assert fs.is_decreasing()
        for lam in np.linspace(0.0, 6.0, 13):
            d_f = float(np.sum(f.lengths[f.values > lam]))
            d_fs = float(np.sum(fs.lengths[fs.values > lam]))
            assert d_fs == pytest.approx(d_f, rel=1e-12, abs=1e-12)


class TestIntegrate:
    def test_example(self):
        assert integrate(example_f(2.0), 0, 4) == 5.0

    def test_empty_interval(self):
        assert integrate(example_f(2.0), 1.5, 1.5) == 0.0

    def test_bad_bounds(self):
        with pytest.raises(ValueError):
            integrate(example_f(2.0), 2, 1)

    @given(step_functions(), st.floats(0, 5), st.floats(0, 5))
    def test_riemann(self, f, a, b):
        a, b = min(a, b), max(a, b)
        # midpoint sums are exact at a resolution containing every breakpoint
        t = np.union1d(f.breakpoints, [a, b])
        t = t[(t >= a) & (t <= b)]
        mid = 0.5 * (t[:-1] + t[1:])
        assert integrate(f, a, b) == pytest.approx(float(np.sum(f(mid) * np.diff(t))), abs=1e-9)

    def test_inner(self):
        f = StepFunction([0, 1, 2], [2, 1])
        g = StepFunction([0, 0.5, 3], [1, 4])
        assert inner(f, g) == pytest.approx(2 * 0.5 + 2 * 4 * 0.5 + 1 * 4 * 1)


class TestWeights:
    def test_step_tail_extends(self):
        w = StepWeight([0, 1, 2], [3, 1])
        assert w.cumulative(np.array([1.0, 2.0, 5.0])).tolist() == [3, 4, 7]
        assert w.density(10.0) == 1.0

    def test_step_weight_validation(self):
        with pytest.raises(ValueError):
            StepWeight([0, 1, 2], [1, 3])
        with pytest.raises(ValueError):
            StepWeight([0, 1], [0])

    def test_power_weight(self, sqrt_weight):
        assert sqrt_weight.cumulative(4.0) == pytest.approx(2.0)
        assert sqrt_weight.mass(1.0, 4.0) == pytest.approx(1.0)
        with pytest.raises(ValueError):
            PowerWeight(1.0, 1.0)

    def test_restrict(self):
        w = StepWeight([0, 1, 2], [3, 1])
        assert w.restrict(3.0) == StepFunction([0, 1, 3], [3, 1])

    def test_shifted(self, sqrt_weight):
        sw = ShiftedWeight(sqrt_weight, 1.0)
        assert sw.cumulative(3.0) == pytest.approx(1.0)
        assert sw.density(0.0) == pytest.approx(0.5)
        assert Weight.from_dict(sw.to_dict()).cumulative(3.0) == pytest.approx(1.0)

    @pytest.mark.parametrize("w", [StepWeight([0, 1, 2], [3, 1]), PowerWeight(2.0, 0.3)])
    def test_dict_round_trip(self, w):
        t = np.array([0.5, 1.5, 7.0])
        assert np.allclose(Weight.from_dict(w.to_dict()).cumulative(t), w.cumulative(t))


class TestSubmajorization:
    def test_restricted_weight(self):
        w = StepWeight([0, 1, 2], [3, 1])
        assert submajorized(w.restrict(5.0), w)

    def test_example_minimizer(self, sqrt_weight):
        g = StepFunction([0, 1, 4], [0.8, 0.4])
        assert submajorized(g, sqrt_weight)
        assert marcinkiewicz_norm(g, sqrt_weight) == pytest.approx(1.0, rel=1e-15)

    def test_needs_decreasing(self, sqrt_weight):
        with pytest.raises(ValueError):
            submajorized(StepFunction([0, 1, 2], [1, 2]), sqrt_weight)

    @given(step_functions(), weights())
    def test_scaled_past_norm_fails(self, g, w):
        m = marcinkiewicz_norm(g, w)
        gs = rearrange(g)
        assert submajorized(gs.scale(1 / m), w)
        assert not submajorized(gs.scale(1.01 / m), w)

    @given(step_functions(max_pieces=5), weights())
    def test_marcinkiewicz_grid(self, g, w):
        gs = rearrange(g)
        t = np.linspace(0, gs.support_end, 10_001)[1:]
        t = np.union1d(t, gs.breakpoints[1:])
        grid = float(np.max(gs.cumulative(t) / w.cumulative(t)))
        assert marcinkiewicz_norm(g, w) == pytest.approx(grid, rel=1e-9)
