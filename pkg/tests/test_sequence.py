import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from orlicz_lorentz import (
    ExpM,
    Power,
    StepFunction,
    WeightedSeq,
    embed,
    seq_level_modular,
    seq_level_sequence,
    seq_modular_p,
    seq_norms,
)
from orlicz_lorentz.oracle import brute_force_min, discrete_modular_p, pava_level_sequence

from .strategies import orlicz_fns


# entries below 1e-150 become 0: the level ratios of the embedding must
# stay inside the floating-point range
entries = st.floats(-5, 5).map(lambda v: 0.0 if abs(v) < 1e-150 else v)


@st.composite
def sequences(draw, max_len=8):
    n = draw(st.integers(1, max_len))
    x = draw(st.lists(entries, min_size=n, max_size=n))
    extra = draw(st.integers(0, 2))
    w = sorted(draw(st.lists(st.floats(0.05, 3.0), min_size=n + extra, max_size=n + extra)), reverse=True)
    return WeightedSeq(x, w)


class TestWeightedSeq:
    def test_abs_and_round_trip(self):
        x = WeightedSeq([-3, 1], [1, 0.5])
        assert x.entries == (3.0, 1.0)
        assert WeightedSeq.from_dict(x.to_dict()) == x

    @pytest.mark.parametrize("x, w", [([1, 2], [1]), ([1], []), ([1], [0]), ([1, 1], [1, 2]), ([np.nan], [1])])
    def test_validation(self, x, w):
        with pytest.raises(ValueError):
            WeightedSeq(x, w)


class TestEmbed:
    def test_two_entries(self):
        xbar, wbar = embed(WeightedSeq([3, 1], [1, 0.5]))
        assert xbar == StepFunction([0, 1, 2], [3, 1])
        assert wbar.values.tolist() == [1.0, 0.5]

    def test_empty(self):
        xbar, _ = embed(WeightedSeq([], [1.0]))
        assert xbar.is_zero()

    @given(sequences())
    def test_sample_midpoints(self, x):
        xbar, _ = embed(x)
        n = len(x.entries)
        assert np.array_equal(xbar(np.arange(n) + 0.5), x.x)


class TestSeqModular:
    @given(st.floats(0.1, 4.0), st.lists(st.floats(0.1, 3.0), min_size=1, max_size=6), orlicz_fns())
    def test_proportional(self, c, w, phi):
        w = sorted(w, reverse=True)
        x = WeightedSeq(c * np.asarray(w), w)
        assert seq_modular_p(phi, x).value == pytest.approx(phi.eval(c) * sum(w), rel=1e-12)

    def test_oracle_value(self):
        # the grid oracle returns 19 for this instance (unit weights: P = sum x_i^2)
        x = WeightedSeq([4, 1, 1, 1], [1, 1, 1, 1])
        xbar, wbar = embed(x)
        assert brute_force_min(Power(2, 1), wbar, xbar) == pytest.approx(19.0, rel=1e-4)
        assert seq_modular_p(Power(2, 1), x).value == pytest.approx(19.0, rel=1e-14)

    def test_permutation_invariant(self):
        w = [3.0, 2.0, 2.0, 1.0, 0.5]
        base = [0.3, 2.0, 1.1, 4.0]
        vals = {seq_modular_p(Power(2.5, 1), WeightedSeq(p, w)).value for p in itertools.permutations(base)}
        assert max(vals) == pytest.approx(min(vals), rel=1e-15)

    @given(sequences(), orlicz_fns())
    def test_discrete_oracle(self, x, phi):
        x = WeightedSeq(0.5 * x.x, x.weights)
        assert seq_modular_p(phi, x).value == pytest.approx(discrete_modular_p(phi, x.x, x.w), rel=1e-12, abs=1e-300)


class TestLevelSequence:
    @given(st.lists(entries, min_size=1, max_size=8))
    def test_unit_weight(self, x):
        lv = seq_level_sequence(WeightedSeq(x, [1.0] * len(x)))
        assert np.allclose(lv.x, np.sort(np.abs(x))[::-1], rtol=1e-13, atol=0)

    def test_proportional(self):
        w = [3.0, 2.0, 1.0]
        lv = seq_level_sequence(WeightedSeq([1.0, 3.0, 2.0], w))
        assert np.allclose(lv.x, [3.0, 2.0, 1.0], rtol=1e-15)

    @given(sequences(), orlicz_fns())
    def test_sum_identity(self, x, phi):
        x = WeightedSeq(0.5 * x.x, x.weights)
        assert seq_level_modular(phi, x) == pytest.approx(seq_modular_p(phi, x).value, rel=1e-12, abs=1e-300)

    @given(sequences())
    def test_matches_antitonic_regression(self, x):
        lv = seq_level_sequence(x).x
        ref = pava_level_sequence(x.x, x.w)
        assert np.allclose(lv[: ref.size], ref, rtol=1e-11)
        assert np.all(lv[ref.size:] == 0)


class TestSeqNorms:
    def test_single_entry(self):
        out = seq_norms(Power(2, 1), WeightedSeq([1.0], [1.0]))
        assert out["luxemburg"].value == pytest.approx(1.0, rel=1e-12)
        assert set(out) == {"luxemburg", "amemiya", "dual_of_luxemburg", "dual_of_amemiya"}

    @given(sequences(max_len=5))
    def test_homogeneous(self, x):
        phi = Power(2.5, 0.8)
        a = seq_norms(phi, x)
        b = seq_norms(phi, WeightedSeq(2 * x.x, x.weights))
        for k in a:
            assert b[k].value == pytest.approx(2 * a[k].value, rel=1e-10, abs=1e-300)

    @given(sequences(max_len=5), st.sampled_from([Power(2, 1), Power(3.3, 0.4), ExpM()]))
    def test_sandwich(self, x, phi):
        x = WeightedSeq(0.5 * x.x, x.weights)
        out = seq_norms(phi, x)
        for lux, am in (("luxemburg", "amemiya"), ("dual_of_amemiya", "dual_of_luxemburg")):
            assert out[lux].value <= out[am].value * (1 + 1e-12)
            assert out[am].value <= 2 * out[lux].value * (1 + 1e-12)
