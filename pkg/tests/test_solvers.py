import math

import pytest

from orlicz_lorentz import NotConverged, Tolerance, get_tolerance, set_tolerance, tolerance
from orlicz_lorentz._solvers import bisect_predicate, golden_min


def test_golden_quadratic():
    x, fx, _ = golden_min(lambda t: (t - 1.3) ** 2, 0.0, 5.0, rtol=1e-12)
    assert x == pytest.approx(1.3, rel=1e-6)
    assert fx == pytest.approx(0.0, abs=1e-12)


def test_golden_monotone_returns_endpoint():
    x, fx, _ = golden_min(lambda t: -t, 0.0, 2.0)
    assert (x, fx) == (2.0, -2.0)


def test_golden_maxiter():
    with pytest.raises(NotConverged):
        golden_min(math.sin, 0.0, 6.0, rtol=0.0, atol=0.0, maxiter=10)


def test_bisect_keeps_predicate_true():
    x, _ = bisect_predicate(lambda t: t * t >= 2.0, 1.0, 2.0)
    assert x * x >= 2.0
    assert x == pytest.approx(math.sqrt(2), rel=1e-12)


def test_bisect_maxiter():
    with pytest.raises(NotConverged):
        bisect_predicate(lambda t: t >= 0.5, 0.0, 1.0, rtol=0.0, maxiter=5)


class TestTolerance:
    def test_default(self):
        tol = Tolerance()
        assert tol.close(1.0, 1.0 + 1e-13)
        assert not tol.close(1.0, 1.0 + 1e-10)
        assert tol.leq(1.0 + 1e-13, 1.0)
        assert not tol.leq(1.0 + 1e-10, 1.0)

    def test_context_restores(self):
        before = get_tolerance()
        with tolerance(rel=1e-3) as tol:
            assert tol.rel == 1e-3
            assert get_tolerance().rel == 1e-3
        assert get_tolerance() == before

    def test_set_returns_previous(self):
        prev = set_tolerance(rel=1e-6)
        try:
            assert get_tolerance().rel == 1e-6
            assert get_tolerance().abs == prev.abs
        finally:
            set_tolerance(prev.rel, prev.abs)
