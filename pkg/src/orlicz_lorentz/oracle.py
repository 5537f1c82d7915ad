"""Independent verifiers for the Algorithm A modular.

Nothing here calls into :mod:`orlicz_lorentz.level`. The grid search
minimizes ``psi(b) = sum phi(a_i / b_i) b_i |A_i|`` over decreasing
``b > 0`` with ``sum_{i<=k} b_i |A_i| <= W(t_k)``; the minimizer of the
dual modular is a step function on the partition of ``f*``, so this
finite-dimensional problem has the same infimum.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import isotonic_regression

from .kernels import grid_level
from .orlicz import OrliczFn, Power
from .stepfn import StepFunction, Weight, rearrange

MAX_PIECES = 6


@dataclass(frozen=True)
class FeasibleSet:
    """Decreasing ``b > 0`` with partial masses bounded by ``W(t_k)``."""

    lengths: np.ndarray
    targets: np.ndarray

    def contains(self, b) -> bool:
        b = np.asarray(b, dtype=np.float64)
        return bool(
            np.all(b > 0)
            and np.all(np.diff(b) <= 0)
            and np.all(np.cumsum(b * self.lengths) <= self.targets)
        )

    def upper_bounds(self, t: np.ndarray) -> np.ndarray:
        # b_i * t_i <= B(t_i) <= W(t_i) since b is decreasing
        return self.targets / t


def psi(phi: OrliczFn, a, lengths, b) -> float:
    a, lengths, b = (np.asarray(v, dtype=np.float64) for v in (a, lengths, b))
    with np.errstate(over="ignore"):
        return float(np.sum(phi.eval(a / b) * b * lengths))


def brute_force_min(phi: OrliczFn, w: Weight, f: StepFunction, depth: int = 6, points: int = 20,
                    shrink: float = 5.0, return_point: bool = False, use_numba=None):
    """Nested grid search for ``P_{phi,w}(f)``.

    Level 0 puts ``points`` nodes per coordinate on ``(0, hi_i]``. Each
    further level centres a box ``shrink`` times narrower (still covering
    the 3^n neighbouring cells) on the best feasible node so far and
    re-grids it. Only feasible nodes are ever evaluated, so the result
    can only overshoot the infimum.
    """
    fs = rearrange(f)
    if fs.is_zero():
        return (0.0, np.zeros(0)) if return_point else 0.0
    n = fs.n
    if n > MAX_PIECES:
        raise ValueError(f"brute force is limited to {MAX_PIECES} pieces, got {n}")
    t = fs.breakpoints[1:]
    lens = fs.lengths
    Wk = np.asarray(w.cumulative(t), dtype=np.float64)
    fset = FeasibleSet(lens, Wk)
    top = fset.upper_bounds(t)
    a = np.ascontiguousarray(fs.values)

    lo = top / points
    hi = top.copy()
    width = top.copy()
    best_val, best = np.inf, None
    for level in range(depth + 1):
        val, b = grid_level(a, lens, Wk, lo, hi, points, phi, use_numba=use_numba)
        if val < best_val:
            best_val, best = val, np.asarray(b, dtype=np.float64).copy()
        if best is None:
            raise RuntimeError("no feasible grid node; grid too coarse")
        width = width / shrink
        lo = np.maximum(best - width / 2, top * 1e-12)
        hi = np.minimum(best + width / 2, top)
    return (best_val, best) if return_point else best_val


def lagrange_two_piece(a1: float, a2: float, lens, w_vals, phi: OrliczFn | None = None):
    """Closed-form minimizer of ``psi`` for two pieces and a power ``phi``.

    Minimizes ``sum phi(a_i/b_i) b_i l_i`` over ``b1 >= b2 > 0``,
    ``b1 l1 <= W1``, ``b1 l1 + b2 l2 = W2``. The stationary point is
    ``b ~ a``; if it violates ``b1 l1 <= W1`` the minimum is at the
    better of the two vertices ``(W1/l1, (W2-W1)/l2)`` and
    ``b1 = b2 = W2/(l1+l2)``. Returns ``(b1, b2, value)``.
    """
    phi = Power(2.0, 1.0) if phi is None else phi
    if not isinstance(phi, Power):
        raise ValueError("the closed form needs a power Orlicz function")
    if not a1 > a2 > 0:
        raise ValueError("need a1 > a2 > 0")
    l1, l2 = map(float, lens)
    w1, w2 = map(float, w_vals)
    if not (l1 > 0 and l2 > 0 and 0 < w1 < w2):
        raise ValueError("degenerate lengths or cumulative weights")
    a = np.array([a1, a2])
    ln = np.array([l1, l2])
    s = w2 / (a1 * l1 + a2 * l2)
    b1, b2 = a1 * s, a2 * s
    if b1 * l1 <= w1 * (1 + 1e-15):
        return b1, b2, psi(phi, a, ln, [b1, b2])
    vertices = [(w1 / l1, (w2 - w1) / l2), (w2 / (l1 + l2), w2 / (l1 + l2))]
    vals = [psi(phi, a, ln, v) for v in vertices]
    k = int(np.argmin(vals))
    return vertices[k][0], vertices[k][1], vals[k]


def jensen_certificate(phi: OrliczFn, f: StepFunction, b, rtol: float = 1e-12) -> bool:
    """Whether ``||phi(f/g) g||_1 >= ||phi(f/(lam f)) lam f||_1``.

    ``g`` takes the values ``b`` on the pieces of ``f``;
    ``lam = G(t_n) / F(t_n)``.
    """
    b = np.asarray(b, dtype=np.float64)
    if b.shape != f.values.shape or np.any(b <= 0):
        raise ValueError("b must be positive, one value per piece of f")
    lens = f.lengths
    lam = float(np.dot(b, lens) / np.dot(f.values, lens))
    lhs = psi(phi, f.values, lens, b)
    rhs = psi(phi, f.values, lens, lam * f.values)
    return lhs >= rhs * (1 - rtol)


def pava_level_sequence(x, w) -> np.ndarray:
    """Level sequence of ``x*`` w.r.t. ``w`` by antitonic regression.

    ``(x*)^0 / w`` is the weighted decreasing regression of ``x*/w`` with
    weights ``w``: pooled blocks carry ``sum x / sum w``.
    """
    xs = np.sort(np.abs(np.asarray(x, dtype=np.float64)))[::-1]
    xs = xs[xs > 0]
    w = np.asarray(w, dtype=np.float64)[: xs.size]
    if xs.size == 0:
        return xs
    fit = isotonic_regression(xs / w, weights=w, increasing=False).x
    return fit * w


def discrete_modular_p(phi: OrliczFn, x, w) -> float:
    """``sum phi(x*_i / b_i) b_i`` at ``b = x* w / (x*)^0`` from :func:`pava_level_sequence`."""
    xs = np.sort(np.abs(np.asarray(x, dtype=np.float64)))[::-1]
    xs = xs[xs > 0]
    if xs.size == 0:
        return 0.0
    w = np.asarray(w, dtype=np.float64)[: xs.size]
    level = pava_level_sequence(xs, w)
    b = xs * w / level
    return float(np.sum(phi.eval(xs / b) * b))
