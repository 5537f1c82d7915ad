"""Algorithm A and Halperin level functions for decreasing step functions.

For a decreasing ``f = sum a_i chi[t_{i-1}, t_i)`` and a weight ``w``,
Algorithm A picks cut indices ``0 = i_0 < ... < i_m = n`` and ratios
``lambda_j = W(t_{i_j}, t_{i_{j+1}}) / F(t_{i_j}, t_{i_{j+1}})``. The
minimizer of the dual modular is ``g^f = lambda_j * f`` on each cut
interval; the cut intervals are the maximal level intervals of ``f``, and
the level function is ``f^0 = w / lambda_j`` on them.

The cut scan is O(n^2). The same cuts are the vertices of the least
concave majorant of the points ``(W(t_i), F(t_i))``, which would allow a
linear-time hull walk; the literal recurrence is kept for auditability.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .kernels import algorithm_a_kernel
from .stepfn import PairIntegrals, StepFunction, StepWeight, Weight
from .tolerance import get_tolerance


@dataclass(frozen=True)
class LevelDecomposition:
    """Output of :func:`algorithm_a`.

    Attributes
    ----------
    f : StepFunction
        The decreasing input.
    cut_indices : ndarray of int
        ``i_0 = 0 < i_1 < ... < i_m = n`` into ``f.breakpoints``.
    lambdas : ndarray
        ``lambda_j``, strictly increasing.
    gammas : ndarray
        Step factors of the recurrence; ``lambdas`` are their running products.
    pair : PairIntegrals
        ``F`` and ``W`` at the breakpoints of ``f``.
    """

    f: StepFunction
    cut_indices: np.ndarray
    lambdas: np.ndarray
    gammas: np.ndarray
    pair: PairIntegrals

    @property
    def m(self) -> int:
        return self.lambdas.size

    @property
    def cuts(self) -> np.ndarray:
        return self.f.breakpoints[self.cut_indices]

    @property
    def r_values(self) -> np.ndarray:
        """``R_j = F-mass / W-mass = 1 / lambda_j``."""
        return self.f_masses / self.w_masses

    @property
    def piece_f_masses(self) -> np.ndarray:
        return self.f.values * self.f.lengths

    @property
    def piece_w_masses(self) -> np.ndarray:
        return np.diff(self.pair.W)

    @property
    def w_masses(self) -> np.ndarray:
        return np.add.reduceat(self.piece_w_masses, self.cut_indices[:-1])

    @property
    def f_masses(self) -> np.ndarray:
        return np.add.reduceat(self.piece_f_masses, self.cut_indices[:-1])

    def piece_lambdas(self) -> np.ndarray:
        """``lambda`` of the cut interval containing each piece of ``f``."""
        reps = np.diff(self.cut_indices)
        return np.repeat(self.lambdas, reps)

    def minimizer_values(self) -> np.ndarray:
        """``g^f`` on the pieces of ``f``, as ``(a_i / F-mass) * W-mass``.

        The grouping avoids overflow of ``lambda_j`` when ``f`` spans many
        orders of magnitude.
        """
        reps = np.diff(self.cut_indices)
        return self.f.values / np.repeat(self.f_masses, reps) * np.repeat(self.w_masses, reps)

    def minimizer(self) -> StepFunction:
        """``g^f = sum_j lambda_j f chi[t_{i_j}, t_{i_{j+1}})``."""
        return StepFunction(self.f.breakpoints, self.minimizer_values())

    def to_dict(self) -> dict:
        return {
            "cuts": self.cuts.tolist(),
            "lambda": self.lambdas.tolist(),
            "r": self.r_values.tolist(),
        }


def _check_decreasing(f: StepFunction) -> None:
    if f.n == 0:
        raise ValueError("Algorithm A needs a nonzero function")
    if not f.is_decreasing():
        raise ValueError("Algorithm A needs a decreasing function; rearrange it first")
    if np.any(f.values <= 0):
        raise ValueError("f must be strictly positive on its support")


def algorithm_a(f: StepFunction, w: Weight) -> LevelDecomposition:
    """Run Algorithm A on a decreasing step function.

    Ties in the cut selection are resolved with the relative part of the
    global tolerance policy, taking the largest tied index. The output does not depend on
    any Orlicz function.
    """
    _check_decreasing(f)
    pair = PairIntegrals.of(f, w)
    fm = f.values * f.lengths
    wm = np.diff(pair.W)
    if not (np.all(fm > 0) and np.all(wm > 0)):
        raise ValueError("a piece of f has zero f- or w-mass in floating point")
    # ratios W-mass / F-mass scale with 1/f, so ties are tested relatively
    cuts, gammas = algorithm_a_kernel(fm, wm, get_tolerance().rel, 0.0)
    with np.errstate(over="ignore"):
        lambdas = np.add.reduceat(wm, cuts[:-1]) / np.add.reduceat(fm, cuts[:-1])
    if not (np.all(np.isfinite(lambdas)) and np.all(np.isfinite(gammas))):
        raise ValueError("the values of f span more than the floating-point range")
    for arr in (cuts, gammas, lambdas):
        arr.setflags(write=False)
    return LevelDecomposition(f, cuts, lambdas, gammas, pair)


def contact_points(dec: LevelDecomposition) -> np.ndarray:
    """Breakpoints where ``G^f(t_i) = W(t_i)``; may be more than the cuts."""
    # piecewise on f's partition; the canonical minimizer may merge pieces
    g = dec.minimizer_values()
    G = np.concatenate(([0.0], np.cumsum(g * dec.f.lengths)))
    tol = get_tolerance()
    hits = [i for i in range(G.size) if tol.close(G[i], dec.pair.W[i])]
    return dec.f.breakpoints[hits]


@dataclass(frozen=True)
class LevelFunction:
    """``f^0 = R_j * w`` on ``(cuts[j], cuts[j+1]]``, zero past the support."""

    cuts: np.ndarray
    r_values: np.ndarray
    w_masses: np.ndarray
    weight: Weight

    def __call__(self, t):
        t = np.asarray(t, dtype=np.float64)
        j = np.searchsorted(self.cuts, t, side="left") - 1
        inside = (j >= 0) & (j < self.r_values.size)
        r = np.where(inside, self.r_values[np.clip(j, 0, self.r_values.size - 1)], 0.0)
        with np.errstate(invalid="ignore"):
            return np.where(inside, r * self.weight.density(t), 0.0)

    def modular(self, phi) -> float:
        """``int phi(f^0 / w) w = sum_j phi(R_j) W_j``."""
        return float(np.sum(phi.eval(self.r_values) * self.w_masses))

    def to_dict(self) -> dict:
        return {"cuts": self.cuts.tolist(), "r": self.r_values.tolist()}


def level_function(f: StepFunction, w: Weight) -> LevelFunction:
    dec = algorithm_a(f, w)
    return LevelFunction(dec.cuts, dec.r_values, dec.w_masses, w)


class SplicedWeight(Weight):
    """A step density on ``[0, end)`` followed by a base weight."""

    kind = "spliced"

    def __init__(self, head: StepFunction, base: Weight):
        self.head = head
        self.base = base
        self.end = head.support_end
        self._shift = float(head.integral()) - float(base.cumulative(self.end))

    def density(self, t):
        t = np.asarray(t, dtype=np.float64)
        return np.where(t < self.end, self.head(t), self.base.density(t))

    def cumulative(self, t):
        t = np.asarray(t, dtype=np.float64)
        return np.where(t < self.end, self.head.cumulative(t), self.base.cumulative(t) + self._shift)

    def to_dict(self) -> dict:
        return {"kind": "spliced", "head": self.head.to_dict(), "base": self.base.to_dict()}


def inverse_level_weight(f: StepFunction, w: Weight) -> Weight:
    """Inverse level function ``w^f``: ``f / R_j`` on each m.l.i., ``w`` elsewhere.

    The maximal level intervals tile the support of ``f``, so ``w^f = g^f``
    there. For a step weight the result is again a :class:`StepWeight`.
    """
    dec = algorithm_a(f, w)
    head = dec.minimizer()
    if isinstance(w, StepWeight):
        tail_t = w.breakpoints[w.breakpoints > head.support_end]
        if tail_t.size == 0:
            tail_t = np.array([head.support_end + 1.0])
        t = np.concatenate((head.breakpoints, tail_t))
        v = np.concatenate((head.values, w.density(t[head.n:-1])))
        # g^f(t_n-) >= w(t_n) holds exactly; clip float drift
        v = np.minimum.accumulate(v)
        return StepWeight(t, v)
    return SplicedWeight(head, w)


def is_level_interval(f: StepFunction, w: Weight, a: float, b: float) -> bool:
    """Whether ``(a, b)`` is a level interval of decreasing ``f`` w.r.t. ``w``.

    ``a < b`` must be breakpoints of ``f`` inside its support; checking
    ``R(a, t_k) <= R(a, b)`` at the interior breakpoints suffices.
    """
    _check_decreasing(f)
    t = f.breakpoints
    ia = np.nonzero(t == a)[0]
    ib = np.nonzero(t == b)[0]
    if ia.size == 0 or ib.size == 0:
        raise ValueError("a and b must be breakpoints of f")
    ia, ib = int(ia[0]), int(ib[0])
    if not ia < ib:
        raise ValueError("need a < b")
    F = f.cumulative_at_breakpoints()
    W = np.asarray(w.cumulative(t))
    r_ab = (F[ib] - F[ia]) / (W[ib] - W[ia])
    if not r_ab > 0:
        return False
    tol = get_tolerance()
    for k in range(ia + 1, ib):
        if not tol.leq((F[k] - F[ia]) / (W[k] - W[ia]), r_ab):
            return False
    return True
