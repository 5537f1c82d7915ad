"""Orlicz-Lorentz sequence spaces through the unit-width step embedding.

``x -> sum x_i chi[i-1, i)`` is an isometry onto a subspace of the
function space with weight ``sum w_i chi[i-1, i)``, and it preserves the
dual norms, the modular ``p_{phi,w}`` and the maximal level intervals.
Everything here therefore runs the function-space code on the embedding.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .duality import DualNormRequest, dual_norm
from .level import algorithm_a
from .modular import NormReport, amemiya_norm, luxemburg_norm, modular_P
from .orlicz import OrliczFn
from .stepfn import StepFunction, StepWeight


@dataclass(frozen=True)
class WeightedSeq:
    """Finite sequence ``x`` with a positive nonincreasing weight ``w``.

    ``len(weights) >= len(entries)``; entries are stored as ``|x_i|``.
    """

    entries: tuple
    weights: tuple

    def __init__(self, entries, weights):
        x = np.abs(np.asarray(entries, dtype=np.float64).ravel())
        w = np.asarray(weights, dtype=np.float64).ravel()
        if w.size == 0:
            raise ValueError("weight sequence must be nonempty")
        if w.size < x.size:
            raise ValueError("weight sequence shorter than the entries")
        if np.any(w <= 0) or np.any(np.diff(w) > 0):
            raise ValueError("weights must be positive and nonincreasing")
        if not np.all(np.isfinite(x)):
            raise ValueError("entries must be finite")
        object.__setattr__(self, "entries", tuple(x.tolist()))
        object.__setattr__(self, "weights", tuple(w.tolist()))

    @property
    def x(self) -> np.ndarray:
        return np.asarray(self.entries)

    @property
    def w(self) -> np.ndarray:
        return np.asarray(self.weights)

    def rearranged(self) -> "WeightedSeq":
        return WeightedSeq(np.sort(self.x)[::-1], self.weights)

    def to_dict(self) -> dict:
        return {"sequence": list(self.entries), "weights": list(self.weights)}

    @classmethod
    def from_dict(cls, d: dict) -> "WeightedSeq":
        return cls(d["sequence"], d["weights"])


def embed(x: WeightedSeq) -> tuple[StepFunction, StepWeight]:
    """``(x_bar, w_bar)`` with unit-width pieces ``[i-1, i)``."""
    n = len(x.entries)
    xbar = StepFunction(np.arange(n + 1, dtype=np.float64), x.x)
    wbar = StepWeight(np.arange(len(x.weights) + 1, dtype=np.float64), x.w)
    return xbar, wbar


def seq_modular_p(phi: OrliczFn, x: WeightedSeq) -> NormReport:
    """``p_{phi,w}(x)``, computed as ``P_{phi,w_bar}(x_bar)``."""
    xbar, wbar = embed(x)
    return modular_P(phi, wbar, xbar)


def seq_level_sequence(x: WeightedSeq) -> WeightedSeq:
    """Level sequence ``(x*)^0``: ``r_j w_i`` on each maximal level interval."""
    xs = x.rearranged()
    out = np.zeros(len(xs.entries))
    xbar, wbar = embed(xs)
    if xbar.is_zero():
        return WeightedSeq(out, x.weights)
    dec = algorithm_a(xbar, wbar)
    # cut abscissae are integers: the canonical merge only removes
    # breakpoints between equal entries
    cuts = np.rint(dec.cuts).astype(int)
    for j in range(dec.m):
        lo, hi = cuts[j], cuts[j + 1]
        out[lo:hi] = dec.r_values[j] * xs.w[lo:hi]
    return WeightedSeq(out, x.weights)


def seq_level_modular(phi: OrliczFn, x: WeightedSeq) -> float:
    """``sum_i phi((x*)^0_i / w_i) w_i`` over the support."""
    lv = seq_level_sequence(x)
    n = len(lv.entries)
    w = lv.w[:n]
    return float(np.sum(phi.eval(lv.x / w) * w))


def seq_norms(phi: OrliczFn, x: WeightedSeq) -> dict[str, NormReport]:
    """Luxemburg and Amemiya norms of ``x`` and of ``x`` as a dual element."""
    xbar, wbar = embed(x)
    phi_star = phi.conjugate()
    return {
        "luxemburg": luxemburg_norm(phi, wbar, xbar),
        "amemiya": amemiya_norm(phi, wbar, xbar),
        "dual_of_luxemburg": dual_norm(DualNormRequest("luxemburg", phi, wbar, xbar), phi_star),
        "dual_of_amemiya": dual_norm(DualNormRequest("amemiya", phi, wbar, xbar), phi_star),
    }
