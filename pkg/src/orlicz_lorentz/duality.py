"""Köthe-dual norms of Orlicz-Lorentz spaces.

The dual of the Luxemburg-normed space is the Amemiya-type norm built on
``P_{phi*,w}``; the dual of the Amemiya-normed space is the Luxemburg-type
norm built on ``P_{phi*,w}``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .level import level_function
from .modular import NormReport, amemiya_norm, luxemburg_norm, norm
from .orlicz import OrliczFn
from .stepfn import StepFunction, Weight, inner, rearrange

PRIMAL_KINDS = ("luxemburg", "amemiya")


@dataclass(frozen=True)
class DualNormRequest:
    primal_norm: str
    phi: OrliczFn
    w: Weight
    f: StepFunction

    def __post_init__(self):
        if self.primal_norm not in PRIMAL_KINDS:
            raise ValueError(f"primal_norm must be one of {PRIMAL_KINDS}")
        if not self.phi.n_function:
            raise ValueError("the Orlicz function must be an N-function")


def dual_norm(req: DualNormRequest, phi_star: OrliczFn | None = None) -> NormReport:
    """Norm of ``req.f`` in the Köthe dual of the ``req.primal_norm`` space.

    ``phi_star`` may be passed to reuse an already built conjugate.
    """
    if phi_star is None:
        phi_star = req.phi.conjugate()
    if req.primal_norm == "luxemburg":
        return amemiya_norm(phi_star, req.w, req.f, modular="P")
    return luxemburg_norm(phi_star, req.w, req.f, modular="P")


def primal_norm(kind: str, phi: OrliczFn, w: Weight, f: StepFunction) -> NormReport:
    return norm(kind, phi, w, f, modular="I")


def halperin_dual_q_norm(p: float, w: Weight, f: StepFunction) -> float:
    """``(int ((f*)^0 / w)^q w)^(1/q)`` with ``1/p + 1/q = 1``.

    This is the dual norm for the Lorentz space with norm
    ``(int (f*)^p w)^(1/p)``. The Orlicz-Lorentz norms built on
    ``phi(u) = u**p / p`` differ from it by constants:
    the Luxemburg norm is ``p**(-1/p)`` times it, so its dual (Amemiya on
    ``P_{phi*,w}``) equals ``p**(1/p)`` times this value, and the dual of
    the Amemiya norm equals ``q**(-1/q)`` times it.
    """
    if not p > 1:
        raise ValueError("need p > 1")
    q = p / (p - 1.0)
    fs = rearrange(f)
    if fs.is_zero():
        return 0.0
    lf = level_function(fs, w)
    return float(np.sum(lf.r_values**q * lf.w_masses) ** (1.0 / q))


def hoelder_check(phi: OrliczFn, w: Weight, f: StepFunction, g: StepFunction, primal: str = "luxemburg",
                  phi_star: OrliczFn | None = None) -> tuple[float, float]:
    """``(int f* g*, ||f|| * ||g||')`` for the chosen primal norm.

    Köthe duality requires ``lhs <= rhs``.
    """
    lhs = inner(rearrange(f), rearrange(g))
    if f.is_zero() or g.is_zero():
        return lhs, 0.0
    a = primal_norm(primal, phi, w, f).value
    b = dual_norm(DualNormRequest(primal, phi, w, g), phi_star).value
    return lhs, a * b


def aligned_dual_witness(phi: OrliczFn, w: Weight, f: StepFunction) -> StepFunction:
    """``phi'(f*/eps) w`` on the support of ``f*``, ``eps`` the Luxemburg norm.

    Pairs with ``f`` at (numerically) equality in the Luxemburg / dual
    Amemiya Hölder inequality. Needs a step weight and ``phi.derivative``.
    """
    fs = rearrange(f)
    eps = luxemburg_norm(phi, w, fs).value
    t = np.union1d(fs.breakpoints, getattr(w, "breakpoints", np.zeros(1)))
    t = t[t <= fs.support_end]
    mid = 0.5 * (t[:-1] + t[1:])
    vals = phi.derivative(fs(mid) / eps) * w.density(mid)
    return StepFunction(t, vals)
