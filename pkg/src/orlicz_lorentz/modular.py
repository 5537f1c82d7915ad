"""The modulars I and P and the Luxemburg / Amemiya norms built on them.

Both modulars of a step function reduce, along the ray ``k f``, to a sum
``sum_j phi(k r_j) m_j``:

* ``I_{phi,w}(k f)``: ``r_j`` are the values of ``f*``, ``m_j`` their
  ``w``-masses;
* ``P_{phi,w}(k f)``: ``r_j = R_j`` are the level ratios of ``f*`` and
  ``m_j`` the ``w``-masses of its maximal level intervals (the cuts of
  Algorithm A do not move under scaling).

The norm solvers work on that ray form so Algorithm A runs once per norm.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ._solvers import NotConverged, bisect_predicate, golden_min
from .level import LevelDecomposition, algorithm_a
from .orlicz import OrliczFn
from .stepfn import StepFunction, Weight, rearrange

ROUTE_RTOL = 1e-12


class RouteMismatch(AssertionError):
    """The two evaluations of P disagree beyond ``ROUTE_RTOL``."""


@dataclass
class NormReport:
    value: float
    witness: dict = field(default_factory=dict)
    iterations: int = 0

    def __float__(self):
        return float(self.value)

    def to_dict(self) -> dict:
        return {"value": self.value, "witness": self.witness, "iterations": self.iterations}


def modular_I(phi: OrliczFn, w: Weight, f: StepFunction) -> float:
    """``I_{phi,w}(f) = int phi(f*) w``."""
    fs = rearrange(f)
    if fs.is_zero():
        return 0.0
    masses = np.diff(w.cumulative(fs.breakpoints))
    return float(np.sum(phi.eval(fs.values) * masses))


def _p_routes(phi: OrliczFn, dec: LevelDecomposition) -> tuple[float, float]:
    f = dec.f
    g = dec.minimizer_values()
    with np.errstate(over="ignore", invalid="ignore"):
        via_minimizer = float(np.sum(phi.eval(f.values / g) * g * f.lengths))
        via_level = float(np.sum(phi.eval(dec.r_values) * dec.w_masses))
    return via_minimizer, via_level


def modular_P(phi: OrliczFn, w: Weight, f: StepFunction) -> NormReport:
    """``P_{phi,w}(f) = inf { int phi(f*/g) g : g submajorized by w }``.

    Evaluated through the Algorithm A minimizer and, independently of the
    minimizer, through the level function; the two must agree to
    ``ROUTE_RTOL``.
    """
    fs = rearrange(f)
    if fs.is_zero():
        return NormReport(0.0, {"minimizer": StepFunction.zero().to_dict(), "cuts": [0.0], "lambda": [], "r": []})
    dec = algorithm_a(fs, w)
    a, b = _p_routes(phi, dec)
    if not (a == b or abs(a - b) <= ROUTE_RTOL * max(abs(a), abs(b))):
        raise RouteMismatch(f"minimizer route {a!r} != level route {b!r}")
    witness = {"minimizer": dec.minimizer().to_dict(), **dec.to_dict(), "level_route": b}
    return NormReport(a, witness, dec.m)


@dataclass(frozen=True)
class Ray:
    """``k -> sum_j phi(k r_j) m_j``."""

    phi: OrliczFn
    r: np.ndarray
    m: np.ndarray

    def __call__(self, k: float) -> float:
        with np.errstate(over="ignore", invalid="ignore"):
            v = float(np.sum(self.phi.eval(k * self.r) * self.m))
        return v if not math.isnan(v) else math.inf

    @property
    def scale(self) -> float:
        return float(np.sum(self.r * self.m))


def ray(phi: OrliczFn, w: Weight, f: StepFunction, modular: str = "I") -> Ray | None:
    fs = rearrange(f)
    if fs.is_zero():
        return None
    if modular == "I":
        return Ray(phi, fs.values, np.diff(w.cumulative(fs.breakpoints)))
    if modular == "P":
        dec = algorithm_a(fs, w)
        return Ray(phi, dec.r_values, dec.w_masses)
    raise ValueError(f"modular must be 'I' or 'P', got {modular!r}")


def luxemburg_norm(phi: OrliczFn, w: Weight, f: StepFunction, modular: str = "I", rtol: float = 1e-12) -> NormReport:
    """``inf { eps > 0 : rho(f / eps) <= 1 }`` by bisection on ``eps``.

    The returned ``eps`` always satisfies ``rho(f / eps) <= 1``.
    """
    rho = ray(phi, w, f, modular)
    if rho is None:
        return NormReport(0.0, {"epsilon": 0.0, "modular": modular})

    def ok(eps):
        return rho(1.0 / eps) <= 1.0

    it = 0
    hi = rho.scale
    while not ok(hi):
        hi *= 2.0
        it += 1
        if it > 2000:
            raise NotConverged("no upper bracket for the Luxemburg norm")
    lo = hi / 2.0
    while ok(lo):
        lo /= 2.0
        it += 1
        if it > 4000:
            raise NotConverged("no lower bracket for the Luxemburg norm")
    eps, nit = bisect_predicate(ok, lo, hi, rtol=rtol)
    return NormReport(eps, {"epsilon": eps, "modular": modular, "modular_at_witness": rho(1.0 / eps)}, it + nit)


def amemiya_norm(phi: OrliczFn, w: Weight, f: StepFunction, modular: str = "I", rtol: float = 1e-10) -> NormReport:
    """``inf_k (1 + rho(k f)) / k`` by golden section on ``log k``.

    The objective is quasi-convex in ``k`` (its sublevel sets are those of
    the convex ``1 + rho(k f) - c k``), hence unimodal in ``log k``.
    """
    rho = ray(phi, w, f, modular)
    if rho is None:
        return NormReport(0.0, {"k": None, "modular": modular})

    def h(u):
        return (1.0 + rho(math.exp(u))) * math.exp(-u)

    mid = -math.log(rho.scale)
    step = 1.0
    left, right = mid - step, mid + step
    h_mid = h(mid)
    it = 0
    while h(left) < h_mid:
        right, mid, h_mid = mid, left, h(left)
        step *= 2.0
        left = mid - step
        it += 1
        if it > 200:
            raise NotConverged("objective keeps decreasing as k -> 0")
    while h(right) < h_mid:
        left, mid, h_mid = mid, right, h(right)
        step *= 2.0
        right = mid + step
        it += 1
        if it > 400:
            raise NotConverged("objective keeps decreasing as k -> inf")
    u, val, nit = golden_min(h, left, right, rtol=0.0, atol=rtol)
    k = math.exp(u)
    return NormReport(val, {"k": k, "modular": modular, "modular_at_witness": rho(k)}, it + nit)


def norm(kind: str, phi: OrliczFn, w: Weight, f: StepFunction, modular: str = "I") -> NormReport:
    if kind == "luxemburg":
        return luxemburg_norm(phi, w, f, modular)
    if kind == "amemiya":
        return amemiya_norm(phi, w, f, modular)
    raise ValueError(f"norm kind must be 'luxemburg' or 'amemiya', got {kind!r}")
