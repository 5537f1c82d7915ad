"""Orlicz functions and their complementary functions.

Families:

* :class:`Power` -- ``c * t**p`` with ``p > 1``; closed under conjugation.
* :class:`ExpM` -- ``exp(t) - t - 1``; conjugated numerically.
* :class:`Custom` -- any convex evaluator; conjugated numerically.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.optimize import brentq

from ._solvers import golden_min

# Kernel codes passed to the numba oracle kernel.
KERNEL_POWER = 0
KERNEL_EXPM = 1


def _check_arg(t):
    arr = np.asarray(t, dtype=np.float64)
    if np.any(arr < 0) or np.any(np.isnan(arr)):
        raise ValueError("Orlicz functions are defined on [0, inf)")
    return arr


def _scalar_or_array(x, like):
    return float(x) if np.ndim(like) == 0 else x


class OrliczFn:
    """Base class. Subclasses implement ``_eval`` on nonnegative arrays."""

    family = "abstract"
    n_function = True

    def eval(self, t):
        arr = _check_arg(t)
        return _scalar_or_array(self._eval(arr), t)

    __call__ = eval

    def _eval(self, t: np.ndarray):
        raise NotImplementedError

    def inverse(self, y: float) -> float:
        """``t`` with ``phi(t) = y``: bracket doubling, then a bracketed root."""
        if y < 0:
            raise ValueError("inverse defined on [0, inf)")
        if y == 0:
            return 0.0
        hi = 1.0
        while self.eval(hi) < y:
            hi *= 2.0
        lo = hi / 2.0
        while lo > 1e-300 and self.eval(lo) > y:
            lo /= 2.0
        if self.eval(lo) > y:
            lo = 0.0
        return brentq(lambda s: self.eval(s) - y, lo, hi, xtol=1e-300, rtol=4 * np.finfo(float).eps)

    def derivative(self, t):
        """Right derivative; central differences unless a family overrides it."""
        arr = _check_arg(t)
        h = 1e-6 * np.maximum(arr, 1.0)
        d = (self._eval(arr + h) - self._eval(np.maximum(arr - h, 0.0))) / (arr + h - np.maximum(arr - h, 0.0))
        return _scalar_or_array(d, t)

    def conjugate(self) -> "OrliczFn":
        if not self.n_function:
            raise ValueError(f"{self!r} is not an N-function; its conjugate is not an Orlicz function")
        return NumericConjugate(self)

    def kernel_params(self):
        """``(code, p, c)`` for the compiled oracle kernel, or ``None``."""
        return None

    def to_dict(self) -> dict:
        raise NotImplementedError

    @staticmethod
    def from_dict(d: dict) -> "OrliczFn":
        fam = d.get("family")
        if fam == "power":
            return Power(d.get("p", 2.0), d.get("c", 1.0))
        if fam == "expm":
            return ExpM()
        raise ValueError(f"unknown Orlicz family {fam!r}")


@dataclass(frozen=True)
class Power(OrliczFn):
    """``phi(t) = c * t**p``."""

    p: float = 2.0
    c: float = 1.0
    family = "power"

    def __post_init__(self):
        if not self.p > 1:
            raise ValueError("power family needs p > 1 to be an N-function")
        if not self.c > 0:
            raise ValueError("power family needs c > 0")

    def _eval(self, t):
        return self.c * np.power(t, self.p)

    def inverse(self, y: float) -> float:
        if y < 0:
            raise ValueError("inverse defined on [0, inf)")
        return (y / self.c) ** (1.0 / self.p)

    def derivative(self, t):
        arr = _check_arg(t)
        return _scalar_or_array(self.c * self.p * np.power(arr, self.p - 1.0), t)

    def conjugate(self) -> "Power":
        # c t^p = K * t^p / p with K = c p, and (K psi)*(s) = K psi*(s / K)
        q = self.p / (self.p - 1.0)
        k = self.c * self.p
        return Power(q, k ** (1.0 - q) / q)

    def kernel_params(self):
        return (KERNEL_POWER, self.p, self.c)

    def to_dict(self):
        return {"family": "power", "p": self.p, "c": self.c}


@dataclass(frozen=True)
class ExpM(OrliczFn):
    """``phi(t) = exp(t) - t - 1``."""

    family = "expm"

    def _eval(self, t):
        with np.errstate(over="ignore"):
            return np.expm1(t) - t

    def derivative(self, t):
        arr = _check_arg(t)
        with np.errstate(over="ignore"):
            return _scalar_or_array(np.expm1(arr), t)

    def kernel_params(self):
        return (KERNEL_EXPM, 0.0, 0.0)

    def to_dict(self):
        return {"family": "expm"}


@dataclass(frozen=True, eq=False)
class Custom(OrliczFn):
    """User-supplied convex, strictly increasing ``func`` with ``func(0) = 0``.

    ``func`` takes a nonnegative float. ``n_function`` declares the
    N-function limits; :meth:`check_n_function` spot-checks them.
    """

    func: Callable[[float], float]
    name: str = "custom"
    n_function: bool = True
    family = "custom"

    def _eval(self, t):
        if t.ndim == 0:
            return np.float64(self.func(float(t)))
        return np.array([self.func(float(x)) for x in t.ravel()]).reshape(t.shape)

    def check_n_function(self, small=1e-8, large=1e8) -> bool:
        at1 = self.eval(1.0)
        return self.eval(small) / small < 1e-3 * at1 and self.eval(large) / large > 1e3 * at1

    def to_dict(self):
        return {"family": "custom", "name": self.name}


@dataclass(frozen=True, eq=False)
class NumericConjugate(OrliczFn):
    """``phi*(s) = sup_t (s t - phi(t))`` by golden-section search.

    The maximizer bracket ``[0, t_hi]`` is found by doubling ``t_hi`` until
    the objective decreases; concavity of ``s t - phi(t)`` makes the search
    unimodal.
    """

    base: OrliczFn
    rtol: float = 1e-10
    family = "conjugate"

    def _sup(self, s: float) -> float:
        if s == 0.0:
            return 0.0
        phi = self.base.eval

        def neg(t):
            return phi(t) - s * t

        hi = 1.0
        while neg(2.0 * hi) < neg(hi):
            hi *= 2.0
        hi *= 2.0
        _, fx, _ = golden_min(neg, 0.0, hi, rtol=self.rtol, atol=1e-14 * hi)
        return max(-fx, 0.0)

    def _eval(self, t):
        if t.ndim == 0:
            return np.float64(self._sup(float(t)))
        return np.array([self._sup(float(x)) for x in t.ravel()]).reshape(t.shape)

    def to_dict(self):
        return {"family": "conjugate", "of": self.base.to_dict()}


def conjugate(phi: OrliczFn) -> OrliczFn:
    return phi.conjugate()


def midpoint_convex(phi: OrliczFn, x: float, y: float, slack: float = 1e-12) -> bool:
    """``phi((x+y)/2) <= (phi(x)+phi(y))/2`` up to relative ``slack``."""
    lhs = phi.eval(0.5 * (x + y))
    rhs = 0.5 * (phi.eval(x) + phi.eval(y))
    return lhs <= rhs * (1 + slack) + slack


def young_gap(phi: OrliczFn, phi_star: OrliczFn, s: float, t: float) -> float:
    """``phi(t) + phi*(s) - s t``; nonnegative by Young's inequality."""
    return float(phi.eval(t) + phi_star.eval(s) - s * t)


def is_n_function(phi: OrliczFn) -> bool:
    if isinstance(phi, Custom):
        return phi.n_function and phi.check_n_function()
    return phi.n_function


__all__ = [
    "OrliczFn",
    "Power",
    "ExpM",
    "Custom",
    "NumericConjugate",
    "conjugate",
    "midpoint_convex",
    "young_gap",
    "is_n_function",
]
