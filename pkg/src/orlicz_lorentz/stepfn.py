"""Nonnegative step functions on [0, inf), decreasing weights, rearrangement.

A :class:`StepFunction` is ``sum_i a_i * chi[t_{i-1}, t_i)`` with ``t_0 = 0``
and value zero on ``[t_n, inf)``. Instances are immutable and kept in a
canonical form so that structural equality is meaningful.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .tolerance import get_tolerance


def _frozen(a) -> np.ndarray:
    arr = np.array(a, dtype=np.float64)
    arr.setflags(write=False)
    return arr


class StepFunction:
    """Right-open step function with finitely many breakpoints.

    Parameters
    ----------
    breakpoints : array_like
        ``0 = t_0 <= t_1 <= ... <= t_n``. Zero-length pieces are dropped.
    values : array_like
        ``a_1, ..., a_n >= 0``, one per piece.

    The canonical form merges adjacent equal values and trims trailing
    zero pieces, so ``n == 0`` is the zero function.
    """

    __slots__ = ("breakpoints", "values")

    def __init__(self, breakpoints, values):
        t = np.asarray(breakpoints, dtype=np.float64).ravel()
        a = np.asarray(values, dtype=np.float64).ravel()
        if t.size == 0:
            t = np.zeros(1)
        if t.size != a.size + 1:
            raise ValueError(
                f"need len(breakpoints) == len(values) + 1, got {t.size} and {a.size}"
            )
        if t[0] != 0.0:
            raise ValueError("first breakpoint must be 0")
        if not np.all(np.isfinite(t)) or not np.all(np.isfinite(a)):
            raise ValueError("breakpoints and values must be finite")
        if np.any(np.diff(t) < 0):
            raise ValueError("breakpoints must be increasing")
        if np.any(a < 0):
            raise ValueError("values must be nonnegative")

        keep = np.diff(t) > 0
        lengths = np.diff(t)[keep]
        a = a[keep]
        if a.size:
            # merge runs of equal values
            start = np.concatenate(([True], a[1:] != a[:-1]))
            run_id = np.cumsum(start) - 1
            lengths = np.bincount(run_id, weights=lengths)
            a = a[start]
        # trim zero tail
        nz = np.nonzero(a)[0]
        last = nz[-1] + 1 if nz.size else 0
        a = a[:last]
        lengths = lengths[:last]
        self.breakpoints = _frozen(np.concatenate(([0.0], np.cumsum(lengths))))
        self.values = _frozen(a)

    @classmethod
    def from_pieces(cls, values, lengths) -> "StepFunction":
        lengths = np.asarray(lengths, dtype=np.float64)
        return cls(np.concatenate(([0.0], np.cumsum(lengths))), values)

    @classmethod
    def zero(cls) -> "StepFunction":
        return cls([0.0], [])

    @property
    def n(self) -> int:
        return self.values.size

    @property
    def lengths(self) -> np.ndarray:
        return np.diff(self.breakpoints)

    @property
    def support_end(self) -> float:
        return float(self.breakpoints[-1])

    def is_zero(self) -> bool:
        return self.n == 0

    def is_decreasing(self, rtol: float = 0.0) -> bool:
        a = self.values
        return bool(np.all(a[1:] <= a[:-1] * (1.0 + rtol)))

    def __call__(self, t):
        t = np.asarray(t, dtype=np.float64)
        idx = np.searchsorted(self.breakpoints, t, side="right") - 1
        padded = np.concatenate((self.values, [0.0]))
        out = padded[np.clip(idx, 0, self.n)]
        return np.where(t < 0, 0.0, out)

    def cumulative_at_breakpoints(self) -> np.ndarray:
        """``F(t_i)`` for ``i = 0..n``."""
        return np.concatenate(([0.0], np.cumsum(self.values * self.lengths)))

    def cumulative(self, t):
        """``F(t) = int_0^t f`` (exact: F is piecewise linear)."""
        return np.interp(t, self.breakpoints, self.cumulative_at_breakpoints())

    def integral(self) -> float:
        return float(np.dot(self.values, self.lengths))

    def scale(self, c: float) -> "StepFunction":
        if c < 0:
            raise ValueError("scale factor must be nonnegative")
        return StepFunction(self.breakpoints, self.values * c)

    def __mul__(self, c):
        if isinstance(c, (int, float, np.floating, np.integer)):
            return self.scale(float(c))
        return NotImplemented

    __rmul__ = __mul__

    def restrict(self, end: float) -> "StepFunction":
        """``f * chi[0, end)``."""
        t = np.minimum(self.breakpoints, end)
        return StepFunction(t, self.values)

    def __eq__(self, other):
        if not isinstance(other, StepFunction):
            return NotImplemented
        return np.array_equal(self.breakpoints, other.breakpoints) and np.array_equal(
            self.values, other.values
        )

    def __hash__(self):
        return hash((self.breakpoints.tobytes(), self.values.tobytes()))

    def __repr__(self):
        return f"StepFunction(breakpoints={self.breakpoints.tolist()}, values={self.values.tolist()})"

    def to_dict(self) -> dict:
        return {"breakpoints": self.breakpoints.tolist(), "values": self.values.tolist()}

    @classmethod
    def from_dict(cls, d: dict) -> "StepFunction":
        # signed input is accepted; the modulars only see |f|
        return cls(d["breakpoints"], np.abs(np.asarray(d["values"], dtype=np.float64)))


class Weight:
    """Positive decreasing density ``w`` on (0, inf) with exact ``W(t)``."""

    kind = "abstract"

    def density(self, t):
        raise NotImplementedError

    def cumulative(self, t):
        raise NotImplementedError

    def mass(self, a, b):
        """``W(a, b) = W(b) - W(a)``."""
        return self.cumulative(b) - self.cumulative(a)

    def to_dict(self) -> dict:
        raise NotImplementedError

    @staticmethod
    def from_dict(d: dict) -> "Weight":
        kind = d.get("kind")
        if kind == "step":
            return StepWeight(d["breakpoints"], d["values"])
        if kind == "power":
            return PowerWeight(d.get("c", 1.0), d.get("alpha", 0.0))
        if kind == "shifted":
            return ShiftedWeight(Weight.from_dict(d["base"]), d["shift"])
        raise ValueError(f"unknown weight kind {kind!r}")


class StepWeight(Weight):
    """Step density; the last value is continued to infinity.

    ``values`` must be positive and nonincreasing.
    """

    kind = "step"

    def __init__(self, breakpoints, values):
        t = np.asarray(breakpoints, dtype=np.float64).ravel()
        v = np.asarray(values, dtype=np.float64).ravel()
        if v.size == 0:
            raise ValueError("step weight needs at least one value")
        if t.size != v.size + 1 or t[0] != 0.0 or np.any(np.diff(t) <= 0):
            raise ValueError("breakpoints must start at 0, increase strictly, and bracket the values")
        if np.any(v <= 0) or np.any(np.diff(v) > 0):
            raise ValueError("step weight values must be positive and nonincreasing")
        self.breakpoints = _frozen(t)
        self.values = _frozen(v)
        self._cum = _frozen(np.concatenate(([0.0], np.cumsum(v * np.diff(t)))))

    @classmethod
    def constant(cls, c: float = 1.0) -> "StepWeight":
        return cls([0.0, 1.0], [c])

    def density(self, t):
        t = np.asarray(t, dtype=np.float64)
        idx = np.searchsorted(self.breakpoints, t, side="right") - 1
        return self.values[np.clip(idx, 0, self.values.size - 1)]

    def cumulative(self, t):
        t = np.asarray(t, dtype=np.float64)
        end = self.breakpoints[-1]
        inside = np.interp(np.minimum(t, end), self.breakpoints, self._cum)
        return inside + self.values[-1] * np.maximum(t - end, 0.0)

    def restrict(self, end: float) -> StepFunction:
        """``w * chi[0, end)`` as a step function."""
        t = np.concatenate((self.breakpoints[self.breakpoints < end], [end]))
        v = self.density(t[:-1])
        return StepFunction(t, v)

    def to_dict(self) -> dict:
        return {"kind": "step", "breakpoints": self.breakpoints.tolist(), "values": self.values.tolist()}

    def __repr__(self):
        return f"StepWeight(breakpoints={self.breakpoints.tolist()}, values={self.values.tolist()})"


class PowerWeight(Weight):
    """``w(t) = c * t**(-alpha)`` with ``c > 0`` and ``0 <= alpha < 1``."""

    kind = "power"

    def __init__(self, c: float = 1.0, alpha: float = 0.0):
        if not c > 0:
            raise ValueError("c must be positive")
        if not 0 <= alpha < 1:
            raise ValueError("alpha must lie in [0, 1)")
        self.c = float(c)
        self.alpha = float(alpha)

    def density(self, t):
        t = np.asarray(t, dtype=np.float64)
        with np.errstate(divide="ignore"):
            return self.c * np.power(t, -self.alpha)

    def cumulative(self, t):
        t = np.asarray(t, dtype=np.float64)
        e = 1.0 - self.alpha
        return self.c * np.power(np.maximum(t, 0.0), e) / e

    def to_dict(self) -> dict:
        return {"kind": "power", "c": self.c, "alpha": self.alpha}

    def __repr__(self):
        return f"PowerWeight(c={self.c}, alpha={self.alpha})"


class ShiftedWeight(Weight):
    """``w(t + s)``: the weight seen by the part of a function past ``s``."""

    kind = "shifted"

    def __init__(self, base: Weight, shift: float):
        if not shift >= 0:
            raise ValueError("shift must be nonnegative")
        self.base = base
        self.shift = float(shift)
        self._w0 = float(base.cumulative(self.shift))

    def density(self, t):
        return self.base.density(np.asarray(t, dtype=np.float64) + self.shift)

    def cumulative(self, t):
        return self.base.cumulative(np.asarray(t, dtype=np.float64) + self.shift) - self._w0

    def to_dict(self) -> dict:
        return {"kind": "shifted", "base": self.base.to_dict(), "shift": self.shift}


@dataclass(frozen=True)
class PairIntegrals:
    """Cumulatives ``F(t_i)`` and ``W(t_i)`` at the breakpoints of ``f``."""

    t: np.ndarray
    F: np.ndarray
    W: np.ndarray

    @classmethod
    def of(cls, f: StepFunction, w: Weight) -> "PairIntegrals":
        return cls(f.breakpoints, f.cumulative_at_breakpoints(), np.asarray(w.cumulative(f.breakpoints)))


def rearrange(f: StepFunction) -> StepFunction:
    """Decreasing rearrangement ``f*``: pieces sorted by value, packed at 0."""
    a = f.values
    order = np.argsort(-a, kind="stable")
    lengths = f.lengths[order]
    vals = a[order]
    pos = vals > 0
    return StepFunction.from_pieces(vals[pos], lengths[pos])


def integrate(f: StepFunction, a: float, b: float) -> float:
    """Exact ``int_a^b f``."""
    if a > b:
        raise ValueError(f"need a <= b, got a={a}, b={b}")
    if a < 0:
        raise ValueError("integration bounds must be nonnegative")
    if a == b:
        return 0.0
    return float(f.cumulative(b) - f.cumulative(a))


def inner(f: StepFunction, g: StepFunction) -> float:
    """Exact ``int f * g`` over the common refinement of the breakpoints."""
    t = np.union1d(f.breakpoints, g.breakpoints)
    mid = 0.5 * (t[:-1] + t[1:])
    return float(np.sum(f(mid) * g(mid) * np.diff(t)))


def submajorized(g: StepFunction, w: Weight) -> bool:
    """Whether ``g`` is submajorized by ``w`` (``G(t_i) <= W(t_i)`` at breakpoints).

    ``g`` must be decreasing; call :func:`rearrange` first otherwise.
    """
    tol = get_tolerance()
    if not g.is_decreasing(tol.rel):
        raise ValueError("g must be decreasing; rearrange it first")
    G = g.cumulative_at_breakpoints()
    W = np.asarray(w.cumulative(g.breakpoints))
    return all(tol.leq(gi, wi) for gi, wi in zip(G[1:], W[1:]))


def marcinkiewicz_norm(g: StepFunction, w: Weight) -> float:
    """``sup_t G*(t) / W(t)``, attained at a breakpoint of ``g*``."""
    gs = rearrange(g)
    if gs.is_zero():
        return 0.0
    G = gs.cumulative_at_breakpoints()[1:]
    W = np.asarray(w.cumulative(gs.breakpoints[1:]))
    return float(np.max(G / W))
