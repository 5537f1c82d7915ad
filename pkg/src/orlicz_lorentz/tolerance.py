"""Global comparison policy for feasibility and tie tests."""
from contextlib import contextmanager
from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerance:
    rel: float = 1e-12
    abs: float = 1e-15

    def close(self, x: float, y: float) -> bool:
        return abs(x - y) <= self.rel * max(abs(x), abs(y)) + self.abs

    def leq(self, x: float, y: float) -> bool:
        """``x <= y`` up to the tolerance."""
        return x <= y + self.rel * max(abs(x), abs(y)) + self.abs


_current = Tolerance()


def get_tolerance() -> Tolerance:
    return _current


def set_tolerance(rel: float | None = None, abs: float | None = None) -> Tolerance:
    """Replace the global policy; returns the previous one."""
    global _current
    prev = _current
    _current = Tolerance(
        rel=prev.rel if rel is None else float(rel),
        abs=prev.abs if abs is None else float(abs),
    )
    return prev


@contextmanager
def tolerance(rel: float | None = None, abs: float | None = None):
    prev = set_tolerance(rel, abs)
    try:
        yield _current
    finally:
        set_tolerance(prev.rel, prev.abs)
