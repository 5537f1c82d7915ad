"""Scalar solvers shared by the conjugate and the norm computations."""
import math

INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


class NotConverged(RuntimeError):
    pass


def golden_min(func, a, b, rtol=1e-10, atol=1e-15, maxiter=500):
    """Minimize a unimodal ``func`` on ``[a, b]`` by golden-section search.

    Returns ``(x, fx, iterations)``. The endpoints are compared with the
    interior estimate so monotone objectives return the right boundary.
    """
    fa, fb = func(a), func(b)
    lo, hi = a, b
    x1 = hi - INVPHI * (hi - lo)
    x2 = lo + INVPHI * (hi - lo)
    f1, f2 = func(x1), func(x2)
    it = 0
    while hi - lo > rtol * (abs(x1) + abs(x2)) / 2 + atol:
        if it >= maxiter:
            raise NotConverged(f"golden section did not converge in {maxiter} steps")
        it += 1
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - INVPHI * (hi - lo)
            f1 = func(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + INVPHI * (hi - lo)
            f2 = func(x2)
    x, fx = (x1, f1) if f1 <= f2 else (x2, f2)
    if fa < fx:
        x, fx = a, fa
    if fb < fx:
        x, fx = b, fb
    return x, fx, it


def bisect_predicate(pred, lo, hi, rtol=1e-12, maxiter=400):
    """Smallest ``x`` in ``(lo, hi]`` with ``pred(x)`` true, for monotone ``pred``.

    Requires ``pred(hi)`` true and ``pred(lo)`` false. The returned point
    always satisfies the predicate.
    """
    it = 0
    while hi - lo > rtol * hi:
        if it >= maxiter:
            raise NotConverged(f"bisection did not converge in {maxiter} steps")
        it += 1
        mid = 0.5 * (lo + hi)
        if pred(mid):
            hi = mid
        else:
            lo = mid
    return hi, it
