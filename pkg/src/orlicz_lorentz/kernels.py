"""Hot loops: the Algorithm A scan and the brute-force grid oracle.

Each kernel exists as a numba loop (``*_nb``) and a vectorized numpy
version (``*_np``). The public wrappers pick one according to
:data:`orlicz_lorentz._accel.USE_NUMBA`; both are importable for
benchmarks and cross-checks.
"""
import itertools
import math

import numpy as np

from . import _accel
from ._accel import njit

# ---------------------------------------------------------------------------
# Algorithm A
# ---------------------------------------------------------------------------


@njit(cache=True, error_model="numpy")
def algorithm_a_nb(fm, wm, rel, atol):
    n = fm.size
    cuts = np.empty(n + 1, dtype=np.int64)
    gammas = np.empty(n, dtype=np.float64)

    # interval masses are running sums of piece masses, never differences
    # of cumulatives, so a tiny piece cannot vanish from a ratio
    gamma = np.inf
    sw = 0.0
    sg = 0.0
    for i in range(n):
        sw += wm[i]
        sg += fm[i]
        r = sw / sg
        if r < gamma:
            gamma = r
    g_prev = fm.copy()
    g_cur = gamma * fm
    cuts[0] = 0
    gammas[0] = gamma
    m = 0
    base = 0
    while True:
        # largest attainer of gamma, ratios taken against G_{j-2}
        best = -1
        sw = 0.0
        sg = 0.0
        for i in range(base, n):
            sw += wm[i]
            sg += g_prev[i]
            r = sw / sg
            if abs(r - gamma) <= rel * max(abs(r), abs(gamma)) + atol:
                best = i + 1
        if best == -1:
            # float drift: fall back to the plain argmin
            lo = np.inf
            sw = 0.0
            sg = 0.0
            for i in range(base, n):
                sw += wm[i]
                sg += g_prev[i]
                r = sw / sg
                if r <= lo:
                    lo = r
                    best = i + 1
        if best == -1:
            # only non-finite ratios left; the caller rejects the result
            best = n
        m += 1
        cuts[m] = best
        if best == n:
            break
        gamma = np.inf
        sw = 0.0
        sg = 0.0
        for i in range(best, n):
            sw += wm[i]
            sg += g_cur[i]
            r = sw / sg
            if r < gamma:
                gamma = r
        g_next = g_cur.copy()
        for i in range(best, n):
            g_next[i] = gamma * g_cur[i]
        g_prev = g_cur
        g_cur = g_next
        gammas[m] = gamma
        base = best
    return cuts[: m + 1].copy(), gammas[:m].copy()


def algorithm_a_np(fm, wm, rel, atol):
    n = fm.size
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        gamma = float(np.min(np.cumsum(wm) / np.cumsum(fm)))
        g_prev = fm.astype(np.float64, copy=True)
        g_cur = gamma * fm
        cuts = [0]
        gammas = [gamma]
        base = 0
        while True:
            r = np.cumsum(wm[base:]) / np.cumsum(g_prev[base:])
            hit = np.abs(r - gamma) <= rel * np.maximum(np.abs(r), abs(gamma)) + atol
            if hit.any():
                best = base + 1 + int(np.nonzero(hit)[0][-1])
            else:
                finite = ~np.isnan(r)
                if finite.any():
                    best = base + 1 + int(np.nonzero(r == np.min(r[finite]))[0][-1])
                else:
                    best = n
            cuts.append(best)
            if best == n:
                break
            gamma = float(np.min(np.cumsum(wm[best:]) / np.cumsum(g_cur[best:])))
            g_next = g_cur.copy()
            g_next[best:] = gamma * g_cur[best:]
            g_prev, g_cur = g_cur, g_next
            gammas.append(gamma)
            base = best
    return np.asarray(cuts, dtype=np.int64), np.asarray(gammas, dtype=np.float64)


def algorithm_a_kernel(fm, wm, rel, atol):
    """Cut indices ``i_0=0 < ... < i_m=n`` and step factors ``gamma_j``.

    ``fm`` and ``wm`` are the ``f``- and ``w``-masses of the pieces.
    """
    fm = np.ascontiguousarray(fm, dtype=np.float64)
    wm = np.ascontiguousarray(wm, dtype=np.float64)
    if _accel.USE_NUMBA:
        return algorithm_a_nb(fm, wm, float(rel), float(atol))
    return algorithm_a_np(fm, wm, float(rel), float(atol))


# ---------------------------------------------------------------------------
# Grid oracle
# ---------------------------------------------------------------------------


@njit(cache=True)
def _phi_nb(code, p, c, x):
    if code == 0:
        return c * x**p
    if x > 700.0:
        return np.inf
    return math.expm1(x) - x


@njit(cache=True)
def _push_to_boundary_nb(b, lens, Wk):
    """Project ``b`` to its running minimum, then scale it up to the
    boundary of the feasible set, in place. Returns False if ``b`` has a
    nonpositive entry.
    """
    n = b.size
    mass = 0.0
    s = np.inf
    for i in range(n):
        if b[i] <= 0.0:
            return False
        if i > 0 and b[i] > b[i - 1]:
            b[i] = b[i - 1]
        mass += b[i] * lens[i]
        r = Wk[i] / mass
        if r < s:
            s = r
    for _ in range(8):
        mass = 0.0
        ok = True
        for i in range(n):
            mass += s * b[i] * lens[i]
            if mass > Wk[i]:
                ok = False
                break
        if ok:
            break
        s *= 1.0 - 4e-16
    for i in range(n):
        b[i] *= s
    return True


@njit(cache=True)
def grid_level_nb(a, lens, Wk, lo, hi, points, code, p, c):
    """Best grid node of one refinement level (numba).

    Every node is made decreasing by a running minimum and pushed radially
    onto the feasibility boundary; ``t -> phi(a/t) t`` is decreasing, so
    the push never hurts.
    """
    n = a.size
    grids = np.empty((n, points))
    for i in range(n):
        for k in range(points):
            grids[i, k] = lo[i] + (hi[i] - lo[i]) * k / (points - 1)
    idx = np.zeros(n, dtype=np.int64)
    best_val = np.inf
    best = np.zeros(n)
    b = np.empty(n)
    for _ in range(points**n):
        for i in range(n):
            b[i] = grids[i, idx[i]]
        if _push_to_boundary_nb(b, lens, Wk):
            val = 0.0
            for i in range(n):
                val += _phi_nb(code, p, c, a[i] / b[i]) * b[i] * lens[i]
            if val < best_val:
                best_val = val
                for i in range(n):
                    best[i] = b[i]
        # odometer
        j = n - 1
        while j >= 0:
            idx[j] += 1
            if idx[j] < points:
                break
            idx[j] = 0
            j -= 1
    return best_val, best


def _push_to_boundary_np(b, lens, Wk):
    b = np.minimum.accumulate(b[np.all(b > 0, axis=1)], axis=1)
    s = np.min(Wk / np.cumsum(b * lens, axis=1), axis=1)
    for _ in range(8):
        bad = np.any(np.cumsum(s[:, None] * b * lens, axis=1) > Wk, axis=1)
        if not bad.any():
            break
        s[bad] *= 1.0 - 4e-16
    return s[:, None] * b


def grid_level_np(a, lens, Wk, lo, hi, points, phi):
    """Best grid node of one refinement level (numpy)."""
    n = a.size
    axes = [np.linspace(lo[i], hi[i], points) for i in range(n)]
    # vectorize over at most four trailing axes, loop over the rest
    n_inner = min(n, 4)
    n_outer = n - n_inner
    inner = np.stack(np.meshgrid(*axes[n_outer:], indexing="ij"), axis=-1).reshape(-1, n_inner)
    best_val, best = np.inf, np.zeros(n)
    for head in itertools.product(*axes[:n_outer]):
        b = np.concatenate((np.broadcast_to(np.asarray(head, dtype=float), (inner.shape[0], n_outer)), inner), axis=1)
        bf = _push_to_boundary_np(b, lens, Wk)
        if bf.shape[0] == 0:
            continue
        with np.errstate(over="ignore", invalid="ignore"):
            vals = np.sum(phi.eval(a / bf) * bf * lens, axis=1)
        k = int(np.argmin(vals))
        if vals[k] < best_val:
            best_val, best = float(vals[k]), bf[k].copy()
    return best_val, best


def grid_level(a, lens, Wk, lo, hi, points, phi, use_numba=None):
    if use_numba is None:
        use_numba = _accel.USE_NUMBA
    params = phi.kernel_params()
    if use_numba and params is not None:
        code, p, c = params
        val, b = grid_level_nb(a, lens, Wk, lo, hi, points, code, float(p), float(c))
        return float(val), b
    return grid_level_np(a, lens, Wk, lo, hi, points, phi)
