"""Acceptance suite: worked examples, oracle agreement and property trials.

Each ``check_*`` function runs one criterion with a configurable number of
random trials and returns a :class:`CriterionResult`. The pytest module
runs them at full size; ``orlicz-lorentz --selftest`` runs them with 100
random trials each.
"""
from __future__ import annotations

import inspect
import math
import time
from dataclasses import dataclass

import numpy as np

from .duality import DualNormRequest, dual_norm, halperin_dual_q_norm, primal_norm
from .level import algorithm_a, level_function
from .modular import amemiya_norm, luxemburg_norm, modular_P
from .oracle import brute_force_min, discrete_modular_p, pava_level_sequence
from .orlicz import ExpM, OrliczFn, Power
from .sequence import WeightedSeq, seq_level_modular, seq_level_sequence, seq_modular_p
from .stepfn import PowerWeight, StepFunction, StepWeight, Weight, inner, rearrange, submajorized
from .tolerance import get_tolerance

SEED = 20240611


@dataclass
class CriterionResult:
    key: str
    title: str
    passed: bool
    detail: str
    elapsed: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.key}: {self.title} | {self.detail} | {self.elapsed:.2f}s"


def _rel(a: float, b: float) -> float:
    if a == b:
        return 0.0
    return abs(a - b) / max(abs(a), abs(b))


# ---------------------------------------------------------------------------
# random instances
# ---------------------------------------------------------------------------


def random_step_weight(rng: np.random.Generator, max_pieces: int = 4) -> StepWeight:
    k = int(rng.integers(1, max_pieces + 1))
    t = np.concatenate(([0.0], np.cumsum(rng.uniform(0.2, 2.0, k))))
    v = np.sort(rng.uniform(0.1, 3.0, k))[::-1]
    return StepWeight(t, v)


def random_weight(rng: np.random.Generator) -> Weight:
    if rng.random() < 0.7:
        return random_step_weight(rng)
    return PowerWeight(rng.uniform(0.3, 2.0), rng.uniform(0.0, 0.9))


def random_step(rng: np.random.Generator, max_pieces: int, decreasing: bool = False) -> StepFunction:
    """Positive step function; values may repeat and need not be sorted."""
    n = int(rng.integers(1, max_pieces + 1))
    lens = rng.uniform(0.1, 2.0, n)
    vals = rng.uniform(0.05, 5.0, n)
    if n > 1 and rng.random() < 0.2:
        vals[rng.integers(n)] = vals[0]
    f = StepFunction.from_pieces(vals, lens)
    return rearrange(f) if decreasing else f


def random_power(rng: np.random.Generator) -> Power:
    return Power(float(rng.uniform(1.3, 4.0)), float(rng.uniform(0.3, 2.0)))


# ---------------------------------------------------------------------------
# criteria
# ---------------------------------------------------------------------------


def _example(x: float) -> StepFunction:
    return StepFunction([0.0, 1.0, 4.0], [x, 1.0])


def check_worked_example(trials: int = 0) -> CriterionResult:
    """``phi = t^2``, ``W = sqrt(t)``, ``f_x = x chi[0,1) + chi[1,4)``."""
    t0 = time.perf_counter()
    phi, w = Power(2.0, 1.0), PowerWeight(0.5, 0.5)
    cases = [(x, (x + 3) ** 2 / 2, (2 * x / (x + 3), 2 / (x + 3))) for x in (1.0, 1.5, 2.0, 2.5, 3.0)]
    cases += [(x, x * x + 9, (1.0, 1.0 / 3.0)) for x in (3.0, 4.0, 10.0)]
    worst_val = worst_b = 0.0
    modular_P(phi, w, _example(2.0))  # warm the compiled kernel
    per_call = []
    for x, expected, b in cases:
        f = _example(x)
        start = time.perf_counter()
        rep = modular_P(phi, w, f)
        per_call.append(time.perf_counter() - start)
        worst_val = max(worst_val, _rel(rep.value, expected))
        g = StepFunction.from_dict(rep.witness["minimizer"])
        got = g(np.array([0.5, 2.5]))
        worst_b = max(worst_b, max(_rel(got[0], b[0]), _rel(got[1], b[1])))
    slowest = max(per_call)
    ok = worst_val <= 1e-10 and worst_b <= 1e-10 and slowest < 1e-3
    detail = f"max rel err value={worst_val:.1e} minimizer={worst_b:.1e}, slowest call {slowest * 1e3:.3f} ms"
    return CriterionResult("worked-example", "P for the x-family and its minimizers", ok, detail,
                           time.perf_counter() - t0)


def check_oracle_agreement(trials: int = 500, seed: int = SEED) -> CriterionResult:
    rng = np.random.default_rng(seed)
    t0 = time.perf_counter()
    phis = [Power(2.0, 1.0), Power(3.0, 1.0), ExpM()]
    worst, failures = 0.0, 0
    for k in range(trials):
        phi = phis[k % 3]
        w = random_step_weight(rng)
        f = random_step(rng, 4)
        # keep ExpM arguments moderate so exp does not dominate the float error
        if isinstance(phi, ExpM):
            f = f.scale(0.5)
        p = modular_P(phi, w, f).value
        o = brute_force_min(phi, w, f)
        gap = _rel(p, o)
        worst = max(worst, gap)
        if gap > 1e-4:
            failures += 1
    elapsed = time.perf_counter() - t0
    ok = failures == 0 and elapsed < 60.0
    return CriterionResult("oracle-agreement", "grid oracle vs Algorithm A", ok,
                           f"{trials} instances, {failures} beyond 1e-4, worst rel gap {worst:.1e}", elapsed)


def check_route_equality(trials: int = 1000, seed: int = SEED + 1) -> CriterionResult:
    rng = np.random.default_rng(seed)
    t0 = time.perf_counter()
    worst, failures = 0.0, 0
    for _ in range(trials):
        phi = random_power(rng) if rng.random() < 0.7 else ExpM()
        w = random_weight(rng)
        f = random_step(rng, 8)
        if isinstance(phi, ExpM):
            f = f.scale(0.5)
        a = modular_P(phi, w, f).value
        b = level_function(rearrange(f), w).modular(phi)
        gap = _rel(a, b)
        worst = max(worst, gap)
        failures += gap > 1e-12
    elapsed = time.perf_counter() - t0
    ok = failures == 0 and elapsed < 10.0
    return CriterionResult("route-equality", "minimizer route vs level-function route", ok,
                           f"{trials} instances, {failures} beyond 1e-12, worst rel gap {worst:.1e}", elapsed)


def algorithm_a_invariant_failures(f: StepFunction, w: Weight) -> list[str]:
    """Names of the Algorithm A invariants that fail for decreasing ``f``."""
    tol = get_tolerance()
    dec = algorithm_a(f, w)
    g = dec.minimizer()
    out = []
    if not tol.close(g.integral(), float(dec.pair.W[-1])):
        out.append("last contact")
    if not np.all(np.diff(dec.lambdas) > 0):
        out.append("lambda increasing")
    if not g.is_decreasing(tol.rel):
        out.append("minimizer decreasing")
    elif not submajorized(g, w):
        out.append("submajorized")
    return out


def check_algorithm_a_invariants(trials: int = 100_000, seed: int = SEED + 2) -> CriterionResult:
    rng = np.random.default_rng(seed)
    t0 = time.perf_counter()
    failures: dict[str, int] = {}
    for _ in range(trials):
        w = random_weight(rng)
        f = random_step(rng, 8, decreasing=True)
        for name in algorithm_a_invariant_failures(f, w):
            failures[name] = failures.get(name, 0) + 1
    total = sum(failures.values())
    detail = f"{trials} trials, {total} failures" + (f" {failures}" if failures else "")
    return CriterionResult("algorithm-a-invariants", "contact, monotone lambda, g decreasing and g < w",
                           total == 0, detail, time.perf_counter() - t0)


def check_phi_independence(trials: int = 50, seed: int = SEED + 3) -> CriterionResult:
    rng = np.random.default_rng(seed)
    t0 = time.perf_counter()
    params = list(inspect.signature(algorithm_a).parameters)
    takes_no_phi = params == ["f", "w"]
    phis = [Power(2.0, 1.0), Power(3.0, 0.5), ExpM(), random_power(rng)]
    mismatches = 0
    for _ in range(trials):
        w = random_weight(rng)
        f = random_step(rng, 8).scale(0.5)
        outs = [modular_P(phi, w, f).witness for phi in phis]
        keys = [(tuple(o["cuts"]), tuple(o["lambda"]), tuple(o["minimizer"]["values"])) for o in outs]
        mismatches += len(set(keys)) != 1
    ok = takes_no_phi and mismatches == 0
    detail = f"algorithm_a parameters {params}; {mismatches} of {trials} instances differ across {len(phis)} phis"
    return CriterionResult("phi-independence", "Algorithm A output does not depend on phi", ok, detail,
                           time.perf_counter() - t0)


def check_halperin_example(trials: int = 0) -> CriterionResult:
    t0 = time.perf_counter()
    w = PowerWeight(0.5, 0.5)
    f = _example(4.0)
    h = halperin_dual_q_norm(2.0, w, f)
    r = level_function(f, w).r_values.tolist()
    s = brute_force_min(Power(2.0, 1.0), w, f)
    ok = h == 5.0 and r == [4.0, 3.0] and abs(math.sqrt(s) - 5.0) <= 1e-3
    detail = f"halperin={h!r}, R={r}, sqrt(brute force)={math.sqrt(s):.8f}"
    return CriterionResult("halperin-example", "dual q-norm of 4chi[0,1)+chi[1,4) is 5", ok, detail,
                           time.perf_counter() - t0)


def check_hoelder_pairing(trials: int = 1000, seed: int = SEED + 4) -> CriterionResult:
    rng = np.random.default_rng(seed)
    t0 = time.perf_counter()
    violations = {"luxemburg": 0, "amemiya": 0}
    worst = 0.0
    for k in range(trials):
        phi: OrliczFn = ExpM() if k % 10 == 9 else random_power(rng)
        phi_star = phi.conjugate()
        w = random_weight(rng)
        f = random_step(rng, 6)
        g = random_step(rng, 6)
        if isinstance(phi, ExpM):
            f = f.scale(0.5)
        lhs = inner(rearrange(f), rearrange(g))
        for kind in violations:
            rhs = primal_norm(kind, phi, w, f).value * dual_norm(DualNormRequest(kind, phi, w, g), phi_star).value
            worst = max(worst, lhs / rhs)
            violations[kind] += lhs > rhs + 1e-9
    total = sum(violations.values())
    detail = f"{trials} pairs, violations {violations}, max lhs/rhs {worst:.12f}"
    return CriterionResult("hoelder-pairing", "int f*g* <= ||f|| ||g||' for both pairings", total == 0, detail,
                           time.perf_counter() - t0)


def check_norm_sandwich(trials: int = 1000, seed: int = SEED + 5) -> CriterionResult:
    rng = np.random.default_rng(seed)
    t0 = time.perf_counter()
    slack = 1e-12
    violations = {"I": 0, "P": 0}
    lo_ratio, hi_ratio = math.inf, 0.0
    for k in range(trials):
        phi: OrliczFn = ExpM() if k % 4 == 3 else random_power(rng)
        w = random_weight(rng)
        f = random_step(rng, 8)
        for mod in violations:
            lux = luxemburg_norm(phi, w, f, modular=mod).value
            am = amemiya_norm(phi, w, f, modular=mod).value
            ratio = am / lux
            lo_ratio, hi_ratio = min(lo_ratio, ratio), max(hi_ratio, ratio)
            violations[mod] += not (lux <= am * (1 + slack) and am <= 2 * lux * (1 + slack))
    total = sum(violations.values())
    detail = f"{trials} functions, violations {violations}, amemiya/luxemburg in [{lo_ratio:.6f}, {hi_ratio:.12f}]"
    return CriterionResult("norm-sandwich", "luxemburg <= amemiya <= 2 luxemburg for I and P", total == 0, detail,
                           time.perf_counter() - t0)


def random_sequence(rng: np.random.Generator, max_len: int = 8) -> WeightedSeq:
    n = int(rng.integers(1, max_len + 1))
    x = rng.uniform(-5.0, 5.0, n)
    if n > 2 and rng.random() < 0.3:
        x[rng.integers(n)] = 0.0
    if n > 1 and rng.random() < 0.3:
        x[-1] = x[0]
    w = np.sort(rng.uniform(0.1, 3.0, n + int(rng.integers(0, 3))))[::-1]
    return WeightedSeq(x, w)


def check_sequence_embedding(trials: int = 500, seed: int = SEED + 6) -> CriterionResult:
    rng = np.random.default_rng(seed)
    t0 = time.perf_counter()
    worst = {"discrete": 0.0, "level sum": 0.0, "level sequence": 0.0}
    for _ in range(trials):
        phi = random_power(rng) if rng.random() < 0.7 else ExpM()
        x = random_sequence(rng)
        if isinstance(phi, ExpM):
            x = WeightedSeq(0.5 * x.x, x.weights)
        p = seq_modular_p(phi, x).value
        worst["discrete"] = max(worst["discrete"], _rel(p, discrete_modular_p(phi, x.x, x.w)))
        worst["level sum"] = max(worst["level sum"], _rel(p, seq_level_modular(phi, x)))
        lv = seq_level_sequence(x).x
        ref = pava_level_sequence(x.x, x.w)
        ref = np.concatenate((ref, np.zeros(lv.size - ref.size)))
        worst["level sequence"] = max(worst["level sequence"], max((_rel(a, b) for a, b in zip(lv, ref)), default=0.0))
    ok = all(v <= 1e-12 for v in worst.values())
    detail = f"{trials} sequences, worst rel gaps " + ", ".join(f"{k}={v:.1e}" for k, v in worst.items())
    return CriterionResult("sequence-embedding", "sequence modular vs discrete oracle and level identity", ok,
                           detail, time.perf_counter() - t0)


def check_conjugation(trials: int = 10_000, seed: int = SEED + 7) -> CriterionResult:
    rng = np.random.default_rng(seed)
    t0 = time.perf_counter()
    phis: list[OrliczFn] = [Power(2.0, 1.0), Power(3.0, 1.0 / 3.0), random_power(rng), ExpM()]
    stars = [phi.conjugate() for phi in phis]
    violations = 0
    for k in range(trials):
        j = k % len(phis)
        s, t = rng.uniform(0.0, 100.0, 2)
        if isinstance(phis[j], ExpM):
            t = t / 4.0  # keep exp(t) finite
        violations += s * t > phis[j].eval(t) + stars[j].eval(s) + 1e-9
    grid = np.linspace(0.0, 50.0, 501)
    closed = (1.0 + grid) * np.log1p(grid) - grid
    err = float(np.max(np.abs(ExpM().conjugate().eval(grid) - closed)))
    ok = violations == 0 and err <= 1e-8
    detail = f"{trials} Young checks, {violations} violations; ExpM conjugate max abs err {err:.1e} on [0, 50]"
    return CriterionResult("conjugation", "Young's inequality and the ExpM conjugate", ok, detail,
                           time.perf_counter() - t0)


CHECKS = [
    (check_worked_example, 0),
    (check_oracle_agreement, 500),
    (check_route_equality, 1000),
    (check_algorithm_a_invariants, 100_000),
    (check_phi_independence, 50),
    (check_halperin_example, 0),
    (check_hoelder_pairing, 1000),
    (check_norm_sandwich, 1000),
    (check_sequence_embedding, 500),
    (check_conjugation, 10_000),
]


def run_all(trials: int | None = None, echo=None) -> list[CriterionResult]:
    """Run every criterion; ``trials`` caps the random trial counts."""
    results = []
    for check, full in CHECKS:
        n = full if trials is None else min(full, trials)
        res = check(n)
        if echo is not None:
            echo(res.line())
        results.append(res)
    return results
