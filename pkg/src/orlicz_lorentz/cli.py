"""Job-file front end.

Usage::

    orlicz-lorentz --file job.json [--op NAME] [--tol FLOAT]
    orlicz-lorentz --selftest [--tol FLOAT]

A job is a JSON object with ``"version": "1"``, an ``op`` and the inputs
that op needs (``phi``, ``weight``, ``input``, ...). The result document
goes to stdout; a one-line log goes to stderr.

Exit codes: 0 success, 1 selftest failure or internal error, 2 unreadable
or malformed job, 3 precondition violation, 4 solver did not converge.
"""
from __future__ import annotations

import argparse
import json
import logging
import math
import sys
import time

import numpy as np

from . import _accel
from ._solvers import NotConverged
from .duality import DualNormRequest, dual_norm, halperin_dual_q_norm, hoelder_check
from .level import algorithm_a, inverse_level_weight, level_function
from .modular import NormReport, modular_I, modular_P, norm
from .oracle import MAX_PIECES, brute_force_min
from .orlicz import OrliczFn, Power
from .sequence import WeightedSeq, seq_modular_p, seq_norms
from .stepfn import StepFunction, Weight, rearrange
from .tolerance import set_tolerance

SCHEMA_VERSION = "1"
OPS = ("rearrange", "modular-i", "modular-p", "level", "norm", "dual-norm", "halperin-q",
       "hoelder-check", "seq-norm", "verify")

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_PRE, EXIT_SOLVER = 0, 1, 2, 3, 4

log = logging.getLogger("orlicz_lorentz")


class JobError(Exception):
    """Malformed job document."""


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------


def _fmt_float(x: float) -> str:
    if math.isnan(x):
        return '"nan"'
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    s = format(x, ".17g")
    # keep floats recognisable as floats after a round trip
    return s if any(c in s for c in ".e") else s + ".0"


def dumps(obj) -> str:
    """Deterministic JSON: floats with 17 significant digits, keys in insertion order."""
    if obj is None or isinstance(obj, (bool, np.bool_)):
        return json.dumps(None if obj is None else bool(obj))
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt_float(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {dumps(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, np.ndarray):
        return dumps(obj.tolist())
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(dumps(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _result(op, value, witness=None, cuts=None, lam=None, iterations=0) -> dict:
    return {
        "op": op,
        "value": value,
        "witness": witness or {},
        "diagnostics": {"cuts": cuts, "lambda": lam, "iterations": iterations},
    }


def _from_report(op, rep: NormReport) -> dict:
    wit = rep.witness
    return _result(op, rep.value, wit, wit.get("cuts"), wit.get("lambda"), rep.iterations)


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------


def _need(job: dict, key: str):
    if key not in job:
        raise JobError(f"op {job['op']!r} needs field {key!r}")
    val = job[key]
    if not isinstance(val, dict):
        raise JobError(f"field {key!r} must be an object")
    return val


def _phi(job) -> OrliczFn:
    d = _need(job, "phi")
    if d.get("family") not in ("power", "expm"):
        raise JobError(f"unknown phi family {d.get('family')!r}")
    return OrliczFn.from_dict(d)


def _weight(job) -> Weight:
    d = _need(job, "weight")
    if d.get("kind") not in ("step", "power"):
        raise JobError(f"unknown weight kind {d.get('kind')!r}")
    return Weight.from_dict(d)


def _step(job, key="input") -> StepFunction:
    d = _need(job, key)
    if "breakpoints" not in d or "values" not in d:
        raise JobError(f"field {key!r} must have 'breakpoints' and 'values'")
    return StepFunction.from_dict(d)


def _seq(job) -> WeightedSeq:
    d = _need(job, "input")
    if "sequence" not in d or "weights" not in d:
        raise JobError("field 'input' must have 'sequence' and 'weights'")
    return WeightedSeq.from_dict(d)


def _choice(job, key, allowed, default=None):
    val = job.get(key, default)
    if val not in allowed:
        raise JobError(f"field {key!r} must be one of {list(allowed)}, got {val!r}")
    return val


def _options(job) -> dict:
    opts = job.get("options", {})
    if not isinstance(opts, dict):
        raise JobError("field 'options' must be an object")
    return opts


# ---------------------------------------------------------------------------
# ops
# ---------------------------------------------------------------------------


def _op_rearrange(job):
    f = _step(job)
    return _result("rearrange", rearrange(f).to_dict())


def _op_modular_i(job):
    return _result("modular-i", modular_I(_phi(job), _weight(job), _step(job)))


def _op_modular_p(job):
    return _from_report("modular-p", modular_P(_phi(job), _weight(job), _step(job)))


def _op_level(job):
    w, f = _weight(job), rearrange(_step(job))
    if f.is_zero():
        raise ValueError("the level function needs a nonzero input")
    dec = algorithm_a(f, w)
    lf = level_function(f, w)
    witness = {"minimizer": dec.minimizer().to_dict(), "inverse_level_weight": inverse_level_weight(f, w).to_dict()}
    return _result("level", lf.to_dict(), witness, dec.cuts.tolist(), dec.lambdas.tolist(), dec.m)


def _op_norm(job):
    kind = _choice(job, "norm_kind", ("luxemburg", "amemiya"))
    modular = _choice(job, "modular", ("I", "P"), "I")
    return _from_report("norm", norm(kind, _phi(job), _weight(job), _step(job), modular))


def _op_dual_norm(job):
    kind = _choice(job, "norm_kind", ("luxemburg", "amemiya"))
    rep = dual_norm(DualNormRequest(kind, _phi(job), _weight(job), _step(job)))
    return _from_report("dual-norm", rep)


def _op_halperin(job):
    p = job.get("p", _options(job).get("p"))
    if p is None:
        phi = _phi(job)
        if not isinstance(phi, Power):
            raise JobError("halperin-q needs 'p' or a power phi")
        p = phi.p
    if not isinstance(p, (int, float)):
        raise JobError("'p' must be a number")
    w, f = _weight(job), _step(job)
    fs = rearrange(f)
    diag = algorithm_a(fs, w) if not fs.is_zero() else None
    value = halperin_dual_q_norm(float(p), w, f)
    if diag is None:
        return _result("halperin-q", value, {"p": p})
    return _result("halperin-q", value, {"p": p, "r": diag.r_values.tolist()}, diag.cuts.tolist(),
                   diag.lambdas.tolist(), diag.m)


def _op_hoelder(job):
    kind = _choice(job, "norm_kind", ("luxemburg", "amemiya"))
    lhs, rhs = hoelder_check(_phi(job), _weight(job), _step(job), _step(job, "g"), primal=kind)
    return _result("hoelder-check", {"lhs": lhs, "rhs": rhs, "holds": lhs <= rhs + 1e-9}, {"primal": kind})


def _op_seq_norm(job):
    phi, x = _phi(job), _seq(job)
    reps = seq_norms(phi, x)
    p = seq_modular_p(phi, x)
    value = {k: r.value for k, r in reps.items()}
    value["modular_p"] = p.value
    witness = {k: r.witness for k, r in reps.items()}
    return _result("seq-norm", value, witness, p.witness.get("cuts"), p.witness.get("lambda"),
                   sum(r.iterations for r in reps.values()))


def _op_verify(job):
    from .acceptance import random_step, random_step_weight

    opts = _options(job)
    depth = int(opts.get("depth", 6))
    points = int(opts.get("points", 20))
    phi = _phi(job) if "phi" in job else Power(2.0, 1.0)
    if "input" in job:
        f = _step(job)
        w = _weight(job)
    else:
        seed = opts.get("seed", 0)
        n = int(opts.get("n", 3))
        if not 1 <= n <= MAX_PIECES:
            raise ValueError(f"random verify instances need 1 <= n <= {MAX_PIECES}")
        rng = np.random.default_rng(seed)
        w = _weight(job) if "weight" in job else random_step_weight(rng)
        f = None
        while f is None or rearrange(f).n != n:
            f = random_step(rng, n)
    rep = modular_P(phi, w, f)
    oracle, point = brute_force_min(phi, w, f, depth=depth, points=points, return_point=True)
    a = rep.value
    gap = 0.0 if a == oracle else abs(a - oracle) / max(abs(a), abs(oracle))
    value = {"algorithm_a": a, "oracle": oracle, "rel_gap": gap}
    witness = {"instance": {"phi": phi.to_dict(), "weight": w.to_dict(), "input": f.to_dict()},
               "oracle_point": point.tolist(), "minimizer": rep.witness["minimizer"]}
    return _result("verify", value, witness, rep.witness["cuts"], rep.witness["lambda"], rep.iterations)


DISPATCH = {
    "rearrange": _op_rearrange,
    "modular-i": _op_modular_i,
    "modular-p": _op_modular_p,
    "level": _op_level,
    "norm": _op_norm,
    "dual-norm": _op_dual_norm,
    "halperin-q": _op_halperin,
    "hoelder-check": _op_hoelder,
    "seq-norm": _op_seq_norm,
    "verify": _op_verify,
}


def run_job(job: dict) -> dict:
    """Validate the envelope of ``job`` and dispatch it; returns the result document."""
    if not isinstance(job, dict) or not job:
        raise JobError("empty job")
    if str(job.get("version")) != SCHEMA_VERSION:
        raise JobError(f"job must carry \"version\": \"{SCHEMA_VERSION}\"")
    op = job.get("op")
    if op not in DISPATCH:
        raise JobError(f"unknown op {op!r}; expected one of {list(OPS)}")
    return DISPATCH[op](job)


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="orlicz-lorentz",
        description="Orlicz-Lorentz modulars, norms and dual norms from a JSON job file.",
        epilog="ops: " + ", ".join(OPS),
    )
    ap.add_argument("--file", help="UTF-8 JSON job file ('-' reads stdin)")
    ap.add_argument("--op", choices=OPS, help="override the op named in the job file")
    ap.add_argument("--tol", type=float, help="relative comparison tolerance (default 1e-12)")
    ap.add_argument("--selftest", action="store_true", help="run the embedded acceptance suite")
    return ap


def _error(kind: str, message: str, code: int) -> int:
    sys.stdout.write(dumps({"error": {"kind": kind, "message": message, "exit_code": code}}) + "\n")
    log.error("%s: %s", kind, message)
    return code


def _selftest() -> int:
    from .acceptance import run_all

    log.info("selftest with %s kernels", "numba" if _accel.USE_NUMBA else "numpy")
    results = run_all(trials=100, echo=lambda s: print(s, flush=True))
    failed = [r.key for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} criteria passed")
    return EXIT_FAIL if failed else EXIT_OK


def main(argv=None) -> int:
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(name)s: %(message)s"))
    log.handlers[:] = [handler]
    log.setLevel(logging.INFO)
    log.propagate = False
    ap = _parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    if args.tol is not None:
        if not args.tol > 0:
            return _error("parse", "--tol must be positive", EXIT_PARSE)
        set_tolerance(rel=args.tol)
    if args.selftest:
        return _selftest()
    if not args.file:
        ap.print_usage(sys.stderr)
        return EXIT_PARSE

    try:
        if args.file == "-":
            text = sys.stdin.read()
        else:
            with open(args.file, encoding="utf-8") as fh:
                text = fh.read()
        job = json.loads(text) if text.strip() else {}
    except (OSError, json.JSONDecodeError, UnicodeDecodeError) as exc:
        return _error("parse", str(exc), EXIT_PARSE)
    if isinstance(job, dict) and job and args.op:
        job["op"] = args.op

    start = time.perf_counter()
    try:
        res = run_job(job)
    except JobError as exc:
        if str(exc) == "empty job":
            ap.print_usage(sys.stderr)
        return _error("parse", str(exc), EXIT_PARSE)
    except NotConverged as exc:
        return _error("not_converged", str(exc), EXIT_SOLVER)
    except (ValueError, ZeroDivisionError) as exc:
        return _error("precondition", str(exc), EXIT_PRE)
    except (KeyError, TypeError) as exc:
        return _error("parse", f"malformed job: {exc}", EXIT_PARSE)
    sys.stdout.write(dumps(res) + "\n")
    log.info("op=%s done in %.3f ms", res["op"], 1e3 * (time.perf_counter() - start))
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
