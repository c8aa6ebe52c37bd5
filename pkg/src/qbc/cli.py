"""Command-line harness: ``qbc verify``, ``qbc koornwinder`` and ``qbc eigen``.

Exit codes: 0 when every selected check passes, 1 on an identity failure,
2 on a configuration error, 3 when a check ran out of resamples.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor

from . import identities as I
from .combinat import normalize, partitions_upto
from .koornwinder import DegenerateSample, compute_koornwinder
from .qops import ParamQuad
from .scalars import SingularPoint, format_scalar, random_point

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_SINGULAR = 0, 1, 2, 3

MAX_M, MAX_N, MAX_WEIGHT, MAX_ENTRY = 4, 3, 6, 3
DEFAULT_BUDGET = 10_000

CHECK_IDS = (
    "cauchy", "thm2-2", "coeff-rel", "saalschutz", "transform-bc", "summation", "milne", "lemma3-1",
    "transform-c", "lemma4-1", "lemma4-2", "h-d-relation", "pieri", "duality", "dual-cauchy-expansion",
    "eigen", "vanishing",
)

VERIFIERS = {
    "cauchy": I.verify_cauchy_kernel,
    "thm2-2": I.verify_swapped_kernel,
    "coeff-rel": I.verify_coefficient_relation,
    "saalschutz": I.verify_saalschutz_base_change,
    "transform-bc": I.verify_transform_bc,
    "summation": I.verify_summation_n0,
    "milne": I.verify_milne_lemma,
    "lemma3-1": I.verify_inner_sum_collapse,
    "transform-c": I.verify_transform_c,
    "lemma4-1": I.verify_eigenvalue_ratio,
    "lemma4-2": I.verify_truncated_generating,
    "h-d-relation": I.verify_H_D_relation,
    "pieri": I.verify_pieri,
    "duality": I.verify_duality,
    "dual-cauchy-expansion": I.verify_dual_cauchy_expansion,
    "eigen": I.verify_eigen,
    "vanishing": I.verify_vanishing,
}


class ConfigError(ValueError):
    pass


# ------------------------------------------------------------------ job lists

def acceptance_jobs() -> list:
    """``(check id, kwargs, default trials)`` for the full acceptance suite."""
    jobs = []
    for m in (1, 2):
        for lam in partitions_upto(3, m):
            jobs.append(("eigen", {"lam": lam, "m": m}, 5))
    for m, n in ((1, 0), (1, 1), (2, 1), (2, 2)):
        jobs.append(("cauchy", {"m": m, "n": n}, 5))
        jobs.append(("thm2-2", {"m": m, "n": n}, 5))
    for m, n in ((2, 1), (2, 2)):
        for r in range(3):
            jobs.append(("coeff-rel", {"r": r, "m": m, "n": n}, 5))
    for l in range(4):
        jobs.append(("saalschutz", {"l": l}, 5))
    jobs.append(("saalschutz", {"l": 3, "same_base": True}, 5))
    for alpha, beta in (((1,), (1,)), ((2,), (1,)), ((1, 1), (1,))):
        jobs.append(("transform-bc", {"alpha": alpha, "beta": beta}, 3))
    for alpha in ((1,), (2,), (2, 1)):
        jobs.append(("summation", {"alpha": alpha}, 3))
    for alpha, beta in (((1,), (1,)), ((2, 1), (1,)), ((1, 1), (1, 1))):
        jobs.append(("transform-c", {"alpha": alpha, "beta": beta}, 3))
    for size in range(4):
        jobs.append(("lemma3-1", {"size": size}, 5))
    for m in (1, 2, 3):
        jobs.append(("milne", {"m": m}, 5))
    for m, n in ((1, 1), (2, 1), (2, 2)):
        jobs.append(("lemma4-1", {"m": m, "n": n}, 5))
    for k, m in ((1, 1), (1, 2), (2, 1)):
        jobs.append(("lemma4-2", {"k": k, "m": m}, 5))
    for m in (1, 2):
        for n in range(3):
            for l in range(n + 1):
                jobs.append(("h-d-relation", {"l": l, "m": m, "n": n}, 5))
    for m, n in ((1, 1), (2, 1), (1, 2)):
        jobs.append(("dual-cauchy-expansion", {"m": m, "n": n}, 3))
    lams = [(), (1,), (1, 1), (2,)]
    for lam in lams:
        for mu in lams:
            jobs.append(("duality", {"lam": lam, "mu": mu, "m": 2}, 3))
    for m in (1, 2):
        for mu in ((), (1,), (1, 1)):
            if len(mu) <= m:
                for l in range(3):
                    jobs.append(("pieri", {"mu": mu, "l": l, "m": m}, 5))
    for m in (1, 2, 3):
        jobs.append(("vanishing", {"m": m}, 5))
    return jobs


def _orders(args, lo: int, hi: int) -> list:
    if args.order is not None:
        return [args.order]
    return list(range(lo, hi + 1))


def single_jobs(check: str, args) -> list:
    """Jobs for one check id, sized by the command-line flags."""
    m = args.m if args.m is not None else 2
    n = args.n if args.n is not None else 1
    lam = args.lam
    alpha = args.alpha if args.alpha is not None else (1,)
    beta = args.beta if args.beta is not None else (1,)
    if check in ("cauchy", "thm2-2", "dual-cauchy-expansion"):
        return [(check, {"m": m, "n": n}, None)]
    if check == "coeff-rel":
        return [(check, {"r": r, "m": m, "n": n}, None) for r in _orders(args, 0, min(m, 2))]
    if check == "saalschutz":
        return [(check, {"l": l}, None) for l in _orders(args, 3, 3)]
    if check == "transform-bc":
        return [(check, {"alpha": alpha, "beta": beta, "budget": args.budget}, None)]
    if check == "summation":
        return [(check, {"alpha": alpha, "budget": args.budget}, None)]
    if check == "milne":
        mm = args.m if args.m is not None else (len(lam) if lam else 3)
        return [(check, {"m": mm, "lam": lam}, None)]
    if check == "lemma3-1":
        return [(check, {"size": args.m if args.m is not None else 2}, None)]
    if check == "transform-c":
        return [(check, {"alpha": alpha, "beta": beta}, None)]
    if check == "lemma4-1":
        return [(check, {"m": m, "n": n, "lam": lam}, None)]
    if check == "lemma4-2":
        return [(check, {"k": k, "m": m}, None) for k in _orders(args, 1, 1)]
    if check == "h-d-relation":
        return [(check, {"l": l, "m": m, "n": n}, None) for l in _orders(args, 0, n)]
    if check == "pieri":
        return [(check, {"mu": lam or (), "l": l, "m": m}, None) for l in _orders(args, 0, 2)]
    if check == "duality":
        return [(check, {"lam": lam or (), "mu": args.mu or (), "m": m}, None)]
    if check == "eigen":
        lams = [lam] if lam is not None else partitions_upto(3, m)
        return [(check, {"lam": la, "m": m}, None) for la in lams]
    if check == "vanishing":
        return [(check, {"m": args.m if args.m is not None else 2}, None)]
    raise ConfigError(f"unknown check {check!r}")


def _run_job(job) -> dict:
    check, kwargs, trials, seed, with_time = job
    rep = VERIFIERS[check](**kwargs, seed=seed, trials=trials)
    return rep.to_json(with_time)


def run_jobs(jobs: list, seed: int, trials: int | None, parallel: int = 1, with_time: bool = True) -> list:
    payload = [(c, kw, trials or t or I.DEFAULT_TRIALS, seed, with_time) for c, kw, t in jobs]
    if parallel > 1:
        with ProcessPoolExecutor(max_workers=parallel) as pool:
            results = list(pool.map(_run_job, payload))
    else:
        results = [_run_job(j) for j in payload]
    order = sorted(range(len(results)), key=lambda i: (results[i]["id"], i))
    return [results[i] for i in order]


# ------------------------------------------------------------------ parsing

def _int_list(text: str) -> tuple:
    text = text.strip()
    if not text:
        return ()
    try:
        vals = tuple(int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if any(v < 0 for v in vals):
        raise argparse.ArgumentTypeError("entries must be non-negative")
    return vals


def _seed_default() -> int | None:
    env = os.environ.get("QBC_SEED")
    if env is None:
        return None
    return int(env)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qbc", description="Exact verification of Koornwinder kernel identities.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--m", type=int)
        p.add_argument("--n", type=int)
        p.add_argument("--lambda", dest="lam", type=_int_list, help="comma-separated partition")
        p.add_argument("--seed", type=int, help="seed (falls back to QBC_SEED, then 0)")
        p.add_argument("--trials", type=int)
        p.add_argument("--report", help="write the JSON report to this path")

    v = sub.add_parser("verify", help="run identity checks")
    v.add_argument("check", choices=CHECK_IDS + ("all",))
    common(v)
    v.add_argument("--alpha", type=_int_list)
    v.add_argument("--beta", type=_int_list)
    v.add_argument("--mu", type=_int_list)
    v.add_argument("--order", type=int, help="r, l or k for checks indexed by an order")
    v.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="max chain terms per multi-sum")
    v.add_argument("--jobs", type=int, default=1)

    k = sub.add_parser("koornwinder", help="compute P_λ at a seeded parameter point")
    common(k)
    k.add_argument("--print", dest="show", action="store_true", help="print the coefficient list")

    e = sub.add_parser("eigen", help="check the eigen-equations of P_λ")
    common(e)
    e.add_argument("--jobs", type=int, default=1)
    return ap


def validate(args) -> None:
    if args.m is not None and not 0 <= args.m <= MAX_M:
        raise ConfigError(f"m must be in 0..{MAX_M}")
    if args.n is not None and not 0 <= args.n <= MAX_N:
        raise ConfigError(f"n must be in 0..{MAX_N}")
    if args.lam is not None:
        if list(args.lam) != sorted(args.lam, reverse=True):
            raise ConfigError("lambda must be weakly decreasing")
        if sum(args.lam) > MAX_WEIGHT:
            raise ConfigError(f"|lambda| must be <= {MAX_WEIGHT}")
    for name in ("alpha", "beta", "mu"):
        vals = getattr(args, name, None)
        if vals is not None and (any(v > MAX_ENTRY for v in vals) or len(vals) > MAX_M):
            raise ConfigError(f"{name} entries must be <= {MAX_ENTRY}")
    if args.trials is not None and args.trials < 1:
        raise ConfigError("trials must be >= 1")
    if getattr(args, "jobs", 1) < 1:
        raise ConfigError("jobs must be >= 1")


def _config(args) -> dict:
    out = {}
    for key, val in sorted(vars(args).items()):
        if key in ("report", "show") or val is None:
            continue
        out[key] = list(val) if isinstance(val, tuple) else val
    return out


def _emit(report: dict, path: str | None) -> None:
    text = json.dumps(report, indent=2, sort_keys=False, ensure_ascii=False) + "\n"
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _summary(checks: list, out) -> int:
    code = EXIT_OK
    for c in checks:
        print(f"{c['status'].upper():8s} {c['id']:22s} {json.dumps(c['sizes'])}", file=out)
        if c["status"] == "fail":
            code = EXIT_FAIL
        elif c["status"] == "singular" and code == EXIT_OK:
            code = EXIT_SINGULAR
    return code


def cmd_verify(args, out) -> int:
    jobs = acceptance_jobs() if args.check == "all" else single_jobs(args.check, args)
    checks = run_jobs(jobs, args.seed, args.trials, args.jobs)
    _emit({"suite": args.check, "config": _config(args), "checks": checks}, args.report)
    return _summary(checks, out)


def cmd_eigen(args, out) -> int:
    m = args.m if args.m is not None else 2
    lams = [normalize(args.lam)] if args.lam is not None else partitions_upto(3, m)
    jobs = [("eigen", {"lam": la, "m": m}, None) for la in lams]
    checks = run_jobs(jobs, args.seed, args.trials, args.jobs)
    _emit({"suite": "eigen", "config": _config(args), "checks": checks}, args.report)
    return _summary(checks, out)


def cmd_koornwinder(args, out) -> int:
    m = args.m if args.m is not None else 2
    lam = normalize(args.lam or ())
    if len(lam) > m:
        raise ConfigError(f"lambda has more than m={m} parts")
    quad = ParamQuad.standard()
    for attempt in range(I.MAX_RESAMPLES + 1):
        rng = random.Random(repr(("koornwinder-cli", lam, m, args.seed, attempt)))
        p = random_point(rng, list("abcdqt"))
        try:
            P = compute_koornwinder(lam, quad, p, m)
        except (SingularPoint, DegenerateSample):
            continue
        break
    else:
        print("no generic parameter point found", file=sys.stderr)
        return EXIT_SINGULAR
    coeffs = [{"mu": list(mu), "coeff": format_scalar(c)} for mu, c in P.coefficient_list()]
    report = {"suite": "koornwinder", "config": _config(args), "lambda": list(lam), "m": m,
              "point": p.to_json(), "coefficients": coeffs}
    _emit(report, args.report)
    if args.show:
        print("point " + " ".join(f"{g}^(1/4)={v}" for g, v in p.to_json().items()), file=out)
        for c in coeffs:
            print(f"m{tuple(c['mu'])}: {c['coeff']}", file=out)
    return EXIT_OK


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_CONFIG
    try:
        if args.seed is None:
            args.seed = _seed_default() or 0
        validate(args)
        if args.command == "verify":
            return cmd_verify(args, out)
        if args.command == "eigen":
            return cmd_eigen(args, out)
        return cmd_koornwinder(args, out)
    except (ConfigError, I.ChainOverflow, ValueError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
