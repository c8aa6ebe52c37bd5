"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line."""

import json
import subprocess
import sys
import time

from qbc import identities as I
from qbc.combinat import partitions_upto

RESULTS = {}


def report(capsys, number, title, ok, elapsed, limit):
    ok = ok and elapsed < limit
    RESULTS[number] = ok
    with capsys.disabled():
        print(f"\ncriterion {number:2d}: {'PASS' if ok else 'FAIL'}  {title}  ({elapsed:.1f}s, limit {limit}s)")
    assert ok


def all_pass(reports):
    return all(r.passed and r.status == "pass" and all(v == 0 for v in r.residuals) for r in reports)


def timed(fn):
    start = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - start


def test_criterion_01_eigenfunctions(capsys):
    def run():
        return [I.verify_eigen(lam, m, max_l=3, seed=1, trials=5) for m in (1, 2) for lam in partitions_upto(3, m)]

    reps, dt = timed(run)
    ok = all_pass(reps) and all(len(r.residuals) >= 5 for r in reps)
    ok = ok and all(all(v == 0 for v in r.aux["support"]) for r in reps)
    report(capsys, 1, "D_r and H_l eigen-equations, triangular support", ok, dt, 60)


def test_criterion_02_cauchy_kernel(capsys):
    def run():
        return [I.verify_cauchy_kernel(m, n, seed=1, trials=5) for m, n in ((1, 0), (1, 1), (2, 1), (2, 2))]

    reps, dt = timed(run)
    ok = all_pass(reps) and all(v == 0 for v in reps[0].aux["D(u)1"])
    report(capsys, 2, "Cauchy kernel identity, n = 0 gives D(u)1", ok, dt, 30)


def test_criterion_03_explicit_swapped_form(capsys):
    def run():
        return [I.verify_swapped_kernel(m, n, seed=1, trials=5) for m, n in ((1, 0), (1, 1), (2, 1), (2, 2))]

    reps, dt = timed(run)
    ok = all_pass(reps) and all(v == 0 for r in reps for k in ("swap-left", "swap-right") for v in r.aux[k])
    report(capsys, 3, "explicit (q,t)-swapped kernel identity and swap cross-check", ok, dt, 30)


def test_criterion_04_coefficient_relation(capsys):
    def run():
        return [I.verify_coefficient_relation(r, m, n, seed=1) for m, n in ((2, 1), (2, 2)) for r in range(3)]

    reps, dt = timed(run)
    kns = [r for r in reps if r.notes.get("kns")]
    ok = all_pass(reps) and len(kns) == 2 and all(r.notes["forms_agree"] for r in kns)
    report(capsys, 4, "coefficient relation r <= 2, r = 1 reported as KNS", ok, dt, 30)


def test_criterion_05_type_bc(capsys):
    def run():
        reps = [I.verify_transform_bc(a, b, seed=1, trials=3) for a, b in (((1,), (1,)), ((2,), (1,)), ((1, 1), (1,)))]
        reps += [I.verify_summation_n0(a, seed=1, trials=3) for a in ((1,), (2,), (2, 1))]
        return reps

    reps, dt = timed(run)
    ok = all_pass(reps) and all(v == 0 for r in reps[:3] for v in r.aux["regrouped"])
    report(capsys, 5, "type-BC transformation (three-way) and summation", ok, dt, 120)


def test_criterion_06_type_c(capsys):
    def run():
        reps = [I.verify_transform_c(a, b, seed=1, trials=3) for a, b in (((1,), (1,)), ((2, 1), (1,)), ((1, 1), (1, 1)))]
        reps += [I.verify_inner_sum_collapse(s, seed=1) for s in range(4)]
        reps += [I.verify_milne_lemma(m, max_entry=4, seed=1) for m in (1, 2, 3)]
        return reps

    reps, dt = timed(run)
    ok = all_pass(reps) and all(v == 0 for r in reps for vals in r.aux.values() for v in vals)
    report(capsys, 6, "type-C transformation, inner-sum collapse, Milne", ok, dt, 30)


def test_criterion_07_eigenvalue_ratio_and_truncation(capsys):
    def run():
        reps = [I.verify_eigenvalue_ratio(m, n, seed=1) for m, n in ((1, 1), (2, 1), (2, 2))]
        reps += [I.verify_truncated_generating(k, m, seed=1) for k, m in ((1, 1), (1, 2), (2, 1))]
        return reps

    reps, dt = timed(run)
    ok = all_pass(reps) and all(v == 0 for r in reps for vals in r.aux.values() for v in vals)
    report(capsys, 7, "eigenvalue ratio identity and truncated generating identity", ok, dt, 30)


def test_criterion_08_h_d_relation(capsys):
    def run():
        return [I.verify_H_D_relation(l, m, n, seed=1) for m in (1, 2) for n in range(3) for l in range(n + 1)]

    reps, dt = timed(run)
    report(capsys, 8, "H_l versus swapped D_r on the dual kernel", all_pass(reps), dt, 60)


def test_criterion_09_dual_cauchy(capsys):
    def run():
        return [I.verify_dual_cauchy_expansion(m, n, seed=1, trials=3) for m, n in ((1, 1), (2, 1), (1, 2))]

    reps, dt = timed(run)
    report(capsys, 9, "dual-Cauchy expansion as Laurent polynomials", all_pass(reps), dt, 60)


def test_criterion_10_duality_and_pieri(capsys):
    lams = [(), (1,), (1, 1), (2,)]

    def run():
        reps = [I.verify_duality(a, b, m=2, seed=1, trials=3) for a in lams for b in lams]
        reps += [I.verify_pieri(mu, l, m, seed=1) for m in (1, 2) for mu in ((), (1,), (1, 1))
                 if len(mu) <= m for l in range(3)]
        return reps

    reps, dt = timed(run)
    pieri = [r for r in reps if r.id == "pieri"]
    ok = all_pass(reps) and all(v == 0 for r in pieri for v in r.aux["excluded"])
    report(capsys, 10, "duality and row-type Pieri with excluded coefficients zero", ok, dt, 120)


def test_criterion_11_vanishing(capsys):
    def run():
        return [I.verify_vanishing(m, max_weight=4, max_order=3, seed=1) for m in (1, 2, 3)]

    reps, dt = timed(run)
    ok = all_pass(reps) and all(
        any(k.startswith(I.NONZERO + "e") for k in r.aux) and any(k.startswith(I.NONZERO + "h") for k in r.aux)
        for r in reps)
    report(capsys, 11, "e_r and h_l vanishing with negative controls", ok, dt, 10)


def _run_all(path):
    cmd = [sys.executable, "-m", "qbc.cli", "verify", "all", "--seed", "1", "--report", str(path)]
    return subprocess.run(cmd, capture_output=True, text=True)


def _strip_time(path):
    data = json.loads(path.read_text(encoding="utf-8"))
    for check in data["checks"]:
        check.pop("time_ms", None)
    return json.dumps(data, sort_keys=True)


def test_criterion_12_determinism(capsys, tmp_path):
    start = time.perf_counter()
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    r1, r2 = _run_all(first), _run_all(second)
    dt = time.perf_counter() - start
    ok = r1.returncode == 0 and r2.returncode == 0 and _strip_time(first) == _strip_time(second)
    ok = ok and all(c["pass"] for c in json.loads(first.read_text())["checks"])
    report(capsys, 12, "`qbc verify all --seed 1` is reproducible", ok, dt / 2, 600)
