"""Acceptance criteria, one test per criterion.

Each test dual evaluates or cross-checks at the stated tolerance and prints
a single pass/fail line (visible with pytest -s or on failure).
"""

import cmath
import json
import math
import random
import time

import numpy as np
import pytest

from wrightlab import (
    BinomialGen,
    GegenbauerGen,
    HumbertGen,
    QuadraturePolicy,
    SeriesPolicy,
    WrightSpec,
    appell_f1,
    appell_f3,
    beta_fn,
    closed_form_lauricella,
    closed_form_theorem1,
    closed_form_theorem2,
    closed_form_theorem4,
    evaluate_generating_integral_direct,
    evaluate_integral_direct,
    generating_integral_closed_form,
    hyper_pfq,
    lauricella_fd,
    mittag_leffler,
    t1_spec,
    t2_spec,
    t4_spec,
    tn_spec,
    wright_psi,
    wright_psi_normalized,
)
from wrightlab.cli import main


def report(number: int, label: str, worst: float, bound: float, note: str = ""):
    status = "PASS" if worst <= bound else "FAIL"
    extra = f" {note}" if note else ""
    print(f"criterion {number:02d} [{status}] {label}: worst {worst:.3e} "
          f"(bound {bound:.1e}){extra}")
    assert worst <= bound, f"criterion {number} violated: {worst:.3e} > {bound:.1e}"


def rel(a, b):
    return abs(a - b) / max(abs(b), 1e-300)


def test_criterion_01_mittag_leffler_special_cases():
    started = time.perf_counter()
    worst = 0.0
    # geometric case on the disc of radius 0.9
    for radius in (0.3, 0.6, 0.9):
        for k in range(8):
            z = cmath.rect(radius, 2.0 * math.pi * k / 8.0)
            worst = max(worst, rel(mittag_leffler(0.0, z).value, 1.0 / (1.0 - z)))
    # exponential case along [0, 5]
    for x in np.linspace(0.0, 5.0, 11):
        worst = max(worst, rel(mittag_leffler(1.0, float(x)).value, math.exp(float(x))))
    # cosh case along [0, 16]
    for x in np.linspace(0.0, 16.0, 9):
        worst = max(worst, rel(mittag_leffler(2.0, float(x)).value,
                               math.cosh(math.sqrt(float(x)))))
    elapsed = time.perf_counter() - started
    report(1, "mittag-leffler special cases", worst, 1e-13, f"runtime {elapsed:.3f}s")
    assert elapsed < 0.1


def test_criterion_02_unit_weight_reduction():
    started = time.perf_counter()
    rng = random.Random(2024)
    worst = 0.0
    for _ in range(500):
        p = rng.randint(0, 3)
        q = rng.randint(max(0, p - 1), 2)
        num = [rng.uniform(0.2, 3.0) for _ in range(p)]
        den = [rng.uniform(0.5, 4.0) for _ in range(q)]
        z = cmath.rect(rng.uniform(0.0, 0.5), rng.uniform(0.0, 2.0 * math.pi))
        spec = WrightSpec([(a, 1.0) for a in num], [(b, 1.0) for b in den])
        worst = max(worst, rel(wright_psi_normalized(spec, z).value,
                               hyper_pfq(num, den, z).value))
    elapsed = time.perf_counter() - started
    report(2, "unit-weight reduction on 500 random instances", worst, 1e-12,
           f"runtime {elapsed:.3f}s")
    assert elapsed < 1.0


def test_criterion_03_theorem1_dual_evaluation_grid():
    started = time.perf_counter()
    worst = 0.0
    count = 0
    for alpha in (0.5, 1.0, 2.5):
        for beta in (0.5, 1.0, 2.5):
            for alpha1 in (0.3, 1.2):
                for alpha2 in (0.3, 1.2):
                    for x1 in (-0.2, 0.3, 0.5):
                        for x2 in (-0.2, 0.3, 0.5):
                            for lam in (0.5, 1.0, 2.0):
                                for p in (0.0, 0.8, -0.8, 0.5 + 0.5j):
                                    closed = closed_form_theorem1(
                                        alpha, beta, alpha1, alpha2, x1, x2, lam, p).value
                                    direct = evaluate_integral_direct(
                                        t1_spec(alpha, beta, alpha1, alpha2,
                                                x1, x2, lam, p)).value
                                    worst = max(worst, rel(closed, direct))
                                    count += 1
    elapsed = time.perf_counter() - started
    report(3, f"two-factor closed form vs oracle on {count} grid points", worst, 1e-8,
           f"runtime {elapsed:.1f}s")
    assert count == 3888
    assert elapsed < 60.0


def test_criterion_04_p_zero_collapses():
    rng = random.Random(404)
    worst_f1 = worst_f3 = worst_t4 = worst_fd = 0.0
    for _ in range(100):
        alpha = rng.uniform(0.3, 2.5)
        beta = rng.uniform(0.3, 2.5)
        a1 = rng.uniform(0.2, 1.5)
        a2 = rng.uniform(0.2, 1.5)
        x1 = rng.uniform(-0.6, 0.6)
        x2 = rng.uniform(-0.6, 0.6)
        lam = rng.choice([0.5, 1.0, 2.0])
        worst_f1 = max(worst_f1, rel(
            closed_form_theorem1(alpha, beta, a1, a2, x1, x2, lam, 0.0).value,
            appell_f1(alpha, a1, a2, alpha + beta, x1, x2).value))
        worst_f3 = max(worst_f3, rel(
            closed_form_theorem2(alpha, beta, a1, a2, x1, x2, lam, 0.0).value,
            appell_f3(alpha, beta, a1, a2, alpha + beta, x1, x2).value))
        a, b = sorted((rng.uniform(-2.0, 2.0), rng.uniform(2.1, 4.0)))
        nu = rng.uniform(-0.9, 2.0)
        mu = rng.uniform(-0.9, 2.0)
        worst_t4 = max(worst_t4, rel(
            closed_form_theorem4(alpha, beta, a, b, nu, mu, lam, 0.0).value,
            (nu + 1.0) ** -alpha * (mu + 1.0) ** -beta / (b - a)))
        a3 = rng.uniform(0.2, 1.5)
        x3 = rng.uniform(-0.6, 0.6)
        worst_fd = max(worst_fd, rel(
            closed_form_lauricella(alpha, beta, (a1, a2, a3), (x1, x2, x3), lam, 0.0).value,
            lauricella_fd(alpha, [a1, a2, a3], alpha + beta, [x1, x2, x3]).value))
    worst = max(worst_f1, worst_f3, worst_t4, worst_fd)
    report(4, "p = 0 collapses (two-factor, crossed-factor, flat-weight, 3-variable)",
           worst, 1e-11)


def test_criterion_05_lambda_one_reductions():
    rng = random.Random(505)
    worst = 0.0
    for _ in range(120):
        alpha = rng.uniform(0.3, 3.0)
        beta = rng.uniform(0.3, 3.0)
        p = cmath.rect(rng.uniform(0.0, 2.0), rng.uniform(0.0, 2.0 * math.pi))
        spec = WrightSpec([(alpha, 1.0), (beta, 1.0), (1.0, 1.0)],
                          [(alpha + beta, 2.0), (1.0, 1.0)])
        lhs = wright_psi_normalized(spec, p).value
        rhs = hyper_pfq([alpha, beta],
                        [0.5 * (alpha + beta), 0.5 * (alpha + beta + 1.0)], p / 4.0).value
        worst = max(worst, rel(lhs, rhs))
        # symmetric case: the confluent single-parameter form
        spec_sym = WrightSpec([(alpha, 1.0), (alpha, 1.0), (1.0, 1.0)],
                              [(2.0 * alpha, 2.0), (1.0, 1.0)])
        lhs_sym = wright_psi_normalized(spec_sym, p).value
        rhs_sym = hyper_pfq([alpha], [alpha + 0.5], p / 4.0).value
        worst = max(worst, rel(lhs_sym, rhs_sym))
    report(5, "lam = 1 reductions to quarter-argument series", worst, 1e-10)


def test_criterion_06_removable_pair_collapse():
    rng = random.Random(606)
    worst = 0.0
    for _ in range(80):
        upper_a = rng.uniform(0.3, 3.0)
        upper_b = rng.uniform(0.3, 3.0)
        lower_c = rng.uniform(0.6, 6.0)
        p = cmath.rect(rng.uniform(0.0, 2.0), rng.uniform(0.0, 2.0 * math.pi))
        full = wright_psi(WrightSpec([(upper_a, 1.0), (upper_b, 1.0), (1.0, 1.0)],
                                     [(lower_c, 2.0), (1.0, 1.0)]), p).value
        collapsed = wright_psi(WrightSpec([(upper_a, 1.0), (upper_b, 1.0)],
                                          [(lower_c, 2.0)]), p).value
        worst = max(worst, rel(full, collapsed))
    report(6, "lam = 1 removable-pair collapse", worst, 1e-13)


def test_criterion_07_generating_dual_evaluation():
    started = time.perf_counter()
    worst = 0.0
    count = 0
    generators = [
        ("binomial", BinomialGen(0.7)),
        ("humbert", HumbertGen(0.8, 1.7, 0.6)),
        ("gegenbauer", GegenbauerGen(0.35)),
    ]
    for _, gen in generators:
        for r, s in ((0.8, 2.1), (1.5, 3.0)):
            for lam in (1.0, 2.0):
                for p in (0.0, 0.6):
                    for t in (0.25, -0.4, 0.2 + 0.2j):
                        closed = generating_integral_closed_form(
                            gen, r, s, 1.0, 1.0, lam, p, t).value
                        direct = evaluate_generating_integral_direct(
                            gen, r, s, 1.0, 1.0, lam, p, t).value
                        worst = max(worst, rel(closed, direct))
                        count += 1
    # symmetric specialization s = 2r, equal exponents
    for p in (0.0, 0.6):
        closed = generating_integral_closed_form(BinomialGen(0.7), 0.9, 1.8, 1.0, 1.0,
                                                 1.0, p, 0.25).value
        direct = evaluate_generating_integral_direct(BinomialGen(0.7), 0.9, 1.8, 1.0, 1.0,
                                                     1.0, p, 0.25).value
        worst = max(worst, rel(closed, direct))
        count += 1
    report(7, f"generating-function dual evaluation on {count} points", worst, 1e-8,
           f"runtime {time.perf_counter() - started:.1f}s")

    worst_pair = 0.0
    for a in (0.3, 0.55, 0.9):
        left = generating_integral_closed_form(GegenbauerGen(a, 1.0), 0.8, 2.1, 1.0, 1.0,
                                               1.0, 0.6, 0.3).value
        right = generating_integral_closed_form(BinomialGen(2.0 * a), 0.8, 2.1, 1.0, 1.0,
                                                1.0, 0.6, 0.3).value
        worst_pair = max(worst_pair, rel(left, right))
    report(7, "ultraspherical-at-one equals doubled binomial", worst_pair, 1e-12)


def test_criterion_08_multivariable_consistency():
    rng = random.Random(808)
    worst = 0.0
    for _ in range(100):
        alpha = rng.uniform(0.3, 2.5)
        beta = rng.uniform(0.3, 2.5)
        a1 = rng.uniform(0.2, 1.5)
        a2 = rng.uniform(0.2, 1.5)
        x1 = rng.uniform(-0.6, 0.6)
        x2 = rng.uniform(-0.6, 0.6)
        lam = rng.choice([0.5, 1.0, 2.0])
        p = complex(rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5))
        lhs = closed_form_lauricella(alpha, beta, (a1, a2), (x1, x2), lam, p).value
        rhs = closed_form_theorem1(alpha, beta, a1, a2, x1, x2, lam, p).value
        worst = max(worst, rel(lhs, rhs))
    report(8, "two-variable reduction of the n-variable closed form", worst, 1e-12)

    worst_oracle = 0.0
    for p in (0.8, -0.5, 0.4 + 0.6j):
        closed = closed_form_lauricella(1.1, 0.9, (0.3, 0.5, 0.7), (0.2, -0.15, 0.3),
                                        1.0, p).value
        direct = evaluate_integral_direct(
            tn_spec(1.1, 0.9, (0.3, 0.5, 0.7), (0.2, -0.15, 0.3), 1.0, p)).value
        worst_oracle = max(worst_oracle, rel(closed, direct))
    report(8, "three-variable closed form vs oracle", worst_oracle, 1e-8)


def test_criterion_09_oracle_self_checks():
    from wrightlab import tanh_sinh_integrate

    worst_beta = 0.0
    for x in np.linspace(0.2, 5.0, 10):
        for y in np.linspace(0.2, 5.0, 10):
            result = tanh_sinh_integrate(
                lambda t, da, db, x=x, y=y: da ** (x - 1.0) * db ** (y - 1.0), 0.0, 1.0)
            worst_beta = max(worst_beta, rel(result.value, beta_fn(float(x), float(y))))
    report(9, "beta integral vs gamma-ratio form on the 10x10 grid", worst_beta, 1e-12)

    rng = random.Random(909)
    worst_gauss = 0.0
    for _ in range(50):
        a = rng.uniform(0.2, 3.0)
        b = rng.uniform(0.2, 3.0)
        c = b + rng.uniform(0.2, 3.0)
        z = cmath.rect(rng.uniform(0.0, 0.5), rng.uniform(0.0, 2.0 * math.pi))
        integral = tanh_sinh_integrate(
            lambda t, da, db: da ** (b - 1.0) * db ** (c - b - 1.0) * (1.0 - z * t) ** -a,
            0.0, 1.0).value / beta_fn(b, c - b)
        worst_gauss = max(worst_gauss, rel(integral, hyper_pfq([a, b], [c], z).value))
    report(9, "gauss-series integral representation on 50 draws", worst_gauss, 1e-10)


def test_criterion_10_determinism_and_exit_codes(tmp_path, monkeypatch):
    monkeypatch.setenv("SOURCE_DATE_EPOCH", "946684800")
    cfg = {"seed": 11,
           "cases": ["theorem4", "ex4.4", "theorem1-random"],
           "grids": {"theorem4": {"alpha": [1.2], "beta": [0.8], "a": [0.0], "b": [1.0],
                                  "nu": [0.5], "mu": [1.5], "lam": [1.0],
                                  "p": [0.0, 0.8, [0.5, 0.5]]}}}
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text(json.dumps(cfg))
    out1, out2 = tmp_path / "r1.json", tmp_path / "r2.json"
    code1 = main(["verify", "--config", str(cfg_path), "--out", str(out1)])
    code2 = main(["verify", "--config", str(cfg_path), "--out", str(out2)])
    identical = out1.read_bytes() == out2.read_bytes()
    ok = code1 == 0 and code2 == 0 and identical
    print(f"criterion 10 [{'PASS' if ok else 'FAIL'}] byte-identical determinism "
          f"(codes {code1}/{code2}, identical={identical})")
    assert ok

    # injected failure: impossible tolerance must flip the exit code and
    # statuses, never silently pass
    bad = dict(cfg, tolerance=1e-18)
    bad_path = tmp_path / "bad.json"
    bad_path.write_text(json.dumps(bad))
    out3 = tmp_path / "r3.json"
    code3 = main(["verify", "--config", str(bad_path), "--out", str(out3)])
    report_doc = json.loads(out3.read_text())
    statuses = {r["status"] for r in report_doc["records"]}
    ok = code3 != 0 and "fail" in statuses
    print(f"criterion 10 [{'PASS' if ok else 'FAIL'}] exit-code contract on injected "
          f"failure (code {code3})")
    assert ok
