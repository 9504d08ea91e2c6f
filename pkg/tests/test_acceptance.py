"""Exit criteria. Each test records one PASS/FAIL line shown in the pytest summary."""

import math
import time

import numpy as np
import pytest

from dexpbounds import bound_report, corollary_decay, run_suite
from dexpbounds.builtin import get
from dexpbounds.harness import SUITES

from conftest import ACCEPTANCE_LINES


def record(num, title, ok, detail=""):
    line = f"[{'PASS' if ok else 'FAIL'}] {num:>2}. {title}" + (f"  ({detail})" if detail else "")
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def _suite(num, title, suite, seed, trials, algebras=None, budget_s=None):
    t0 = time.perf_counter()
    rep = run_suite(suite, seed, trials, algebras)
    dt = time.perf_counter() - t0
    ok = rep.ok and (budget_s is None or dt < budget_s)
    detail = f"checked={rep.checked} skipped={rep.skipped} failures={len(rep.failures)} {dt:.1f}s"
    record(num, title, ok, detail)
    assert rep.ok, rep.failures[:3]
    if budget_s is not None:
        assert dt < budget_s
    return rep


def test_01_thm1_sandwich():
    rep = _suite(1, "diagonalizable-case sandwich C*lt_min <= s_n, s_1 <= D*lt_max",
                 "thm1", 0, 1000, ["sl2", "so3", "aff1"], budget_s=60)
    assert rep.checked + rep.skipped == 3000
    assert rep.checked >= 2990


def test_02_thm2_two_sided():
    rep = _suite(2, "general bounds g^(1-n) prod|phi| <= s_n, s_1 <= g (log domain)",
                 "thm2", 7, 1000, budget_s=120)
    assert rep.checked == 1000 * 11


def test_03_eq5_sandwich():
    rep = _suite(3, "s_n <= lt_min + 1e-9 and lt_max <= s_1 + 1e-9", "eq5", 7, 1000)
    assert rep.checked == 1000 * 11


def test_04_nilpotent_polynomials():
    rep = _suite(4, "nilpotent 1/Q(|x|) <= s_n, s_1 <= Q1(|x|)", "nilpotent", 0, 1000,
                 ["heis3", "heis5", "n4", "heis3_r"])
    assert rep.checked == 4000


def test_05_corollary_decay():
    d = corollary_decay(get("sl2").algebra, np.array([1.0, 0, 0]), range(1, 51))
    floor = -math.expm1(-2.0) / 2
    ok = d.applicable and d.min_value >= 0.432 and abs(d.min_value - floor) <= 1e-6
    record(5, "sl2 ray along H: min_t t*s_n >= 0.432", ok,
           f"min={d.min_value:.9f} at t={d.witness_t:g}")
    assert ok


def test_06_phi_engine():
    _suite(6, "phi_matrix vs quadrature 1e-8, A phi(A) = I - e^-A 1e-10", "phi-oracle", 0, 500)


@pytest.mark.parametrize("suite", ["weyl", "spectral-mapping", "minimax"])
def test_07_spectral_machinery(suite):
    seed = 42 if suite == "weyl" else 0
    _suite(7, f"spectral machinery: {suite}", suite, seed, 500)


def test_08_goldens():
    ok = True
    r = bound_report(get("abelian3").algebra, np.array([0.3, 0.4, 0.0]))
    vals = [r.exact_min, r.exact_max, r.lambda_tilde_min, r.lambda_tilde_max, r.thm1_lower,
            r.thm1_upper, r.thm2_lower, r.thm2_upper, r.nilp_lower, r.nilp_upper]
    ok &= all(abs(v - 1) <= 1e-12 for v in vals)
    r = bound_report(get("heis3").algebra, np.array([1.0, 0, 0]))
    ok &= abs(r.exact_min - 0.780776) <= 1e-5 and abs(r.exact_max - 1.280776) <= 1e-5
    r = bound_report(get("sl2").algebra, np.array([1.0, 0, 0]))
    ok &= abs(r.exact_min - 0.432332) <= 1e-6 and abs(r.exact_max - 3.194528) <= 1e-6
    record(8, "goldens: abelian = 1, heis3 e0, sl2 H", ok)
    assert ok


def test_09_lemma31():
    _suite(9, "s_n(PTQ) >= s_n(P) s_n(T) s_n(Q) - 1e-10", "lemma31", 0, 200)


def test_10_determinism():
    bad = []
    for suite in sorted(SUITES):
        a = run_suite(suite, 123, 20).to_json(timing=False)
        b = run_suite(suite, 123, 20).to_json(timing=False)
        if a != b:
            bad.append(suite)
    record(10, "identical seed => byte-identical reports (all suites)", not bad,
           f"non-deterministic: {bad}" if bad else f"{len(SUITES)} suites")
    assert not bad
