"""Exit criteria for the package, one test per criterion.

Each test records a PASS/FAIL line, printed in the terminal summary.
"""

import math
import time

import numpy as np

from bstoeplitz.action import action_integral
from bstoeplitz.bs import bs_spectrum
from bstoeplitz.cli import run
from bstoeplitz.compare import compare_pipeline, convergence_study, match_spectra
from bstoeplitz.spectra import eigenvalues, power_norm, resolvent_norm
from bstoeplitz.symbols import build_symbol, operator_matrix, toeplitz_matrix, toeplitz_quadrature_oracle

from conftest import ACCEPTANCE_LINES


def record(n, ok, detail):
    ACCEPTANCE_LINES[n] = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}"
    print(ACCEPTANCE_LINES[n])
    return ok


def test_criterion_1_exact_diagonal_spectrum():
    t0 = time.perf_counter()
    ev = eigenvalues(operator_matrix("T", 100, 0.0)).eigenvalues
    elapsed = time.perf_counter() - t0
    dev = float(np.max(np.abs(ev - (2 * np.arange(101) - 100) / 100)))
    ok = dev <= 1e-12 and elapsed < 1.0
    assert record(1, ok, f"max deviation {dev:.2e} (<= 1e-12), {elapsed:.3f}s (< 1s)")


def test_criterion_2_oracle_equivalence():
    t0 = time.perf_counter()
    worst = 0.0
    for name in ("x3", "x1sq", "ladder", "one"):
        e = build_symbol(name)
        for k in range(2, 9):
            diff = np.abs(toeplitz_matrix(e, k).entries - toeplitz_quadrature_oracle(e, k).entries)
            worst = max(worst, float(diff.max()))
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-8 and elapsed < 30
    assert record(2, ok, f"max entry difference {worst:.2e} (<= 1e-8), {elapsed:.2f}s (< 30s)")


def test_criterion_3_flat_action_law():
    law = max(abs(action_integral(lam, 0.0).value - math.pi * (1 + lam))
              for lam in (-0.6, -0.3, 0.0, 0.3, 0.6))
    inv = 0.0
    for lam in (-0.6, -0.3, 0.0, 0.3, 0.6):
        base = action_integral(lam, 0.0).value
        for r in (0.85, 1.2):
            inv = max(inv, abs(base - action_integral(lam, 0.0, radius_scale=r).value))
    ok = law <= 1e-10 and inv <= 1e-10
    assert record(3, ok, f"|I - pi(1+lam)| max {law:.2e}, contour change max {inv:.2e} (both <= 1e-10)")


def test_criterion_4_flat_bohr_sommerfeld_exactness():
    worst = 0.0
    for k in (10, 20, 50, 100):
        for variant, family in (("principal", "T"), ("halfform", "S")):
            exact = eigenvalues(operator_matrix(family, k, 0.0)).eigenvalues
            inside = exact[np.abs(exact.real) <= 0.8]
            approx = [s.lam for s in bs_spectrum(k, 0.0, variant, 0.8)]
            worst = max(worst, match_spectra(inside, approx).max_error)
    ok = worst <= 1e-10
    assert record(4, ok, f"max_error over k in {{10,20,50,100}}, both variants: {worst:.2e} (<= 1e-10)")


def test_criterion_5_convergence_orders():
    t0 = time.perf_counter()
    ks = [20, 40, 80, 160]
    half = convergence_study(ks, 0.2, "halfform", workers=4)
    prin = convergence_study(ks, 0.2, "principal", workers=4)
    elapsed = time.perf_counter() - t0
    e_half = dict(half["table"])[160]
    e_prin = dict(prin["table"])[160]
    ok = (
        -2.5 <= half["slope"] <= -1.5
        and -1.5 <= prin["slope"] <= -0.5
        and e_half < e_prin / 5
        and elapsed < 60
    )
    assert record(
        5, ok,
        f"halfform slope {half['slope']:.3f} in [-2.5,-1.5], principal slope {prin['slope']:.3f} in [-1.5,-0.5], "
        f"k=160 errors {e_half:.2e} < {e_prin:.2e}/5, {elapsed:.1f}s (< 60s)",
    )


def test_criterion_6_counting():
    details = []
    ok = True
    for k in (20, 100):
        ev = eigenvalues(operator_matrix("T", k, 0.2)).eigenvalues
        n_exact = int(np.sum(np.abs(ev.real) <= 0.8))
        sols = bs_spectrum(k, 0.2, "principal", 0.8 * 1.05)
        n_bs = sum(1 for s in sols if s.ok and abs(s.lam.real) <= 0.8)
        ok &= n_exact == n_bs
        details.append(f"k={k}: {n_exact} exact vs {n_bs} BS")
    report = compare_pipeline(100, 0.2, "principal")
    ok &= report.exact_count_in_window == report.bs_count_in_window
    assert record(6, ok, ", ".join(details))


def test_criterion_7_jordan_and_pseudospectrum():
    lad = operator_matrix("ladder", 100, 0.0)
    pnorm = power_norm(lad, 101)
    rnorm = resolvent_norm(lad, 0.3)
    ev = eigenvalues(lad).eigenvalues
    spread = float(np.max(np.abs(ev)))
    clauses = {
        "power_norm(101) == 0": pnorm == 0.0,
        "resolvent_norm(0.3) >= 1e6": rnorm >= 1e6,
        "eigenvalues not inside |lam| < 0.1": spread >= 0.1,
    }
    ok = all(clauses.values())
    failed = [c for c, good in clauses.items() if not good]
    assert record(
        7, ok,
        f"power norm {pnorm:g}, resolvent norm {rnorm:.2e}, max |computed eigenvalue| {spread:.2e}"
        + (f"; failed: {', '.join(failed)}" if failed else ""),
    )


def test_criterion_8_determinism(tmp_path):
    args = ["compare", "--k", "100", "--eps", "0.2", "--variant", "halfform"]
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    codes = (run(args + ["--out", str(a)]), run(args + ["--out", str(b)]))
    ok = codes == (0, 0) and a.read_bytes() == b.read_bytes()
    assert record(8, ok, f"exit codes {codes}, {a.stat().st_size} bytes, byte-identical: {a.read_bytes() == b.read_bytes()}")
