"""Acceptance gate: one test per shipped criterion, at its stated tolerance.

Run with ``pytest tests/test_acceptance.py -v -s`` to see one PASS line per
criterion; a failing criterion fails its test outright.  Digit-string
expectations are byte-frozen; they were independently reproduced with exact
rational arithmetic before being committed here.
"""

import math
import os
import subprocess
import sys
import time
from decimal import Decimal

import pytest

from emi.jets import get_integrand
from emi.pi_suite import matched_digits, pi_emi, term_count
from emi.precision import Rat, context, render_decimal
from emi.quadrature import EmiConfig, closed_form_arctan, emi_integrate

PI_L1000_M0 = "3.1415927369231265717940545935969641467776336373917"
PI_L1000_M2 = "3.1415926535897932384637594547080737075957760027852"
PI_L1000_M6 = "3.1415926535897932384626433832795028649618474297397"


def _announce(n: int, ok: bool, detail: str):
    print(f"criterion {n}: {'PASS' if ok else 'FAIL'} ({detail})")


def test_criterion_1_digit_string_midpoint_rule():
    start = time.perf_counter()
    value = pi_emi(1000, 0, mode="float", precision=60)
    elapsed = time.perf_counter() - start
    rendered = render_decimal(value, 50)
    assert rendered == PI_L1000_M0
    assert elapsed < 5.0
    _announce(1, True, f"50-digit string byte-exact, {elapsed:.2f}s")


def test_criterion_2_digit_string_second_order():
    start = time.perf_counter()
    value = pi_emi(1000, 2, mode="float", precision=60)
    elapsed = time.perf_counter() - start
    rendered = render_decimal(value, 50)
    assert rendered == PI_L1000_M2
    assert matched_digits(rendered) == 21
    assert elapsed < 10.0
    _announce(2, True, f"50 digits + 21 matched, {elapsed:.2f}s")


def test_criterion_3_digit_string_sixth_order():
    start = time.perf_counter()
    value = pi_emi(1000, 6, mode="float", precision=60)
    elapsed = time.perf_counter() - start
    trimmed_expectation = PI_L1000_M6.replace(".", "")[:49]
    rendered_49 = render_decimal(value, 49).replace(".", "")
    assert rendered_49 == trimmed_expectation
    # the full printed string reproduces too; assert the stronger form as well
    assert render_decimal(value, 50) == PI_L1000_M6
    assert matched_digits(render_decimal(value, 50)) == 35
    assert elapsed < 30.0
    _announce(3, True, f"49- and 50-digit strings byte-exact, 35 matched, {elapsed:.2f}s")


def test_criterion_4_high_order_digit_count():
    start = time.perf_counter()
    value = pi_emi(46, 46, mode="float", precision=130)
    elapsed = time.perf_counter() - start
    matched = matched_digits(render_decimal(value, 130))
    assert matched == 105
    assert term_count(46, 46) == 1104
    assert elapsed < 10.0
    _announce(4, True, f"105 matched digits, 1104 terms, {elapsed:.2f}s")


def test_criterion_5_closed_form_equivalence():
    start = time.perf_counter()
    cases = 0
    for x in (Rat(1), Rat(1, 2), Rat(2)):
        spec = get_integrand("arctan-kernel", x)
        for L in (1, 2, 10, 50):
            for M in (0, 2, 6):
                generic = emi_integrate(spec, EmiConfig(L, M, "exact")).value
                closed = closed_form_arctan(x, L, M, mode="exact")
                assert generic == closed, (x, L, M)
                cases += 1
    elapsed = time.perf_counter() - start
    assert elapsed < 60.0
    _announce(5, True, f"{cases} rational equalities, {elapsed:.2f}s")


def test_criterion_6_polynomial_exactness():
    cases = 0
    for M in (0, 2, 4, 6, 8):
        for k in range(M + 2):
            spec = get_integrand(f"poly:{k}")
            for L in (1, 3, 7):
                value = emi_integrate(spec, EmiConfig(L, M, "exact")).value
                assert value == Rat(1, k + 1), (k, L, M)
                cases += 1
    _announce(6, True, f"{cases} exact integrals")


def test_criterion_7_odd_order_collapse():
    cases = 0
    exact_specs = [
        get_integrand("arctan-kernel", Rat(1)),
        get_integrand("runge"),
        get_integrand("poly:5"),
    ]
    for L in range(1, 33):
        for k in range(4):
            for spec in exact_specs:
                odd = emi_integrate(spec, EmiConfig(L, 2 * k + 1, "exact")).value
                even = emi_integrate(spec, EmiConfig(L, 2 * k, "exact")).value
                assert odd == even, (spec.name, L, k)
                cases += 1
            exp = get_integrand("exp")
            odd = emi_integrate(exp, EmiConfig(L, 2 * k + 1, "float", 40)).value
            even = emi_integrate(exp, EmiConfig(L, 2 * k, "float", 40)).value
            assert odd == even, ("exp", L, k)
            cases += 1
    _announce(7, True, f"{cases} exact collapses, L up to 32")


def test_criterion_8_empirical_convergence_order():
    ctx = context(60)
    true = ctx.subtract(ctx.exp(Decimal(1)), Decimal(1))
    spec = get_integrand("exp")
    for M in (0, 2, 4):
        errs = {}
        for L in (16, 32):
            value = emi_integrate(spec, EmiConfig(L, M, "float", 45)).value
            errs[L] = abs(float(ctx.subtract(value.value, true)))
        p = math.log2(errs[16] / errs[32])
        assert abs(p - (M + 2)) <= 0.3, (M, p)
    _announce(8, True, "orders within 0.3 of M+2 for M in {0, 2, 4}")


def test_criterion_9_determinism_across_thread_counts():
    cmd = [
        sys.executable, "-m", "emi", "pi",
        "--L", "1000", "--M", "6", "--precision", "60", "--digits", "49",
    ]
    outputs = []
    for threads in ("1", "8"):
        env = dict(os.environ, EMI_THREADS=threads)
        proc = subprocess.run(cmd, capture_output=True, env=env, timeout=120)
        assert proc.returncode == 0, proc.stderr
        outputs.append(proc.stdout)
    assert outputs[0] == outputs[1]
    assert PI_L1000_M6.replace(".", "")[:49].encode() in outputs[0].replace(b".", b"")
    _announce(9, True, "stdout byte-identical for EMI_THREADS=1 and 8")
