"""Cross-module invariant suites behind the ``verify`` CLI subcommand.

Each group checks one identity the engine must satisfy; a failing group
reports the first counterexample's inputs so it can be reproduced directly.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import EmiError
from .jets import get_integrand
from .pi_suite import REFERENCE_PI, _FIFTY_DIGIT_CHECK, ReferencePi
from .precision import Rat
from .quadrature import EmiConfig, closed_form_arctan, emi_integrate


@dataclass(frozen=True)
class GroupResult:
    name: str
    passed: bool
    cases: int
    first_failure: str | None = None


def _check_closed_form(reference: ReferencePi) -> GroupResult:
    cases = 0
    for x in (Rat(1), Rat(1, 2), Rat(2)):
        spec = get_integrand("arctan-kernel", x)
        for L in (1, 2, 10, 50):
            for M in (0, 2, 6):
                cases += 1
                generic = emi_integrate(spec, EmiConfig(L=L, M=M, mode="exact")).value
                closed = closed_form_arctan(x, L, M, mode="exact")
                if generic != closed:
                    return GroupResult(
                        "closed-form",
                        False,
                        cases,
                        f"x={x}, L={L}, M={M}: engine {generic} != closed form {closed}",
                    )
    return GroupResult("closed-form", True, cases)


def _check_exactness(reference: ReferencePi) -> GroupResult:
    cases = 0
    for M in (0, 2, 4, 6, 8):
        for k in range(M + 2):
            spec = get_integrand(f"poly:{k}")
            for L in (1, 3, 7):
                cases += 1
                value = emi_integrate(spec, EmiConfig(L=L, M=M, mode="exact")).value
                if value != Rat(1, k + 1):
                    return GroupResult(
                        "exactness",
                        False,
                        cases,
                        f"poly:{k}, L={L}, M={M}: got {value}, want 1/{k + 1}",
                    )
    return GroupResult("exactness", True, cases)


def _check_odd_collapse(reference: ReferencePi) -> GroupResult:
    cases = 0
    exact_specs = [
        get_integrand("arctan-kernel", Rat(1)),
        get_integrand("runge"),
        get_integrand("poly:4"),
    ]
    for spec in exact_specs:
        for L in (1, 8, 32):
            for k in range(4):
                cases += 1
                odd = emi_integrate(spec, EmiConfig(L=L, M=2 * k + 1, mode="exact"))
                even = emi_integrate(spec, EmiConfig(L=L, M=2 * k, mode="exact"))
                if odd.value != even.value:
                    return GroupResult(
                        "odd-collapse",
                        False,
                        cases,
                        f"{spec.name}, L={L}, M={2 * k + 1} vs {2 * k}: "
                        f"{odd.value} != {even.value}",
                    )
    exp = get_integrand("exp")
    for L in (1, 8, 32):
        for k in range(4):
            cases += 1
            odd = emi_integrate(exp, EmiConfig(L=L, M=2 * k + 1, precision=40))
            even = emi_integrate(exp, EmiConfig(L=L, M=2 * k, precision=40))
            if odd.value != even.value:
                return GroupResult(
                    "odd-collapse",
                    False,
                    cases,
                    f"exp, L={L}, M={2 * k + 1} vs {2 * k}",
                )
    return GroupResult("odd-collapse", True, cases)


def _check_reference_pi(reference: ReferencePi) -> GroupResult:
    if len(reference.digits) < 120:
        return GroupResult(
            "reference-pi", False, 1, f"only {len(reference.digits)} digits embedded"
        )
    if not reference.digits.startswith(_FIFTY_DIGIT_CHECK):
        for i, (a, b) in enumerate(zip(reference.digits, _FIFTY_DIGIT_CHECK)):
            if a != b:
                return GroupResult(
                    "reference-pi",
                    False,
                    2,
                    f"digit {i + 1} is {a}, check constant has {b}",
                )
    return GroupResult("reference-pi", True, 2)


_GROUPS = {
    "closed-form": _check_closed_form,
    "exactness": _check_exactness,
    "odd-collapse": _check_odd_collapse,
    "reference-pi": _check_reference_pi,
}


def group_names() -> list[str]:
    return list(_GROUPS)


def run_selftest(
    groups: list[str] | None = None,
    reference: ReferencePi = REFERENCE_PI,
) -> list[GroupResult]:
    """Run the named invariant groups (all of them by default)."""
    selected = group_names() if groups is None else list(groups)
    results = []
    for name in selected:
        check = _GROUPS.get(name)
        if check is None:
            raise EmiError(
                f"unknown verify group {name!r}; choose from {', '.join(_GROUPS)}"
            )
        results.append(check(reference))
    return results
