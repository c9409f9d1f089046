"""Composite midpoint quadrature with per-subinterval Taylor corrections.

The interval [0, 1] is split into L equal subintervals with midpoints
``(2l - 1) / (2L)``.  On each subinterval the integrand is replaced by its
order-M Taylor expansion about the midpoint and integrated analytically,
which collapses to the weighted coefficient sum

    sum over even m of  c_m * 2 / ((2L)^(m+1) * (m + 1))

because the odd powers integrate to zero over the symmetric subinterval.
M = 0 is exactly the classical composite midpoint rule; every increase of M
by 2 raises the convergence order by 2.

Exact mode evaluates all of this in rational arithmetic and serves as the
correctness oracle for float mode, which runs on :class:`~emi.precision.Real`
at a working precision of ``config.precision + GUARD_DIGITS``.  Float-mode
sums are reduced with a balanced pairwise tree in a fixed order, so results
are bit-identical no matter how many worker threads are used.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence, Union

from .errors import EmiError, ExactModeUnsupportedError
from .jets import IntegrandSpec, Jet, integrand_jet
from .precision import GUARD_DIGITS, MIN_PRECISION, Rat, Real, rat_to_real

Scalar = Union[Rat, Real]

THREADS_ENV_VAR = "EMI_THREADS"


@dataclass(frozen=True)
class EmiConfig:
    """Parameters of one quadrature run.

    ``L`` subintervals, Taylor order ``M``, arithmetic ``mode`` ("exact" or
    "float"), and for float mode the significant-digit count ``precision``
    the result should be trusted to.
    """

    L: int
    M: int
    mode: str = "float"
    precision: int = 60

    def __post_init__(self):
        if self.L < 1:
            raise ValueError(f"L must be >= 1, got {self.L}")
        if self.M < 0:
            raise ValueError(f"M must be >= 0, got {self.M}")
        if self.mode not in ("exact", "float"):
            raise ValueError(f"mode must be 'exact' or 'float', got {self.mode!r}")
        if self.mode == "float" and self.precision < MIN_PRECISION:
            raise ValueError(
                f"precision must be >= {MIN_PRECISION}, got {self.precision}"
            )

    @property
    def working_precision(self) -> int:
        return self.precision + GUARD_DIGITS


@dataclass(frozen=True)
class QuadResult:
    """Value of one quadrature run plus the inputs that produced it."""

    value: Scalar
    config: EmiConfig
    term_count: int


def emi_weights(L: int, M: int) -> list[Rat]:
    """Per-coefficient weights w_0 .. w_M as exact rationals.

    ``w_m = 2 / ((2L)^(m+1) * (m+1))`` for even m and 0 for odd m.  The
    weight multiplies the jet coefficient ``c_m = f^(m)/m!``, the factorial
    having been cancelled against the analytic subinterval integral.
    """
    if L < 1:
        raise ValueError(f"L must be >= 1, got {L}")
    if M < 0:
        raise ValueError(f"M must be >= 0, got {M}")
    weights = []
    for m in range(M + 1):
        if m % 2:
            weights.append(Rat(0))
        else:
            weights.append(Rat(2, (2 * L) ** (m + 1) * (m + 1)))
    return weights


def emi_subinterval(jet: Jet, L: int) -> Scalar:
    """Analytic integral of a jet over its width-1/L subinterval."""
    weights = emi_weights(L, jet.order)
    if isinstance(jet.coeffs[0], Real):
        prec = jet.coeffs[0].precision
        acc = Real(0, prec)
        for m in range(0, jet.order + 1, 2):
            acc = acc + jet.coeffs[m] * rat_to_real(weights[m], prec)
        return acc
    acc = Rat(0)
    for m in range(0, jet.order + 1, 2):
        acc += jet.coeffs[m] * weights[m]
    return acc


def pairwise_sum(values: Sequence[Scalar]) -> Scalar:
    """Balanced-tree reduction in a fixed order.

    Bounds float-mode error growth to O(log n) ulps and, because the tree
    shape depends only on the sequence, guarantees bit-identical results
    regardless of how the values were produced.
    """
    n = len(values)
    if n == 0:
        raise ValueError("cannot reduce an empty sequence")
    if n == 1:
        return values[0]
    mid = n // 2
    return pairwise_sum(values[:mid]) + pairwise_sum(values[mid:])


def thread_limit() -> int:
    """Worker-thread cap from the EMI_THREADS environment variable."""
    raw = os.environ.get(THREADS_ENV_VAR)
    if raw is None:
        return 1
    try:
        n = int(raw)
    except ValueError:
        n = 0
    if n < 1:
        raise EmiError(f"{THREADS_ENV_VAR} must be a positive integer, got {raw!r}")
    return n


def _map_subintervals(term, L: int) -> list:
    threads = min(thread_limit(), L)
    if threads <= 1:
        return [term(l) for l in range(1, L + 1)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(term, range(1, L + 1)))


def emi_integrate(spec: IntegrandSpec, config: EmiConfig) -> QuadResult:
    """Integrate a registered integrand over [0, 1].

    The per-subinterval terms are computed independently (possibly across
    threads, capped by EMI_THREADS) and reduced pairwise in midpoint order,
    so identical inputs give identical results no matter the thread count.
    """
    L, M = config.L, config.M
    if config.mode == "exact":
        if not spec.exact_capable:
            raise ExactModeUnsupportedError(
                f"integrand {spec.name!r} does not support exact mode"
            )

        def term(l: int) -> Scalar:
            center = Rat(2 * l - 1, 2 * L)
            return emi_subinterval(integrand_jet(spec, center, M), L)

    else:
        working = config.working_precision

        def term(l: int) -> Scalar:
            center = rat_to_real(Rat(2 * l - 1, 2 * L), working)
            return emi_subinterval(integrand_jet(spec, center, M), L)

    total = pairwise_sum(_map_subintervals(term, L))
    if config.mode == "float":
        total = Real(total.value, config.precision)
    return QuadResult(total, config, L * (M // 2 + 1))


def _closed_form_term(x: Scalar, L: int, M: int, l: int) -> Scalar:
    # finite-L summand of the arctangent identities at M = 0, 2, 6,
    # evaluated term by term exactly as the identities group them
    o = 2 * l - 1
    o2 = o * o
    x2 = x * x
    big_l2 = 4 * L * L
    d = big_l2 + o2 * x2
    term = (4 * L) * x / d
    if M >= 2:
        term = term - (4 * L) * x ** 3 * (big_l2 - 3 * o2 * x2) / (3 * d ** 3)
    if M == 6:
        x4 = x2 * x2
        x6 = x4 * x2
        term = term + (4 * L) * x ** 5 * (
            16 * L ** 4 - 40 * o2 * L * L * x2 + 5 * o2 * o2 * x4
        ) / (5 * d ** 5)
        term = term - (4 * L) * x ** 7 * (
            64 * L ** 6
            - 336 * o2 * L ** 4 * x2
            + 140 * o2 * o2 * L * L * x4
            - 7 * o2 * o2 * o2 * x6
        ) / (7 * d ** 7)
    return term


def closed_form_arctan(
    x: Rat,
    L: int,
    M: int,
    mode: str = "float",
    precision: int = 60,
) -> Scalar:
    """Finite-L value of the closed-form arctangent identities.

    Closed forms are implemented for M in {0, 2, 6}, written out term by
    term rather than derived from the jet engine, so they serve as an
    independent cross-check: for rational x the two routes agree exactly
    in exact mode.
    """
    if M not in (0, 2, 6):
        raise ValueError(f"closed form only available for M in (0, 2, 6), got {M}")
    config = EmiConfig(L=L, M=M, mode=mode, precision=precision)
    xr = Rat(x)
    if mode == "exact":
        xs: Scalar = xr
    else:
        xs = rat_to_real(xr, config.working_precision)
    terms = _map_subintervals(lambda l: _closed_form_term(xs, L, M, l), L)
    total = pairwise_sum(terms)
    if mode == "float":
        total = Real(total.value, precision)
    return total
