"""Numeric carriers for the two arithmetic modes.

Exact mode runs on :data:`Rat` (arbitrary-size rationals, never rounded) and
is the ground truth for everything whose inputs are rational.  Float mode
runs on :class:`Real`, an immutable arbitrary-precision decimal value that
carries its own significant-digit count ``precision``; every arithmetic
operation rounds correctly (half-even) to that many digits, so each step is
accurate to well within one unit in the last place.

Rendering is deliberately truncating, never rounding: digit-matching between
two long decimal expansions compares leading digits, and a rounded final
digit would corrupt that comparison.
"""

from __future__ import annotations

from decimal import ROUND_HALF_EVEN, Context, Decimal
from fractions import Fraction

from .errors import NumeralParseError, PrecisionExceededError

#: Exact rational scalar.  ``fractions.Fraction`` already guarantees the
#: normalization we need: gcd(|num|, den) == 1 and den > 0 after every
#: operation, with no rounding anywhere.
Rat = Fraction

MIN_PRECISION = 10

#: Extra working digits used by the quadrature engine on top of the digits
#: requested by the caller; absorbs accumulated half-ulp rounding across the
#: whole summation at the scales this package targets.
GUARD_DIGITS = 15

_contexts: dict[int, Context] = {}


def context(precision: int) -> Context:
    """Shared decimal context for a given significant-digit count.

    Contexts are created once and never mutated, which makes them safe to
    use concurrently via their ``add``/``multiply``/... methods.
    """
    ctx = _contexts.get(precision)
    if ctx is None:
        ctx = Context(
            prec=precision,
            rounding=ROUND_HALF_EVEN,
            Emin=-999999999,
            Emax=999999999,
        )
        _contexts[precision] = ctx
    return ctx


def as_rat(value: int | str | Rat) -> Rat:
    """Parse a rational from an int, a ``p/q`` string, or a decimal string."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise NumeralParseError(f"not a rational: {value!r}") from exc
    raise NumeralParseError(f"cannot interpret {type(value).__name__} as a rational")


class Real:
    """Arbitrary-precision decimal value with explicit precision.

    ``precision`` is the count of significant decimal digits the value
    carries; it must be at least :data:`MIN_PRECISION`.  Instances are
    immutable.  Binary operations between two ``Real`` values produce a
    result at the smaller of the two precisions; ``int`` operands are exact
    and do not reduce precision.
    """

    __slots__ = ("value", "precision")

    value: Decimal
    precision: int

    def __init__(self, value: Decimal | int | str, precision: int):
        if precision < MIN_PRECISION:
            raise ValueError(f"precision must be >= {MIN_PRECISION}, got {precision}")
        if isinstance(value, Real):
            value = value.value
        elif not isinstance(value, Decimal):
            value = Decimal(value)
        object.__setattr__(self, "value", context(precision).plus(value))
        object.__setattr__(self, "precision", precision)

    def __setattr__(self, name, val):
        raise AttributeError("Real is immutable")

    # -- arithmetic ---------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Real):
            return other.value, min(self.precision, other.precision)
        if isinstance(other, int):
            return Decimal(other), self.precision
        return None, 0

    def __add__(self, other):
        val, prec = self._coerce(other)
        if val is None:
            return NotImplemented
        return Real(context(prec).add(self.value, val), prec)

    __radd__ = __add__

    def __sub__(self, other):
        val, prec = self._coerce(other)
        if val is None:
            return NotImplemented
        return Real(context(prec).subtract(self.value, val), prec)

    def __rsub__(self, other):
        val, prec = self._coerce(other)
        if val is None:
            return NotImplemented
        return Real(context(prec).subtract(val, self.value), prec)

    def __mul__(self, other):
        val, prec = self._coerce(other)
        if val is None:
            return NotImplemented
        return Real(context(prec).multiply(self.value, val), prec)

    __rmul__ = __mul__

    def __truediv__(self, other):
        val, prec = self._coerce(other)
        if val is None:
            return NotImplemented
        return Real(context(prec).divide(self.value, val), prec)

    def __rtruediv__(self, other):
        val, prec = self._coerce(other)
        if val is None:
            return NotImplemented
        return Real(context(prec).divide(val, self.value), prec)

    def __pow__(self, exponent):
        if not isinstance(exponent, int):
            return NotImplemented
        return Real(context(self.precision).power(self.value, Decimal(exponent)), self.precision)

    def __neg__(self):
        # copy_negate, not the - operator: bare Decimal arithmetic rounds to
        # the *thread-local* context, silently discarding digits
        return Real(self.value.copy_negate(), self.precision)

    def __abs__(self):
        return Real(self.value.copy_abs(), self.precision)

    # -- comparison / conversion --------------------------------------

    def __eq__(self, other):
        if isinstance(other, Real):
            return self.value == other.value
        if isinstance(other, int):
            return self.value == other
        return NotImplemented

    def __lt__(self, other):
        other = other.value if isinstance(other, Real) else other
        return self.value < other

    def __le__(self, other):
        other = other.value if isinstance(other, Real) else other
        return self.value <= other

    def __gt__(self, other):
        other = other.value if isinstance(other, Real) else other
        return self.value > other

    def __ge__(self, other):
        other = other.value if isinstance(other, Real) else other
        return self.value >= other

    def __hash__(self):
        return hash((self.value, self.precision))

    def __float__(self):
        return float(self.value)

    def __repr__(self):
        return f"Real({str(self.value)!r}, precision={self.precision})"

    def __str__(self):
        return str(self.value)


def rat_to_real(q: Rat, precision: int) -> Real:
    """Convert an exact rational to a ``Real``, correctly rounded.

    The conversion is a single division of two exact integers under the
    target context, so the result is within half an ulp of ``q`` at
    ``precision`` significant digits.
    """
    if precision < MIN_PRECISION:
        raise ValueError(f"precision must be >= {MIN_PRECISION}, got {precision}")
    ctx = context(precision)
    return Real(ctx.divide(Decimal(q.numerator), Decimal(q.denominator)), precision)


def _fixed_point(digits: str, adjusted: int, sign: str) -> str:
    # adjusted = exponent of the leading significant digit (0 for 1 <= v < 10)
    if adjusted >= 0:
        if len(digits) <= adjusted + 1:
            return sign + digits.ljust(adjusted + 1, "0")
        return sign + digits[: adjusted + 1] + "." + digits[adjusted + 1 :]
    return sign + "0." + "0" * (-adjusted - 1) + digits


def render_decimal(r: Real, digits: int) -> str:
    """Render ``r`` truncated (never rounded) to ``digits`` significant digits.

    Values in [0.001, 10000) are rendered in plain fixed-point notation;
    anything outside that range uses scientific notation.  Asking for more
    digits than ``r`` carries raises :class:`PrecisionExceededError`.
    """
    if digits < 1:
        raise ValueError("digits must be >= 1")
    if digits > r.precision:
        raise PrecisionExceededError(
            f"requested {digits} digits but value carries only {r.precision}"
        )
    value = r.value
    if value == 0:
        return "0"
    sign = "-" if value < 0 else ""
    tup = value.as_tuple()
    digstr = "".join(map(str, tup.digits))[:digits].ljust(digits, "0")
    adjusted = value.adjusted()
    if -3 <= adjusted <= 3:
        return _fixed_point(digstr, adjusted, sign)
    if len(digstr) == 1:
        return f"{sign}{digstr}e{adjusted}"
    return f"{sign}{digstr[0]}.{digstr[1:]}e{adjusted}"


def render_rat(q: Rat, digits: int) -> str:
    """Render an exact rational truncated to at most ``digits`` significant digits.

    Terminating expansions stop early instead of being zero-padded, so
    ``16/5`` renders as ``"3.2"`` rather than ``"3.2000..."``.  Non-terminating
    expansions are truncated exactly like :func:`render_decimal`.
    """
    if digits < 1:
        raise ValueError("digits must be >= 1")
    if q == 0:
        return "0"
    sign = "-" if q < 0 else ""
    num, den = abs(q.numerator), q.denominator
    ip, rem = divmod(num, den)
    if ip > 0:
        int_digits = str(ip)
        out = int_digits
        significant = len(int_digits)
        if significant >= digits or rem == 0:
            if significant > digits:
                # integer part alone exceeds the request: truncate with padding
                out = int_digits[:digits].ljust(len(int_digits), "0")
            return sign + out
        frac = []
        while significant < digits and rem:
            rem *= 10
            d, rem = divmod(rem, den)
            frac.append(str(d))
            significant += 1
        return sign + out + "." + "".join(frac)
    # value below 1: leading zeros are not significant
    frac = []
    significant = 0
    while significant < digits and rem:
        rem *= 10
        d, rem = divmod(rem, den)
        frac.append(str(d))
        if significant or d:
            significant += 1
    return sign + "0." + "".join(frac)
