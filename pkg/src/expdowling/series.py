"""Truncated formal power series over exact rationals.

All coefficients are `fractions.Fraction`; no floating point ever enters.
A series of truncation order T stores coefficients of x^0 .. x^T.
Binary operations on series of different orders truncate to the shorter one.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Iterable, Mapping


class SeriesError(ValueError):
    pass


class DenominatorSequence:
    """A named map n -> positive integer, normalizing generalized EGFs.

    The coefficient of x^n in the associated series shape is h(n)/(D(n)*n!).
    """

    def __init__(self, name: str, eval_fn: Callable[[int], int]):
        self.name = name
        self._eval = eval_fn

    def __call__(self, n: int) -> int:
        value = self._eval(n)
        if value <= 0:
            raise SeriesError(
                f"denominator sequence {self.name!r} must be positive, got D({n})={value}"
            )
        return value

    def __repr__(self):
        return f"DenominatorSequence({self.name!r})"


#: The trivial denominator sequence D(n) = 1 (plain exponential shape).
UNIT = DenominatorSequence("unit", lambda n: 1)


def _frac(value) -> Fraction:
    if isinstance(value, float):
        raise SeriesError("float coefficients are not allowed; use Fraction or int")
    return Fraction(value)


class TruncatedSeries:
    """Immutable power series truncated at order T, exact rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable):
        object.__setattr__(self, "coeffs", tuple(_frac(c) for c in coeffs))
        if not self.coeffs:
            raise SeriesError("a truncated series needs at least the constant term")

    def __setattr__(self, name, value):
        raise AttributeError("TruncatedSeries is immutable")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int) -> Fraction:
        if not 0 <= n <= self.order:
            raise SeriesError(f"coefficient index {n} beyond truncation order {self.order}")
        return self.coeffs[n]

    @classmethod
    def zero(cls, order: int) -> "TruncatedSeries":
        return cls([0] * (order + 1))

    @classmethod
    def one(cls, order: int) -> "TruncatedSeries":
        return cls([1] + [0] * order)

    @classmethod
    def x(cls, order: int) -> "TruncatedSeries":
        if order < 1:
            raise SeriesError("order must be >= 1 for the series x")
        return cls([0, 1] + [0] * (order - 1))

    def truncate(self, order: int) -> "TruncatedSeries":
        if order >= self.order:
            return self
        return TruncatedSeries(self.coeffs[: order + 1])

    # -- ring operations -------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, TruncatedSeries):
            return other
        if isinstance(other, (int, Fraction)):
            return None  # scalar
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o is None:
            return TruncatedSeries((self.coeffs[0] + other,) + self.coeffs[1:])
        t = min(self.order, o.order)
        return TruncatedSeries(a + b for a, b in zip(self.coeffs[: t + 1], o.coeffs[: t + 1]))

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(-c for c in self.coeffs)

    def __sub__(self, other):
        result = self.__add__(-other if isinstance(other, TruncatedSeries) else -Fraction(other))
        return result

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o is None:
            q = Fraction(other)
            return TruncatedSeries(c * q for c in self.coeffs)
        t = min(self.order, o.order)
        out = [Fraction(0)] * (t + 1)
        for i in range(t + 1):
            a = self.coeffs[i]
            if a == 0:
                continue
            for j in range(t + 1 - i):
                b = o.coeffs[j]
                if b:
                    out[i + j] += a * b
        return TruncatedSeries(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        t = min(self.order, other.order)
        return self.coeffs[: t + 1] == other.coeffs[: t + 1]

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        terms = []
        for n, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if n == 0:
                terms.append(str(c))
            elif n == 1:
                terms.append(f"{c}*x")
            else:
                terms.append(f"{c}*x^{n}")
        body = " + ".join(terms) if terms else "0"
        return f"<{body} + O(x^{self.order + 1})>"

    # -- substitution ----------------------------------------------------

    def scale_argument(self, c) -> "TruncatedSeries":
        """The series f(c*x)."""
        q = Fraction(c)
        return TruncatedSeries(coef * q**n for n, coef in enumerate(self.coeffs))


def multiply(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    return f * g


def compose(g: TruncatedSeries, f: TruncatedSeries) -> TruncatedSeries:
    """g(f(x)), requiring f(0) = 0.  Horner accumulation, truncation min(T_g, T_f)."""
    if f.coeffs[0] != 0:
        raise SeriesError("composition requires f(0)=0")
    t = min(g.order, f.order)
    f = f.truncate(t)
    acc = TruncatedSeries([g.coeffs[t]] + [0] * t)
    for i in range(t - 1, -1, -1):
        acc = acc * f + g.coeffs[i]
    return acc


def log(f: TruncatedSeries) -> TruncatedSeries:
    """log of a series with constant term 1."""
    if f.coeffs[0] != 1:
        raise SeriesError("log requires constant term 1")
    t = f.order
    u = f - TruncatedSeries.one(t)
    acc = TruncatedSeries.zero(t)
    power = TruncatedSeries.one(t)
    for k in range(1, t + 1):
        power = power * u
        acc = acc + power * Fraction((-1) ** (k + 1), k)
    return acc


def exp(f: TruncatedSeries) -> TruncatedSeries:
    """exp of a series with constant term 0."""
    if f.coeffs[0] != 0:
        raise SeriesError("exp requires constant term 0")
    t = f.order
    acc = TruncatedSeries.one(t)
    power = TruncatedSeries.one(t)
    for k in range(1, t + 1):
        power = power * f
        acc = acc + power * Fraction(1, math.factorial(k))
    return acc


def pow_rational(f: TruncatedSeries, q) -> TruncatedSeries:
    """f**q for rational q, requiring constant term 1.  Computed as exp(q*log f)."""
    if f.coeffs[0] != 1:
        raise SeriesError("rational power requires constant term 1")
    return exp(log(f) * Fraction(q))


def series_from_table(
    h: Mapping[int, Fraction] | Callable[[int], Fraction],
    D: DenominatorSequence,
    T: int,
) -> TruncatedSeries:
    """Build sum of h(n) * x^n / (D(n) * n!) for 0 <= n <= T.

    A missing table entry is a caller bug and raises, it is never treated as zero.
    """
    if T < 0:
        raise SeriesError("truncation order must be >= 0")
    if callable(h):
        values = [h(n) for n in range(T + 1)]
    else:
        try:
            values = [h[n] for n in range(T + 1)]
        except KeyError as exc:
            raise SeriesError(f"table is missing h({exc.args[0]})") from exc
    return TruncatedSeries(
        Fraction(v) / (D(n) * math.factorial(n)) for n, v in enumerate(values)
    )


def coeff_den(f: TruncatedSeries, n: int, D: DenominatorSequence) -> Fraction:
    """Read h(n) back from a series of shape sum h(n) x^n/(D(n) n!)."""
    return f[n] * D(n) * math.factorial(n)


def sinh_series(T: int) -> TruncatedSeries:
    return TruncatedSeries(
        Fraction(1, math.factorial(n)) if n % 2 == 1 else 0 for n in range(T + 1)
    )


def cosh_series(T: int) -> TruncatedSeries:
    return TruncatedSeries(
        Fraction(1, math.factorial(n)) if n % 2 == 0 else 0 for n in range(T + 1)
    )


def sech_pow_series(s: int, T: int) -> TruncatedSeries:
    """sech(s*x)^(1/s) as a truncated series; s a positive integer."""
    if s < 1:
        raise SeriesError("s must be a positive integer")
    return pow_rational(cosh_series(T).scale_argument(s), Fraction(-1, s))


def hyperbolic_builders(kind: str, s: int, T: int) -> TruncatedSeries:
    if kind == "sinh":
        return sinh_series(T)
    if kind == "cosh":
        return cosh_series(T)
    if kind == "sech_pow":
        return sech_pow_series(s, T)
    raise SeriesError(f"unknown hyperbolic builder {kind!r}")
