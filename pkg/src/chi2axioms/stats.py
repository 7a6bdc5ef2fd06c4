"""Pearson goodness-of-fit test: chi-squared upper tail and p-values.

The p-value is the only floating-point quantity in the package; the test
statistic itself stays an exact rational.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidDF, NegativeStatistic
from .exactnum import CountVector, RationalLike, ReferencePoint, to_rational
from .measures import chi2_1

EPS = 1e-14
MAX_ITER = 10_000
_TINY = 1e-300


def _lower_series(a: float, x: float) -> float:
    """Regularized lower incomplete gamma P(a, x) by its power series."""
    term = 1.0 / a
    total = term
    ap = a
    for _ in range(MAX_ITER):
        ap += 1.0
        term *= x / ap
        total += term
        if abs(term) < abs(total) * EPS:
            break
    return total * math.exp(-x + a * math.log(x) - math.lgamma(a))


def _upper_continued_fraction(a: float, x: float) -> float:
    """Regularized upper incomplete gamma Q(a, x), modified Lentz evaluation."""
    b = x + 1.0 - a
    c = 1.0 / _TINY
    d = 1.0 / b
    h = d
    for i in range(1, MAX_ITER):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < _TINY:
            d = _TINY
        c = b + an / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        step = d * c
        h *= step
        if abs(step - 1.0) < EPS:
            break
    return math.exp(-x + a * math.log(x) - math.lgamma(a)) * h


def regularized_upper_gamma(a: float, x: float) -> float:
    if x <= 0.0:
        return 1.0
    if math.isinf(x):
        return 0.0
    if x < a + 1.0:
        return min(1.0, max(0.0, 1.0 - _lower_series(a, x)))
    return min(1.0, max(0.0, _upper_continued_fraction(a, x)))


def chisq_survival(t: float, df: int) -> float:
    """Upper-tail probability ``P(X >= t)`` for ``X ~ chi2(df)``."""
    if isinstance(df, bool) or not isinstance(df, int) or df < 1:
        raise InvalidDF(f"degrees of freedom must be a positive integer, got {df!r}")
    t = float(t)
    if math.isnan(t) or t < 0:
        raise NegativeStatistic(f"statistic must be non-negative, got {t}")
    return regularized_upper_gamma(df / 2.0, t / 2.0)


@dataclass(frozen=True)
class TestResult:
    statistic: Fraction
    statistic_float: float
    df: int
    p_value: float
    gamma: Fraction

    __test__ = False  # not a pytest class


def pearson_test(x: CountVector, pi: ReferencePoint, gamma: RationalLike = 1) -> TestResult:
    """Pearson test with the statistic scaled by ``gamma``.

    The scaled statistic is referred to the equally scaled distribution, so
    the p-value does not depend on ``gamma``.
    """
    g = to_rational(gamma)
    if g <= 0:
        raise ValueError("gamma must be positive")
    stat = g * chi2_1(x, pi)
    df = x.n - 1
    p = chisq_survival(float(stat / g), df)
    return TestResult(stat, float(stat), df, p, g)
