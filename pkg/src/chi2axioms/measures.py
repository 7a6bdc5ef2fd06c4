"""Exact evaluation of the chi-squared dissimilarity family and its rivals.

Every measure maps an observed count vector ``x`` and a reference point
``pi`` to a non-negative rational which vanishes exactly when
``x / s(x) == pi``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import Chi2Error, DimensionMismatch, PhiUndefined, ZeroSize
from .exactnum import CountVector, RationalLike, ReferencePoint, format_rational, to_rational


class Kind(enum.Enum):
    CHI2_0 = "chi2_0"
    CHI2_1 = "chi2_1"
    SCALED = "scaled"
    ABS = "abs"
    SQ = "sq"
    PHI = "phi"


@dataclass(frozen=True)
class MeasureSpec:
    """Which dissimilarity measure to evaluate.

    Build instances with the module constants (:data:`CHI2_0`, :data:`CHI2_1`,
    :data:`ABS_COUNTER`, :data:`SQ_COUNTER`) or with :func:`scaled` and
    :func:`phi_weighted`.
    """

    kind: Kind
    gamma: Fraction | None = None
    base: MeasureSpec | None = None
    phi: tuple[tuple[ReferencePoint, Fraction], ...] = ()
    _phi_lookup: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        if self.kind is Kind.SCALED:
            if self.gamma is None or self.base is None:
                raise Chi2Error("a scaled measure needs gamma and base")
            if self.gamma <= 0:
                raise Chi2Error(f"gamma must be positive, got {self.gamma}")
            if self.base.kind is Kind.SCALED:
                raise Chi2Error("scaled measures nest at most one level deep")
        elif self.gamma is not None or self.base is not None:
            raise Chi2Error(f"{self.kind.value} takes no gamma/base")
        if self.kind is Kind.PHI:
            if not self.phi:
                raise Chi2Error("phi table is empty")
            if any(v <= 0 for _, v in self.phi):
                raise Chi2Error("phi table values must be positive")
            object.__setattr__(self, "_phi_lookup", dict(self.phi))
        elif self.phi:
            raise Chi2Error(f"{self.kind.value} takes no phi table")

    @property
    def degree(self) -> int:
        """Homogeneity degree by construction (1 for chi2_1-based, else 0)."""
        if self.kind is Kind.SCALED:
            return self.base.degree
        return 1 if self.kind is Kind.CHI2_1 else 0

    @property
    def name(self) -> str:
        if self.kind is Kind.SCALED:
            return f"{format_rational(self.gamma)}*{self.base.name}"
        return self.kind.value

    def phi_value(self, pi: ReferencePoint) -> Fraction:
        try:
            return self._phi_lookup[pi]
        except KeyError:
            raise PhiUndefined(f"phi is not defined at {pi}") from None

    def phi_domain(self) -> tuple[ReferencePoint, ...]:
        return tuple(p for p, _ in self.phi)


CHI2_0 = MeasureSpec(Kind.CHI2_0)
CHI2_1 = MeasureSpec(Kind.CHI2_1)
ABS_COUNTER = MeasureSpec(Kind.ABS)
SQ_COUNTER = MeasureSpec(Kind.SQ)


def scaled(gamma: RationalLike, base: MeasureSpec) -> MeasureSpec:
    return MeasureSpec(Kind.SCALED, gamma=to_rational(gamma), base=base)


def phi_weighted(table: Mapping[ReferencePoint, RationalLike] | Iterable[tuple[ReferencePoint, RationalLike]]) -> MeasureSpec:
    items = table.items() if isinstance(table, Mapping) else table
    return MeasureSpec(Kind.PHI, phi=tuple((pi, to_rational(v)) for pi, v in items))


def _check(x: CountVector, pi: ReferencePoint) -> int:
    if x.n != pi.n:
        raise DimensionMismatch(f"x has {x.n} categories, pi has {pi.n}")
    s = x.size()
    if s == 0:
        raise ZeroSize("dissimilarity is undefined for an empty sample")
    return s


def chi2_1(x: CountVector, pi: ReferencePoint) -> Fraction:
    """Pearson's statistic: sum of (s*pi_i - x_i)^2 / (s*pi_i)."""
    s = _check(x, pi)
    total = Fraction(0)
    for xi, p in zip(x.counts, pi.probs):
        expected = s * p
        total += (expected - xi) ** 2 / expected
    return total


def chi2_0(x: CountVector, pi: ReferencePoint) -> Fraction:
    """Size-free variant, ``chi2_1(x, pi) / s(x)``."""
    return chi2_1(x, pi) / x.size()


def abs_counter(x: CountVector, pi: ReferencePoint) -> Fraction:
    s = _check(x, pi)
    return sum((abs(p - Fraction(xi, s)) / p for xi, p in zip(x.counts, pi.probs)), Fraction(0))


def sq_counter(x: CountVector, pi: ReferencePoint) -> Fraction:
    s = _check(x, pi)
    return sum(((p - Fraction(xi, s)) ** 2 for xi, p in zip(x.counts, pi.probs)), Fraction(0))


def evaluate(m: MeasureSpec, x: CountVector, pi: ReferencePoint) -> Fraction:
    kind = m.kind
    if kind is Kind.CHI2_0:
        return chi2_0(x, pi)
    if kind is Kind.CHI2_1:
        return chi2_1(x, pi)
    if kind is Kind.ABS:
        return abs_counter(x, pi)
    if kind is Kind.SQ:
        return sq_counter(x, pi)
    if kind is Kind.SCALED:
        return m.gamma * evaluate(m.base, x, pi)
    if kind is Kind.PHI:
        weight = m.phi_value(pi)
        return weight * chi2_0(x, pi)
    raise AssertionError(kind)


def evaluate_degree0(m: MeasureSpec, x: CountVector, pi: ReferencePoint) -> Fraction:
    """The measure divided by ``s(x)`` when it is homogeneous of degree 1."""
    value = evaluate(m, x, pi)
    if m.degree == 1:
        return value / x.size()
    return value


MEASURE_NAMES = ("chi2_0", "chi2_1", "abs", "sq", "phi")


def by_name(name: str, gamma: RationalLike = 1, phi_table=None) -> MeasureSpec:
    """Resolve a command-line measure name, applying ``gamma`` when it is not 1."""
    simple = {"chi2_0": CHI2_0, "chi2_1": CHI2_1, "abs": ABS_COUNTER, "sq": SQ_COUNTER}
    if name in simple:
        base = simple[name]
    elif name == "phi":
        if phi_table is None:
            raise Chi2Error("the phi measure needs a phi table")
        base = phi_weighted(phi_table)
    else:
        raise Chi2Error(f"unknown measure {name!r}; choose from {', '.join(MEASURE_NAMES)}")
    g = to_rational(gamma)
    return base if g == 1 else scaled(g, base)
