"""Exact scalars and the vector types consumed by the rest of the package.

Rationals are plain :class:`fractions.Fraction` values, which are always
stored reduced with a positive denominator, so equality is structural.

Category indices in the public API are 1-based (``1..n``), matching the
usual labelling of categories.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence, Union

from .errors import (
    Chi2Error,
    DimensionMismatch,
    IndexOutOfRange,
    NegativeEntry,
    NotIntegral,
    ZeroSize,
)

Rational = Fraction
RationalLike = Union[Fraction, int, str]


def to_rational(value: RationalLike) -> Fraction:
    """Coerce ``value`` to a Fraction without passing through floats."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def parse_rational(text: str) -> Fraction:
    """Parse the ``"p/q"`` or ``"p"`` text form."""
    s = text.strip()
    num, sep, den = s.partition("/")
    try:
        if not sep:
            return Fraction(int(num))
        return Fraction(int(num), int(den))
    except (ValueError, ZeroDivisionError) as exc:
        raise Chi2Error(f"invalid rational literal {text!r}") from exc


def format_rational(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _check_length(n: int) -> None:
    if n < 2:
        raise DimensionMismatch(f"at least 2 categories required, got {n}")


@dataclass(frozen=True)
class IntVector:
    """Integer vector that may hold negative entries (e.g. ``x + y - k*pi``)."""

    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", tuple(int(e) for e in self.entries))
        _check_length(len(self.entries))

    def __iter__(self) -> Iterator[int]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, i: int) -> int:
        return self.entries[i]

    def _zip(self, other: Iterable[int]) -> Iterator[tuple[int, int]]:
        other = tuple(other)
        if len(other) != len(self.entries):
            raise DimensionMismatch(f"lengths {len(self.entries)} and {len(other)} differ")
        return zip(self.entries, other)

    def __add__(self, other: Iterable[int]) -> IntVector:
        return IntVector(tuple(a + b for a, b in self._zip(other)))

    def __sub__(self, other: Iterable[int]) -> IntVector:
        return IntVector(tuple(a - b for a, b in self._zip(other)))

    def __rmul__(self, scalar: int) -> IntVector:
        return IntVector(tuple(scalar * a for a in self.entries))

    def is_nonnegative(self) -> bool:
        return all(e >= 0 for e in self.entries)

    def to_counts(self) -> CountVector:
        """Convert to an observed distribution, raising if any entry is negative."""
        if not self.is_nonnegative():
            raise NegativeEntry(f"vector {self.entries} has a negative entry")
        return CountVector(self.entries)


@dataclass(frozen=True)
class CountVector:
    """Observed distribution: non-negative integer counts over ``n >= 2`` categories."""

    counts: tuple[int, ...]

    def __post_init__(self) -> None:
        counts = tuple(self.counts)
        for c in counts:
            if isinstance(c, bool) or not isinstance(c, int):
                raise TypeError(f"counts must be integers, got {c!r}")
            if c < 0:
                raise NegativeEntry(f"negative count {c}")
        _check_length(len(counts))
        object.__setattr__(self, "counts", counts)

    @property
    def n(self) -> int:
        return len(self.counts)

    def size(self) -> int:
        return sum(self.counts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.counts)

    def __len__(self) -> int:
        return len(self.counts)

    def __getitem__(self, i: int) -> int:
        return self.counts[i]

    def as_int_vector(self) -> IntVector:
        return IntVector(self.counts)

    def __add__(self, other: Iterable[int]) -> IntVector:
        return self.as_int_vector() + other

    def __sub__(self, other: Iterable[int]) -> IntVector:
        return self.as_int_vector() - other

    def __rmul__(self, scalar: int) -> CountVector:
        if scalar < 0:
            raise NegativeEntry("negative scale factor")
        return CountVector(tuple(scalar * c for c in self.counts))


def _fractions(values: Iterable[RationalLike]) -> tuple[Fraction, ...]:
    return tuple(to_rational(v) for v in values)


@dataclass(frozen=True)
class ReferencePoint:
    """Reference distribution: strictly positive rationals summing to one."""

    probs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        probs = _fractions(self.probs)
        _check_length(len(probs))
        if any(p <= 0 for p in probs):
            raise Chi2Error(f"reference entries must be strictly positive: {_fmt(probs)}")
        if sum(probs) != 1:
            raise Chi2Error(f"reference entries must sum to 1, got {format_rational(sum(probs))}")
        object.__setattr__(self, "probs", probs)

    @property
    def n(self) -> int:
        return len(self.probs)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.probs)

    def __len__(self) -> int:
        return len(self.probs)

    def __getitem__(self, i: int) -> Fraction:
        return self.probs[i]

    def as_simplex(self) -> SimplexPoint:
        return SimplexPoint(self.probs)

    def __str__(self) -> str:
        return _fmt(self.probs)


@dataclass(frozen=True)
class SimplexPoint:
    """Point of the closed rational simplex; zero coordinates are allowed."""

    coords: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        coords = _fractions(self.coords)
        _check_length(len(coords))
        if any(c < 0 for c in coords):
            raise Chi2Error(f"simplex coordinates must be non-negative: {_fmt(coords)}")
        if sum(coords) != 1:
            raise Chi2Error(f"simplex coordinates must sum to 1, got {format_rational(sum(coords))}")
        object.__setattr__(self, "coords", coords)

    @property
    def n(self) -> int:
        return len(self.coords)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.coords)

    def __len__(self) -> int:
        return len(self.coords)

    def __getitem__(self, i: int) -> Fraction:
        return self.coords[i]

    def common_denominator(self) -> int:
        return math.lcm(*(c.denominator for c in self.coords))

    def to_counts(self, scale: int | None = None) -> CountVector:
        """Smallest integer vector ``x`` with ``x / s(x)`` equal to this point.

        ``scale`` overrides the size; it must be a multiple of the common
        denominator.
        """
        d = self.common_denominator()
        if scale is None:
            scale = d
        elif scale <= 0 or scale % d:
            raise NotIntegral(f"scale {scale} is not a positive multiple of {d}")
        return CountVector(tuple(int(c * scale) for c in self.coords))

    def __str__(self) -> str:
        return _fmt(self.coords)


def _fmt(values: Sequence[Fraction]) -> str:
    return "(" + ", ".join(format_rational(v) for v in values) + ")"


def reference(*probs: RationalLike) -> ReferencePoint:
    """Shorthand: ``reference("1/6", "1/3", "1/2")``."""
    return ReferencePoint(_fractions(probs))


def uniform(n: int) -> ReferencePoint:
    return ReferencePoint(tuple(Fraction(1, n) for _ in range(n)))


def normalize(x: CountVector) -> SimplexPoint:
    s = x.size()
    if s == 0:
        raise ZeroSize("cannot normalize an empty sample")
    return SimplexPoint(tuple(Fraction(c, s) for c in x.counts))


def lcm_denominators(pi: ReferencePoint) -> int:
    """Least ``k0 >= 1`` such that ``k0 * pi`` is an integer vector."""
    return math.lcm(*(p.denominator for p in pi.probs))


def check_index(n: int, i: int) -> None:
    if isinstance(i, bool) or not isinstance(i, int) or not 1 <= i <= n:
        raise IndexOutOfRange(f"index {i!r} outside 1..{n}")


def unit_vector(n: int, i: int) -> CountVector:
    _check_length(n)
    check_index(n, i)
    return CountVector(tuple(1 if j == i else 0 for j in range(1, n + 1)))


def scaled_reference(pi: ReferencePoint, k: int) -> IntVector:
    """The integer vector ``k * pi``."""
    if k <= 0:
        raise NotIntegral(f"k must be a positive integer, got {k}")
    scaled = [k * p for p in pi.probs]
    if any(v.denominator != 1 for v in scaled):
        raise NotIntegral(f"{k} * {pi} is not an integer vector")
    return IntVector(tuple(v.numerator for v in scaled))
