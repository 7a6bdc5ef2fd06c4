"""Rebuild the quadratic structure of a measure from black-box evaluations.

All work happens on the degree-0 form of a measure, seen as a function
``F`` on the closed rational simplex: ``F(p) = f(x, pi)`` for any integer
``x`` with ``x / s(x) == p``. The pieces are:

* restriction of ``F`` to a segment and exact parabola fitting on it,
* the second-difference recurrence that forces ``F`` to be quadratic
  along segments,
* the four-term functional equation on the simplex,
* fitting the full quadratic form around ``pi`` and recovering the single
  scale constant ``gamma``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from ._linalg import is_positive_definite, solve_exact
from .axioms import compositions
from .errors import Chi2Error, DomainExceeded, MissingCoefficient, OutOfSimplex
from .exactnum import (
    CountVector,
    RationalLike,
    ReferencePoint,
    SimplexPoint,
    check_index,
    lcm_denominators,
    normalize,
    to_rational,
)
from .measures import MeasureSpec, chi2_0, evaluate_degree0


def simplex_value(m: MeasureSpec, pi: ReferencePoint, p: SimplexPoint, scale: int | None = None) -> Fraction:
    """``F(p)``: the degree-0 measure at the smallest (or given) integer representative of ``p``."""
    return evaluate_degree0(m, p.to_counts(scale), pi)


@dataclass(frozen=True)
class Segment:
    """``p(alpha) = alpha * end + (1 - alpha) * start`` for rational alpha in [0, 1]."""

    start: SimplexPoint
    end: SimplexPoint

    def __post_init__(self) -> None:
        if self.start.n != self.end.n:
            raise Chi2Error("segment endpoints live in different dimensions")
        if self.start == self.end:
            raise Chi2Error("degenerate segment: endpoints coincide")

    def point(self, alpha: RationalLike) -> SimplexPoint:
        a = to_rational(alpha)
        if not 0 <= a <= 1:
            raise DomainExceeded(f"alpha={a} outside [0, 1]")
        return SimplexPoint(tuple(a * t + (1 - a) * s for s, t in zip(self.start, self.end)))


def segment_restriction(m: MeasureSpec, pi: ReferencePoint, seg: Segment, alpha: RationalLike) -> Fraction:
    return simplex_value(m, pi, seg.point(alpha))


@dataclass(frozen=True)
class ParabolaCoeffs:
    a: Fraction
    b: Fraction
    d: Fraction

    def __call__(self, beta: RationalLike) -> Fraction:
        t = to_rational(beta)
        return self.a * t * t + self.b * t + self.d


_HALF = Fraction(1, 2)
# rows for beta = 0, 1/2, 1 against unknowns (a, b, d); determinant -1/4
_PARABOLA_SYSTEM = [
    [Fraction(0), Fraction(0), Fraction(1)],
    [Fraction(1, 4), _HALF, Fraction(1)],
    [Fraction(1), Fraction(1), Fraction(1)],
]


def fit_parabola_three_points(l0: RationalLike, lhalf: RationalLike, l1: RationalLike) -> ParabolaCoeffs:
    """Unique parabola through (0, l0), (1/2, lhalf), (1, l1)."""
    a, b, d = solve_exact(_PARABOLA_SYSTEM, [to_rational(l0), to_rational(lhalf), to_rational(l1)])
    return ParabolaCoeffs(a, b, d)


def fit_segment_parabola(m: MeasureSpec, pi: ReferencePoint, seg: Segment) -> ParabolaCoeffs:
    return fit_parabola_three_points(*(segment_restriction(m, pi, seg, beta) for beta in (0, _HALF, 1)))


def parabola_recurrence_sides(
    m: MeasureSpec, pi: ReferencePoint, seg: Segment, c: RationalLike, m_max: int
) -> list[tuple[int, Fraction, Fraction]]:
    """``(i, L(i*c), predicted)`` for ``i = 0..m_max``.

    The prediction is ``i*L(c) + (1-i)*L(0) + i(i-1)/2 * (L(1/2-c) + L(1/2+c) + delta)``
    with ``delta`` solved from the ``i = 2`` instance.
    """
    c = to_rational(c)
    if c <= 0:
        raise DomainExceeded("c must be a positive rational")
    if m_max < 0 or m_max * c > 1:
        raise DomainExceeded(f"m_max * c = {m_max * c} exceeds 1")

    cache: dict[Fraction, Fraction] = {}

    def big_l(beta: Fraction) -> Fraction:
        if beta not in cache:
            cache[beta] = segment_restriction(m, pi, seg, beta)
        return cache[beta]

    if m_max < 2:
        return [(i, big_l(i * c), big_l(i * c)) for i in range(m_max + 1)]
    if c > _HALF:
        raise DomainExceeded("c must not exceed 1/2")
    mid = big_l(_HALF - c) + big_l(_HALF + c)
    delta = big_l(2 * c) - 2 * big_l(c) + big_l(Fraction(0)) - mid
    out = []
    for i in range(m_max + 1):
        predicted = i * big_l(c) + (1 - i) * big_l(Fraction(0)) + Fraction(i * (i - 1), 2) * (mid + delta)
        out.append((i, big_l(i * c), predicted))
    return out


def verify_parabola_recurrence(m: MeasureSpec, pi: ReferencePoint, seg: Segment, c: RationalLike, m_max: int) -> bool:
    return all(lhs == rhs for _, lhs, rhs in parabola_recurrence_sides(m, pi, seg, c, m_max))


# -- functional equation on the simplex ----------------------------------


def _combine(pi: ReferencePoint, p: SimplexPoint, q: SimplexPoint, sign: int) -> SimplexPoint:
    """``p + q - pi`` for ``sign=+1``, ``p - q + pi`` for ``sign=-1``."""
    coords = tuple(pp + sign * (qq - r) for r, pp, qq in zip(pi, p, q))
    if any(v < 0 for v in coords):
        raise OutOfSimplex(f"combination {tuple(map(str, coords))} leaves the simplex")
    return SimplexPoint(coords)


def functional_equation_sides(
    m: MeasureSpec, pi: ReferencePoint, p: SimplexPoint, q: SimplexPoint
) -> tuple[Fraction, Fraction]:
    """``(F(p+q-pi) + F(p-q+pi), 2F(p) + 2F(q))``."""
    if not p.n == q.n == pi.n:
        raise Chi2Error("dimension mismatch between p, q and pi")
    plus = _combine(pi, p, q, +1)
    minus = _combine(pi, p, q, -1)
    lhs = simplex_value(m, pi, plus) + simplex_value(m, pi, minus)
    rhs = 2 * simplex_value(m, pi, p) + 2 * simplex_value(m, pi, q)
    return lhs, rhs


def check_simplex_functional_equation(m: MeasureSpec, pi: ReferencePoint, p: SimplexPoint, q: SimplexPoint) -> bool:
    lhs, rhs = functional_equation_sides(m, pi, p, q)
    return lhs == rhs


def lattice_points(n: int, denominator: int) -> list[SimplexPoint]:
    """Simplex points whose coordinates are multiples of ``1/denominator``."""
    return [SimplexPoint(tuple(Fraction(v, denominator) for v in xs)) for xs in compositions(denominator, n)]


def enumerate_fe_pairs(pi: ReferencePoint, denominators: Iterable[int]) -> list[tuple[SimplexPoint, SimplexPoint]]:
    """All lattice pairs (p, q) for which both combinations stay in the simplex."""
    out = []
    for den in denominators:
        pts = lattice_points(pi.n, den)
        for p, q in itertools.product(pts, repeat=2):
            if all(pp + qq - r >= 0 and pp - qq + r >= 0 for r, pp, qq in zip(pi, p, q)):
                out.append((p, q))
    return out


def fe_to_db_instance(pi: ReferencePoint, p: SimplexPoint, q: SimplexPoint) -> tuple[CountVector, CountVector, int]:
    """Integer instance ``(x, y, k)`` of Deviations Balancedness matching ``(p, q)``."""
    k = math.lcm(p.common_denominator(), q.common_denominator(), lcm_denominators(pi))
    return p.to_counts(k), q.to_counts(k), k


# -- quadratic forms -----------------------------------------------------


@dataclass(frozen=True)
class QuadraticForm:
    """``F(p)`` as a quadratic in ``u_i = p_i - pi_i`` over the kept indices ``i != dropped``.

    Indices are 1-based; ``rho_cross`` is keyed by ``(i, j)`` with ``i < j``.
    """

    n: int
    dropped: int
    rho_diag: dict[int, Fraction]
    rho_cross: dict[tuple[int, int], Fraction]
    linear: dict[int, Fraction] = field(default_factory=dict)
    constant: Fraction = Fraction(0)

    @property
    def kept(self) -> list[int]:
        return [i for i in range(1, self.n + 1) if i != self.dropped]

    def __call__(self, p: Sequence[Fraction], pi: ReferencePoint) -> Fraction:
        u = {i: Fraction(p[i - 1]) - pi[i - 1] for i in self.kept}
        total = self.constant
        for i, rho in self.rho_diag.items():
            total += rho * u[i] * u[i]
        for (i, j), rho in self.rho_cross.items():
            total += rho * u[i] * u[j]
        for i, rho in self.linear.items():
            total += rho * u[i]
        return total

    def is_homogeneous(self) -> bool:
        """No linear or constant part: the form vanishes at ``pi`` with zero gradient."""
        return self.constant == 0 and all(v == 0 for v in self.linear.values())

    def is_positive_definite(self) -> bool:
        """Positive on every non-zero deviation: ``F >= 0`` with its only zero at ``pi``."""
        if not self.is_homogeneous():
            return False
        kept = self.kept
        if not kept:
            return False
        mat = [[Fraction(0)] * len(kept) for _ in kept]
        for a, i in enumerate(kept):
            mat[a][a] = self.rho_diag.get(i, Fraction(0))
            for b, j in enumerate(kept):
                if i < j:
                    half = self.rho_cross.get((i, j), Fraction(0)) / 2
                    mat[a][b] = mat[b][a] = half
        return is_positive_definite(mat)

    def scaled(self, gamma: RationalLike) -> QuadraticForm:
        g = to_rational(gamma)
        return QuadraticForm(
            self.n,
            self.dropped,
            {i: g * v for i, v in self.rho_diag.items()},
            {ij: g * v for ij, v in self.rho_cross.items()},
            {i: g * v for i, v in self.linear.items()},
            g * self.constant,
        )


def _features(u: dict[int, Fraction], kept: list[int]) -> list[Fraction]:
    row = [u[i] * u[i] for i in kept]
    row += [u[i] * u[j] for i, j in itertools.combinations(kept, 2)]
    row += [u[i] for i in kept]
    row.append(Fraction(1))
    return row


def sample_points(pi: ReferencePoint, grid_denominators: Sequence[int] = (2, 3)) -> list[SimplexPoint]:
    """``pi``, every single-move perturbation of ``k0*pi``, then lattice grids.

    The denominator-2 lattice alone is unisolvent for quadratics; the rest
    serve as consistency samples.
    """
    k0 = lcm_denominators(pi)
    base = pi.as_simplex().to_counts(k0).counts
    points = [pi.as_simplex()]
    for j, l in itertools.permutations(range(pi.n), 2):
        moved = list(base)
        moved[j] += 1
        moved[l] -= 1
        points.append(normalize(CountVector(tuple(moved))))
    for den in grid_denominators:
        points.extend(lattice_points(pi.n, den))
    seen: set[SimplexPoint] = set()
    unique = []
    for p in points:
        if p not in seen:
            seen.add(p)
            unique.append(p)
    return unique


def fit_quadratic_form(
    m: MeasureSpec, pi: ReferencePoint, dropped: int | None = None, grid_denominators: Sequence[int] = (2, 3)
) -> QuadraticForm:
    """Fit the full quadratic (diagonal, cross, linear and constant terms) exactly.

    Raises SingularSystem when the samples do not lie on a single quadratic,
    which is how non-quadratic measures show up.
    """
    n = pi.n
    dropped = n if dropped is None else dropped
    check_index(n, dropped)
    kept = [i for i in range(1, n + 1) if i != dropped]
    rows, rhs = [], []
    for p in sample_points(pi, grid_denominators):
        u = {i: p[i - 1] - pi[i - 1] for i in kept}
        rows.append(_features(u, kept))
        rhs.append(simplex_value(m, pi, p))
    sol = iter(solve_exact(rows, rhs))
    diag = {i: next(sol) for i in kept}
    cross = {(i, j): next(sol) for i, j in itertools.combinations(kept, 2)}
    linear = {i: next(sol) for i in kept}
    constant = next(sol)
    return QuadraticForm(n, dropped, diag, cross, linear, constant)


def chi2_form_coefficients(pi: ReferencePoint, gamma: RationalLike, dropped: int | None = None) -> QuadraticForm:
    """Closed-form coefficients of ``gamma * chi2_0`` around ``pi``.

    ``rho_jj = gamma (pi_j + pi_l) / (pi_j pi_l)`` and ``rho_jk = 2 gamma / pi_l``
    where ``l`` is the dropped index (default ``n``).
    """
    g = to_rational(gamma)
    if g <= 0:
        raise Chi2Error("gamma must be positive")
    n = pi.n
    l = n if dropped is None else dropped
    check_index(n, l)
    pl = pi[l - 1]
    kept = [i for i in range(1, n + 1) if i != l]
    diag = {j: g * (pi[j - 1] + pl) / (pi[j - 1] * pl) for j in kept}
    cross = {(i, j): 2 * g / pl for i, j in itertools.combinations(kept, 2)}
    return QuadraticForm(n, l, diag, cross, {i: Fraction(0) for i in kept}, Fraction(0))


def derive_gamma(form: QuadraticForm, pi: ReferencePoint) -> Fraction:
    """``gamma = rho_ii * pi_i pi_l / (pi_i + pi_l)`` for the first kept index ``i``."""
    if form.n != pi.n:
        raise Chi2Error("form and reference point differ in dimension")
    kept = form.kept
    if not kept or kept[0] not in form.rho_diag:
        raise MissingCoefficient("form has no leading diagonal coefficient")
    i, l = kept[0], form.dropped
    pi_i, pi_l = pi[i - 1], pi[l - 1]
    return form.rho_diag[i] * pi_i * pi_l / (pi_i + pi_l)


def reproduces_scaled_chi2(m: MeasureSpec, pi: ReferencePoint, gamma: Fraction) -> bool:
    """Whether ``gamma * chi2_0`` matches ``m``'s degree-0 form on every sample point."""
    for p in sample_points(pi):
        x = p.to_counts()
        if evaluate_degree0(m, x, pi) != gamma * chi2_0(x, pi):
            return False
    return True


@dataclass(frozen=True)
class GammaConstancyResult:
    constant: bool
    gammas: dict[ReferencePoint, Fraction]
    reproduces: dict[ReferencePoint, bool]


def verify_gamma_constancy(m: MeasureSpec, references: Sequence[ReferencePoint]) -> GammaConstancyResult:
    """Fit one form per reference point and test whether the recovered gamma is shared."""
    refs = list(references)
    if len(refs) < 2:
        raise Chi2Error("need at least two reference points")
    gammas: dict[ReferencePoint, Fraction] = {}
    reproduces: dict[ReferencePoint, bool] = {}
    for pi in refs:
        g = derive_gamma(fit_quadratic_form(m, pi), pi)
        gammas[pi] = g
        reproduces[pi] = reproduces_scaled_chi2(m, pi, g)
    return GammaConstancyResult(len(set(gammas.values())) == 1, gammas, reproduces)


def catalogue_segments(pi: ReferencePoint) -> list[Segment]:
    """Edges between vertices plus segments from ``pi`` to each vertex."""
    n = pi.n
    vertices = [SimplexPoint(tuple(Fraction(int(i == j)) for j in range(n))) for i in range(n)]
    segs = [Segment(a, b) for a, b in itertools.combinations(vertices, 2)]
    centre = pi.as_simplex()
    segs += [Segment(centre, v) for v in vertices if v != centre]
    return segs
