"""Exact checkers and instance generators for the characterizing axioms.

Each axiom has a ``*_sides`` function returning both sides of its identity
and a boolean ``check_*`` wrapper. :func:`run_axiom_suite` sweeps a
deterministic family of instances and returns one :class:`CheckReport` per
axiom, carrying the lexicographically first failing instance as a witness.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Iterable, Iterator, Sequence

from .errors import Chi2Error, EqualIndices
from .exactnum import (
    CountVector,
    ReferencePoint,
    check_index,
    lcm_denominators,
    scaled_reference,
    unit_vector,
)
from .measures import ABS_COUNTER, CHI2_1, SQ_COUNTER, Kind, MeasureSpec, evaluate


@dataclass(frozen=True, order=True)
class AxiomId:
    tag: str
    omega: int | None = None

    def __post_init__(self) -> None:
        if self.tag not in ("H", "DB", "IE", "RIE"):
            raise Chi2Error(f"unknown axiom tag {self.tag!r}")
        if (self.tag == "H") != (self.omega is not None):
            raise Chi2Error("homogeneity (and only homogeneity) carries a degree")
        if self.omega is not None and self.omega not in (0, 1):
            raise Chi2Error(f"homogeneity degree must be 0 or 1, got {self.omega}")

    @property
    def label(self) -> str:
        return f"H({self.omega})" if self.tag == "H" else self.tag


HOMOGENEITY_0 = AxiomId("H", 0)
HOMOGENEITY_1 = AxiomId("H", 1)
DEVIATIONS_BALANCEDNESS = AxiomId("DB")
INVERSE_EFFECTS = AxiomId("IE")
RESTRICTED_INVERSE_EFFECTS = AxiomId("RIE")

ALL_AXIOMS = (
    HOMOGENEITY_0,
    HOMOGENEITY_1,
    DEVIATIONS_BALANCEDNESS,
    INVERSE_EFFECTS,
    RESTRICTED_INVERSE_EFFECTS,
)


@dataclass(frozen=True)
class Witness:
    """A failing instance: keyword arguments of the sides function plus both sides."""

    axiom: AxiomId
    params: dict[str, Any]
    lhs: Fraction
    rhs: Fraction


@dataclass(frozen=True)
class CheckReport:
    axiom: AxiomId
    measure: MeasureSpec
    instances_tested: int
    passed: bool
    failures: int = 0
    witness: Witness | None = None

    def __post_init__(self) -> None:
        if self.passed != (self.witness is None):
            raise Chi2Error("a report has a witness exactly when it failed")


# -- reference catalogue -------------------------------------------------


def catalogue(n: int) -> tuple[ReferencePoint, ...]:
    """Uniform, staircase and dyadic reference points on ``n`` categories, deduplicated."""
    if n < 2:
        raise Chi2Error("catalogue needs n >= 2")
    total = n * (n + 1) // 2
    points = [
        tuple(Fraction(1, n) for _ in range(n)),
        tuple(Fraction(i, total) for i in range(1, n + 1)),
        tuple(Fraction(1, 2**i) for i in range(1, n)) + (Fraction(1, 2 ** (n - 1)),),
    ]
    out: list[ReferencePoint] = []
    for probs in points:
        pi = ReferencePoint(probs)
        if pi not in out:
            out.append(pi)
    return tuple(out)


def references_for(m: MeasureSpec, n: int) -> tuple[ReferencePoint, ...]:
    """Catalogue points on which ``m`` is defined (phi tables have finite domains)."""
    base = m.base if m.kind is Kind.SCALED else m
    points = catalogue(n)
    if base.kind is Kind.PHI:
        domain = set(base.phi_domain())
        points = tuple(p for p in points if p in domain)
    return points


def default_phi_table(n_range: Iterable[int] = (2, 3, 4)) -> dict[ReferencePoint, Fraction]:
    """Non-constant phi over the catalogue: 1, 2, 3, ... in catalogue order."""
    table: dict[ReferencePoint, Fraction] = {}
    for n in n_range:
        for idx, pi in enumerate(catalogue(n)):
            table[pi] = Fraction(idx + 1)
    return table


# -- homogeneity ---------------------------------------------------------


def homogeneity_sides(m: MeasureSpec, omega: int, x: CountVector, pi: ReferencePoint, lam: int) -> tuple[Fraction, Fraction]:
    if lam < 1:
        raise Chi2Error(f"lambda must be a positive integer, got {lam}")
    return evaluate(m, lam * x, pi), lam**omega * evaluate(m, x, pi)


def check_homogeneity(m: MeasureSpec, omega: int, x: CountVector, pi: ReferencePoint, lam: int) -> bool:
    lhs, rhs = homogeneity_sides(m, omega, x, pi, lam)
    return lhs == rhs


# -- inverse effects -----------------------------------------------------


def harmonic_factor(pi: ReferencePoint, j: int, l: int) -> Fraction:
    """``1/pi_j + 1/pi_l`` (twice the reciprocal of the harmonic mean)."""
    check_index(pi.n, j)
    check_index(pi.n, l)
    if j == l:
        raise EqualIndices(f"indices must differ, got {j} twice")
    return 1 / pi[j - 1] + 1 / pi[l - 1]


def single_move(pi: ReferencePoint, k: int, j: int, l: int) -> CountVector:
    """``k*pi + 1^j - 1^l``: one observation moved from category l to j."""
    n = pi.n
    v = scaled_reference(pi, k) + unit_vector(n, j) - unit_vector(n, l)
    return v.to_counts()


def inverse_effects_sides(
    m: MeasureSpec,
    k: int,
    k_prime: int,
    pi: ReferencePoint,
    pi_prime: ReferencePoint,
    j: int,
    l: int,
    r: int,
    s: int,
) -> tuple[Fraction, Fraction]:
    """Cross-multiplied ratio identity; no division is ever performed."""
    a = harmonic_factor(pi, j, l)
    a_prime = harmonic_factor(pi_prime, r, s)
    f = evaluate(m, single_move(pi, k, j, l), pi)
    f_prime = evaluate(m, single_move(pi_prime, k_prime, r, s), pi_prime)
    return f * a_prime, f_prime * a


def check_inverse_effects(
    m: MeasureSpec,
    k: int,
    k_prime: int,
    pi: ReferencePoint,
    pi_prime: ReferencePoint,
    j: int,
    l: int,
    r: int,
    s: int,
) -> bool:
    lhs, rhs = inverse_effects_sides(m, k, k_prime, pi, pi_prime, j, l, r, s)
    return lhs == rhs


# -- deviations balancedness --------------------------------------------


def _bounded_compositions(total: int, lows: Sequence[int], highs: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Integer vectors ``lows <= v <= highs`` with ``sum(v) == total``, in lexicographic order."""
    n = len(lows)
    suffix_low = [0] * (n + 1)
    suffix_high = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix_low[i] = suffix_low[i + 1] + lows[i]
        suffix_high[i] = suffix_high[i + 1] + highs[i]

    def rec(i: int, remaining: int, prefix: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
        if i == n:
            if remaining == 0:
                yield prefix
            return
        lo = max(lows[i], remaining - suffix_high[i + 1])
        hi = min(highs[i], remaining - suffix_low[i + 1])
        for v in range(lo, hi + 1):
            yield from rec(i + 1, remaining - v, prefix + (v,))

    yield from rec(0, total, ())


def compositions(total: int, n: int) -> Iterator[tuple[int, ...]]:
    """All non-negative integer vectors of length ``n`` summing to ``total``."""
    return _bounded_compositions(total, [0] * n, [total] * n)


def enumerate_db_pairs(pi: ReferencePoint, k: int, limit: int) -> list[tuple[CountVector, CountVector]]:
    """Pairs ``(x, y)`` of size ``k`` for which both combinations stay non-negative.

    For fixed ``x`` the admissible ``y_i`` form the interval
    ``[k*pi_i - x_i, x_i + k*pi_i]`` clipped to ``[0, k]``.
    """
    base = scaled_reference(pi, k).entries
    pairs: list[tuple[CountVector, CountVector]] = []
    if limit <= 0:
        return pairs
    for xs in compositions(k, pi.n):
        lows = [max(0, b - xi) for b, xi in zip(base, xs)]
        highs = [min(k, b + xi) for b, xi in zip(base, xs)]
        x = CountVector(xs)
        for ys in _bounded_compositions(k, lows, highs):
            pairs.append((x, CountVector(ys)))
            if len(pairs) >= limit:
                return pairs
    return pairs


def deviations_balancedness_sides(
    m: MeasureSpec, pi: ReferencePoint, x: CountVector, y: CountVector, k: int
) -> tuple[Fraction, Fraction]:
    if x.size() != k or y.size() != k:
        raise Chi2Error(f"x and y must both have size {k}")
    kpi = scaled_reference(pi, k)
    plus = (x + y - kpi).to_counts()
    minus = (x - y + kpi).to_counts()
    lhs = evaluate(m, plus, pi) + evaluate(m, minus, pi)
    rhs = 2 * evaluate(m, x, pi) + 2 * evaluate(m, y, pi)
    return lhs, rhs


def check_deviations_balancedness(m: MeasureSpec, pi: ReferencePoint, x: CountVector, y: CountVector, k: int) -> bool:
    lhs, rhs = deviations_balancedness_sides(m, pi, x, y, k)
    return lhs == rhs


# -- suite ---------------------------------------------------------------


@dataclass(frozen=True)
class SuiteConfig:
    n_range: tuple[int, ...] = (2, 3, 4)
    k_multiples: tuple[int, ...] = (1, 2, 4)
    lambda_range: tuple[int, ...] = (1, 2, 3, 4, 5)
    limit: int = 500
    h_max_size: int = 4

    def __post_init__(self) -> None:
        for name in ("n_range", "k_multiples", "lambda_range"):
            value = tuple(getattr(self, name))
            if not value:
                raise Chi2Error(f"{name} must be non-empty")
            object.__setattr__(self, name, value)
        if min(self.n_range) < 2 or min(self.k_multiples) < 1 or min(self.lambda_range) < 1:
            raise Chi2Error("suite ranges must hold n >= 2 and positive k multiples / lambdas")
        if self.limit < 1 or self.h_max_size < 1:
            raise Chi2Error("limit and h_max_size must be positive")


SIDES: dict[str, Callable[..., tuple[Fraction, Fraction]]] = {
    "H": homogeneity_sides,
    "DB": deviations_balancedness_sides,
    "IE": inverse_effects_sides,
    "RIE": inverse_effects_sides,
}


def replay_witness(m: MeasureSpec, w: Witness) -> tuple[Fraction, Fraction]:
    """Re-evaluate the witness through its sides function."""
    return SIDES[w.axiom.tag](m, **w.params)


def _sort_key(params: dict[str, Any]) -> tuple:
    out = []
    for name in sorted(params):
        v = params[name]
        if isinstance(v, CountVector):
            v = v.counts
        elif isinstance(v, ReferencePoint):
            v = v.probs
        out.append((name, v))
    return tuple(out)


def aggregate(
    axiom: AxiomId, m: MeasureSpec, results: Iterable[tuple[dict[str, Any], Fraction, Fraction]]
) -> CheckReport:
    """Fold instance results into one report; the witness is the smallest failing key."""
    tested = 0
    failures = []
    for params, lhs, rhs in results:
        tested += 1
        if lhs != rhs:
            failures.append((params, lhs, rhs))
    if not failures:
        return CheckReport(axiom, m, tested, True)
    params, lhs, rhs = min(failures, key=lambda f: _sort_key(f[0]))
    return CheckReport(axiom, m, tested, False, len(failures), Witness(axiom, params, lhs, rhs))


def homogeneity_instances(m: MeasureSpec, omega: int, config: SuiteConfig) -> Iterator[dict[str, Any]]:
    for n in config.n_range:
        for pi in references_for(m, n):
            for size in range(1, config.h_max_size + 1):
                for xs in compositions(size, n):
                    for lam in config.lambda_range:
                        yield dict(omega=omega, x=CountVector(xs), pi=pi, lam=lam)


def inverse_effects_instances(m: MeasureSpec, config: SuiteConfig, restricted: bool) -> Iterator[dict[str, Any]]:
    """Single-move instances with a common ``k`` for both reference points.

    ``k`` runs over multiples of the least k making both ``k*pi`` and
    ``k*pi'`` integral.
    """
    for n in config.n_range:
        points = references_for(m, n)
        moves = list(itertools.permutations(range(1, n + 1), 2))
        ref_pairs = [(p, p) for p in points] if restricted else list(itertools.product(points, repeat=2))
        for pi, pi_prime in ref_pairs:
            k0 = math.lcm(lcm_denominators(pi), lcm_denominators(pi_prime))
            for mult in config.k_multiples:
                k = mult * k0
                for (j, l), (r, s) in itertools.product(moves, repeat=2):
                    yield dict(k=k, k_prime=k, pi=pi, pi_prime=pi_prime, j=j, l=l, r=r, s=s)


def db_instances(m: MeasureSpec, config: SuiteConfig) -> Iterator[dict[str, Any]]:
    for n in config.n_range:
        for pi in references_for(m, n):
            k0 = lcm_denominators(pi)
            for mult in config.k_multiples:
                k = mult * k0
                for x, y in enumerate_db_pairs(pi, k, config.limit):
                    yield dict(pi=pi, x=x, y=y, k=k)


class _Memo:
    """Caches measure values; the suites re-evaluate the same points many times."""

    def __init__(self, m: MeasureSpec):
        self.m = m
        self.cache: dict[tuple, Fraction] = {}

    def __call__(self, x: CountVector, pi: ReferencePoint) -> Fraction:
        key = (x.counts, pi)
        value = self.cache.get(key)
        if value is None:
            value = self.cache[key] = evaluate(self.m, x, pi)
        return value


def _run_homogeneity(m: MeasureSpec, omega: int, config: SuiteConfig, f: _Memo) -> CheckReport:
    def results():
        for p in homogeneity_instances(m, omega, config):
            lam, x, pi = p["lam"], p["x"], p["pi"]
            yield p, f(lam * x, pi), lam**omega * f(x, pi)

    return aggregate(AxiomId("H", omega), m, results())


def _run_inverse_effects(m: MeasureSpec, config: SuiteConfig, f: _Memo, restricted: bool) -> CheckReport:
    def results():
        for p in inverse_effects_instances(m, config, restricted):
            pi, pi_prime = p["pi"], p["pi_prime"]
            a = harmonic_factor(pi, p["j"], p["l"])
            a_prime = harmonic_factor(pi_prime, p["r"], p["s"])
            lhs = f(single_move(pi, p["k"], p["j"], p["l"]), pi) * a_prime
            rhs = f(single_move(pi_prime, p["k_prime"], p["r"], p["s"]), pi_prime) * a
            yield p, lhs, rhs

    axiom = RESTRICTED_INVERSE_EFFECTS if restricted else INVERSE_EFFECTS
    return aggregate(axiom, m, results())


def _run_db(m: MeasureSpec, config: SuiteConfig, f: _Memo) -> CheckReport:
    def results():
        for p in db_instances(m, config):
            pi, x, y, k = p["pi"], p["x"], p["y"], p["k"]
            kpi = scaled_reference(pi, k)
            lhs = f((x + y - kpi).to_counts(), pi) + f((x - y + kpi).to_counts(), pi)
            yield p, lhs, 2 * f(x, pi) + 2 * f(y, pi)

    return aggregate(DEVIATIONS_BALANCEDNESS, m, results())


def run_axiom_suite(
    m: MeasureSpec, config: SuiteConfig | None = None, axioms: Sequence[AxiomId] = ALL_AXIOMS
) -> list[CheckReport]:
    """One report per requested axiom, in the order given."""
    config = config or SuiteConfig()
    f = _Memo(m)
    reports = []
    for axiom in axioms:
        if axiom.tag == "H":
            reports.append(_run_homogeneity(m, axiom.omega, config, f))
        elif axiom.tag == "DB":
            reports.append(_run_db(m, config, f))
        else:
            reports.append(_run_inverse_effects(m, config, f, restricted=axiom.tag == "RIE"))
    return reports


INDEPENDENCE_AXIOMS = (HOMOGENEITY_0, DEVIATIONS_BALANCEDNESS, INVERSE_EFFECTS)

# measure -> the single axiom it is expected to violate
INDEPENDENCE_DESIGN: dict[MeasureSpec, AxiomId] = {
    CHI2_1: HOMOGENEITY_0,
    ABS_COUNTER: DEVIATIONS_BALANCEDNESS,
    SQ_COUNTER: INVERSE_EFFECTS,
}


@dataclass
class IndependenceReport:
    rows: dict[MeasureSpec, dict[AxiomId, CheckReport]] = field(default_factory=dict)

    def cell(self, m: MeasureSpec, axiom: AxiomId) -> bool:
        return self.rows[m][axiom].passed

    def as_expected(self) -> bool:
        """Each measure fails exactly its designated axiom and passes the others."""
        for m, expected_failure in INDEPENDENCE_DESIGN.items():
            for axiom, report in self.rows[m].items():
                if report.passed == (axiom == expected_failure):
                    return False
        return True

    def table(self) -> str:
        labels = [a.label for a in INDEPENDENCE_AXIOMS]
        lines = ["measure  " + "  ".join(f"{lab:>5}" for lab in labels)]
        for m, cells in self.rows.items():
            marks = ["pass" if cells[a].passed else "FAIL" for a in INDEPENDENCE_AXIOMS]
            lines.append(f"{m.name:<8} " + "  ".join(f"{mk:>5}" for mk in marks))
        return "\n".join(lines)


def independence_report(config: SuiteConfig | None = None) -> IndependenceReport:
    report = IndependenceReport()
    for m in INDEPENDENCE_DESIGN:
        reports = run_axiom_suite(m, config, INDEPENDENCE_AXIOMS)
        report.rows[m] = {r.axiom: r for r in reports}
    return report
