import random
from fractions import Fraction as F

import pytest

from chi2axioms import axioms as ax
from chi2axioms.errors import EqualIndices, IndexOutOfRange, NegativeEntry, NotIntegral
from chi2axioms.exactnum import CountVector, reference, uniform
from chi2axioms.measures import ABS_COUNTER, CHI2_0, CHI2_1, SQ_COUNTER, phi_weighted, scaled

from .oracles import abs_direct, brute_db_pairs

STAIR3 = reference("1/6", "1/3", "1/2")
U2 = uniform(2)
SMALL = ax.SuiteConfig(n_range=(2, 3), k_multiples=(1, 2), lambda_range=(1, 2, 3), limit=200, h_max_size=3)
EVERY_SPEC = [CHI2_0, CHI2_1, ABS_COUNTER, SQ_COUNTER, scaled(5, CHI2_0), scaled("7/3", CHI2_1)]


def test_homogeneity_examples():
    assert ax.check_homogeneity(CHI2_0, 0, CountVector((3, 2, 1)), STAIR3, 5)
    assert not ax.check_homogeneity(CHI2_1, 0, CountVector((1, 0)), U2, 2)
    for m in EVERY_SPEC:
        for omega in (0, 1):
            assert ax.check_homogeneity(m, omega, CountVector((4, 1, 0)), STAIR3, 1)


def test_harmonic_factor():
    assert ax.harmonic_factor(U2, 1, 2) == 4
    assert ax.harmonic_factor(STAIR3, 1, 3) == 8
    with pytest.raises(EqualIndices):
        ax.harmonic_factor(STAIR3, 1, 1)
    with pytest.raises(IndexOutOfRange):
        ax.harmonic_factor(STAIR3, 1, 4)


def test_inverse_effects_examples():
    assert ax.check_inverse_effects(CHI2_0, 6, 6, STAIR3, STAIR3, 1, 2, 2, 3)
    assert not ax.check_inverse_effects(SQ_COUNTER, 6, 6, STAIR3, STAIR3, 1, 2, 2, 3)
    for m in EVERY_SPEC:
        assert ax.check_inverse_effects(m, 12, 12, STAIR3, STAIR3, 3, 1, 3, 1)


def test_inverse_effects_errors():
    with pytest.raises(NotIntegral):
        ax.check_inverse_effects(CHI2_0, 4, 6, STAIR3, STAIR3, 1, 2, 2, 3)
    with pytest.raises(IndexOutOfRange):
        ax.check_inverse_effects(CHI2_0, 6, 6, STAIR3, STAIR3, 1, 5, 2, 3)


def test_inverse_effects_needs_common_k():
    """Single-move values scale like 1/k^2 (degree 0) or 1/k (degree 1), so k != k' breaks the ratio."""
    assert not ax.check_inverse_effects(CHI2_0, 6, 12, STAIR3, STAIR3, 1, 2, 1, 2)
    assert ax.check_inverse_effects(CHI2_0, 12, 12, STAIR3, uniform(3), 1, 2, 2, 3)


def test_db_combination_negative_entry():
    with pytest.raises(NegativeEntry):
        ax.deviations_balancedness_sides(CHI2_1, U2, CountVector((2, 0)), CountVector((2, 0)), 2)


def test_n2_restricted_inverse_effects_trivial():
    for pi in ax.catalogue(2):
        k0 = ax.lcm_denominators(pi)
        for m in EVERY_SPEC + [phi_weighted({pi: 3})]:
            for k in (k0, 2 * k0, 5 * k0):
                for (j, l), (r, s) in [((1, 2), (1, 2)), ((1, 2), (2, 1)), ((2, 1), (1, 2)), ((2, 1), (2, 1))]:
                    assert ax.check_inverse_effects(m, k, k, pi, pi, j, l, r, s)


def test_enumerate_db_pairs_matches_brute_force():
    for pi, k in [(U2, 2), (U2, 4), (reference("1/3", "2/3"), 3), (STAIR3, 6), (uniform(3), 3)]:
        ours = [(x.counts, y.counts) for x, y in ax.enumerate_db_pairs(pi, k, 10**6)]
        brute = brute_db_pairs(pi.probs, k)
        assert ours == brute  # same set and lexicographic order


def test_enumerate_db_pairs_examples():
    pairs = [(x.counts, y.counts) for x, y in ax.enumerate_db_pairs(U2, 2, 100)]
    assert ((1, 1), (2, 0)) in pairs
    assert ((1, 1), (1, 1)) in pairs
    assert len(ax.enumerate_db_pairs(STAIR3, 12, 7)) == 7
    with pytest.raises(NotIntegral):
        ax.enumerate_db_pairs(STAIR3, 4, 10)


def test_deviations_balancedness_chi2_1_all_pairs():
    for pi, k in [(U2, 4), (STAIR3, 6), (STAIR3, 12)]:
        for x, y in ax.enumerate_db_pairs(pi, k, 400):
            assert ax.check_deviations_balancedness(CHI2_1, pi, x, y, k)


def test_abs_counter_db_violation_needs_k4_on_uniform2():
    # brute force: no violating pair exists at k = 2, the first ones appear at k = 4
    for k, expect in ((2, 0), (4, 4)):
        bad = [(x, y) for x, y in ax.enumerate_db_pairs(U2, k, 10**6) if not ax.check_deviations_balancedness(ABS_COUNTER, U2, x, y, k)]
        assert len(bad) == expect
    x, y = CountVector((1, 3)), CountVector((3, 1))
    lhs, rhs = ax.deviations_balancedness_sides(ABS_COUNTER, U2, x, y, 4)
    assert lhs == abs_direct((0, 4), U2) + abs_direct((2, 2), U2) == 2
    assert rhs == 4


def test_axiom_id_validation():
    with pytest.raises(Exception):
        ax.AxiomId("H", 2)
    with pytest.raises(Exception):
        ax.AxiomId("DB", 0)
    assert ax.HOMOGENEITY_1.label == "H(1)"


def test_catalogue():
    assert ax.catalogue(2) == (uniform(2), reference("1/3", "2/3"))
    assert ax.catalogue(3) == (uniform(3), STAIR3, reference("1/2", "1/4", "1/4"))
    assert ax.catalogue(4)[1] == reference("1/10", "2/10", "3/10", "4/10")
    assert ax.catalogue(4)[2] == reference("1/2", "1/4", "1/8", "1/8")


def _reports(m, config=SMALL):
    return {r.axiom: r for r in ax.run_axiom_suite(m, config)}


def test_suite_chi2_0_and_chi2_1():
    r0 = _reports(CHI2_0)
    for a in (ax.HOMOGENEITY_0, ax.DEVIATIONS_BALANCEDNESS, ax.INVERSE_EFFECTS, ax.RESTRICTED_INVERSE_EFFECTS):
        assert r0[a].passed and r0[a].instances_tested > 0
    r1 = _reports(CHI2_1)
    for a in (ax.HOMOGENEITY_1, ax.DEVIATIONS_BALANCEDNESS, ax.INVERSE_EFFECTS, ax.RESTRICTED_INVERSE_EFFECTS):
        assert r1[a].passed
    assert not r1[ax.HOMOGENEITY_0].passed


def test_suite_phi_weighted():
    r = _reports(phi_weighted(ax.default_phi_table((2, 3))))
    assert not r[ax.INVERSE_EFFECTS].passed
    assert r[ax.RESTRICTED_INVERSE_EFFECTS].passed
    assert r[ax.DEVIATIONS_BALANCEDNESS].passed
    # empirically degree 0, not degree 1
    assert r[ax.HOMOGENEITY_0].passed and not r[ax.HOMOGENEITY_1].passed
    w = r[ax.INVERSE_EFFECTS].witness
    assert w.params["pi"] != w.params["pi_prime"]


@pytest.mark.parametrize("m", [CHI2_1, ABS_COUNTER, SQ_COUNTER, phi_weighted(ax.default_phi_table((2, 3)))])
def test_witnesses_replay_to_strict_inequality(m):
    for report in ax.run_axiom_suite(m, SMALL):
        if report.passed:
            assert report.witness is None and report.failures == 0
            continue
        lhs, rhs = ax.replay_witness(m, report.witness)
        assert lhs != rhs
        assert (lhs, rhs) == (report.witness.lhs, report.witness.rhs)


def test_suite_is_order_independent():
    m = ABS_COUNTER
    results = []
    for p in ax.db_instances(m, SMALL):
        lhs, rhs = ax.deviations_balancedness_sides(m, **p)
        results.append((p, lhs, rhs))
    forward = ax.aggregate(ax.DEVIATIONS_BALANCEDNESS, m, results)
    shuffled = results[:]
    random.Random(7).shuffle(shuffled)
    assert ax.aggregate(ax.DEVIATIONS_BALANCEDNESS, m, shuffled) == forward
    assert ax.aggregate(ax.DEVIATIONS_BALANCEDNESS, m, reversed(results)) == forward


def test_independence_report_small():
    rep = ax.independence_report(SMALL)
    assert rep.as_expected()
    assert not rep.cell(ABS_COUNTER, ax.DEVIATIONS_BALANCEDNESS)
    assert rep.cell(ABS_COUNTER, ax.INVERSE_EFFECTS) and rep.cell(ABS_COUNTER, ax.HOMOGENEITY_0)
    assert not rep.cell(SQ_COUNTER, ax.INVERSE_EFFECTS)
    assert not rep.cell(CHI2_1, ax.HOMOGENEITY_0)
    assert "FAIL" in rep.table()


def test_check_report_invariant():
    with pytest.raises(Exception):
        ax.CheckReport(ax.DEVIATIONS_BALANCEDNESS, CHI2_0, 3, False)
    w = ax.Witness(ax.DEVIATIONS_BALANCEDNESS, {}, F(1), F(2))
    with pytest.raises(Exception):
        ax.CheckReport(ax.DEVIATIONS_BALANCEDNESS, CHI2_0, 3, True, 0, w)
