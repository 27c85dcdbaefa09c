from fractions import Fraction

import pytest

from ktops.checks import (
    check_coalgebra_conditions,
    check_congruence_condition,
    check_gamma_transfer,
    check_pow3_valuations,
    check_product_congruence,
    check_unit_condition,
    condition_report,
    product_identity_holds,
)
from ktops.laurent import alternating_powers, geometric_powers
from ktops.rationals import nu
from ktops.spectra import make_spectrum

K3 = make_spectrum("k(3)")
BIG_K3 = make_spectrum("K(3)")
KO = make_spectrum("ko(2)")
K2 = make_spectrum("k(2)")
BIG_K2 = make_spectrum("K(2)")


def test_unit_condition_holds_inside_set():
    v = check_unit_condition(K3, 2, 4)
    assert v.holds and v.exact
    assert v.checked == 2  # ord_3(2) = 2, one period decides all exponents


def test_unit_condition_fails_off_set():
    v = check_unit_condition(K3, 0, 1)
    assert not v.holds
    assert v.witness == 1


def test_unit_condition_requires_order():
    with pytest.raises(ValueError):
        check_unit_condition(K3, 4, 2)


def test_unit_condition_trivial_period_at_two():
    # 9 = 1 mod 2, so a single exponent decides
    v = check_unit_condition(KO, 1, 2)
    assert v.holds and v.exact and v.checked == 1


def test_congruence_condition_oracle():
    # valuation bottoms out exactly at the depth
    v = check_congruence_condition(BIG_K3, 12, 1, 2)
    assert v.holds and v.exact
    assert v.min_valuation == 2


def test_congruence_condition_fails_beyond_depth():
    # shift 2 only supports depth 4 for the real connective theory
    v = check_congruence_condition(KO, 2, 1, 5)
    assert not v.holds
    assert v.min_valuation == 4


def test_congruence_cross_validation_recorded():
    v = check_congruence_condition(K3, 2, 3, 1)
    assert v.holds
    assert isinstance(v.checked, dict) and "cross" in v.checked


def test_product_identity_symbolic():
    for base in (2, 4, 9):
        z = geometric_powers(base)
        for m in range(5):
            for n in range(5):
                assert product_identity_holds(z, m, n)
        za = alternating_powers(base)
        for m in range(5):
            for n in range(5):
                assert product_identity_holds(za, m, n)


def test_pow3_valuations_closed_form():
    sweep = check_pow3_valuations(64)
    assert sweep.holds
    assert sweep.cells == 64
    # spot values: nu2(3^1-1)=1, nu2(3^2-1)=3, nu2(3^4-1)=4, nu2(3^6-1)=3
    assert nu(2, 3 ** 2 - 1) == 3
    assert nu(2, 3 ** 6 - 1) == 3


def test_gamma_transfer_sweep():
    sweep = check_gamma_transfer(K2, KO, 6)
    assert sweep.holds
    assert not sweep.mismatches


def test_gamma_transfer_validates_families():
    with pytest.raises(ValueError):
        check_gamma_transfer(KO, K2, 4)


def test_coalgebra_conditions_even_shifts_hold():
    # interleaved 2-local table: even shifts satisfy both conditions
    v = check_coalgebra_conditions(K2, 2, 4, 1, bound=8)
    assert v.holds


def test_coalgebra_conditions_odd_shift_counterexample():
    # the diagonal structure constant for (1,1) vanishes instead of
    # being 1, so the product congruence genuinely fails at odd shifts
    v = check_coalgebra_conditions(K2, 1, 1, 1, bound=6)
    assert not v.holds
    g = K2.coalgebra.coproduct_entry(1, 1, 2)
    assert g == 0


def test_coalgebra_conditions_injected_corruption():
    # a doctored structure-constant table must be caught
    real = K2.coalgebra.coproduct_entry

    def doctored(i, j, n):
        v = real(i, j, n)
        if (i, j, n) == (2, 4, 6):
            return v + 1
        return v

    good = check_coalgebra_conditions(K2, 2, 4, 1, bound=8)
    bad = check_coalgebra_conditions(K2, 2, 4, 1, bound=8, gamma=doctored)
    assert good.holds and not bad.holds


def test_periodic_interleaved_diagonal_defect():
    # in the periodic window the (2,2) diagonal entry is 1/9, not 1
    g = BIG_K2.coalgebra.coproduct_entry(2, 2, 4)
    assert g == Fraction(1, 9)
    v = check_coalgebra_conditions(BIG_K2, 2, 2, 1, bound=6)
    assert not v.holds


def test_condition_report_theta_specs_hold():
    for name in ("k(3)", "g(3)", "ko(2)"):
        sp = make_spectrum(name)
        rep = condition_report(sp, 2, sample_size=3, n_range=4)
        assert rep.all_hold, rep.summary()


def test_condition_report_controls_fail_at_odd_primes():
    rep = condition_report(K3, 1, sample_size=3, n_range=3, include_controls=True)
    assert rep.all_hold
    assert rep.failing_controls  # shifts off the admissible set must fail


def test_condition_report_controls_at_two_hold_shallow():
    # 2-locally the congruence survives shallow depths even off the
    # even set: nu2(3^i - 1) >= 3 for even i, and odd entries only
    # appear from depth 4 up
    rep = condition_report(make_spectrum("KO(2)"), 3, sample_size=3, n_range=3)
    assert not rep.failing_controls


def test_condition_report_min_valuations_monotone():
    rep = condition_report(K3, 3, sample_size=3, n_range=4)
    vals = rep.min_valuations()
    assert vals[1] >= 1 and vals[2] >= 2 and vals[3] >= 3
