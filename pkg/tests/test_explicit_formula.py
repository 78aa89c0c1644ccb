import math

import pytest

from nonresidue.characters import character_group, primitive_characters
from nonresidue.explicit_formula import (
    character_log_residual,
    cheb_log_sum,
    coprime_excess_sums,
    error_terms,
    hadamard_window,
    imprimitivity_gap,
    lemma_residual,
    log_l_residual,
    loglog_sum,
    negative_pattern_minimum,
    two_adic_trig_polynomial,
    weighted_psi_sum,
)
from nonresidue.lfunctions import EULER_GAMMA, HADAMARD_B, re_b


def brute_lambda(n: int) -> float:
    """Test-local von Mangoldt."""
    for p in range(2, n + 1):
        if n % p == 0:
            m = n
            while m % p == 0:
                m //= p
            return math.log(p) if m == 1 else 0.0
    return 0.0


# ----------------------------------------------------------------------
# sums
# ----------------------------------------------------------------------


def test_cheb_log_sum_against_direct():
    assert cheb_log_sum(1.5) == 0.0
    direct = math.fsum(brute_lambda(n) * math.log(10 / n) for n in range(2, 11))
    assert cheb_log_sum(10.0) == pytest.approx(direct, rel=1e-14)
    # twisting by the principal character mod 2 drops the powers of two
    chi0 = character_group(2)[0]
    direct_odd = math.fsum(
        brute_lambda(n) * math.log(10 / n) for n in range(3, 11, 2)
    )
    assert cheb_log_sum(10.0, chi0).real == pytest.approx(direct_odd, rel=1e-13)


def test_weighted_psi_sum_against_direct():
    assert weighted_psi_sum(1.5) == 0.0
    x = 100.0
    direct = math.fsum(brute_lambda(n) / n * (1 - n / x) for n in range(2, 101))
    assert weighted_psi_sum(x) == pytest.approx(direct, rel=1e-13)
    leg5 = [c for c in character_group(5) if c.is_real and not c.is_principal][0]
    direct_tw = math.fsum(
        brute_lambda(n) / n * (1 - n / x) * leg5.evaluate(n).to_complex().real
        for n in range(2, 101)
    )
    assert weighted_psi_sum(x, leg5).real == pytest.approx(direct_tw, abs=1e-13)


def test_loglog_sum_against_direct():
    assert loglog_sum(1.9) == 0.0
    x = 1000.0
    direct = math.fsum(
        brute_lambda(n) / (n * math.log(n)) * math.log(x / n) / math.log(x)
        for n in range(2, 1001)
    )
    assert loglog_sum(x) == pytest.approx(direct, rel=1e-13)
    chi4 = primitive_characters(4)[0]
    direct_tw = math.fsum(
        brute_lambda(n) / (n * math.log(n)) * math.log(x / n) / math.log(x)
        * chi4.evaluate(n).to_complex().real
        for n in range(2, 1001)
    )
    assert loglog_sum(x, chi4).real == pytest.approx(direct_tw, abs=1e-13)


# ----------------------------------------------------------------------
# closed-form error terms
# ----------------------------------------------------------------------


def test_error_terms_limits():
    x = 1e9
    etilde1 = error_terms(x, 1, "Etilde")
    assert etilde1 + (math.log(2) + EULER_GAMMA / 2) * math.log(x) == pytest.approx(
        math.pi**2 / 8, abs=1e-8
    )
    e1 = error_terms(x, 1, "E")
    assert e1 == pytest.approx(-EULER_GAMMA / 2, abs=1e-8)


def test_error_terms_against_brute_series():
    x = 100.0
    series = math.fsum(
        x ** (-2 * k - 1) / (2 * k * (2 * k + 1)) for k in range(1, 200)
    )
    expect = (
        -math.log(2)
        - EULER_GAMMA / 2 * (1 - 1 / x)
        + (math.log(x) + 1) / x
        - series
    )
    assert error_terms(x, 0, "E") == pytest.approx(expect, abs=1e-14)
    series_t0 = math.fsum(x ** (-2 * k) / (2 * k) ** 2 for k in range(1, 200))
    expect_t0 = (
        math.pi**2 / 24
        - EULER_GAMMA / 2 * math.log(x)
        - 0.5 * math.log(x) ** 2
        - series_t0
    )
    assert error_terms(x, 0, "Etilde") == pytest.approx(expect_t0, abs=1e-14)


def test_error_terms_vanish_at_one():
    for parity in (0, 1):
        assert abs(error_terms(1 + 1e-12, parity, "Etilde")) < 1e-9


# ----------------------------------------------------------------------
# residuals
# ----------------------------------------------------------------------


def test_untwisted_residuals_bounded():
    for lemma in ("2.1", "2.4", "2.6"):
        for x in (10.0, 100.0, 1e3, 1e4, 1e5, 1e6):
            if lemma == "2.6" and x < math.e:
                continue
            rep = lemma_residual(lemma, x)
            assert rep.ok, (lemma, x, rep.theta)


def test_residual_domain_errors():
    with pytest.raises(ValueError):
        lemma_residual("2.1", 0.5)
    with pytest.raises(ValueError):
        lemma_residual("2.6", 2.0)  # below e
    with pytest.raises(ValueError):
        lemma_residual("9.9", 10.0)


def test_degenerate_limit_near_one():
    # empty sums at x -> 1+, main terms telescope to within a few |B|
    rep = lemma_residual("2.1", 1 + 1e-9)
    assert abs(rep.main) <= 10 * abs(HADAMARD_B)
    rep4 = lemma_residual("2.4", 1 + 1e-9)
    assert rep4.main == pytest.approx(2 * HADAMARD_B, abs=1e-6)
    assert abs(rep4.main) <= 10 * abs(HADAMARD_B)


def test_character_residuals_small_q():
    for q in (3, 5, 7):
        for chi in primitive_characters(q):
            rb = re_b(chi)
            for x in (10.0, 100.0, 1000.0):
                rep = character_log_residual(x, chi, rb)
                assert rep.ok, (q, chi.label, x, rep.theta)


def test_hadamard_window_contains_oracle_and_nests():
    for q in (5, 7):
        for chi in primitive_characters(q):
            rb = re_b(chi)
            wide = hadamard_window(100.0, chi)
            tight = hadamard_window(1e4, chi)
            assert wide.contains(rb), (q, chi.label)
            assert tight.contains(rb), (q, chi.label)
            assert wide.lower - 1e-9 <= tight.lower
            assert tight.upper <= wide.upper + 1e-9


def test_log_l_residual_small_q():
    for q in (3, 5, 7, 8):
        for chi in primitive_characters(q):
            rb = re_b(chi)
            for x in (50.0, 1000.0):
                rep = log_l_residual(x, chi, rb)
                assert rep.ok, (q, chi.label, x, rep.theta)


def test_residual_rejects_imprimitive():
    chi6 = [c for c in character_group(6) if not c.is_principal][0]
    with pytest.raises(ValueError):
        character_log_residual(100.0, chi6, 0.1)


# ----------------------------------------------------------------------
# unconditional pieces
# ----------------------------------------------------------------------


def test_coprime_excess_example_m4():
    rep = coprime_excess_sums(16.0, 4)
    hand = math.log(2) * (math.log(8.0) + math.log(4.0) + math.log(2.0))
    assert rep.log_weighted == pytest.approx(hand, rel=1e-13)
    assert rep.log_weighted_bound == pytest.approx(0.5 * math.log(16.0) ** 2, rel=1e-15)
    assert rep.ok


def test_coprime_excess_prime_larger_than_x():
    rep = coprime_excess_sums(10.0, 101)
    assert rep.log_weighted == 0.0
    assert rep.harmonic == 0.0
    assert rep.ok


def test_coprime_excess_m30():
    rep = coprime_excess_sums(100.0, 30)
    assert rep.ok


def test_coprime_excess_exhaustive_small():
    for m in range(3, 80):
        for x in (10.0, 100.0):
            assert coprime_excess_sums(x, m).ok, (m, x)


def test_imprimitivity_gap_bound():
    for q in (6, 12, 45):
        for chi in character_group(q):
            if chi.conductor in (chi.q,):
                continue
            for x in (50.0, 500.0):
                gap, bound = imprimitivity_gap(x, chi)
                assert gap <= bound + 1e-9, (q, chi.label, x, gap, bound)


def test_negative_pattern_examples():
    chi0 = character_group(3)[0]
    assert negative_pattern_minimum(100.0, chi0).ok
    leg7 = [c for c in character_group(7) if c.is_real and not c.is_principal][0]
    assert negative_pattern_minimum(1000.0, leg7).ok
    with pytest.raises(ValueError):
        negative_pattern_minimum(50.0, chi0)


def test_trig_polynomial_nonnegative():
    rep = two_adic_trig_polynomial(100.0)
    assert rep.ok
    assert rep.minimum >= -1e-12
    dense = two_adic_trig_polynomial(1e6, grid=5001)
    assert dense.ok
    # the grid includes phi = 0 where every cosine deficit vanishes
    assert two_adic_trig_polynomial(100.0, grid=3).minimum == pytest.approx(0.0, abs=1e-15)
