"""Cyclotomic polynomials, their homogenized values, and root-of-unity
congruences for prime-power indices."""

import math

import pytest

from lucasdual.arith import divisors, euler_phi
from lucasdual.cyclotomic import (
    CyclotomicPoly,
    cyclotomic_coeffs,
    homogeneous_eval,
    order_mod,
    verify_ratcon,
)
from lucasdual.dual import dual_u
from lucasdual.lucas import LucasParams
from lucasdual.reports import Status


def _eval(poly: CyclotomicPoly, x: int) -> int:
    total = 0
    for c in reversed(poly.coefficients):
        total = total * x + c
    return total


def test_small_coefficient_goldens():
    assert cyclotomic_coeffs(1).coefficients == (-1, 1)
    assert cyclotomic_coeffs(2).coefficients == (1, 1)
    assert cyclotomic_coeffs(3).coefficients == (1, 1, 1)
    assert cyclotomic_coeffs(4).coefficients == (1, 0, 1)
    assert cyclotomic_coeffs(6).coefficients == (1, -1, 1)
    assert cyclotomic_coeffs(12).coefficients == (1, 0, -1, 0, 1)


def test_degree_is_euler_phi():
    for n in range(1, 200):
        assert cyclotomic_coeffs(n).degree == euler_phi(n)


def test_product_over_divisors_is_x_power_minus_one():
    for n in (1, 2, 6, 12, 30, 36, 105):
        for x in (2, 3, -5, 10):
            product = math.prod(_eval(cyclotomic_coeffs(d), x) for d in divisors(n))
            assert product == x**n - 1


def test_value_at_one_detects_prime_powers():
    # Phi_n(1) = p for prime powers n = p^k, else 1 (n > 1)
    from lucasdual.arith import factorize

    for n in range(2, 300):
        value = _eval(cyclotomic_coeffs(n), 1)
        primes = factorize(n).primes()
        assert value == (primes[0] if len(primes) == 1 else 1)


def test_coefficient_105_breaks_unit_pattern():
    # first index whose coefficients leave {-1, 0, 1}
    coeffs = cyclotomic_coeffs(105).coefficients
    assert -2 in coeffs
    for n in range(1, 105):
        assert set(cyclotomic_coeffs(n).coefficients) <= {-1, 0, 1}


def test_homogeneous_eval_matches_direct_substitution():
    # beta^phi * Phi(alpha/beta) = prod over primitive roots of (alpha - zeta beta)
    # cross-check through the divisor product: prod_{d|n} hom_d = alpha^n - beta^n / ...
    params = LucasParams(3, 2)  # alpha = 2, beta = 1
    for n in range(2, 80):
        assert homogeneous_eval(params, n) == _eval(cyclotomic_coeffs(n), 2)


def test_homogeneous_eval_equals_dual(nondegenerate):
    for params in nondegenerate:
        for n in range(2, 120):
            assert homogeneous_eval(params, n) == dual_u(params, n)


def test_homogeneous_eval_rejects_bad_input():
    with pytest.raises(ValueError):
        homogeneous_eval(LucasParams(1, -1), 1)
    with pytest.raises(ValueError):
        homogeneous_eval(LucasParams(2, 2), 5)


def test_order_mod():
    assert order_mod(2, 7) == 3
    assert order_mod(3, 7) == 6
    assert order_mod(1, 5) == 1
    assert order_mod(2, 3) == 2
    for p in (5, 11, 13):
        for z in range(1, p):
            k = order_mod(z, p)
            assert pow(z, k, p) == 1
            assert all(pow(z, j, p) != 1 for j in range(1, k))
    with pytest.raises(ValueError):
        order_mod(10, 5)


def test_ratcon_order_branch():
    # Phi_6(2) = 3: order of 2 mod 3 is 2... the order branch fires at n = ord
    report = verify_ratcon(2, 3, order_mod(2, 3), kmax=3)
    assert report.status is Status.VERIFIED
    assert "order" in report.branch


def test_ratcon_generic_branch():
    report = verify_ratcon(2, 5, 1, kmax=3)
    assert report.status is Status.VERIFIED


def test_ratcon_sweep_no_violations():
    from math import gcd

    for p in (2, 3, 5, 7):
        for z in range(2, 20):
            if gcd(z, p) != 1:
                continue
            for n in range(1, 12):
                if gcd(n, p) != 1:
                    continue
                assert verify_ratcon(z, p, n, kmax=3).status is Status.VERIFIED


def test_ratcon_rejects_shared_factors():
    with pytest.raises(ValueError):
        verify_ratcon(6, 3, 2, kmax=1)
    with pytest.raises(ValueError):
        verify_ratcon(5, 3, 6, kmax=1)
