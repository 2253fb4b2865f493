"""Named q-objects: factorials, Pochhammer, Gaussian binomials, truncation sums."""

import math

import pytest

from qholonomic import (
    DensePoly,
    IndexOutOfRange,
    NonInvertibleDenominator,
    PrimeField,
    alg1_product,
    binomial_theorem_coeff,
    cube_eta_eval,
    euler_pentagonal_eval,
    geometric_point_product,
    naive_geom_product,
    q_binomial,
    q_factorial,
    q_pochhammer,
    scalar_q_product,
    vandermonde_sum,
)
from conftest import schoolbook_mul, seeded

F = PrimeField(101)
BIG = PrimeField(2**30 + 3)


def test_geometric_point_product_examples():
    assert geometric_point_product(F, 3, 2, 3) == 99
    rng = seeded("qs-gpp")
    for _ in range(10):
        alpha = rng.randrange(101)
        assert geometric_point_product(F, alpha, 0, 4) == \
            (alpha - 1) * pow(alpha, 3, 101) % 101
        assert geometric_point_product(F, alpha, rng.randrange(101), 0) == 1
        assert geometric_point_product(F, alpha, 1, 7) == F.pow(alpha - 1, 7)


def test_geometric_point_product_matches_naive():
    rng = seeded("qs-gpp-naive")
    for _ in range(100):
        alpha = rng.randrange(BIG.p)
        q = rng.randrange(BIG.p)
        n = rng.randrange(0, 3000)
        assert geometric_point_product(BIG, alpha, q, n) == \
            naive_geom_product(BIG, alpha, q, n), (alpha, q, n)


def test_alg1_examples():
    assert alg1_product(F, 3, 2, 4) == geometric_point_product(F, 3, 2, 4)
    assert alg1_product(F, 5, 7, 0) == 1
    rng = seeded("qs-alg1")
    for _ in range(5):
        alpha = rng.randrange(101)
        assert alg1_product(F, alpha, rng.randrange(101), 1) == (alpha - 1) % 101


def test_alg1_equals_fast_product_on_200_instances():
    rng = seeded("qs-alg1-vs-fast")
    for _ in range(200):
        alpha = rng.randrange(BIG.p)
        q = rng.randrange(BIG.p)
        n = rng.randrange(0, 2**14 + 1)
        assert alg1_product(BIG, alpha, q, n) == \
            geometric_point_product(BIG, alpha, q, n), (alpha, q, n)


def test_q_factorial_examples():
    assert q_factorial(F, 2, 3) == 21
    assert q_factorial(F, 0, 7) == 1
    assert q_factorial(F, 1, 5) == 19
    assert q_factorial(F, 2, 0) == 1


def test_q_factorial_matches_naive_brackets():
    rng = seeded("qs-fact")
    for _ in range(40):
        q = rng.randrange(BIG.p)
        n = rng.randrange(0, 800)
        expect = 1
        bracket = 0
        power = 1
        for _ in range(n):
            bracket = (bracket + power) % BIG.p  # [k]_q grows by q^{k-1}
            power = power * q % BIG.p
            expect = expect * bracket % BIG.p
        assert q_factorial(BIG, q, n) == expect, (q, n)


def test_q_factorial_matches_naive_brackets_across_cutoff():
    # the implementation switches products paths around n ~ 2048
    rng = seeded("qs-fact-cutoff")
    q = rng.randrange(2, BIG.p)
    marks = {2047, 2048, 2049, 2500}
    expect = 1
    bracket = 0
    power = 1
    for n in range(1, max(marks) + 1):
        bracket = (bracket + power) % BIG.p
        power = power * q % BIG.p
        expect = expect * bracket % BIG.p
        if n in marks:
            assert q_factorial(BIG, q, n) == expect, n


def test_q_pochhammer_examples():
    rng = seeded("qs-poch")
    assert q_pochhammer(F, 0, rng.randrange(101), rng.randrange(50)) == 1
    for n in (1, 2, 9):
        assert q_pochhammer(F, 3, 0, n) == 99
    assert q_pochhammer(F, 1, 2, 3) == 0
    assert q_pochhammer(F, 5, 7, 0) == 1


def test_q_pochhammer_matches_naive_fold():
    rng = seeded("qs-poch-naive")
    for _ in range(40):
        alpha = rng.randrange(BIG.p)
        q = rng.randrange(BIG.p)
        n = rng.randrange(0, 600)
        expect = 1
        power = 1
        for _ in range(n):
            expect = expect * (1 - alpha * power) % BIG.p
            power = power * q % BIG.p
        assert q_pochhammer(BIG, alpha, q, n) == expect, (alpha, q, n)


def test_q_pochhammer_matches_naive_fold_across_cutoff():
    rng = seeded("qs-poch-cutoff")
    alpha = rng.randrange(1, BIG.p)
    q = rng.randrange(2, BIG.p)
    marks = {2047, 2048, 2049, 2600}
    expect = 1
    power = 1
    for n in range(1, max(marks) + 1):
        expect = expect * (1 - alpha * power) % BIG.p
        power = power * q % BIG.p
        if n in marks:
            assert q_pochhammer(BIG, alpha, q, n) == expect, n


def test_q_binomial_examples():
    assert q_binomial(F, 4, 2, 2) == 35
    rng = seeded("qs-binom")
    for _ in range(10):
        n = rng.randrange(0, 30)
        q = rng.randrange(BIG.p)
        assert q_binomial(BIG, n, 0, q) == 1
    for q in (2, 3, 77):
        assert q_binomial(BIG, 5, 2, q) == q_binomial(BIG, 5, 3, q)


def test_q_binomial_error_cases():
    with pytest.raises(IndexOutOfRange):
        q_binomial(F, 3, 5, 2)
    # ord(10) = 4 mod 101, so [4]_10 = 0 lands in a denominator factorial.
    assert F.pow(10, 4) == 1
    with pytest.raises(NonInvertibleDenominator):
        q_binomial(F, 8, 4, 10)


def test_q_binomial_at_one_is_pascal():
    for n in range(21):
        for k in range(n + 1):
            assert q_binomial(F, n, k, 1) == math.comb(n, k) % 101, (n, k)


def test_binomial_theorem_coeff_examples():
    assert binomial_theorem_coeff(F, 2, 1, 2) == 3
    rng = seeded("qs-btc")
    for _ in range(5):
        q = rng.randrange(BIG.p)
        assert binomial_theorem_coeff(BIG, 7, 0, q) == 1
        assert binomial_theorem_coeff(BIG, 3, 3, q) == BIG.pow(q, 3)


def test_binomial_theorem_coeffs_match_expanded_product():
    rng = seeded("qs-btc-expand")
    for n in (1, 2, 5, 12):
        q = rng.randrange(2, BIG.p)
        poly = [1]
        power = 1
        for _ in range(n):
            poly = schoolbook_mul(BIG.p, poly, [1, power])
            power = power * q % BIG.p
        for j in range(n + 1):
            assert binomial_theorem_coeff(BIG, n, j, q) == poly[j], (n, j)


def test_vandermonde_examples():
    assert vandermonde_sum(F, 4, 2, 2) == 35
    rng = seeded("qs-vander")
    for _ in range(5):
        assert vandermonde_sum(BIG, rng.randrange(1, 40), 0, rng.randrange(BIG.p)) == 1
    assert vandermonde_sum(F, 6, 3, 0) == 1


def test_vandermonde_matches_explicit_sum():
    rng = seeded("qs-vander-sum")
    for _ in range(25):
        n = rng.randrange(0, 24)
        j = rng.randrange(0, n + 1) if n else 0
        q = rng.randrange(2, BIG.p)
        m = n - j
        total = 0
        for k in range(j + 1):
            term = BIG.pow(q, k * k)
            term = term * q_binomial(BIG, m, k, q) % BIG.p if k <= m else 0
            term = term * q_binomial(BIG, j, k, q) % BIG.p
            total = (total + term) % BIG.p
        assert vandermonde_sum(BIG, n, j, q) == total, (n, j, q)


def test_scalar_q_product_examples():
    ident = DensePoly.identity(F)
    assert scalar_q_product(ident, 2, 3) == 8
    rng = seeded("qs-sqp")
    for _ in range(20):
        alpha = rng.randrange(101)
        q = rng.randrange(101)
        n = rng.randrange(0, 200)
        c = DensePoly(F, [alpha, -1])
        assert scalar_q_product(c, q, n) == geometric_point_product(F, alpha, q, n)


def test_scalar_q_product_matches_naive_fold_at_1000():
    rng = seeded("qs-sqp-1000")
    coeffs = [rng.randrange(1, BIG.p) for _ in range(4)]
    c = DensePoly(BIG, coeffs)
    q = rng.randrange(2, BIG.p)
    expect = 1
    x = 1
    for _ in range(1000):
        expect = expect * c.evaluate(x) % BIG.p
        x = x * q % BIG.p
    assert scalar_q_product(c, q, 1000) == expect
    assert scalar_q_product(c, q, 1000, use_shortcut=False) == expect


def test_scalar_q_product_shortcut_with_small_order():
    field = PrimeField(11)
    rng = seeded("qs-sqp-unity")
    c = DensePoly(field, [rng.randrange(1, 11) for _ in range(3)])
    for n in (0, 1, 9, 10, 21, 1000):
        expect = 1
        x = 1
        for _ in range(n):
            expect = expect * c.evaluate(x) % 11
            x = x * 2 % 11
        assert scalar_q_product(c, 2, n) == expect, n
        assert scalar_q_product(c, 2, n, use_shortcut=False) == expect, n


def _truncated_euler_product(field, n, q, power=1):
    """Evaluate prod_{k>=1} (1-T^k)^power mod T^n at T=q, via integer series."""
    series = [0] * n
    series[0] = 1
    for k in range(1, n):
        for _ in range(power):
            # multiply by (1 - T^k) in place, truncated to length n
            for i in range(n - 1, k - 1, -1):
                series[i] = (series[i] - series[i - k]) % field.p
    total = 0
    for c in reversed(series):
        total = (total * q + c) % field.p
    return total


def test_pentagonal_examples():
    rng = seeded("qs-pent")
    assert euler_pentagonal_eval(F, 1, rng.randrange(101)) == 1
    assert euler_pentagonal_eval(F, 5, 2) == 96


def test_pentagonal_matches_truncated_product():
    rng = seeded("qs-pent-oracle")
    for n in (1, 2, 3, 6, 13, 40, 64):
        q = rng.randrange(F.p)
        assert euler_pentagonal_eval(F, n, q) == _truncated_euler_product(F, n, q), n


def test_cube_eta_examples():
    rng = seeded("qs-eta")
    assert cube_eta_eval(F, 1, rng.randrange(101)) == 1
    assert cube_eta_eval(F, 2, 2) == 96


def test_cube_eta_matches_truncated_cube_product():
    rng = seeded("qs-eta-oracle")
    for n in (1, 2, 3, 7, 20, 64):
        q = rng.randrange(F.p)
        assert cube_eta_eval(F, n, q) == _truncated_euler_product(F, n, q, power=3), n
