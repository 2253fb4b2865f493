"""Exact rational engine: binary splitting and exact sequence terms."""

from fractions import Fraction

import pytest

from qholonomic import (
    DimensionMismatch,
    ParameterDomain,
    PrimeField,
    RingMatrix,
    SingularLeading,
    binary_split_product,
    exact_nth_term,
    from_recurrence,
    nth_term,
    primes_up_to,
)
from conftest import random_recurrence, seeded
from test_holonomic import GEO_REC, QFACT_REC, SINGULAR_REC

# theta-style order-2 recurrence for S_N = sum_{n<N} q^{n^2}:
# c_0 = x y^2, c_1 = -1 - x y^2, c_2 = 1 (the a=1, b=0 instance)
THETA_REC = from_recurrence(
    2, [[(1, 2, 1)], [(0, 0, -1), (1, 2, -1)], [(0, 0, 1)]], [0, 1])


def test_binary_split_integers():
    values = [1, 2, 3, 4, 5]
    assert binary_split_product(lambda i: values[i - 1], 5) == 120
    assert binary_split_product(lambda i: values[i - 1], 0) == 1
    assert binary_split_product(lambda i: 7, 0, identity=1) == 1


def test_binary_split_order_sensitivity():
    mats = {1: RingMatrix([[1, 1], [0, 1]]), 2: RingMatrix([[1, 0], [1, 1]])}
    result = binary_split_product(lambda i: mats[i], 2,
                                  identity=RingMatrix.identity(2))
    assert result.rows == [[1, 1], [1, 2]]


def test_binary_split_matches_left_fold():
    rng = seeded("exact-fold")
    for length in (1, 2, 3, 7, 16, 33, 64):
        mats = [RingMatrix([[Fraction(rng.randint(-9, 9), rng.randint(1, 9)),
                             Fraction(rng.randint(-9, 9))],
                            [Fraction(rng.randint(-9, 9)), Fraction(rng.randint(-9, 9))]])
                for _ in range(length)]
        expect = RingMatrix.identity(2, one=Fraction(1), zero=Fraction(0))
        for m in mats:
            expect = m * expect
        got = binary_split_product(lambda i: mats[i - 1], length,
                                   identity=RingMatrix.identity(2, one=Fraction(1),
                                                                zero=Fraction(0)))
        assert got.rows == expect.rows, length


def test_ring_matrix_shape_checks():
    with pytest.raises(ParameterDomain):
        RingMatrix([[1, 2]])
    with pytest.raises(DimensionMismatch):
        RingMatrix([[1, 2], [3, 4]]) * RingMatrix.identity(3)


def test_exact_nth_term_examples():
    assert exact_nth_term(QFACT_REC, 2, 4) == 315
    assert exact_nth_term(QFACT_REC, Fraction(1, 2), 2) == Fraction(3, 2)
    assert exact_nth_term(THETA_REC, 3, 3) == 85


def test_exact_theta_matches_direct_summation():
    for q in (2, 3, Fraction(2, 3), Fraction(-3, 5)):
        for n in range(8):
            direct = sum(Fraction(q) ** (k * k) for k in range(n))
            assert exact_nth_term(THETA_REC, q, n) == direct, (q, n)


def test_exact_qfactorial_small_table():
    # [n]_q! over a spread of integer and rational q, against a bracket loop.
    for q in (2, 3, 10, Fraction(1, 2), Fraction(-2, 7)):
        fact = Fraction(1)
        for n in range(12):
            assert exact_nth_term(QFACT_REC, q, n) == fact, (q, n)
            fact *= sum(Fraction(q) ** i for i in range(n + 1))


def test_exact_geometric_powers():
    for q in (2, Fraction(3, 4)):
        for n in (0, 1, 5, 40):
            assert exact_nth_term(GEO_REC, q, n) == Fraction(q) ** (n * (n - 1) // 2)


def test_exact_fibonacci_style_constant_coefficients():
    rec = from_recurrence(2, [[(0, 0, 1)], [(0, 0, 1)], [(0, 0, -1)]], [0, 1])
    # c_0 u_n + c_1 u_{n+1} - u_{n+2} = 0 -> classic Fibonacci numbers
    a, b = 0, 1
    for n in range(2, 30):
        a, b = b, a + b
        assert exact_nth_term(rec, 5, n) == b


def test_exact_rational_initials_and_coefficients():
    rec = from_recurrence(
        2,
        [[(0, 0, Fraction(1, 3))], [(1, 1, 1), (0, 0, Fraction(-1, 2))], [(0, 0, 1)]],
        [Fraction(2, 5), Fraction(-1, 7)])
    q = Fraction(3, 2)
    window = [Fraction(2, 5), Fraction(-1, 7)]
    y = Fraction(1)
    for n in range(2, 20):
        nxt = -(Fraction(1, 3) * window[0] + (q * y - Fraction(1, 2)) * window[1])
        assert exact_nth_term(rec, q, n) == nxt, n
        window = [window[1], nxt]
        y *= q


def test_exact_singular_leading_is_reported():
    with pytest.raises(SingularLeading) as info:
        exact_nth_term(SINGULAR_REC, 2, 5)
    assert info.value.index == 2
    assert exact_nth_term(SINGULAR_REC, 2, 2) == Fraction(1, 6)


def test_exact_bit_length_bounds():
    for n in (16, 64, 256):
        value = exact_nth_term(QFACT_REC, 2, n)
        assert value.denominator == 1
        bits = value.numerator.bit_length()
        low = (2 ** (n * (n - 1) // 2)).bit_length()
        high = (2 ** (n * (n + 1) // 2)).bit_length()
        assert low < bits < high, n


def test_exact_reduces_to_prime_field_paths():
    rng = seeded("exact-modp")
    primes = [p for p in primes_up_to(100000) if p > 1000]
    checked = 0
    while checked < 50:
        rec = random_recurrence(rng, 3, 2, coeff_bound=9)
        q = rng.choice([rng.randint(2, 30), Fraction(rng.randint(1, 9), rng.randint(2, 9))])
        n = rng.randrange(0, 60)
        try:
            value = exact_nth_term(rec, q, n)
        except SingularLeading:
            continue
        for p in rng.sample(primes, 3):
            field = PrimeField(p)
            if value.denominator % p == 0:
                continue  # the invariant only covers primes away from denominators
            expect = value.numerator * field.inv(value.denominator % p) % p
            try:
                got = nth_term(rec, field, field.reduce(q), n)
            except SingularLeading:
                continue  # a cleared-denominator factor vanished mod this prime
            assert got == expect, (q, n, p)
        checked += 1
