"""Polynomial matrices and the baby-step/giant-step matrix q-factorial."""

import pytest

from qholonomic import (
    DensePoly,
    DimensionMismatch,
    PolyMatrix,
    PrimeField,
    ScalarMatrix,
    baby_step_product,
    mat_eval,
    mat_mul,
    matrix_q_factorial,
    naive_matrix_fold,
)
from conftest import random_poly, schoolbook_mul, seeded

F = PrimeField(101)
BIG = PrimeField(2**30 + 3)
HUGE = PrimeField(2**61 - 1)


def random_matrix(rng, field, n, degree):
    return PolyMatrix(field, [[random_poly(rng, field, rng.randint(0, degree)).coeffs
                               for _ in range(n)] for _ in range(n)])


def test_mat_mul_identity_and_1x1():
    rng = seeded("matrix-mul-id")
    m = random_matrix(rng, F, 3, 4)
    ident = PolyMatrix.identity(F, 3)
    left = mat_mul(ident, m)
    assert [[e.coeffs for e in row] for row in left.entries] == \
        [[e.coeffs for e in row] for row in m.entries]
    a = random_poly(rng, F, 5)
    b = random_poly(rng, F, 3)
    prod = mat_mul(PolyMatrix(F, [[a.coeffs]]), PolyMatrix(F, [[b.coeffs]]))
    assert prod.entries[0][0].coeffs == (a * b).coeffs


def test_mat_mul_matches_schoolbook_3x3():
    rng = seeded("matrix-mul-3x3")
    a = random_matrix(rng, BIG, 3, 8)
    b = random_matrix(rng, BIG, 3, 8)
    prod = mat_mul(a, b)
    for i in range(3):
        for j in range(3):
            acc = []
            for k in range(3):
                term = schoolbook_mul(BIG.p, a.entries[i][k].coeffs, b.entries[k][j].coeffs)
                width = max(len(acc), len(term))
                acc = [(x + y) % BIG.p for x, y in
                       zip(acc + [0] * (width - len(acc)), term + [0] * (width - len(term)))]
                while acc and acc[-1] == 0:
                    acc.pop()
            assert prod.entries[i][j].coeffs == acc


def test_mat_mul_rejects_size_mismatch():
    with pytest.raises(DimensionMismatch):
        mat_mul(PolyMatrix.identity(F, 2), PolyMatrix.identity(F, 3))


def test_mat_eval():
    rng = seeded("matrix-eval")
    assert mat_eval(PolyMatrix.identity(F, 3), 77).rows == ScalarMatrix.identity(F, 3).rows
    const = PolyMatrix(F, [[[5], [7]], [[0], [9]]])
    assert mat_eval(const, 42).rows == [[5, 7], [0, 9]]
    m = random_matrix(rng, F, 2, 6)
    x = rng.randrange(101)
    assert mat_eval(m, x).rows == [[e.evaluate(x) for e in row] for row in m.entries]


def test_baby_step_examples():
    x_entry = PolyMatrix(F, [[[0, 1]]])
    assert baby_step_product(x_entry, 2, 1).entries[0][0].coeffs == [0, 1]
    assert baby_step_product(x_entry, 2, 2).entries[0][0].coeffs == [0, 0, 2]


def test_baby_step_matches_scale_arg_fold():
    rng = seeded("matrix-baby")
    for s in (1, 2, 3, 8, 9):
        m = random_matrix(rng, BIG, 2, 2)
        q = rng.randrange(2, BIG.p)
        expect = m
        power = 1
        for _ in range(s - 1):
            power = power * q % BIG.p
            expect = mat_mul(m.scale_arg(power), expect)
        got = baby_step_product(m, q, s)
        assert [[e.coeffs for e in row] for row in got.entries] == \
            [[e.coeffs for e in row] for row in expect.entries]


def test_q_factorial_examples():
    rng = seeded("matrix-qfact-ex")
    m = random_matrix(rng, F, 2, 3)
    assert matrix_q_factorial(m, 7, 0).rows == ScalarMatrix.identity(F, 2).rows
    assert matrix_q_factorial(m, 7, 1).rows == mat_eval(m, 1).rows
    x_entry = PolyMatrix(F, [[[0, 1]]])
    assert matrix_q_factorial(x_entry, 2, 5).rows == [[14]]


def test_q_factorial_equals_naive_fold_exhaustively_small():
    rng = seeded("matrix-qfact-small")
    for n_dim, deg in [(1, 3), (2, 2), (3, 1)]:
        m = random_matrix(rng, F, n_dim, deg)
        q = rng.randrange(2, 101)
        for big_n in range(97):
            assert matrix_q_factorial(m, q, big_n).rows == \
                naive_matrix_fold(m, q, big_n).rows, (n_dim, deg, big_n)


def test_q_factorial_equals_naive_fold_structured_sample():
    rng = seeded("matrix-qfact-sample")
    sizes = [97, 128, 255, 256, 257, 1000, 1024, 2047, 4096]
    for n_dim in (2, 3):
        m = random_matrix(rng, BIG, n_dim, 2)
        q = rng.randrange(2, BIG.p)
        for big_n in sizes:
            assert matrix_q_factorial(m, q, big_n).rows == \
                naive_matrix_fold(m, q, big_n).rows, (n_dim, big_n)


def test_q_factorial_degenerate_ratios():
    rng = seeded("matrix-qfact-degenerate")
    m = random_matrix(rng, F, 2, 2)
    for q in (0, 1):
        for big_n in (0, 1, 2, 7, 40):
            assert matrix_q_factorial(m, q, big_n).rows == \
                naive_matrix_fold(m, q, big_n).rows, (q, big_n)


def test_q_factorial_constant_matrix_uses_powering_semantics():
    const = PolyMatrix(F, [[[2, 0], [1]], [[0], [3]]])
    for big_n in (0, 1, 5, 33):
        assert matrix_q_factorial(const, 5, big_n).rows == \
            naive_matrix_fold(const, 5, big_n).rows


def test_chunk_composition_invariant():
    rng = seeded("matrix-chunk")
    m = random_matrix(rng, BIG, 2, 2)
    q = rng.randrange(2, BIG.p)
    big_n = 500
    whole = matrix_q_factorial(m, q, big_n)
    for n1 in (0, 1, 137, 250, 499, 500):
        shifted = m.scale_arg(BIG.pow(q, n1))
        upper = matrix_q_factorial(shifted, q, big_n - n1)
        lower = matrix_q_factorial(m, q, n1)
        assert (upper * lower).rows == whole.rows, n1


def test_factor_order_is_new_on_the_left():
    # Noncommutative 2x2 check at N=2: the product must be M(q) * M(1).
    m = PolyMatrix(F, [[[0, 1], [1]], [[0], [1]]])
    q = 3
    expect = mat_eval(m, 3) * mat_eval(m, 1)
    swapped = mat_eval(m, 1) * mat_eval(m, 3)
    got = matrix_q_factorial(m, q, 2)
    assert got.rows == expect.rows
    assert got.rows != swapped.rows


def test_root_of_unity_shortcut_agrees_with_generic():
    # ord(2) = 10 mod 11; exercise N around multiples of the order.
    field = PrimeField(11)
    rng = seeded("matrix-unity")
    m = random_matrix(rng, field, 2, 2)
    for big_n in (9, 10, 11, 19, 20, 21, 29, 30, 31, 100, 1001):
        fast = matrix_q_factorial(m, 2, big_n, use_shortcut=True)
        generic = matrix_q_factorial(m, 2, big_n, use_shortcut=False)
        naive = naive_matrix_fold(m, 2, big_n)
        assert fast.rows == naive.rows, big_n
        assert generic.rows == naive.rows, big_n


def test_q_factorial_big_modulus_python_path():
    rng = seeded("matrix-huge")
    m = random_matrix(rng, HUGE, 2, 2)
    q = rng.randrange(2, HUGE.p)
    for big_n in (5, 64, 300):
        assert matrix_q_factorial(m, q, big_n).rows == naive_matrix_fold(m, q, big_n).rows


def test_scalar_matrix_power_and_apply():
    m = ScalarMatrix(F, [[1, 1], [0, 1]])
    assert m.power(5).rows == [[1, 5], [0, 1]]
    assert m.power(0).rows == ScalarMatrix.identity(F, 2).rows
    assert m.apply([3, 4]) == [7, 4]
