"""Named q-objects: geometric products, q-factorials, q-Pochhammer
symbols, Gaussian binomials, and the sparse pentagonal/eta truncations.

The heavy lifters reduce to one primitive: F(x) = prod_{i<N} (x - q^i)
evaluated at a point, computed in about sqrt(N) operations by splitting
the product into s blocks of s shifted linear factors and evaluating the
block polynomial along the geometric progression of block offsets.
"""

from __future__ import annotations

from math import isqrt

import numpy as np

from . import _fastops
from .errors import (
    IndexOutOfRange,
    NonInvertibleDenominator,
    ParameterDomain,
)
from .field import PrimeField
from .geom import chirp_eval, linear_qshift_product
from .matrix import PolyMatrix, matrix_q_factorial
from .poly import DensePoly, prod_of_evals

# below this length a plain product loop beats the sqrt(n) chirp path
# (measured break-even near 2048 for word-sized moduli)
_PLAIN_LOOP_CUTOFF = 2048


def _leftover_product(field: PrimeField, acc: int, alpha: int, q: int,
                      start: int, stop: int) -> int:
    """acc * prod_{i in [start, stop)} (alpha - q^i)."""
    p = field.p
    x = field.pow(q, start)
    for _ in range(stop - start):
        acc = acc * (alpha - x) % p
        x = x * q % p
    return acc


def geometric_point_product(field: PrimeField, alpha: int, q: int,
                            n: int) -> int:
    """F(alpha) = prod_{i<n} (alpha - q^i) in about sqrt(n) operations.

    Splits the range into s = isqrt(n) blocks: the block polynomial
    H(y) = prod_{k<s} (alpha - q^k y) is chirp-evaluated at y = q^{s*j}
    and the values are folded; the tail past s*s is folded naively.
    """
    p = field.p
    alpha = field.reduce(alpha)
    q = field.reduce(q)
    if n == 0:
        return 1
    if q == 0:
        return (alpha - 1) * field.pow(alpha, n - 1) % p
    if q == 1:
        return field.pow(alpha - 1, n)
    s = isqrt(n)
    if s <= 1:
        return _leftover_product(field, 1, alpha, q, 0, n)
    block = linear_qshift_product(field, alpha, q, s)
    values = chirp_eval(block, field.pow(q, s), s)
    if p < _fastops.NP_MODULUS_LIMIT:
        acc = _fastops.prod_mod(p, values)
    else:
        acc = 1
        for v in values:
            acc = acc * v % p
    return _leftover_product(field, acc, alpha, q, s * s, n)


def alg1_product(field: PrimeField, alpha: int, q: int, n: int) -> int:
    """Same value as geometric_point_product via the resultant route.

    Builds H(x) = prod_{k<s} (alpha - (q^s)^k x) and takes the product of
    its values over the roots 1, q, ..., q^{s-1} with generic multipoint
    evaluation (no chirp).  Reference and benchmark path.
    """
    p = field.p
    alpha = field.reduce(alpha)
    q = field.reduce(q)
    if n == 0:
        return 1
    if q == 0:
        return (alpha - 1) * field.pow(alpha, n - 1) % p
    if q == 1:
        return field.pow(alpha - 1, n)
    s = isqrt(n)
    if s <= 1:
        return _leftover_product(field, 1, alpha, q, 0, n)
    block = linear_qshift_product(field, alpha, field.pow(q, s), s)
    roots, _ = field.batch_powers(q, s)
    acc = prod_of_evals(roots, block)
    return _leftover_product(field, acc, alpha, q, s * s, n)


def q_factorial(field: PrimeField, q: int, n: int) -> int:
    """[n]_q! = prod_{k=1..n} (1 + q + ... + q^{k-1}) mod p.

    Fast path rewrites the product as r^n * F(1/q) with r = q/(1-q);
    q = 0 gives 1 and q = 1 degrades to the ordinary factorial.  Below
    the chirp machinery's break-even size the running bracket loop wins.
    """
    p = field.p
    q = field.reduce(q)
    if n == 0 or q == 0:
        return 1
    if 1 < q and n <= _PLAIN_LOOP_CUTOFF:
        acc = 1
        bracket = 1
        for _ in range(n):
            acc = acc * bracket % p
            bracket = (bracket * q + 1) % p
        return acc
    if q == 1:
        if p < _fastops.NP_MODULUS_LIMIT:
            acc = 1
            chunk = 1 << 16
            for lo in range(1, n + 1, chunk):
                hi = min(lo + chunk, n + 1)
                block = np.arange(lo, hi, dtype=np.int64) % p
                acc = acc * _fastops.prod_mod(p, block) % p
            return acc
        acc = 1
        for k in range(2, n + 1):
            acc = acc * k % p
        return acc
    ratio = q * field.inv(1 - q) % p
    return field.pow(ratio, n) * \
        geometric_point_product(field, field.inv(q), q, n) % p


def q_pochhammer(field: PrimeField, alpha: int, q: int, n: int) -> int:
    """(alpha; q)_n = prod_{k<n} (1 - alpha q^k) mod p."""
    p = field.p
    alpha = field.reduce(alpha)
    q = field.reduce(q)
    if n == 0 or alpha == 0:
        return 1
    if n <= _PLAIN_LOOP_CUTOFF:
        acc = 1
        t = alpha
        for _ in range(n):
            acc = acc * (1 - t) % p
            t = t * q % p
        return acc
    return field.pow(alpha, n) * \
        geometric_point_product(field, field.inv(alpha), q, n) % p


def q_binomial(field: PrimeField, n: int, k: int, q: int) -> int:
    """Gaussian coefficient [n]_q! / ([k]_q! [n-k]_q!) mod p."""
    if k > n:
        raise IndexOutOfRange(f"lower index {k} exceeds upper index {n}")
    num = q_factorial(field, q, n)
    den_k = q_factorial(field, q, k)
    den_nk = q_factorial(field, q, n - k)
    if den_k == 0 or den_nk == 0:
        raise NonInvertibleDenominator(
            "a q-factorial in the denominator vanishes mod p "
            "(q is a root of unity of order <= n)")
    return num * field.inv(den_k) % field.p * field.inv(den_nk) % field.p


def binomial_theorem_coeff(field: PrimeField, n: int, j: int, q: int) -> int:
    """Coefficient of x^j in prod_{k=1..n} (1 + q^{k-1} x)."""
    q = field.reduce(q)
    return q_binomial(field, n, j, q) * \
        field.pow(q, j * (j - 1) // 2) % field.p


def vandermonde_sum(field: PrimeField, n: int, j: int, q: int) -> int:
    """sum_k q^{k^2} C(n-j,k)_q C(j,k)_q, via its closed form C(n,j)_q."""
    return q_binomial(field, n, j, q)


def scalar_q_product(c: DensePoly, q: int, n: int, *,
                     use_shortcut: bool = True) -> int:
    """prod_{k<n} c(q^k), as the 1x1 matrix q-factorial."""
    m = PolyMatrix(c.field, [[c]])
    return matrix_q_factorial(m, q, n, use_shortcut=use_shortcut).rows[0][0]


def euler_pentagonal_eval(field: PrimeField, n: int, q: int) -> int:
    """The pentagonal-number truncation of prod (1 - q^i), mod p.

    B_n(q) = 1 + sum over i >= 1 of (-1)^i (q^{i(3i-1)/2} + q^{i(3i+1)/2}),
    keeping exactly the terms whose exponent is below n (each exponent is
    gated separately so the result matches the truncated product).
    Exponents and their powers are maintained incrementally.
    """
    if n < 1:
        raise ParameterDomain("truncation order must be >= 1")
    p = field.p
    q = field.reduce(q)
    acc = 1
    sign = -1
    i = 1
    g = 1          # i(3i-1)/2 at i = 1
    t = q          # q^g
    u = q          # q^i
    while g < n:
        term = t
        if g + i < n:  # the partner exponent i(3i+1)/2 = g + i
            term = (term + t * u) % p
        acc = (acc + sign * term) % p
        t = t * u % p * u % p * u % p * q % p  # exponent grows by 3i + 1
        u = u * q % p
        g += 3 * i + 1
        i += 1
        sign = -sign
    return acc % p


def cube_eta_eval(field: PrimeField, n: int, q: int) -> int:
    """Truncation of prod (1 - q^k)^3: sum of (-1)^j (2j+1) q^{C(j+1,2)}.

    Keeps the terms with triangular exponent below n; powers maintained
    incrementally (the exponent grows by j + 1 at step j).
    """
    if n < 1:
        raise ParameterDomain("truncation order must be >= 1")
    p = field.p
    q = field.reduce(q)
    acc = 0
    sign = 1
    j = 0
    tri = 0        # j(j+1)/2
    t = 1          # q^tri
    u = 1          # q^j
    while tri < n:
        acc = (acc + sign * (2 * j + 1) * t) % p
        u = u * q % p
        t = t * u % p
        tri += j + 1
        j += 1
        sign = -sign
    return acc % p
