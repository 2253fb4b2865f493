"""Exact term extraction over the rationals.

Products of N matrices (or scalars) with entries that grow to N^2-ish
bit size are folded by balanced binary splitting, so the large
multiplications happen between operands of comparable size and GMP's
subquadratic integer multiplication does the heavy lifting.  Factors are
produced lazily, one index at a time, which keeps peak memory at the
size of the answer rather than of the factor list.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable

from gmpy2 import mpq, mpz

from .errors import (DegenerateLeading, DimensionMismatch, ParameterDomain,
                     SingularLeading)
from .holonomic import QRecurrence


class RingMatrix:
    """Small square matrix over any commutative ring (ints, mpz, mpq...).

    Just enough structure for balanced product folds: multiplication,
    identity, vector application, equality.
    """

    __slots__ = ("rows",)

    def __init__(self, rows):
        rows = [list(r) for r in rows]
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise ParameterDomain("matrix must be square and non-empty")
        self.rows = rows

    @classmethod
    def identity(cls, n: int, one=1, zero=0) -> "RingMatrix":
        return cls([[one if i == j else zero for j in range(n)]
                    for i in range(n)])

    def __mul__(self, other):
        if not isinstance(other, RingMatrix):
            return NotImplemented
        if len(self.rows) != len(other.rows):
            raise DimensionMismatch(
                f"cannot multiply {len(self.rows)}x{len(self.rows)} by "
                f"{len(other.rows)}x{len(other.rows)}")
        cols = list(zip(*other.rows))
        return RingMatrix([[sum(a * b for a, b in zip(row, col))
                            for col in cols] for row in self.rows])

    def apply(self, vector):
        return [sum(a * b for a, b in zip(row, vector)) for row in self.rows]

    def __eq__(self, other):
        return isinstance(other, RingMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(tuple(tuple(r) for r in self.rows))

    def __repr__(self):
        return f"RingMatrix({self.rows!r})"


def binary_split_product(factors: Callable[[int], object], count: int,
                         identity=1):
    """factors(count) * ... * factors(2) * factors(1), split down the middle.

    Factor indices are 1-based and each factor is requested exactly once,
    when its leaf of the recursion is reached.  Later factors multiply
    from the left.  count = 0 gives the identity.
    """
    if count < 0:
        raise ParameterDomain("factor count must be non-negative")
    if count == 0:
        return identity

    def fold(lo: int, hi: int):
        if lo == hi:
            return factors(lo)
        mid = lo + (hi - lo + 1) // 2 - 1
        return fold(mid + 1, hi) * fold(lo, mid)

    return fold(1, count)


def _eval_coeffs(coeffs, y):
    if not coeffs:
        return 0
    acc = coeffs[-1]
    for c in reversed(coeffs[:-1]):
        acc = acc * y + c
    return acc


def _specialize_exact(rec: QRecurrence, q: Fraction, integral: bool):
    """Coefficient polynomials in y = q^n with x = q substituted exactly.

    Returns one coefficient list per recurrence coefficient, with entries
    mpz when everything in sight is an integer and mpq otherwise.
    """
    cast = mpz if integral else mpq
    polys = []
    for monomials in rec.coeffs:
        dmax = max((dy for _, dy, _ in monomials), default=0)
        acc = [cast(0)] * (dmax + 1)
        for dx, dy, c in monomials:
            if integral:
                acc[dy] += mpz(c.numerator) * mpz(q.numerator) ** dx
            else:
                acc[dy] += mpq(c.numerator, c.denominator) * mpq(q) ** dx
        while acc and acc[-1] == 0:
            acc.pop()
        polys.append(acc)
    if not polys[-1]:
        raise DegenerateLeading(
            "leading coefficient vanishes identically at this q")
    return polys


def exact_nth_term(rec: QRecurrence, q, n: int) -> Fraction:
    """u_n as an exact rational, by binary splitting of the companion product.

    When q, all coefficients and all initial values are integers the fold
    runs over mpz and performs a single exact division at the end;
    otherwise it runs over mpq directly.
    """
    if n < 0:
        raise ParameterDomain("term index must be non-negative")
    q = Fraction(q)
    if n < rec.order:
        return Fraction(rec.initials[n])

    r = rec.order
    count = n - r + 1
    integral = (q.denominator == 1
                and all(c.denominator == 1
                        for poly in rec.coeffs for _, _, c in poly)
                and all(u.denominator == 1 for u in rec.initials))
    cast = mpz if integral else mpq
    qv = mpz(q.numerator) if integral else mpq(q)
    one, zero = cast(1), cast(0)
    polys = _specialize_exact(rec, q, integral)
    lead = polys[r]

    def lead_at(i: int):
        return _eval_coeffs(lead, qv ** (i - 1))

    den = binary_split_product(lead_at, count, identity=one)
    if den == 0:
        y = cast(1)
        for k in range(count):
            if _eval_coeffs(lead, y) == 0:
                raise SingularLeading(k)
            y = y * qv
        raise RuntimeError("vanishing leading factor was not located")

    initial_vector = [cast(u.numerator) if integral else mpq(u)
                      for u in reversed(rec.initials)]

    if r == 1:
        def scalar_at(i: int):
            return -_eval_coeffs(polys[0], qv ** (i - 1))

        num = binary_split_product(scalar_at, count,
                                   identity=one) * initial_vector[0]
    else:
        def companion_at(i: int) -> RingMatrix:
            y = qv ** (i - 1)
            lv = _eval_coeffs(lead, y)
            top = [-_eval_coeffs(polys[r - 1 - j], y) for j in range(r)]
            rows = [top]
            for i2 in range(1, r):
                rows.append([lv if j == i2 - 1 else zero for j in range(r)])
            return RingMatrix(rows)

        fold = binary_split_product(companion_at, count,
                                    identity=RingMatrix.identity(r, one, zero))
        num = sum(a * b for a, b in zip(fold.rows[0], initial_vector))

    if integral:
        return Fraction(int(num), int(den))
    val = num / den
    return Fraction(int(val.numerator), int(val.denominator))
