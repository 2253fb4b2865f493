"""Arithmetic context for F_p, p an odd prime fitting in one machine word.

Field elements are plain Python ints in [0, p).  All arithmetic goes
through an explicit PrimeField context; there is no global modulus, so
several fields can coexist (multi-prime CRT, random cross-check primes).
Containers built on top (polynomials, matrices, rings) carry the context
and refuse to mix elements from different ones.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .errors import CompositeN, ContextMismatch, ParameterDomain, ZeroInversion

# Witness set making Miller-Rabin deterministic for all n < 3.3e24,
# comfortably past the 63-bit moduli this context accepts.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin primality test for word-size inputs."""
    if n < 2:
        return False
    for b in _MR_BASES:
        if n % b == 0:
            return n == b
    d = n - 1
    r = (d & -d).bit_length() - 1
    d >>= r
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class PrimeField:
    """The field F_p.  Immutable once constructed; safe to share."""

    __slots__ = ("p",)

    def __init__(self, p: int):
        if not isinstance(p, int):
            raise ParameterDomain(f"modulus must be an int, got {type(p).__name__}")
        if p == 2 or p.bit_length() > 63:
            raise ParameterDomain("modulus must be an odd prime fitting in 63 bits")
        if not is_prime(p):
            raise CompositeN(f"{p} is not prime")
        self.p = p

    # ------------------------------------------------------------ scalars

    def reduce(self, x) -> int:
        """Canonical residue of an int or Fraction."""
        if isinstance(x, Fraction):
            return self.mul(x.numerator % self.p, self.inv(x.denominator % self.p))
        return x % self.p

    def add(self, a: int, b: int) -> int:
        s = a + b
        return s - self.p if s >= self.p else s

    def sub(self, a: int, b: int) -> int:
        d = a - b
        return d + self.p if d < 0 else d

    def neg(self, a: int) -> int:
        return self.p - a if a else 0

    def mul(self, a: int, b: int) -> int:
        return a * b % self.p

    def pow(self, a: int, e: int) -> int:
        """a^e mod p by binary powering; 0^0 = 1; negative e inverts."""
        if e < 0:
            return pow(self.inv(a), -e, self.p)
        return pow(a, e, self.p)

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroInversion(f"0 has no inverse mod {self.p}")
        return pow(a, -1, self.p)

    def batch_powers(self, q: int, s: int) -> tuple[list[int], int | None]:
        """[q^0, ..., q^(s-1)] in s-1 multiplications.

        Also reports the smallest 1 <= k < s with q^k = 1, or None.  That
        index is the multiplicative order of q whenever it is below s and
        fuels the root-of-unity shortcut of the matrix q-factorial.
        """
        powers: list[int] = []
        order = None
        acc = 1
        p = self.p
        for k in range(s):
            powers.append(acc)
            if k and acc == 1 and order is None:
                order = k
            acc = acc * q % p
        return powers, order

    # ------------------------------------------------------------- misc

    def random_element(self, rng: random.Random) -> int:
        return rng.randrange(self.p)

    def random_unit(self, rng: random.Random) -> int:
        return rng.randrange(1, self.p)

    def check_same(self, other: "PrimeField") -> None:
        if self.p != other.p:
            raise ContextMismatch(f"mixing F_{self.p} with F_{other.p}")

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash((PrimeField, self.p))

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"
