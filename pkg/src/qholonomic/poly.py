"""Dense univariate polynomial arithmetic over a prime field.

Coefficients are stored low-degree-first as plain ints in [0, p), with
trailing zeros trimmed; the zero polynomial is the empty list and reports
degree -1 (standing in for "minus infinity").

Multiplication strategy: schoolbook for small operands, a shift-and-add
pass when one operand is very short, and Kronecker substitution through
big-integer multiplication for everything else.  The Kronecker route packs
each coefficient into a fixed-width little-endian slot, multiplies the two
packed integers with gmpy2, and unpacks the slots mod p; it gives
quasi-linear behaviour for any word-size modulus without per-prime setup.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np
from gmpy2 import mpz

from . import _fastops
from .errors import ContextMismatch, DegenerateLeading, ZeroInversion
from .field import PrimeField

# Degree (of the larger operand) at or below which schoolbook wins for
# balanced products; tuned on this interpreter, kept deliberately small.
SCHOOLBOOK_THRESHOLD = 32

_SHORT_OPERAND = 4  # one side at most this long -> shift-and-add pass


# ---------------------------------------------------------------------------
# raw coefficient-list kernels (no trimming, no wrapping)
# ---------------------------------------------------------------------------

def _schoolbook(p: int, a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return [v % p for v in out]


def _short_by_long(p: int, short: Sequence[int], long: Sequence[int]) -> list[int]:
    bv = np.asarray(long, dtype=np.int64)
    out = np.zeros(len(short) + len(long) - 1, dtype=np.int64)
    for i, c in enumerate(short):
        if c:
            out[i:i + len(long)] += bv * c % p
    return (out % p).tolist()


def _slot_bytes(p: int, la: int, lb: int) -> int:
    bound = min(la, lb) * (p - 1) * (p - 1)
    return -(-bound.bit_length() // 16) * 2  # round up to whole 16-bit words


def _kron_np(p: int, a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Kronecker multiply, numpy pack/unpack; requires p < 2**31."""
    la, lb = len(a), len(b)
    width = _slot_bytes(p, la, lb)
    nb = min(8, width)

    packed_a = np.zeros((la, width), dtype=np.uint8)
    packed_a[:, :nb] = np.asarray(a, dtype="<i8").view(np.uint8).reshape(la, 8)[:, :nb]
    packed_b = np.zeros((lb, width), dtype=np.uint8)
    packed_b[:, :nb] = np.asarray(b, dtype="<i8").view(np.uint8).reshape(lb, 8)[:, :nb]

    prod = mpz.from_bytes(packed_a.tobytes(), "little") \
        * mpz.from_bytes(packed_b.tobytes(), "little")

    lc = la + lb - 1
    raw = prod.to_bytes(lc * width, "little")
    words = np.frombuffer(raw, dtype="<u2").reshape(lc, width // 2).astype(np.int64)
    # sum of (width/2) terms each < 2**16 * p stays well inside int64
    weights = _fastops.power_table(p, (1 << 16) % p, width // 2)
    return (words @ weights % p).tolist()


def _kron_int(p: int, a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Kronecker multiply with pure-int packing (any word-size p)."""
    la, lb = len(a), len(b)
    width = _slot_bytes(p, la, lb)
    ia = int.from_bytes(b"".join(c.to_bytes(width, "little") for c in a), "little")
    ib = int.from_bytes(b"".join(c.to_bytes(width, "little") for c in b), "little")
    prod = mpz(ia) * mpz(ib)
    lc = la + lb - 1
    raw = prod.to_bytes(lc * width, "little")
    return [
        int.from_bytes(raw[i * width:(i + 1) * width], "little") % p
        for i in range(lc)
    ]


def mul_coeffs(p: int, a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Product of two coefficient lists mod p, trimmed."""
    la, lb = len(a), len(b)
    if la == 0 or lb == 0:
        return []
    if la * lb <= 64 or p >= _fastops.NP_MODULUS_LIMIT and la * lb <= 4096:
        out = _schoolbook(p, a, b)
    elif min(la, lb) <= _SHORT_OPERAND and p < _fastops.NP_MODULUS_LIMIT:
        out = _short_by_long(p, a, b) if la <= lb else _short_by_long(p, b, a)
    elif max(la, lb) <= SCHOOLBOOK_THRESHOLD + 1:
        out = _schoolbook(p, a, b)
    elif p < _fastops.NP_MODULUS_LIMIT:
        out = _kron_np(p, a, b)
    else:
        out = _kron_int(p, a, b)
    return trim(out)


def trim(coeffs: list[int]) -> list[int]:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def add_coeffs(p: int, a: Sequence[int], b: Sequence[int]) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % p
    return trim(out)


def sub_coeffs(p: int, a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = list(a) + [0] * (len(b) - len(a))
    for i, c in enumerate(b):
        out[i] = (out[i] - c) % p
    return trim(out)


def mul_trunc(p: int, a: Sequence[int], b: Sequence[int], k: int) -> list[int]:
    """First k coefficients of a*b (untrimmed length <= k)."""
    out = mul_coeffs(p, a[:k], b[:k])
    return trim(out[:k])


def eval_coeffs(p: int, coeffs: Sequence[int], x: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * x + c) % p
    return acc


# ---------------------------------------------------------------------------
# series inversion and Euclidean division
# ---------------------------------------------------------------------------

def inverse_series(field: PrimeField, coeffs: Sequence[int], k: int) -> list[int]:
    """First k coefficients of 1/f for f with invertible constant term.

    Newton iteration g <- g*(2 - f*g), doubling the precision each round.
    """
    if not coeffs or coeffs[0] % field.p == 0:
        raise ZeroInversion("power series has no inverse: constant term is zero")
    p = field.p
    g = [field.inv(coeffs[0])]
    m = 1
    while m < k:
        m = min(2 * m, k)
        t = mul_trunc(p, coeffs[:m], g, m)
        t = [(-c) % p for c in t] + [0] * (m - len(t))
        t[0] = (t[0] + 2) % p
        g = mul_trunc(p, g, trim(t), m)
    return g + [0] * (k - len(g))


def _classic_divmod(p: int, a: Sequence[int], b: Sequence[int],
                    inv_lead: int) -> tuple[list[int], list[int]]:
    db = len(b) - 1
    r = list(a)
    q = [0] * (len(a) - db)
    for i in range(len(q) - 1, -1, -1):
        c = r[i + db] * inv_lead % p
        q[i] = c
        if c:
            for j in range(db + 1):
                r[i + j] = (r[i + j] - c * b[j]) % p
    return trim(q), trim(r[:db])


def divmod_coeffs(field: PrimeField, a: Sequence[int], b: Sequence[int],
                  rev_inv: Sequence[int] | None = None
                  ) -> tuple[list[int], list[int]]:
    """Quotient and remainder of a by b.

    When `rev_inv` is supplied it must hold at least deg(a)-deg(b)+1
    initial coefficients of the inverse of b reversed; this is what the
    subproduct tree caches so repeated reductions skip the Newton step.
    """
    if not b:
        raise DegenerateLeading("division by the zero polynomial")
    p = field.p
    a = trim(list(a))
    da, db = len(a) - 1, len(b) - 1
    if da < db:
        return [], a
    n = da - db + 1
    if rev_inv is None and (db <= 16 or n <= 16):
        return _classic_divmod(p, a, b, field.inv(b[-1]))
    if rev_inv is None:
        rev_inv = inverse_series(field, list(reversed(b)), n)
    qrev = mul_trunc(p, list(reversed(a)), list(rev_inv)[:n], n)
    qrev = list(qrev) + [0] * (n - len(qrev))
    q = trim(list(reversed(qrev)))
    qb = mul_coeffs(p, q, b) if q else []
    r = sub_coeffs(p, a[:db], qb[:db])
    return q, r


# ---------------------------------------------------------------------------
# DensePoly wrapper
# ---------------------------------------------------------------------------

class DensePoly:
    """Immutable dense polynomial over a PrimeField."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: PrimeField, coeffs: Iterable[int] = ()):
        self.field = field
        self.coeffs = trim([field.reduce(c) for c in coeffs])

    @classmethod
    def _raw(cls, field: PrimeField, coeffs: list[int]) -> "DensePoly":
        """Wrap already-reduced, already-trimmed coefficients (no copy)."""
        out = object.__new__(cls)
        out.field = field
        out.coeffs = coeffs
        return out

    @classmethod
    def constant(cls, field: PrimeField, c: int) -> "DensePoly":
        return cls(field, [c])

    @classmethod
    def identity(cls, field: PrimeField) -> "DensePoly":
        """The polynomial x."""
        return cls._raw(field, [0, 1])

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def constant_value(self) -> int:
        return self.coeffs[0] if self.coeffs else 0

    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def coeff(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def _check(self, other: "DensePoly") -> None:
        if self.field != other.field:
            raise ContextMismatch(
                "polynomials belong to different prime fields: "
                f"p={self.field.p} vs p={other.field.p}"
            )

    def __add__(self, other: "DensePoly") -> "DensePoly":
        self._check(other)
        return DensePoly._raw(self.field,
                              add_coeffs(self.field.p, self.coeffs, other.coeffs))

    def __sub__(self, other: "DensePoly") -> "DensePoly":
        self._check(other)
        return DensePoly._raw(self.field,
                              sub_coeffs(self.field.p, self.coeffs, other.coeffs))

    def __neg__(self) -> "DensePoly":
        p = self.field.p
        return DensePoly._raw(self.field, [(-c) % p for c in self.coeffs])

    def __mul__(self, other: "DensePoly") -> "DensePoly":
        self._check(other)
        return DensePoly._raw(self.field,
                              mul_coeffs(self.field.p, self.coeffs, other.coeffs))

    def scale(self, c: int) -> "DensePoly":
        c = self.field.reduce(c)
        if c == 0:
            return DensePoly._raw(self.field, [])
        p = self.field.p
        return DensePoly._raw(self.field, trim([v * c % p for v in self.coeffs]))

    def shift_degree(self, k: int) -> "DensePoly":
        """Multiply by x^k."""
        if self.is_zero():
            return self
        return DensePoly._raw(self.field, [0] * k + self.coeffs)

    def __divmod__(self, other: "DensePoly") -> tuple["DensePoly", "DensePoly"]:
        self._check(other)
        q, r = divmod_coeffs(self.field, self.coeffs, other.coeffs)
        return DensePoly._raw(self.field, q), DensePoly._raw(self.field, r)

    def __mod__(self, other: "DensePoly") -> "DensePoly":
        return divmod(self, other)[1]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DensePoly):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.field, tuple(self.coeffs)))

    def __call__(self, x: int) -> int:
        return self.evaluate(x)

    def evaluate(self, x: int) -> int:
        """Value at the point x, by Horner's rule."""
        return eval_coeffs(self.field.p, self.coeffs, self.field.reduce(x))

    def scale_arg(self, c: int) -> "DensePoly":
        """The polynomial f(c*x)."""
        p = self.field.p
        c = self.field.reduce(c)
        n = len(self.coeffs)
        if n == 0 or c == 1:
            return self
        if p < _fastops.NP_MODULUS_LIMIT:
            pw = _fastops.power_table(p, c, n)
            arr = np.asarray(self.coeffs, dtype=np.int64) * pw % p
            return DensePoly._raw(self.field, trim(arr.tolist()))
        out, cp = [], 1
        for a in self.coeffs:
            out.append(a * cp % p)
            cp = cp * c % p
        return DensePoly._raw(self.field, trim(out))

    def __repr__(self) -> str:
        return f"DensePoly(p={self.field.p}, coeffs={self.coeffs})"


# ---------------------------------------------------------------------------
# subproduct tree and multipoint evaluation
# ---------------------------------------------------------------------------

class SubproductTree:
    """Binary tree of products of (x - u_i), for multipoint evaluation.

    Adjacent nodes are paired level by level; an odd node is promoted
    unchanged, so point counts need not be powers of two.  Newton inverses
    of the reversed node polynomials are cached lazily, which makes
    repeated `evaluate` calls on the same tree cheap.
    """

    __slots__ = ("field", "points", "levels", "_inv")

    def __init__(self, field: PrimeField, points: Sequence[int]):
        self.field = field
        p = field.p
        self.points = [field.reduce(u) for u in points]
        cur: list[list[int]] = [[(p - u) % p, 1] for u in self.points]
        levels = [cur]
        while len(cur) > 1:
            nxt = []
            for i in range(0, len(cur) - 1, 2):
                nxt.append(mul_coeffs(p, cur[i], cur[i + 1]))
            if len(cur) & 1:
                nxt.append(cur[-1])
            levels.append(nxt)
            cur = nxt
        self.levels = levels
        self._inv: list[list[list[int] | None]] = [
            [None] * len(level) for level in levels
        ]

    @property
    def root(self) -> list[int]:
        return self.levels[-1][0]

    def _node_inverse(self, level: int, i: int, n: int) -> list[int]:
        cached = self._inv[level][i]
        if cached is None or len(cached) < n:
            cached = inverse_series(
                self.field, list(reversed(self.levels[level][i])), n)
            self._inv[level][i] = cached
        return cached

    def evaluate(self, poly: DensePoly | Sequence[int]) -> list[int]:
        """Values of the polynomial at every tree point, in point order."""
        coeffs = poly.coeffs if isinstance(poly, DensePoly) else trim(list(poly))
        field = self.field
        top = len(self.levels) - 1
        root = self.root
        if len(coeffs) - 1 >= len(root) - 1:
            n = len(coeffs) - len(root) + 1
            _, rem = divmod_coeffs(field, coeffs, root,
                                   self._node_inverse(top, 0, n))
        else:
            rem = list(coeffs)
        rems = [rem]
        for level in range(top, 0, -1):
            child_level = self.levels[level - 1]
            nxt: list[list[int]] = []
            for i, r in enumerate(rems):
                left, right = 2 * i, 2 * i + 1
                if right >= len(child_level):
                    nxt.append(r)  # promoted node: same polynomial below
                    continue
                for c in (left, right):
                    divisor = child_level[c]
                    if len(r) < len(divisor):
                        nxt.append(list(r))
                        continue
                    db = len(divisor) - 1
                    n = len(r) - db
                    if db <= 16 or n <= 16:
                        _, rr = divmod_coeffs(field, r, divisor)
                    else:
                        _, rr = divmod_coeffs(field, r, divisor,
                                              self._node_inverse(level - 1, c, n))
                    nxt.append(rr)
            rems = nxt
        return [r[0] if r else 0 for r in rems]


def tree_multipoint_eval(poly: DensePoly, points: Sequence[int]) -> list[int]:
    """Evaluate one polynomial at many points via a subproduct tree."""
    if not points:
        return []
    return SubproductTree(poly.field, points).evaluate(poly)


def mul(a: DensePoly, b: DensePoly) -> DensePoly:
    """Product of two polynomials over the same field."""
    return a * b


def eval_horner(poly: DensePoly, x: int) -> int:
    """Value of the polynomial at x."""
    return poly.evaluate(x)


def scale_arg(poly: DensePoly, c: int) -> DensePoly:
    """The polynomial f(c*x)."""
    return poly.scale_arg(c)


def prod_of_evals(roots: Sequence[int], poly: DensePoly) -> int:
    """Product of poly(u) over the given roots (1 for an empty list).

    For monic G = prod (x - u) over the roots this is the resultant of G
    and poly, but it is computed directly as a multipoint-evaluation fold.
    """
    if not roots:
        return 1
    field = poly.field
    if poly.is_constant():
        c = poly.constant_value()
        return field.pow(c, len(roots)) if c else 0
    if len(roots) * max(1, poly.degree) <= 1024:
        values = [poly.evaluate(u) for u in roots]
    else:
        values = tree_multipoint_eval(poly, roots)
    if field.p < _fastops.NP_MODULUS_LIMIT:
        return _fastops.prod_mod(field.p, values)
    acc = 1
    for v in values:
        acc = acc * v % field.p
    return acc
