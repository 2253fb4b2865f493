"""Kernels for geometric point sets.

Two operations: evaluating a polynomial at 1, Q, Q^2, ..., Q^{s-1} with a
single convolution (the chirp/Bluestein identity
Q^{ij} = Q^{C(i+j,2)} * Q^{-C(i,2)} * Q^{-C(j,2)}), and building the
shifted linear product prod_{j<s} (alpha - q^j x) by argument-scaling
doubling.  Both are the workhorses behind the square-root-time product
algorithms.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from . import _fastops
from .errors import ZeroRatio
from .field import PrimeField
from .poly import DensePoly, mul_coeffs, trim


def _binomial_power_table(field: PrimeField, base: int, length: int):
    """[base^C(i,2) for i < length]; numpy int64 when the modulus allows."""
    p = field.p
    if length <= 0:
        return np.empty(0, dtype=np.int64) if p < _fastops.NP_MODULUS_LIMIT else []
    if p < _fastops.NP_MODULUS_LIMIT:
        out = np.empty(length, dtype=np.int64)
        out[0] = 1
        if length > 1:
            powers = _fastops.power_table(p, base, length - 1)
            out[1:] = _fastops.prefix_products(p, powers)
        return out
    out = [1]
    acc, step = 1, 1  # acc = base^C(i,2), step = base^i
    for _ in range(length - 1):
        acc = acc * step % p
        step = step * base % p
        out.append(acc)
    return out


class ChirpEvaluator:
    """Evaluates polynomials at 1, Q, ..., Q^{count-1} via one product.

    The binomial-exponent tables Q^{+-C(i,2)} are shared and grown on
    demand, so evaluating many polynomials at the same progression (all
    entries of a polynomial matrix, say) pays for the tables once.
    """

    __slots__ = ("field", "ratio", "count", "_inv_ratio", "_fw", "_bw", "_np")

    def __init__(self, field: PrimeField, ratio: int, count: int):
        ratio = field.reduce(ratio)
        if ratio == 0:
            raise ZeroRatio("chirp evaluation needs a nonzero progression ratio")
        self.field = field
        self.ratio = ratio
        self.count = count
        self._inv_ratio = field.inv(ratio)
        self._np = field.p < _fastops.NP_MODULUS_LIMIT
        self._fw = None  # ratio^C(i,2)
        self._bw = None  # ratio^-C(i,2)

    def _grow(self, length: int) -> None:
        if self._fw is None or len(self._fw) < length:
            self._fw = _binomial_power_table(self.field, self.ratio, length)
            self._bw = _binomial_power_table(self.field, self._inv_ratio, length)

    def evaluate(self, poly: DensePoly | Sequence[int]) -> list[int]:
        coeffs = poly.coeffs if isinstance(poly, DensePoly) else trim(list(poly))
        s = self.count
        if s <= 0:
            return []
        p = self.field.p
        if not coeffs:
            return [0] * s
        if len(coeffs) == 1:
            return [coeffs[0]] * s
        deg = len(coeffs) - 1
        d = max(deg, s - 1)
        self._grow(d + s)
        fw, bw = self._fw, self._bw
        if self._np:
            carr = np.asarray(coeffs, dtype=np.int64)
            folded = (carr * bw[:deg + 1] % p)[::-1]
            if d > deg:
                folded = np.concatenate(
                    [np.zeros(d - deg, dtype=np.int64), folded])
            first = folded.tolist()
            second = fw[:d + s].tolist()
        else:
            first = [0] * (d - deg) + [
                coeffs[j] * bw[j] % p for j in range(deg, -1, -1)]
            second = list(fw[:d + s])
        prod = mul_coeffs(p, trim(first), second)
        window = prod[d:d + s]
        window += [0] * (s - len(window))
        if self._np:
            vals = np.asarray(window, dtype=np.int64) * bw[:s] % p
            return vals.tolist()
        return [window[i] * bw[i] % p for i in range(s)]


def chirp_eval(poly: DensePoly, ratio: int, count: int) -> list[int]:
    """[P(ratio^0), ..., P(ratio^(count-1))]; raises ZeroRatio on ratio=0."""
    return ChirpEvaluator(poly.field, ratio, count).evaluate(poly)


def locate_zero_on_progression(field: PrimeField, poly: DensePoly, q: int,
                               limit: int) -> int | None:
    """Smallest k < limit with poly(q^k) = 0, or None if there is none.

    Chunked vectorized Horner; used to localize the offending factor
    after a product of progression values turns out to be zero.
    """
    p = field.p
    q = field.reduce(q)
    coeffs = poly.coeffs
    if p < _fastops.NP_MODULUS_LIMIT:
        chunk = 1 << 15
        x0 = 1
        for lo in range(0, limit, chunk):
            cnt = min(chunk, limit - lo)
            pts = _fastops.power_table(p, q, cnt) * x0 % p
            vals = np.zeros(cnt, dtype=np.int64)
            for c in reversed(coeffs):
                vals = (vals * pts + c) % p
            hits = np.flatnonzero(vals == 0)
            if hits.size:
                return lo + int(hits[0])
            x0 = int(pts[-1]) * q % p
        return None
    x = 1
    for k in range(limit):
        if poly.evaluate(x) == 0:
            return k
        x = x * q % p
    return None


def linear_qshift_product(field: PrimeField, alpha: int, q: int,
                          count: int) -> DensePoly:
    """prod_{j<count} (alpha - q^j x), built by argument-scaling doubling.

    Doubling uses F_{2t}(x) = F_t(q^t x) * F_t(x); an odd step multiplies
    the extra linear factor (alpha - q^{2t} x) on the left.
    """
    p = field.p
    alpha = field.reduce(alpha)
    q = field.reduce(q)
    if count == 0:
        return DensePoly.constant(field, 1)

    def build(t: int) -> tuple[DensePoly, int]:
        if t == 1:
            return DensePoly(field, [alpha, -1]), q
        half, qh = build(t // 2)
        full = half.scale_arg(qh) * half
        qt = qh * qh % p
        if t & 1:
            full = DensePoly(field, [alpha, -qt]) * full
            qt = qt * q % p
        return full, qt

    return build(count)[0]
