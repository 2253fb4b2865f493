"""Curvature heuristics for q-difference systems.

A system y(qx) = A(x) y(x) with rational-function entries has the
length-n curvature C_n(x) = A(q^{n-1}x) ... A(qx) A(x).  If the system
admits a full basis of rational solutions then C_{p-1}(x0) reduces to
the identity modulo every good prime p, so scanning many primes gives a
fast necessary test.  The test is one-sided: a constant system A = [c]
has C_{p-1} = c^{p-1} = 1 mod every p not dividing c, whatever its
solutions look like, so an all-identity report is evidence and never a
proof.

Two evaluation regimes are provided: q specialized to a rational number
(curvature_mod_p, curvature_scan) and q kept symbolic as the residue of
the variable in F_p[q]/(1 + q + ... + q^{n-1}) for prime n
(curvature_cyclotomic).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    BadPrime,
    CompositeN,
    ParameterDomain,
    PoleHit,
    ZeroInversion,
)
from .field import PrimeField, is_prime
from .geom import locate_zero_on_progression
from .matrix import PolyMatrix, ScalarMatrix, matrix_q_factorial
from .poly import DensePoly, divmod_coeffs, mul_coeffs, sub_coeffs, trim
from .qspecial import scalar_q_product

# Sieving bound guard: scans are meant for thousands of primes, not millions.
PRIME_BOUND_LIMIT = 10_000_000

# Product lengths at or below this are folded naively even on the fast
# cyclotomic path (baby steps would not pay for themselves).
_RING_NAIVE_CUTOFF = 32

HEURISTIC_NOTE = (
    "heuristic: identity curvature at every tested prime is necessary "
    "evidence for a full basis of rational solutions, never a proof; "
    "constant systems pass at every prime regardless of solvability"
)


# ---------------------------------------------------------------------------
# systems
# ---------------------------------------------------------------------------

def _normalize_entry_poly(spec, what: str):
    """Monomial tuple ((dq, dx, c), ...) from an int or an iterable of triples.

    Entries are bivariate: integer coefficients, dq the power of q and dx
    the power of x.  Like terms are merged and zero terms dropped.
    """
    if isinstance(spec, bool):
        raise ParameterDomain(f"{what}: booleans are not coefficients")
    if isinstance(spec, int):
        return ((0, 0, spec),) if spec else ()
    merged: dict[tuple[int, int], int] = {}
    for mono in spec:
        try:
            dq, dx, c = mono
        except (TypeError, ValueError):
            raise ParameterDomain(
                f"{what}: monomials must be (dq, dx, c) triples") from None
        if not all(isinstance(v, int) and not isinstance(v, bool)
                   for v in (dq, dx, c)):
            raise ParameterDomain(f"{what}: dq, dx, c must be integers")
        if dq < 0 or dx < 0:
            raise ParameterDomain(f"{what}: exponents must be non-negative")
        if c:
            merged[(dq, dx)] = merged.get((dq, dx), 0) + c
    return tuple(sorted((dq, dx, c) for (dq, dx), c in merged.items() if c))


class QDifferenceSystem:
    """Square matrix A(x) of rational-function entries with integer data.

    Each entry is a pair (numerator, denominator); each side is a
    polynomial in x whose coefficients are integer polynomials in q,
    given as (dq, dx, c) monomial triples (a plain int means a constant).
    """

    __slots__ = ("nu", "entries")

    def __init__(self, entries: Iterable[Iterable]):
        rows = [list(row) for row in entries]
        nu = len(rows)
        if nu == 0:
            raise ParameterDomain("system must have positive dimension")
        norm = []
        for i, row in enumerate(rows):
            if len(row) != nu:
                raise ParameterDomain("system matrix must be square")
            out_row = []
            for j, e in enumerate(row):
                if not (isinstance(e, (tuple, list)) and len(e) == 2):
                    raise ParameterDomain(
                        "each entry must be a (numerator, denominator) pair")
                where = f"entry ({i},{j})"
                num = _normalize_entry_poly(e[0], where + " numerator")
                den = _normalize_entry_poly(e[1], where + " denominator")
                if not den:
                    raise ParameterDomain(
                        f"{where}: denominator is identically zero")
                out_row.append((num, den))
            norm.append(out_row)
        self.nu = nu
        self.entries = norm

    @classmethod
    def identity(cls, nu: int) -> "QDifferenceSystem":
        return cls([[(1 if i == j else 0, 1) for j in range(nu)]
                    for i in range(nu)])

    @classmethod
    def from_scalar_equation(cls, coeffs: Sequence) -> "QDifferenceSystem":
        """Companion system of a_nu(x) y(q^nu x) + ... + a_0(x) y(x) = 0.

        Superdiagonal ones and bottom row -a_j/a_nu; requires a_0 and
        a_nu not identically zero.
        """
        polys = [_normalize_entry_poly(c, f"coefficient a_{i}")
                 for i, c in enumerate(coeffs)]
        nu = len(polys) - 1
        if nu < 1:
            raise ParameterDomain("scalar equation needs order at least 1")
        if not polys[0] or not polys[nu]:
            raise ParameterDomain(
                "a_0 and the leading coefficient must not vanish identically")
        one, zero = ((0, 0, 1),), ()
        rows: list[list] = []
        for i in range(nu - 1):
            rows.append([(one if j == i + 1 else zero, one)
                         for j in range(nu)])
        bottom = [(tuple((dq, dx, -c) for dq, dx, c in polys[j]), polys[nu])
                  for j in range(nu)]
        rows.append(bottom)
        return cls(rows)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QDifferenceSystem):
            return NotImplemented
        return self.entries == other.entries

    def __repr__(self) -> str:
        return f"QDifferenceSystem(nu={self.nu})"


# ---------------------------------------------------------------------------
# q specialized to a rational: curvature mod p
# ---------------------------------------------------------------------------

def _entry_poly_mod_p(field: PrimeField, monos, qv: int) -> DensePoly:
    if not monos:
        return DensePoly(field, [])
    p = field.p
    acc = [0] * (max(dx for _, dx, _ in monos) + 1)
    for dq, dx, c in monos:
        acc[dx] = (acc[dx] + c * field.pow(qv, dq)) % p
    return DensePoly(field, acc)


def _specialize_mod_p(sys: QDifferenceSystem, field: PrimeField, qv: int):
    grid = []
    for row in sys.entries:
        out_row = []
        for num, den in row:
            dpoly = _entry_poly_mod_p(field, den, qv)
            if dpoly.is_zero():
                raise BadPrime(
                    f"a denominator vanishes identically mod {field.p}")
            out_row.append((_entry_poly_mod_p(field, num, qv), dpoly))
        grid.append(out_row)
    return grid


def _clear_denominators(field: PrimeField, grid):
    """(B, D) with B = D*A entrywise and D the product of distinct denominators."""
    distinct: list[DensePoly] = []
    index: dict[tuple, int] = {}
    for row in grid:
        for _, den in row:
            key = tuple(den.coeffs)
            if key not in index:
                index[key] = len(distinct)
                distinct.append(den)
    k = len(distinct)
    one = DensePoly.constant(field, 1)
    pre = [one]
    for d in distinct:
        pre.append(pre[-1] * d)
    suf = [one] * (k + 1)
    for i in range(k - 1, -1, -1):
        suf[i] = distinct[i] * suf[i + 1]
    cof = [pre[i] * suf[i + 1] for i in range(k)]
    bmat = PolyMatrix(field, [[num * cof[index[tuple(den.coeffs)]]
                               for num, den in row] for row in grid])
    return bmat, pre[k]


def _check_prime_against_q(p: int, q: Fraction) -> None:
    if q.numerator % p == 0 or q.denominator % p == 0:
        raise BadPrime(f"{p} divides the numerator or denominator of q")


def curvature_mod_p(sys: QDifferenceSystem, q, p: int, x0: int, *,
                    use_shortcut: bool = True
                    ) -> tuple[ScalarMatrix, bool]:
    """C_{p-1}(x0) mod p and whether it is the identity.

    Denominators are cleared into one scalar polynomial, both length
    (p-1) products run through the square-root-time q-factorials, and a
    single division restores the rational-entry product.
    """
    q = Fraction(q)
    if p == 2:
        raise BadPrime("modulus 2 is outside the supported field range")
    field = PrimeField(p)
    _check_prime_against_q(p, q)
    qv = field.reduce(q)
    x0 = field.reduce(x0)
    grid = _specialize_mod_p(sys, field, qv)
    bmat, dpoly = _clear_denominators(field, grid)
    bmat = bmat.scale_arg(x0)
    dpoly = dpoly.scale_arg(x0)
    count = p - 1
    den = scalar_q_product(dpoly, qv, count, use_shortcut=use_shortcut)
    if den == 0:
        hit = locate_zero_on_progression(field, dpoly, qv, count)
        raise PoleHit(hit if hit is not None else 0)
    u = matrix_q_factorial(bmat, qv, count, use_shortcut=use_shortcut)
    dinv = field.inv(den)
    c = ScalarMatrix._raw(field, [[e * dinv % p for e in row]
                                  for row in u.rows])
    return c, c.is_identity()


def naive_curvature_mod_p(sys: QDifferenceSystem, q, p: int, x0: int
                          ) -> tuple[ScalarMatrix, bool]:
    """O(p)-time reference fold: entrywise rational evaluation per point."""
    q = Fraction(q)
    if p == 2:
        raise BadPrime("modulus 2 is outside the supported field range")
    field = PrimeField(p)
    _check_prime_against_q(p, q)
    qv = field.reduce(q)
    x = field.reduce(x0)
    grid = _specialize_mod_p(sys, field, qv)
    acc = ScalarMatrix.identity(field, sys.nu)
    for k in range(p - 1):
        rows = []
        for row in grid:
            vals = []
            for num, den in row:
                dv = den.evaluate(x)
                if dv == 0:
                    raise PoleHit(k)
                vals.append(num.evaluate(x) * field.inv(dv) % p)
            rows.append(vals)
        acc = ScalarMatrix._raw(field, rows) * acc
        x = x * qv % p
    return acc, acc.is_identity()


# ---------------------------------------------------------------------------
# scans across primes
# ---------------------------------------------------------------------------

def primes_up_to(bound: int) -> list[int]:
    """All primes <= bound, ascending."""
    if bound > PRIME_BOUND_LIMIT:
        raise ParameterDomain(
            f"prime bound must be at most {PRIME_BOUND_LIMIT}")
    if bound < 2:
        return []
    sieve = np.ones(bound + 1, dtype=bool)
    sieve[:2] = False
    for i in range(2, isqrt(bound) + 1):
        if sieve[i]:
            sieve[i * i::i] = False
    return [int(v) for v in np.flatnonzero(sieve)]


@dataclass(frozen=True)
class PrimeVerdict:
    """Outcome of the curvature test at one prime."""

    prime: int
    status: str  # "identity" | "non-identity" | "skipped"
    x0: int | None = None
    retries: int = 0
    reason: str | None = None


@dataclass(frozen=True)
class CurvatureReport:
    """Per-prime verdicts of a scan, sorted by prime."""

    prime_bound: int
    seed: int
    verdicts: tuple[PrimeVerdict, ...]
    note: str = HEURISTIC_NOTE

    @property
    def identity_primes(self) -> list[int]:
        return [v.prime for v in self.verdicts if v.status == "identity"]

    @property
    def non_identity_primes(self) -> list[int]:
        return [v.prime for v in self.verdicts if v.status == "non-identity"]

    @property
    def skipped(self) -> list[PrimeVerdict]:
        return [v for v in self.verdicts if v.status == "skipped"]

    def all_identity(self) -> bool:
        """True when every non-skipped prime came back identity."""
        return not self.non_identity_primes


def _scan_one_prime(sys: QDifferenceSystem, q: Fraction, p: int,
                    seed: int) -> PrimeVerdict:
    rng = random.Random((seed << 32) ^ p)
    for attempt in range(16):
        x0 = rng.randrange(1, p) if p > 2 else 1
        try:
            _, ok = curvature_mod_p(sys, q, p, x0)
        except BadPrime as exc:
            return PrimeVerdict(p, "skipped", None, attempt, str(exc))
        except PoleHit:
            continue
        return PrimeVerdict(p, "identity" if ok else "non-identity",
                            x0, attempt)
    return PrimeVerdict(p, "skipped", None, 16,
                        "pole at every sampled evaluation point (16 tries)")


def curvature_scan(sys: QDifferenceSystem, q, prime_bound: int,
                   seed: int = 0) -> CurvatureReport:
    """Run the mod-p test at every prime up to the bound.

    Evaluation points are drawn from a PRNG seeded per (seed, prime), so
    identical inputs give identical reports; primes where the test cannot
    run are recorded as skipped with the reason.  Per-prime work is pure
    and independent, and verdicts are assembled in prime order.
    """
    q = Fraction(q)
    rows = tuple(_scan_one_prime(sys, q, p, seed)
                 for p in primes_up_to(prime_bound))
    return CurvatureReport(prime_bound, seed, rows)


# ---------------------------------------------------------------------------
# q as a variable: the cyclotomic ring F_p[q] / (1 + q + ... + q^{n-1})
# ---------------------------------------------------------------------------

class CyclotomicRing:
    """F_p[q]/Phi_n(q) for prime n, with Phi_n = 1 + q + ... + q^{n-1}.

    Elements are coefficient lists of fixed width n-1 (degree < n-1).
    The residue of q is a unit of multiplicative order n, so q^n = 1
    holds identically and geometric-progression tricks carry over.
    """

    __slots__ = ("field", "n", "width")

    def __init__(self, field: PrimeField, n: int):
        if not isinstance(n, int) or n < 2 or not is_prime(n):
            raise CompositeN(f"cyclotomic index must be a prime, got {n!r}")
        self.field = field
        self.n = n
        self.width = n - 1

    def zero(self) -> list[int]:
        return [0] * self.width

    def one(self) -> list[int]:
        out = [0] * self.width
        out[0] = 1
        return out

    def from_int(self, c: int) -> list[int]:
        out = [0] * self.width
        out[0] = self.field.reduce(c)
        return out

    def gen(self) -> list[int]:
        """The residue class of q."""
        if self.n == 2:
            return [self.field.p - 1]
        out = [0] * self.width
        out[1] = 1
        return out

    def reduce_poly(self, coeffs: Sequence[int]) -> list[int]:
        """Any coefficient list -> canonical width n-1 representative.

        Exponents first wrap mod n (q^n = 1), then the top residue
        q^{n-1} = -(1 + q + ... + q^{n-2}) is folded downward.
        """
        n, p = self.n, self.field.p
        acc = [0] * n
        for e, c in enumerate(coeffs):
            if c:
                acc[e % n] += c
        top = acc[n - 1]
        return [(acc[i] - top) % p for i in range(n - 1)]

    def add(self, a: Sequence[int], b: Sequence[int]) -> list[int]:
        p = self.field.p
        return [(x + y) % p for x, y in zip(a, b)]

    def sub(self, a: Sequence[int], b: Sequence[int]) -> list[int]:
        p = self.field.p
        return [(x - y) % p for x, y in zip(a, b)]

    def neg(self, a: Sequence[int]) -> list[int]:
        p = self.field.p
        return [(-x) % p for x in a]

    def scale(self, a: Sequence[int], c: int) -> list[int]:
        p = self.field.p
        c = self.field.reduce(c)
        return [x * c % p for x in a]

    def mul(self, a: Sequence[int], b: Sequence[int]) -> list[int]:
        return self.reduce_poly(mul_coeffs(self.field.p, a, b))

    def pow(self, a: Sequence[int], e: int) -> list[int]:
        if e < 0:
            return self.pow(self.inv(a), -e)
        out = self.one()
        base = list(a)
        while e:
            if e & 1:
                out = self.mul(out, base)
            e >>= 1
            if e:
                base = self.mul(base, base)
        return out

    def is_zero(self, a: Sequence[int]) -> bool:
        return not any(a)

    def is_one(self, a: Sequence[int]) -> bool:
        return a[0] == 1 and not any(a[1:])

    def is_unit(self, a: Sequence[int]) -> bool:
        try:
            self.inv(a)
        except ZeroInversion:
            return False
        return True

    def inv(self, a: Sequence[int]) -> list[int]:
        """Inverse by the extended Euclidean algorithm against Phi_n.

        Raises ZeroInversion when gcd(a, Phi_n) is non-constant (the ring
        has zero divisors whenever Phi_n splits mod p).
        """
        fld = self.field
        p = fld.p
        r0, s0 = [1] * self.n, []
        r1, s1 = trim(list(a)), [1]
        if not r1:
            raise ZeroInversion("zero is not invertible in the ring")
        while r1:
            qq, r2 = divmod_coeffs(fld, r0, r1)
            s2 = sub_coeffs(p, s0, mul_coeffs(p, qq, s1)) if qq else list(s0)
            r0, s0 = r1, s1
            r1, s1 = r2, s2
        if len(r0) != 1:
            raise ZeroInversion(
                "element shares a factor with the ring modulus")
        c = fld.inv(r0[0])
        return self.reduce_poly([v * c % p for v in s0])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CyclotomicRing):
            return NotImplemented
        return self.field == other.field and self.n == other.n


# --- polynomials in x with ring-element coefficients (plain list-of-lists) --

def _rpoly_trim(ring: CyclotomicRing, coeffs: list[list[int]]) -> list[list[int]]:
    while coeffs and ring.is_zero(coeffs[-1]):
        coeffs.pop()
    return coeffs


def _rpoly_add(ring: CyclotomicRing, a, b):
    if len(a) < len(b):
        a, b = b, a
    out = [list(e) for e in a]
    for i, e in enumerate(b):
        out[i] = ring.add(out[i], e)
    return _rpoly_trim(ring, out)


def _rpoly_mul(ring: CyclotomicRing, a, b):
    """Product via one flattened field-polynomial multiplication.

    Coefficients are packed into blocks of width 2n-3 so that block k of
    the flat product collects exactly the (unreduced) coefficient of x^k;
    in-block degrees stay below the block width, so blocks never overlap.
    """
    if not a or not b:
        return []
    w = max(2 * ring.width - 1, 1)
    p = ring.field.p
    fa = [0] * (len(a) * w)
    for i, e in enumerate(a):
        fa[i * w:i * w + ring.width] = e
    fb = [0] * (len(b) * w)
    for i, e in enumerate(b):
        fb[i * w:i * w + ring.width] = e
    flat = mul_coeffs(p, fa, fb)
    out = []
    for k in range(len(a) + len(b) - 1):
        block = flat[k * w:(k + 1) * w]
        out.append(ring.reduce_poly(block))
    return _rpoly_trim(ring, out)


def _rpoly_scale_field_arg(ring: CyclotomicRing, coeffs, c: int):
    """f(x) -> f(c x) for a scalar c from the base field."""
    cp = 1
    p = ring.field.p
    out = []
    for e in coeffs:
        out.append(ring.scale(e, cp))
        cp = cp * c % p
    return _rpoly_trim(ring, out)


def _rpoly_scale_ring_arg(ring: CyclotomicRing, coeffs, c: list[int]):
    """f(x) -> f(c x) for a ring element c."""
    cp = ring.one()
    out = []
    for i, e in enumerate(coeffs):
        out.append(ring.mul(e, cp) if i else list(e))
        cp = ring.mul(cp, c)
    return _rpoly_trim(ring, out)


def _rpoly_eval(ring: CyclotomicRing, coeffs, x: list[int]) -> list[int]:
    acc = ring.zero()
    for e in reversed(coeffs):
        acc = ring.add(ring.mul(acc, x), e)
    return acc


def _rpoly_const(ring: CyclotomicRing, coeffs) -> list[int]:
    return list(coeffs[0]) if coeffs else ring.zero()


# --- matrices over the ring and over ring-coefficient polynomials ----------

def _rmat_identity(ring: CyclotomicRing, nu: int):
    return [[ring.one() if i == j else ring.zero() for j in range(nu)]
            for i in range(nu)]


def _rmat_mul(ring: CyclotomicRing, a, b):
    nu = len(a)
    out = []
    for i in range(nu):
        row = []
        for j in range(nu):
            acc = ring.mul(a[i][0], b[0][j])
            for k in range(1, nu):
                acc = ring.add(acc, ring.mul(a[i][k], b[k][j]))
            row.append(acc)
        out.append(row)
    return out


def _rmat_pow(ring: CyclotomicRing, a, e: int):
    out = _rmat_identity(ring, len(a))
    base = a
    while e:
        if e & 1:
            out = _rmat_mul(ring, out, base)
        e >>= 1
        if e:
            base = _rmat_mul(ring, base, base)
    return out


def _rmat_is_identity(ring: CyclotomicRing, a) -> bool:
    return all(ring.is_one(v) if i == j else ring.is_zero(v)
               for i, row in enumerate(a) for j, v in enumerate(row))


def _rpmat_mul(ring: CyclotomicRing, a, b):
    nu = len(a)
    out = []
    for i in range(nu):
        row = []
        for j in range(nu):
            acc = _rpoly_mul(ring, a[i][0], b[0][j])
            for k in range(1, nu):
                acc = _rpoly_add(ring, acc, _rpoly_mul(ring, a[i][k], b[k][j]))
            row.append(acc)
        out.append(row)
    return out


def _rpmat_scale_ring_arg(ring: CyclotomicRing, a, c: list[int]):
    return [[_rpoly_scale_ring_arg(ring, e, c) for e in row] for row in a]


def _rpmat_eval(ring: CyclotomicRing, a, x: list[int]):
    return [[_rpoly_eval(ring, e, x) for e in row] for row in a]


def _rpmat_degree(a) -> int:
    return max(len(e) - 1 for row in a for e in row)


# --- chirp evaluation and the baby-step/giant-step fold over the ring ------

def _ring_binomial_table(ring: CyclotomicRing, base: list[int], length: int):
    """[base^C(i,2) for i < length] by the incremental recurrence."""
    out = []
    acc, step = ring.one(), ring.one()
    for _ in range(length):
        out.append(acc)
        acc = ring.mul(acc, step)
        step = ring.mul(step, base)
    return out


def _ring_chirp_eval(ring: CyclotomicRing, coeffs, ratio: list[int],
                     ratio_inv: list[int], count: int) -> list[list[int]]:
    """[f(ratio^i) for i < count] through one ring-polynomial product."""
    coeffs = _rpoly_trim(ring, [list(e) for e in coeffs])
    if count <= 0:
        return []
    if not coeffs:
        return [ring.zero() for _ in range(count)]
    if len(coeffs) == 1:
        return [list(coeffs[0]) for _ in range(count)]
    deg = len(coeffs) - 1
    d = max(deg, count - 1)
    fw = _ring_binomial_table(ring, ratio, d + count)
    bw = _ring_binomial_table(ring, ratio_inv, d + count)
    p1 = [ring.zero() for _ in range(d + 1)]
    for j, e in enumerate(coeffs):
        p1[d - j] = ring.mul(e, bw[j])
    prod = _rpoly_mul(ring, p1, fw)
    out = []
    for i in range(count):
        v = prod[d + i] if d + i < len(prod) else ring.zero()
        out.append(ring.mul(v, bw[i]))
    return out


def _ring_naive_fold(ring: CyclotomicRing, rpmat, count: int, start: list[int]):
    rho = ring.gen()
    acc = _rmat_identity(ring, len(rpmat))
    x = list(start)
    for _ in range(count):
        acc = _rmat_mul(ring, _rpmat_eval(ring, rpmat, x), acc)
        x = ring.mul(x, rho)
    return acc


def _ring_baby_step(ring: CyclotomicRing, rpmat, s: int):
    """P_s(x) = M(rho^{s-1} x) ... M(rho x) M(x) by argument-scaled doubling."""

    def build(t: int):
        if t == 1:
            return [[list(map(list, e)) for e in row] for row in rpmat], ring.gen()
        half, rt = build(t // 2)
        prod = _rpmat_mul(ring, _rpmat_scale_ring_arg(ring, half, rt), half)
        rt = ring.mul(rt, rt)
        if t & 1:
            prod = _rpmat_mul(
                ring, _rpmat_scale_ring_arg(ring, rpmat, rt), prod)
            rt = ring.mul(rt, ring.gen())
        return prod, rt

    return build(s)


def _ring_q_factorial(ring: CyclotomicRing, rpmat, count: int):
    """prod_{k<count} M(rho^k), newest factor on the left, rho = q's residue."""
    nu = len(rpmat)
    if count <= 0:
        return _rmat_identity(ring, nu)
    deg = _rpmat_degree(rpmat)
    if deg <= 0:
        return _rmat_pow(ring, _rpmat_eval(ring, rpmat, ring.one()), count)
    d = deg
    s = isqrt(count // d)
    if s <= 1 or count <= _RING_NAIVE_CUTOFF:
        return _ring_naive_fold(ring, rpmat, count, ring.one())
    baby, _ = _ring_baby_step(ring, rpmat, s)
    m = s * d
    covered = m * s
    ratio = ring.pow(ring.gen(), s % ring.n)
    ratio_inv = ring.pow(ring.gen(), (ring.n - s % ring.n) % ring.n)
    grids = [[_ring_chirp_eval(ring, e, ratio, ratio_inv, m) for e in row]
             for row in baby]
    acc = _rmat_identity(ring, nu)
    for i in range(m):
        step = [[grids[r][c][i] for c in range(nu)] for r in range(nu)]
        acc = _rmat_mul(ring, step, acc)
    if covered < count:
        start = ring.pow(ring.gen(), covered % ring.n)
        tail = _ring_naive_fold(ring, rpmat, count - covered, start)
        acc = _rmat_mul(ring, tail, acc)
    return acc


# --- the cyclotomic curvature entry point -----------------------------------

def _entry_rpoly(ring: CyclotomicRing, monos) -> list[list[int]]:
    if not monos:
        return []
    qcols: dict[int, list[int]] = {}
    for dq, dx, c in monos:
        col = qcols.setdefault(dx, [])
        if len(col) <= dq:
            col.extend([0] * (dq + 1 - len(col)))
        col[dq] += c
    out = []
    for dx in range(max(qcols) + 1):
        out.append(ring.reduce_poly(qcols.get(dx, [])))
    return _rpoly_trim(ring, out)


@dataclass(frozen=True)
class CyclotomicCurvature:
    """C_n(x0) over F_p[q]/Phi_n(q), entries as width n-1 coefficient lists."""

    index: int
    modulus: int
    x0: int
    entries: tuple
    identity: bool
    method: str


def curvature_cyclotomic(sys: QDifferenceSystem, n: int, p: int, x0: int, *,
                         method: str = "fast") -> CyclotomicCurvature:
    """C_n(x0) with q the residue of the variable in F_p[q]/Phi_n(q).

    The fast method clears denominators and runs the baby-step/giant-step
    fold with ring arithmetic (the ratio q^s is always a unit); the naive
    method folds the n factors one by one with per-point entry division
    and serves as the fast path's oracle.
    """
    if method not in ("fast", "naive"):
        raise ParameterDomain("method must be 'fast' or 'naive'")
    if p == 2:
        raise BadPrime("modulus 2 is outside the supported field range")
    field = PrimeField(p)
    ring = CyclotomicRing(field, n)
    x0 = field.reduce(x0)
    grid = []
    for row in sys.entries:
        out_row = []
        for num, den in row:
            dpoly = _entry_rpoly(ring, den)
            if not dpoly:
                raise BadPrime(
                    f"a denominator vanishes identically mod {p}")
            out_row.append((
                _rpoly_scale_field_arg(ring, _entry_rpoly(ring, num), x0),
                _rpoly_scale_field_arg(ring, dpoly, x0)))
        grid.append(out_row)

    rho = ring.gen()
    if method == "naive":
        acc = _rmat_identity(ring, sys.nu)
        x = ring.one()
        for k in range(n):
            rows = []
            for row in grid:
                vals = []
                for num, den in row:
                    dv = _rpoly_eval(ring, den, x)
                    try:
                        dinv = ring.inv(dv)
                    except ZeroInversion:
                        raise PoleHit(k) from None
                    vals.append(ring.mul(_rpoly_eval(ring, num, x), dinv))
                rows.append(vals)
            acc = _rmat_mul(ring, rows, acc)
            x = ring.mul(x, rho)
        cmat = acc
    else:
        distinct: list[list[list[int]]] = []
        index: dict[tuple, int] = {}
        for row in grid:
            for _, den in row:
                key = tuple(tuple(e) for e in den)
                if key not in index:
                    index[key] = len(distinct)
                    distinct.append(den)
        k = len(distinct)
        one = [ring.one()]
        pre = [one]
        for dpoly in distinct:
            pre.append(_rpoly_mul(ring, pre[-1], dpoly))
        suf = [one] * (k + 1)
        for i in range(k - 1, -1, -1):
            suf[i] = _rpoly_mul(ring, distinct[i], suf[i + 1])
        cof = [_rpoly_mul(ring, pre[i], suf[i + 1]) for i in range(k)]
        bmat = [[_rpoly_mul(ring, num,
                            cof[index[tuple(tuple(e) for e in den)]])
                 for num, den in row] for row in grid]
        u = _ring_q_factorial(ring, bmat, n)
        dval = _ring_q_factorial(ring, [[pre[k]]], n)[0][0]
        try:
            dinv = ring.inv(dval)
        except ZeroInversion:
            x = ring.one()
            for idx in range(n):
                if not ring.is_unit(_rpoly_eval(ring, pre[k], x)):
                    raise PoleHit(idx) from None
                x = ring.mul(x, rho)
            raise
        cmat = [[ring.mul(e, dinv) for e in row] for row in u]

    verdict = _rmat_is_identity(ring, cmat)
    return CyclotomicCurvature(
        index=n, modulus=p, x0=x0,
        entries=tuple(tuple(tuple(e) for e in row) for row in cmat),
        identity=verdict, method=method)
