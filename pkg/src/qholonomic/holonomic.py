"""Linear recurrences with coefficients polynomial in q and q^n.

A sequence u satisfies c_r(q, q^n) u_{n+r} + ... + c_0(q, q^n) u_n = 0
with r initial values.  Coefficients are stored exactly (integer or
rational monomials in x = q and y = q^n) and specialized to a prime field
once per call; all term extraction then runs through the companion-matrix
q-factorial, giving square-root-of-N costs for a single term and a
log-factor more for several terms at once.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    ArityMismatch,
    DegenerateLeading,
    NonInvertibleBracket,
    ParameterDomain,
    SingularLeading,
    TooManyIndices,
    UnsortedIndices,
    ZeroLeadingCoefficient,
)
from .field import PrimeField
from .geom import locate_zero_on_progression
from .matrix import PolyMatrix, matrix_q_factorial, transport_to_prefixes
from .poly import DensePoly
from .qspecial import scalar_q_product

Monomial = tuple[int, int, Fraction]

# Index sets whose largest entry is at most this are answered by one
# sequential transport sweep; the multi-point machinery (and its index
# count guard) only engages past it.
DIRECT_SWEEP_LIMIT = 4096


def _normalize_monomials(raw, what: str) -> tuple[Monomial, ...]:
    merged: dict[tuple[int, int], Fraction] = {}
    for mono in raw:
        if isinstance(mono, dict):
            try:
                dx, dy, c = mono["dx"], mono["dy"], mono["c"]
            except KeyError as exc:
                raise ParameterDomain(
                    f"{what}: monomial is missing key {exc}") from None
        else:
            try:
                dx, dy, c = mono
            except (TypeError, ValueError):
                raise ParameterDomain(
                    f"{what}: monomial must be (dx, dy, c)") from None
        if not isinstance(dx, int) or not isinstance(dy, int) \
                or isinstance(dx, bool) or isinstance(dy, bool):
            raise ParameterDomain(f"{what}: exponents must be integers")
        if dx < 0 or dy < 0:
            raise ParameterDomain(f"{what}: exponents must be non-negative")
        try:
            value = Fraction(c)
        except (TypeError, ValueError, ZeroDivisionError):
            raise ParameterDomain(
                f"{what}: coefficient {c!r} is not a rational number") from None
        key = (dx, dy)
        merged[key] = merged.get(key, Fraction(0)) + value
    return tuple((dx, dy, c) for (dx, dy), c in sorted(merged.items()) if c)


class QRecurrence:
    """Exact recurrence: order, r+1 coefficient polynomials, r initials."""

    __slots__ = ("order", "coeffs", "initials", "ydeg")

    def __init__(self, order: int, coeffs: Sequence[tuple[Monomial, ...]],
                 initials: Sequence[Fraction]):
        self.order = order
        self.coeffs = tuple(coeffs)
        self.initials = tuple(initials)
        self.ydeg = max((dy for poly in coeffs for _, dy, _ in poly),
                        default=0)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QRecurrence):
            return NotImplemented
        return (self.order == other.order and self.coeffs == other.coeffs
                and self.initials == other.initials)

    def __repr__(self) -> str:
        return (f"QRecurrence(order={self.order}, coeffs={self.coeffs}, "
                f"initials={self.initials})")


class SpecializedCompanion:
    """Companion matrix and leading coefficient at a concrete q."""

    __slots__ = ("field", "q", "order", "companion", "lead")

    def __init__(self, field: PrimeField, q: int, order: int,
                 companion: PolyMatrix, lead: DensePoly):
        self.field = field
        self.q = q
        self.order = order
        self.companion = companion
        self.lead = lead


def from_recurrence(order: int, coeffs: Iterable, initials: Iterable
                    ) -> QRecurrence:
    """Validated recurrence from raw coefficient and initial data.

    coeffs is a list of order+1 monomial collections (c_0 first); each
    monomial is (dx, dy, c) or {"dx":, "dy":, "c":} with c an integer,
    a rational string like "3/2", or a Fraction.
    """
    if not isinstance(order, int) or isinstance(order, bool) or order < 1:
        raise ArityMismatch(f"order must be a positive integer, got {order!r}")
    coeffs = list(coeffs)
    if len(coeffs) != order + 1:
        raise ArityMismatch(
            f"expected {order + 1} coefficient polynomials, got {len(coeffs)}")
    initials = list(initials)
    if len(initials) != order:
        raise ArityMismatch(
            f"expected {order} initial values, got {len(initials)}")
    polys = tuple(_normalize_monomials(c, f"coefficient c_{j}")
                  for j, c in enumerate(coeffs))
    if not polys[order]:
        raise ZeroLeadingCoefficient(
            f"leading coefficient c_{order} is identically zero")
    try:
        init_vals = tuple(Fraction(u) for u in initials)
    except (TypeError, ValueError, ZeroDivisionError):
        raise ParameterDomain("initial values must be rational numbers") \
            from None
    return QRecurrence(order, polys, init_vals)


def specialize(rec: QRecurrence, field: PrimeField, q: int
               ) -> SpecializedCompanion:
    """Substitute x = q, leaving univariate polynomials in y = q^n."""
    q = field.reduce(q)
    p = field.p
    univariate: list[DensePoly] = []
    for poly in rec.coeffs:
        acc = [0] * (max((dy for _, dy, _ in poly), default=0) + 1)
        for dx, dy, c in poly:
            acc[dy] = (acc[dy] + field.reduce(c) * field.pow(q, dx)) % p
        univariate.append(DensePoly(field, acc))
    lead = univariate[rec.order]
    if lead.is_zero():
        raise DegenerateLeading(
            f"leading coefficient vanishes identically at q={q}")
    r = rec.order
    if r == 1:
        rows = [[-univariate[0]]]
    else:
        zero = DensePoly(field, [])
        rows = [[-univariate[r - 1 - j] for j in range(r)]]
        for i in range(1, r):
            rows.append([lead if j == i - 1 else zero for j in range(r)])
    return SpecializedCompanion(field, q, r, PolyMatrix(field, rows), lead)


def _initial_vector(rec: QRecurrence, field: PrimeField) -> list[int]:
    return [field.reduce(u) for u in reversed(rec.initials)]


def _locate_vanishing_factor(field: PrimeField, lead: DensePoly, q: int,
                             limit: int) -> int:
    """Smallest k < limit with lead(q^k) = 0 (caller guarantees existence)."""
    hit = locate_zero_on_progression(field, lead, q, limit)
    if hit is None:
        raise RuntimeError("vanishing leading factor was not located")
    return hit


def nth_term(rec: QRecurrence, field: PrimeField, q: int, n: int, *,
             use_shortcut: bool = True) -> int:
    """u_n mod p through the companion-matrix q-factorial.

    The denominator product of leading-coefficient values is computed
    first; if it vanishes the offending index is located by a scan and
    reported via SingularLeading.
    """
    if n < 0:
        raise ParameterDomain("term index must be non-negative")
    if n < rec.order:
        return field.reduce(rec.initials[n])
    sp = specialize(rec, field, q)
    q = sp.q
    k = n - rec.order + 1
    den = scalar_q_product(sp.lead, q, k, use_shortcut=use_shortcut)
    if den == 0:
        raise SingularLeading(_locate_vanishing_factor(field, sp.lead, q, k))
    u = matrix_q_factorial(sp.companion, q, k, use_shortcut=use_shortcut)
    num = u.apply(_initial_vector(rec, field))[0]
    return num * field.inv(den) % field.p


def terms_multi(rec: QRecurrence, field: PrimeField, q: int,
                indices: Sequence[int]) -> list[int]:
    """[u_N for N in indices], indices strictly increasing.

    One shared giant-step sweep transports the initial vector to every
    requested prefix; a parallel scalar sweep produces the denominator
    products.  The root-of-unity shortcut is disabled throughout so the
    collected prefixes match plain products.  Beyond the direct-sweep
    regime the index count n must satisfy n^2 <= max(indices).
    """
    indices = list(indices)
    if not indices:
        return []
    for a, b in zip(indices, indices[1:]):
        if a >= b:
            raise UnsortedIndices(
                f"indices must be strictly increasing ({a} before {b})")
    if indices[0] < 0:
        raise ParameterDomain("indices must be non-negative")
    n_max = indices[-1]
    if n_max > DIRECT_SWEEP_LIMIT and len(indices) ** 2 > n_max:
        raise TooManyIndices(
            f"{len(indices)} indices exceed sqrt({n_max}); "
            "query fewer points at once")

    r = rec.order
    small = [n for n in indices if n < r]
    big = [n for n in indices if n >= r]
    out: dict[int, int] = {n: field.reduce(rec.initials[n]) for n in small}

    if big:
        sp = specialize(rec, field, q)
        qv = sp.q
        ks = [n - r + 1 for n in big]
        vecs = transport_to_prefixes(sp.companion, qv, ks,
                                     _initial_vector(rec, field))
        dens = transport_to_prefixes(PolyMatrix(field, [[sp.lead]]), qv,
                                     ks, [1])
        for n, k, vec, den in zip(big, ks, vecs, dens):
            if den[0] == 0:
                raise SingularLeading(
                    _locate_vanishing_factor(field, sp.lead, qv, k))
            out[n] = vec[0] * field.inv(den[0]) % field.p
    return [out[n] for n in indices]


def _theta_exponents(a, b) -> tuple[int, int]:
    try:
        a = Fraction(a)
        b = Fraction(b)
    except (TypeError, ValueError, ZeroDivisionError):
        raise ParameterDomain("theta exponents must be rational") from None
    two_a = 2 * a
    a_plus_b = a + b
    if two_a.denominator != 1 or a_plus_b.denominator != 1:
        raise ParameterDomain(
            f"need 2a and a+b integral, got a={a}, b={b}")
    return int(a_plus_b), int(two_a)


def theta_sum(field: PrimeField, ratio: int, a, b, q: int, n: int) -> int:
    """sum_{k<n} ratio^k q^{a k^2 + b k} mod p, in sqrt(n) operations.

    The sparse sum satisfies a two-term recurrence whose companion matrix
    has degree one in q^{2a}k; the whole sum is one matrix q-factorial
    with progression ratio q^{2a}.  Negative exponents require q != 0.
    """
    e1, e2 = _theta_exponents(a, b)
    q = field.reduce(q)
    ratio = field.reduce(ratio)
    if n < 0:
        raise ParameterDomain("summation length must be non-negative")
    if q == 0 and (e1 < 0 or e2 < 0):
        raise ParameterDomain("q must be nonzero when exponents are negative")
    step = ratio * field.pow(q, e1) % field.p
    progression = field.pow(q, e2)
    p = field.p
    companion = PolyMatrix(field, [
        [[1, step], [0, (-step) % p]],
        [[1], []],
    ])
    u = matrix_q_factorial(companion, progression, n)
    return u.rows[1][0]


def theta_sum_recurrence(field: PrimeField, ratio: int, a, b, q: int,
                         n: int) -> int:
    """Same theta value through the generic recurrence path (cross-check).

    Only valid when a+b >= 0 and 2a >= 0 (monomial exponents must be
    non-negative in the recurrence encoding).
    """
    e1, e2 = _theta_exponents(a, b)
    if e1 < 0 or e2 < 0:
        raise ParameterDomain(
            "recurrence encoding needs non-negative exponents 2a and a+b")
    ratio = field.reduce(ratio)
    rec = from_recurrence(2, [
        [(e1, e2, ratio)],
        [(0, 0, -1), (e1, e2, -ratio)],
        [(0, 0, 1)],
    ], [0, 1])
    return nth_term(rec, field, q, n)


def q_exp_trunc(field: PrimeField, alpha: int, q: int, n: int) -> int:
    """Partial sum of the q-exponential: sum_{k<n} alpha^k / [k]_q!.

    Runs as an order-2 recurrence in about sqrt(n) operations; every
    bracket [k]_q with k < n must be invertible mod p.
    """
    if n < 1:
        raise ParameterDomain("truncation order must be >= 1")
    alpha = field.reduce(alpha)
    rec = from_recurrence(2, [
        [(1, 0, alpha), (0, 0, -alpha)],
        [(1, 1, -1), (0, 0, 1), (1, 0, -alpha), (0, 0, alpha)],
        [(1, 1, 1), (0, 0, -1)],
    ], [0, 1])
    try:
        return nth_term(rec, field, q, n)
    except SingularLeading as exc:
        raise NonInvertibleBracket(
            f"bracket [{exc.index + 1}]_q vanishes mod p "
            "(q is a root of unity of small order)") from exc


def q_hermite_eval(field: PrimeField, alpha: int, q: int, n: int,
                   kind: str = "discrete") -> int:
    """Value of the n-th q-Hermite polynomial at alpha.

    kind="discrete":  u_{k+2} = alpha*u_{k+1} - (1-q^{k+1}) q^k u_k,
                      starting 1, alpha.
    kind="continuous": u_{k+2} = 2*alpha*u_{k+1} - (1-q^{k+1}) u_k,
                      starting 1, 2*alpha.
    """
    if n < 0:
        raise ParameterDomain("polynomial index must be non-negative")
    alpha = field.reduce(alpha)
    if kind == "discrete":
        rec = from_recurrence(2, [
            [(0, 1, 1), (1, 2, -1)],
            [(0, 0, -alpha)],
            [(0, 0, 1)],
        ], [1, alpha])
    elif kind == "continuous":
        rec = from_recurrence(2, [
            [(0, 0, 1), (1, 1, -1)],
            [(0, 0, -2 * alpha)],
            [(0, 0, 1)],
        ], [1, 2 * alpha])
    else:
        raise ParameterDomain(
            f"kind must be 'discrete' or 'continuous', got {kind!r}")
    return nth_term(rec, field, q, n)
