"""Shared helpers for the test suite: small oracles and random generators."""

import random

from qholonomic import (
    DensePoly,
    SingularLeading,
    ZeroLeadingCoefficient,
    from_recurrence,
    naive_nth_term,
    nth_term,
)


def schoolbook_mul(p, a, b):
    """Quadratic coefficient-list product mod p, lowest degree first."""
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            out[i + j] = (out[i + j] + ai * bj) % p
    while out and out[-1] == 0:
        out.pop()
    return out


def random_poly(rng, field, degree):
    """Random DensePoly of exactly the given degree (or zero poly for degree < 0)."""
    if degree < 0:
        return DensePoly(field, [])
    coeffs = [rng.randrange(field.p) for _ in range(degree)]
    coeffs.append(rng.randrange(1, field.p))
    return DensePoly(field, coeffs)


def random_recurrence(rng, max_order, max_deg, coeff_bound=30):
    """Random integer-monomial recurrence with a guaranteed nonzero leading polynomial.

    The leading coefficient gets a nonzero constant term; on the rare draw
    where a later monomial cancels it exactly, the whole recurrence is
    redrawn.  The leading polynomial may still vanish at individual points
    q^k, which the comparison helper below treats as data rather than as a
    test failure.
    """
    while True:
        order = rng.randint(1, max_order)
        coeffs = []
        for j in range(order + 1):
            monos = [(0, 0, rng.randint(1, coeff_bound))]
            for _ in range(rng.randint(0, 3)):
                monos.append((rng.randint(0, max_deg), rng.randint(0, max_deg),
                              rng.randint(-coeff_bound, coeff_bound)))
            coeffs.append(monos)
        initials = [rng.randint(-coeff_bound, coeff_bound) for _ in range(order)]
        try:
            return from_recurrence(order, coeffs, initials)
        except ZeroLeadingCoefficient:
            continue


def run_or_singular(fn, *args, **kwargs):
    """Return ('ok', value) or ('singular', k) so both code paths can be compared."""
    try:
        return ("ok", fn(*args, **kwargs))
    except SingularLeading as exc:
        return ("singular", exc.index)


def assert_same_term(rec, field, q, n, **kwargs):
    """Fast path and naive unrolling must agree on the value or on the failure index."""
    fast = run_or_singular(nth_term, rec, field, q, n, **kwargs)
    slow = run_or_singular(naive_nth_term, rec, field, q, n)
    assert fast == slow, f"q={q} n={n}: fast={fast} naive={slow}"
    return fast


def seeded(label):
    """Fresh deterministic RNG per test, independent of execution order."""
    return random.Random(f"qholonomic:{label}")
