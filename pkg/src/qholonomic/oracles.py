"""Linear-time reference implementations.

These are the ground truth for the fast paths' equality tests and the
baseline column of the benchmark harness.  They are deliberately written
as plain loops that follow the definitions, sharing nothing with the fast
modules beyond the field and the recurrence data model.
"""

from __future__ import annotations

from .errors import SingularLeading
from .field import PrimeField
from .holonomic import QRecurrence
from .matrix import PolyMatrix, ScalarMatrix


def naive_geom_product(field: PrimeField, alpha: int, q: int, n: int) -> int:
    """prod_{i<n} (alpha - q^i) by the O(n) loop."""
    p = field.p
    alpha = field.reduce(alpha)
    q = field.reduce(q)
    acc = 1
    x = 1
    for _ in range(n):
        acc = acc * (alpha - x) % p
        x = x * q % p
    return acc


def naive_nth_term(rec: QRecurrence, field: PrimeField, q: int, n: int) -> int:
    """u_n by O(n) unrolling with a division at every step."""
    if n < rec.order:
        return field.reduce(rec.initials[n])
    p = field.p
    q = field.reduce(q)
    r = rec.order
    polys = []
    for monos in rec.coeffs:
        poly = [0] * (max((dy for _, dy, _ in monos), default=0) + 1)
        for dx, dy, c in monos:
            poly[dy] = (poly[dy] + field.reduce(c) * field.pow(q, dx)) % p
        polys.append(poly)
    lead = polys[r]
    window = [field.reduce(u) for u in rec.initials]
    y = 1
    for k in range(n - r + 1):
        lead_val = 0
        for c in reversed(lead):
            lead_val = (lead_val * y + c) % p
        if lead_val == 0:
            raise SingularLeading(k)
        total = 0
        for j in range(r):
            val = 0
            for c in reversed(polys[j]):
                val = (val * y + c) % p
            total = (total + val * window[j]) % p
        window = window[1:] + [(-total) * field.inv(lead_val) % p]
        y = y * q % p
    return window[-1]


def naive_matrix_fold(m: PolyMatrix, q: int, n: int) -> ScalarMatrix:
    """mat_eval(M, q^{n-1}) * ... * mat_eval(M, 1) by the plain loop."""
    field = m.field
    q = field.reduce(q)
    acc = ScalarMatrix.identity(field, m.n)
    x = 1
    for _ in range(n):
        acc = m.eval_at(x) * acc
        x = x * q % field.p
    return acc
