"""Square polynomial matrices and the matrix q-factorial.

The headline operation is matrix_q_factorial: the product
M(q^{N-1}) ... M(q) M(1), computed in roughly sqrt(N*d) field operations
by combining a doubling-built baby-step product P(x) = M(q^{s-1}x)...M(x)
with chirp evaluation of P at the giant-step points 1, q^s, q^{2s}, ...
Constant matrices route to plain binary powering, and when q is detected
to be a root of unity of small order n the product collapses to
U_{k+1} * U_n^r.

A multi-target variant transports a state vector to many prefix lengths
at once: giant-step prefixes are collected during the fold and the
remainders are closed by halving refinement rounds evaluated through
shared subproduct trees.
"""

from __future__ import annotations

from math import isqrt
from typing import Iterable, Sequence

import numpy as np

from . import _fastops
from .errors import ContextMismatch, DimensionMismatch, ParameterDomain
from .field import PrimeField
from .geom import ChirpEvaluator
from .poly import DensePoly, SubproductTree

# Below this many factors the plain fold beats the chirp machinery.
NAIVE_PRODUCT_CUTOFF = 32


class ScalarMatrix:
    """Immutable square matrix of field elements."""

    __slots__ = ("field", "n", "rows")

    def __init__(self, field: PrimeField, rows: Iterable[Iterable[int]]):
        self.field = field
        self.rows = [[field.reduce(v) for v in row] for row in rows]
        self.n = len(self.rows)
        if any(len(row) != self.n for row in self.rows):
            raise DimensionMismatch("scalar matrix must be square")

    @classmethod
    def _raw(cls, field: PrimeField, rows: list[list[int]]) -> "ScalarMatrix":
        out = object.__new__(cls)
        out.field = field
        out.rows = rows
        out.n = len(rows)
        return out

    @classmethod
    def identity(cls, field: PrimeField, n: int) -> "ScalarMatrix":
        return cls._raw(field, [[1 if i == j else 0 for j in range(n)]
                                for i in range(n)])

    def is_identity(self) -> bool:
        return all(v == (1 if i == j else 0)
                   for i, row in enumerate(self.rows)
                   for j, v in enumerate(row))

    def __mul__(self, other: "ScalarMatrix") -> "ScalarMatrix":
        if not isinstance(other, ScalarMatrix):
            return NotImplemented
        if self.field != other.field:
            raise ContextMismatch("scalar matrices over different fields")
        if self.n != other.n:
            raise DimensionMismatch(
                f"cannot multiply {self.n}x{self.n} by {other.n}x{other.n}")
        return ScalarMatrix._raw(
            self.field, _matmul(self.field.p, self.rows, other.rows))

    def apply(self, vector: Sequence[int]) -> list[int]:
        if len(vector) != self.n:
            raise DimensionMismatch(
                f"vector length {len(vector)} does not match size {self.n}")
        p = self.field.p
        return [sum(a * v for a, v in zip(row, vector)) % p
                for row in self.rows]

    def power(self, e: int) -> "ScalarMatrix":
        if e < 0:
            raise ParameterDomain("matrix power needs a non-negative exponent")
        acc = ScalarMatrix.identity(self.field, self.n)
        base = self
        while e:
            if e & 1:
                acc = base * acc
            base = base * base
            e >>= 1
        return acc

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ScalarMatrix):
            return NotImplemented
        return self.field == other.field and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.field, tuple(map(tuple, self.rows))))

    def __repr__(self) -> str:
        return f"ScalarMatrix(p={self.field.p}, rows={self.rows})"


def _matmul(p: int, a: list[list[int]], b: list[list[int]]) -> list[list[int]]:
    cols = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) % p for col in cols]
            for row in a]


def _matvec(p: int, rows: list[list[int]], v: Sequence[int]) -> list[int]:
    return [sum(a * x for a, x in zip(row, v)) % p for row in rows]


class PolyMatrix:
    """Immutable square matrix of DensePoly entries."""

    __slots__ = ("field", "n", "entries")

    def __init__(self, field: PrimeField,
                 entries: Iterable[Iterable[DensePoly | Iterable[int]]]):
        rows: list[list[DensePoly]] = []
        for row in entries:
            out_row: list[DensePoly] = []
            for e in row:
                if isinstance(e, DensePoly):
                    if e.field != field:
                        raise ContextMismatch(
                            "matrix entry belongs to a different field")
                    out_row.append(e)
                else:
                    out_row.append(DensePoly(field, e))
            rows.append(out_row)
        self.field = field
        self.entries = rows
        self.n = len(rows)
        if self.n == 0 or any(len(row) != self.n for row in rows):
            raise DimensionMismatch("polynomial matrix must be square and nonempty")

    @classmethod
    def identity(cls, field: PrimeField, n: int) -> "PolyMatrix":
        one = DensePoly.constant(field, 1)
        zero = DensePoly(field, [])
        return cls(field, [[one if i == j else zero for j in range(n)]
                           for i in range(n)])

    @property
    def degree(self) -> int:
        """Max entry degree; -1 when every entry is zero."""
        return max(e.degree for row in self.entries for e in row)

    def is_constant(self) -> bool:
        return self.degree <= 0

    def scale_arg(self, c: int) -> "PolyMatrix":
        return PolyMatrix(self.field,
                          [[e.scale_arg(c) for e in row] for row in self.entries])

    def eval_at(self, x: int) -> ScalarMatrix:
        x = self.field.reduce(x)
        return ScalarMatrix._raw(
            self.field, [[e.evaluate(x) for e in row] for row in self.entries])

    def __mul__(self, other: "PolyMatrix") -> "PolyMatrix":
        return mat_mul(self, other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.field == other.field and self.entries == other.entries

    def __repr__(self) -> str:
        grid = [[e.coeffs for e in row] for row in self.entries]
        return f"PolyMatrix(p={self.field.p}, entries={grid})"


def mat_mul(a: PolyMatrix, b: PolyMatrix) -> PolyMatrix:
    """Product of two polynomial matrices (entrywise DensePoly arithmetic)."""
    if a.field != b.field:
        raise ContextMismatch("polynomial matrices over different fields")
    if a.n != b.n:
        raise DimensionMismatch(
            f"cannot multiply {a.n}x{a.n} by {b.n}x{b.n}")
    n = a.n
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = a.entries[i][0] * b.entries[0][j]
            for k in range(1, n):
                acc = acc + a.entries[i][k] * b.entries[k][j]
            row.append(acc)
        rows.append(row)
    return PolyMatrix(a.field, rows)


def mat_eval(a: PolyMatrix, x: int) -> ScalarMatrix:
    """Entrywise Horner evaluation."""
    return a.eval_at(x)


def baby_step_product(m: PolyMatrix, q: int, s: int) -> PolyMatrix:
    """P(x) = M(q^{s-1}x) ... M(qx) M(x), by even/odd doubling."""
    if s < 1:
        raise ParameterDomain("baby-step product needs s >= 1")
    field = m.field
    p = field.p
    q = field.reduce(q)

    def build(t: int) -> tuple[PolyMatrix, int]:
        if t == 1:
            return m, q
        half, qh = build(t // 2)
        full = mat_mul(half.scale_arg(qh), half)
        qt = qh * qh % p
        if t & 1:
            full = mat_mul(m.scale_arg(qt), full)
            qt = qt * q % p
        return full, qt

    return build(s)[0]


def _np_foldable(field: PrimeField, n: int) -> bool:
    p = field.p
    return p < _fastops.NP_MODULUS_LIMIT and n * (p - 1) * (p - 1) < 2 ** 63


def _fold_newest_left_np(p: int, arr: np.ndarray) -> np.ndarray:
    """Product A_{m-1} ... A_0 of the (m,n,n) stack by pairwise passes."""
    while arr.shape[0] > 1:
        m = arr.shape[0]
        k = m // 2
        head = np.matmul(arr[1:2 * k:2], arr[0:2 * k:2]) % p
        arr = np.concatenate([head, arr[2 * k:]], axis=0) if m & 1 else head
    return arr[0]


def _evaluate_matrix_at_progression(m: PolyMatrix, ratio: int,
                                    count: int) -> "np.ndarray | list":
    """Stack of M evaluated at ratio^0..ratio^{count-1}.

    Returns an (count, n, n) int64 array when the modulus is small enough
    for vectorized folding, else a list of row-grids.
    """
    field = m.field
    n = m.n
    ev = ChirpEvaluator(field, ratio, count)
    if _np_foldable(field, n):
        arr = np.empty((count, n, n), dtype=np.int64)
        for i in range(n):
            for j in range(n):
                arr[:, i, j] = ev.evaluate(m.entries[i][j])
        return arr
    grids = [[[0] * n for _ in range(n)] for _ in range(count)]
    for i in range(n):
        for j in range(n):
            vals = ev.evaluate(m.entries[i][j])
            for k in range(count):
                grids[k][i][j] = vals[k]
    return grids


def _fold_newest_left(field: PrimeField, stack) -> list[list[int]]:
    p = field.p
    if isinstance(stack, np.ndarray):
        return _fold_newest_left_np(p, stack).tolist()
    n = len(stack[0])
    acc = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for rows in stack:
        acc = _matmul(p, rows, acc)
    return acc


def _naive_q_factorial(m: PolyMatrix, q: int, count: int, start_power: int,
                       acc_rows: list[list[int]]) -> list[list[int]]:
    """Multiply count factors M(q^k), k = start..start+count-1, onto acc."""
    field = m.field
    p = field.p
    x = field.pow(q, start_power)
    for _ in range(count):
        acc_rows = _matmul(p, m.eval_at(x).rows, acc_rows)
        x = x * q % p
    return acc_rows


def matrix_q_factorial(m: PolyMatrix, q: int, big_n: int, *,
                       use_shortcut: bool = True) -> ScalarMatrix:
    """U_N = M(q^{N-1}) ... M(q) M(1), newest factor on the left.

    Baby-step/giant-step with step s = isqrt(N // d), d = max(1, deg M):
    the first s**2 * d factors come from chirp-evaluating the baby-step
    product at the s*d giant points, the remaining few are folded naively.
    Constant matrices use binary powering; when use_shortcut is set and q
    is found to have multiplicative order n < N, the product collapses to
    U_{k+1} * U_n^r with N-1 = r*n + k.
    """
    field = m.field
    p = field.p
    q = field.reduce(q)
    size = m.n
    if big_n < 0:
        raise ParameterDomain("matrix q-factorial needs N >= 0")
    if big_n == 0:
        return ScalarMatrix.identity(field, size)
    deg = m.degree
    if deg <= 0:
        return m.eval_at(0 if deg < 0 else 1).power(big_n)
    if q == 0:
        # factors are M(1) once, then M(0) repeatedly
        tail = m.eval_at(0).power(big_n - 1)
        return tail * m.eval_at(1)

    d = deg
    s = isqrt(big_n // d)
    if use_shortcut and big_n > NAIVE_PRODUCT_CUTOFF:
        _, order = field.batch_powers(q, min(big_n, max(s, 2) + 1))
        if order is not None and order < big_n:
            r_, k = divmod(big_n - 1, order)
            u_n = matrix_q_factorial(m, q, order, use_shortcut=False)
            u_pre = matrix_q_factorial(m, q, k + 1, use_shortcut=False)
            return u_pre * u_n.power(r_)

    if s <= 1 or big_n <= NAIVE_PRODUCT_CUTOFF:
        ident = [[1 if i == j else 0 for j in range(size)] for i in range(size)]
        return ScalarMatrix._raw(field, _naive_q_factorial(m, q, big_n, 0, ident))

    steps = s * d
    covered = steps * s
    baby = baby_step_product(m, q, s)
    stack = _evaluate_matrix_at_progression(baby, field.pow(q, s), steps)
    rows = _fold_newest_left(field, stack)
    if covered < big_n:
        rows = _naive_q_factorial(m, q, big_n - covered, covered, rows)
    return ScalarMatrix._raw(field, rows)


def transport_to_prefixes(m: PolyMatrix, q: int, targets: Sequence[int],
                          v0: Sequence[int]) -> list[list[int]]:
    """Vectors U_K * v0 for each K in targets (non-decreasing, K >= 0).

    U_K = M(q^{K-1})...M(1).  Giant-step prefixes at multiples of s are
    collected during a single fold, then the leftover gaps are closed by
    halving refinement rounds: step sizes d_0 = s, d_{t+1} = ceil(d_t/2),
    each round advancing every pending target whose gap is >= d_t using
    the baby-step product of length d_t evaluated at the pending points
    through one shared subproduct tree.  The root-of-unity shortcut is
    never taken here so collected prefixes line up with plain products.
    """
    field = m.field
    p = field.p
    q = field.reduce(q)
    size = m.n
    v0 = [field.reduce(v) for v in v0]
    if len(v0) != size:
        raise DimensionMismatch(
            f"start vector length {len(v0)} does not match size {size}")
    if not targets:
        return []
    if list(targets) != sorted(targets) or min(targets) < 0:
        raise ParameterDomain("prefix targets must be non-decreasing and >= 0")

    kmax = targets[-1]
    d = max(1, m.degree)
    s = isqrt(kmax // d) if kmax else 0

    if q in (0, 1) or s <= 1 or kmax <= 4 * NAIVE_PRODUCT_CUTOFF:
        out = []
        v = list(v0)
        x = 1
        k = 0
        for t in targets:
            while k < t:
                v = _matvec(p, m.eval_at(x).rows, v)
                x = x * q % p
                k += 1
            out.append(list(v))
        return out

    baby = baby_step_product(m, q, s)
    giant_count = kmax // s
    stack = _evaluate_matrix_at_progression(baby, field.pow(q, s), giant_count)

    bases = sorted({t // s for t in targets})
    base_vectors: dict[int, list[int]] = {}
    v = list(v0)
    if 0 in bases:
        base_vectors[0] = list(v)
    for j in range(giant_count):
        rows = stack[j].tolist() if isinstance(stack, np.ndarray) else stack[j]
        v = _matvec(p, rows, v)
        if j + 1 in bases:
            base_vectors[j + 1] = list(v)

    # pending state per target: current prefix k_j, current vector, q^{k_j}
    ks = [s * (t // s) for t in targets]
    vecs = [list(base_vectors[t // s]) for t in targets]
    xs = [field.pow(q, k) for k in ks]

    step = s
    while True:
        active = [idx for idx, t in enumerate(targets) if t - ks[idx] >= step]
        if active:
            block = baby if step == s else baby_step_product(m, q, step)
            points = sorted({xs[idx] for idx in active})
            tree = SubproductTree(field, points)
            grids = {pt: [[0] * size for _ in range(size)] for pt in points}
            for i in range(size):
                for j in range(size):
                    vals = tree.evaluate(block.entries[i][j])
                    for pt, val in zip(points, vals):
                        grids[pt][i][j] = val
            advance = field.pow(q, step)
            for idx in active:
                vecs[idx] = _matvec(p, grids[xs[idx]], vecs[idx])
                ks[idx] += step
                xs[idx] = xs[idx] * advance % p
        if step == 1:
            break
        step = (step + 1) // 2

    return vecs
