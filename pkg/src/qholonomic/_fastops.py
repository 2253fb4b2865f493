"""Vectorized helpers for bulk mod-p work on word-size values.

Everything here assumes p < 2**31 so that products of two residues fit
comfortably in int64; callers are responsible for checking that and
falling back to plain Python loops otherwise.
"""

from __future__ import annotations

import numpy as np

NP_MODULUS_LIMIT = 1 << 31


def power_table(p: int, q: int, m: int) -> np.ndarray:
    """[q^0, q^1, ..., q^(m-1)] as int64, built by doubling blocks."""
    out = np.empty(m, dtype=np.int64)
    if m == 0:
        return out
    out[0] = 1
    filled = 1
    while filled < m:
        take = min(filled, m - filled)
        step = int(out[filled - 1]) * q % p
        out[filled:filled + take] = out[:take] * step % p
        filled += take
    return out


def prefix_products(p: int, v: np.ndarray) -> np.ndarray:
    """Inclusive running products of v mod p (Hillis-Steele scan)."""
    out = v.astype(np.int64, copy=True)
    shift = 1
    n = out.size
    while shift < n:
        out[shift:] = out[shift:] * out[:-shift] % p
        shift <<= 1
    return out


def prod_mod(p: int, v) -> int:
    """Product of all entries mod p by pairwise reduction."""
    arr = np.asarray(v, dtype=np.int64) % p
    while arr.size > 1:
        half = arr.size // 2
        head = arr[:half] * arr[half:2 * half] % p
        if arr.size & 1:
            arr = np.concatenate([head, arr[2 * half:]])
        else:
            arr = head
    return int(arr[0]) if arr.size else 1
