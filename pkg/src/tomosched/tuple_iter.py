"""Parallel iteration over K lists so that every cross-list pair co-occurs.

The core scheme emits L'^2 index tuples where tuple (j, l) takes element
(j*k + l) mod L' from list k.  Two lists k1 != k2 then realize every pair of
positions exactly once provided every difference 1..K-1 is coprime to L',
i.e. the smallest prime factor of L' exceeds K-1.  Composite lengths are
padded up to the first length satisfying that condition; padded positions
are emitted as the sentinel index PAD and must be filtered by consumers.

`cover_rows` generalizes the same idea to an explicit all-pairs covering
engine (prime-power affine rows plus a logarithmic composition for many
short lists); the clique generators use it where a plain modular iteration
would over-pad.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

#: Sentinel index marking a padded slot inside an emitted tuple.
PAD = -1


def _smallest_prime_factor(n: int) -> int:
    if n < 2:
        return n  # convention: 0/1 have no prime factor; callers special-case
    d = 2
    while d * d <= n:
        if n % d == 0:
            return d
        d += 1
    return n


def pad_length(l: int, k: int) -> int:
    """Smallest L' >= max(l, k+1) whose smallest prime factor exceeds k."""
    if l < 1:
        raise ValueError("list length must be at least 1")
    if k < 2:
        raise ValueError("k must be at least 2")
    cand = max(l, k + 1)
    while _smallest_prime_factor(cand) <= k:
        cand += 1
    return cand


def effective_length(l: int, k: int) -> int:
    """Length the iterator actually runs at for K = k lists of length l.

    No padding is needed when every list-index difference 1..k-1 is already
    coprime to l (true for all l when k = 2), so padding only triggers when
    the smallest prime factor of l is k-1 or less.
    """
    if l == 1:
        return 1
    if _smallest_prime_factor(l) > k - 1:
        return l
    return pad_length(l, k)


@dataclass(frozen=True, slots=True)
class TupleSchedule:
    """L'^2 K-tuples of element indices; PAD marks padded slots."""

    k_lists: int
    real_length: int
    padded_length: int
    tuples: tuple[tuple[int, ...], ...]


def parallel_iterate(lists) -> TupleSchedule:
    """Emit K-tuples covering every cross-list pair of real elements.

    Tuples consisting only of padding are dropped; all other tuples keep
    their PAD markers so downstream consumers can filter them.
    """
    k = len(lists)
    if k < 2:
        raise ValueError("parallel iteration needs at least 2 lists")
    length = len(lists[0])
    if any(len(lst) != length for lst in lists):
        raise ValueError("all lists must share one length")
    if length < 1:
        raise ValueError("lists must be non-empty")
    lp = effective_length(length, k)
    tuples = []
    for j in range(lp):
        for l in range(lp):
            tup = tuple(
                idx if (idx := (j * kk + l) % lp) < length else PAD
                for kk in range(k)
            )
            if any(v != PAD for v in tup):
                tuples.append(tup)
    return TupleSchedule(k, length, lp, tuple(tuples))


# ---------------------------------------------------------------------------
# all-pairs covering rows over lists of unequal lengths


_GF_POLYS = {
    # irreducible monic polynomials, coefficients low degree first
    4: (2, (1, 1, 1)),
    8: (2, (1, 1, 0, 1)),
    9: (3, (1, 0, 1)),
    16: (2, (1, 1, 0, 0, 1)),
    25: (5, (1, 1, 1)),
    27: (3, (1, 2, 0, 1)),
    32: (2, (1, 0, 1, 0, 0, 1)),
    49: (7, (3, 1, 1)),
}


def _is_prime(n: int) -> bool:
    return n >= 2 and _smallest_prime_factor(n) == n


@lru_cache(maxsize=None)
def _gf_mul_table(q: int) -> tuple[tuple[int, ...], ...]:
    """Multiplication table for GF(q), q a supported prime power."""
    p, poly = _GF_POLYS[q]
    e = len(poly) - 1

    def to_vec(a):
        return [(a // p**i) % p for i in range(e)]

    def to_int(vec):
        return sum(c * p**i for i, c in enumerate(vec))

    def mul(a, b):
        va, vb = to_vec(a), to_vec(b)
        prod = [0] * (2 * e - 1)
        for i, ca in enumerate(va):
            for j, cb in enumerate(vb):
                prod[i + j] = (prod[i + j] + ca * cb) % p
        for top in range(2 * e - 2, e - 1, -1):
            c = prod[top]
            if c:
                prod[top] = 0
                for i in range(e):
                    prod[top - e + i] = (prod[top - e + i] - c * poly[i]) % p
        return to_int(prod[:e])

    return tuple(tuple(mul(a, b) for b in range(q)) for a in range(q))


def _gf_add(q: int, a: int, b: int) -> int:
    p, poly = _GF_POLYS[q]
    e = len(poly) - 1
    out = 0
    for i in range(e):
        da = (a // p**i) % p
        db = (b // p**i) % p
        out += ((da + db) % p) * p**i
    return out


def _supported_q(x: int) -> int:
    """Smallest prime or tabulated prime power >= x."""
    q = max(2, x)
    while not (_is_prime(q) or q in _GF_POLYS):
        q += 1
    return q


def _affine_rows(q: int, n_cols: int) -> list[tuple[int, ...]]:
    """Strength-2 orthogonal array: q^2 rows, up to q+1 columns over 0..q-1.

    Column a < q holds a*x + y, column q holds x; any two columns hit every
    value pair exactly once.
    """
    if n_cols > q + 1:
        raise ValueError("at most q+1 columns")
    if _is_prime(q):
        def mul(a, b):
            return (a * b) % q

        def add(a, b):
            return (a + b) % q
    else:
        table = _gf_mul_table(q)

        def mul(a, b):
            return table[a][b]

        def add(a, b):
            return _gf_add(q, a, b)

    rows = []
    for x in range(q):
        for y in range(q):
            row = tuple(
                add(mul(c, x), y) if c < q else x for c in range(n_cols)
            )
            rows.append(row)
    return rows


def _composed_rows(q: int, n_cols: int) -> list[tuple[int, ...]]:
    """Cover n_cols > q+1 lists by indexing columns with digits over a base
    array: two distinct columns differ in some digit, and the phase reading
    that digit covers their pairs.  Rows grow as ceil(log_{q+1} K) * q^2."""
    m = q + 1
    d = max(1, math.ceil(math.log(n_cols) / math.log(m)))
    while m**d < n_cols:
        d += 1
    base = _affine_rows(q, m)
    rows = []
    for phase in range(d):
        for brow in base:
            rows.append(
                tuple(brow[(col // m**phase) % m] for col in range(n_cols))
            )
    return rows


def cover_rows(lengths) -> list[tuple[int, ...]]:
    """Rows of per-list indices such that every cross-list index combination
    (a < lengths[i], b < lengths[j], i != j) appears in some row.

    Values are already reduced modulo each list's length.
    """
    lengths = list(lengths)
    k = len(lengths)
    if any(l < 1 for l in lengths):
        raise ValueError("lengths must be positive")
    if k == 0:
        return []
    if k == 1:
        return [(c,) for c in range(lengths[0])]
    v = max(lengths)
    if v == 1:
        return [tuple(0 for _ in lengths)]
    if k == 2:
        return [(a, b) for a in range(lengths[0]) for b in range(lengths[1])]
    q_single = _supported_q(max(v, k - 1))
    q_small = _supported_q(v)
    m = q_small + 1
    d = max(1, math.ceil(math.log(k) / math.log(m)))
    while m**d < k:
        d += 1
    if q_single * q_single <= d * q_small * q_small:
        rows = _affine_rows(q_single, k)
    else:
        rows = _composed_rows(q_small, k)
    return [tuple(val % lengths[i] for i, val in enumerate(row)) for row in rows]
