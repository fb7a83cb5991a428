"""Exact matrix rank over prime fields GF(p).

Matrices are given as a list of sparse rows ``{column: value}``.  Three
elimination back ends are available:

* ``bitset``: rows packed into Python ints, GF(2) only.
* ``dense``: numpy Gaussian elimination modulo ``p``.
* ``sparse``: dict-of-rows elimination, pivoting on the sparsest row and,
  within it, the least populated column (a Markowitz-style fill heuristic).

``method="auto"`` uses ``bitset`` for p = 2, ``dense`` up to
:data:`DENSE_LIMIT` matrix entries and ``sparse`` beyond.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .errors import InputError

DENSE_LIMIT = 1 << 14

Row = dict[int, int]


def is_prime(p: int) -> bool:
    if not isinstance(p, int) or p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def check_prime(p: int) -> int:
    if not is_prime(p):
        raise InputError(f"field characteristic {p!r} is not a prime")
    return p


def rank_bitset(rows: Sequence[int]) -> int:
    """Rank over GF(2) of rows given as int bitmasks."""
    pivots: dict[int, int] = {}
    for r in rows:
        while r:
            low = r & -r
            piv = pivots.get(low)
            if piv is None:
                pivots[low] = r
                break
            r ^= piv
    return len(pivots)


def rank_dense(rows: Sequence[Row], ncols: int, p: int) -> int:
    if not rows or ncols == 0:
        return 0
    a = np.zeros((len(rows), ncols), dtype=np.int64)
    for k, row in enumerate(rows):
        for c, v in row.items():
            a[k, c] = v % p
    rank = 0
    nrows = a.shape[0]
    for c in range(ncols):
        if rank == nrows:
            break
        nz = np.nonzero(a[rank:, c])[0]
        if nz.size == 0:
            continue
        piv = rank + int(nz[0])
        if piv != rank:
            a[[rank, piv]] = a[[piv, rank]]
        inv = pow(int(a[rank, c]), -1, p)
        a[rank] = (a[rank] * inv) % p
        below = a[rank + 1:, c].copy()
        mask = below != 0
        if mask.any():
            a[rank + 1:][mask] = (a[rank + 1:][mask] - np.outer(below[mask], a[rank])) % p
        rank += 1
    return rank


def rank_sparse(rows: Sequence[Row], p: int) -> int:
    work = [{c: v % p for c, v in row.items() if v % p} for row in rows]
    col_rows: dict[int, set[int]] = {}
    for k, row in enumerate(work):
        for c in row:
            col_rows.setdefault(c, set()).add(k)
    alive = {k for k, row in enumerate(work) if row}
    rank = 0
    while alive:
        r = min(alive, key=lambda k: (len(work[k]), k))
        pivot = work[r]
        alive.discard(r)
        c = min(pivot, key=lambda col: (len(col_rows[col]), col))
        for c2 in pivot:
            col_rows[c2].discard(r)
        rank += 1
        inv = pow(pivot[c], -1, p)
        for k in list(col_rows[c]):
            row = work[k]
            f = row[c] * inv % p
            for c2, v in pivot.items():
                nv = (row.get(c2, 0) - f * v) % p
                if nv:
                    if c2 not in row:
                        col_rows[c2].add(k)
                    row[c2] = nv
                elif c2 in row:
                    del row[c2]
                    col_rows[c2].discard(k)
            if not row:
                alive.discard(k)
    return rank


def rank_mod_p(rows: Sequence[Row], ncols: int, p: int, method: str = "auto") -> int:
    """Rank of the matrix over GF(p)."""
    check_prime(p)
    if method == "auto":
        if p == 2:
            method = "bitset"
        elif len(rows) * ncols <= DENSE_LIMIT:
            method = "dense"
        else:
            method = "sparse"
    if method == "bitset":
        if p != 2:
            raise InputError("bitset elimination is GF(2) only")
        return rank_bitset([sum(1 << c for c, v in row.items() if v % 2) for row in rows])
    if method == "dense":
        return rank_dense(rows, ncols, p)
    if method == "sparse":
        return rank_sparse(rows, p)
    raise InputError(f"unknown rank method {method!r}")
