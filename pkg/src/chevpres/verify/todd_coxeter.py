"""HLT Todd-Coxeter coset enumeration over the trivial subgroup.

Relator-table-first (Haselgrove-Leech-Trotter) with the coincidence routine
from Holt's Handbook of Computational Group Theory.  The kernel is compiled
with numba; cosets are numbered in order of definition, and dead rows are
compacted away (order preserving) whenever space runs low.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np
from numba import njit

from ..presentations import Presentation

DEFAULT_MAX_COSETS = 2_000_000

CLOSED, OVERFLOWED = 0, 1


@njit(cache=True)
def _rep(par, c):
    r = c
    while par[r] != r:
        r = par[r]
    while par[c] != r:
        nxt = par[c]
        par[c] = r
        c = nxt
    return r


@njit(cache=True)
def _merge(par, queue, qlen, k, l):
    k = _rep(par, k)
    l = _rep(par, l)
    if k == l:
        return qlen
    if k > l:
        k, l = l, k
    par[l] = k
    queue[qlen] = l
    return qlen + 1


@njit(cache=True)
def _coincidence(table, inv, par, queue, a, b):
    ncols = table.shape[1]
    qlen = _merge(par, queue, 0, a, b)
    i = 0
    while i < qlen:
        e = queue[i]
        i += 1
        for x in range(ncols):
            f = table[e, x]
            if f >= 0:
                xi = inv[x]
                table[f, xi] = -1
                e1 = _rep(par, e)
                f1 = _rep(par, f)
                if table[e1, x] >= 0:
                    qlen = _merge(par, queue, qlen, f1, table[e1, x])
                elif table[f1, xi] >= 0:
                    qlen = _merge(par, queue, qlen, e1, table[f1, xi])
                else:
                    table[e1, x] = f1
                    table[f1, xi] = e1
    return qlen


@njit(cache=True)
def _compact(table, par, n, c):
    """Renumber live cosets 0..m-1 keeping their order; returns (m, new c)."""
    ncols = table.shape[1]
    newid = np.full(n, -1, dtype=np.int64)
    m = 0
    for r in range(n):
        if par[r] == r:
            newid[r] = m
            m += 1
    newc = m
    for r in range(n):
        if r >= c and par[r] == r:
            newc = newid[r]
            break
    for r in range(n):
        if par[r] == r:
            t = newid[r]
            for x in range(ncols):
                v = table[r, x]
                table[t, x] = newid[v] if v >= 0 else -1
    for r in range(m):
        par[r] = r
    return m, newc


@njit(cache=True)
def _enumerate(ncols, inv, rel_letters, rel_starts, max_cosets, reserve):
    table = np.full((max_cosets, ncols), -1, dtype=np.int64)
    par = np.arange(max_cosets, dtype=np.int64)
    queue = np.empty(max_cosets, dtype=np.int64)
    nrels = rel_starts.shape[0] - 1
    n = 1
    total = 1
    c = 0
    while c < n:
        if n + reserve > max_cosets:
            n, c = _compact(table, par, n, c)
            if n + reserve > max_cosets:
                return table, n, total, 1
            if c >= n:
                break
        if par[c] == c:
            for r in range(nrels):
                lo = rel_starts[r]
                hi = rel_starts[r + 1] - 1
                # scan-and-fill coset c under relator r
                while True:
                    f = c
                    i = lo
                    while i <= hi and table[f, rel_letters[i]] >= 0:
                        f = table[f, rel_letters[i]]
                        i += 1
                    if i > hi:
                        if f != c:
                            _coincidence(table, inv, par, queue, f, c)
                        break
                    b = c
                    j = hi
                    while j >= i and table[b, inv[rel_letters[j]]] >= 0:
                        b = table[b, inv[rel_letters[j]]]
                        j -= 1
                    if j < i:
                        _coincidence(table, inv, par, queue, f, b)
                        break
                    if i == j:
                        x = rel_letters[i]
                        table[f, x] = b
                        table[b, inv[x]] = f
                        break
                    # define a new coset at f . rel[i] and rescan
                    x = rel_letters[i]
                    d = n
                    n += 1
                    total += 1
                    par[d] = d
                    for y in range(ncols):
                        table[d, y] = -1
                    table[f, x] = d
                    table[d, inv[x]] = f
                if par[c] != c:
                    break
            if par[c] == c:
                for x in range(ncols):
                    if table[c, x] < 0:
                        d = n
                        n += 1
                        total += 1
                        par[d] = d
                        for y in range(ncols):
                            table[d, y] = -1
                        table[c, x] = d
                        table[d, inv[x]] = c
        c += 1
    n, c = _compact(table, par, n, 0)
    return table, n, total, 0


@dataclass
class CosetTable:
    """Closed table: row i, column 2g (g) / 2g+1 (g^-1) gives the image coset."""

    table: np.ndarray
    status: str
    n_cosets: int
    total_defined: int

    @property
    def order(self) -> int | None:
        return self.n_cosets if self.status == "closed" else None

    def permutation(self, g: int, inverse: bool = False) -> np.ndarray:
        return self.table[:, 2 * g + int(inverse)]


def max_cosets_default() -> int:
    return int(os.environ.get("CHEV_MAX_COSETS", DEFAULT_MAX_COSETS))


def todd_coxeter(pres: Presentation, max_cosets: int | None = None) -> CosetTable:
    """Enumerate cosets of the trivial subgroup.  Overflow is reported in the
    status, not raised."""
    if max_cosets is None:
        max_cosets = max_cosets_default()
    ncols = 2 * pres.d_count
    inv = np.array([x ^ 1 for x in range(ncols)], dtype=np.int64)
    letters: list[int] = []
    starts = [0]
    for w in pres.relators:
        for g, e in w:
            letters.extend([2 * g + (e < 0)] * abs(e))
        starts.append(len(letters))
    # empty relators are harmless but skip them
    rel_letters = np.array(letters, dtype=np.int64)
    rel_starts = np.array(starts, dtype=np.int64)
    reserve = len(letters) + ncols + 1
    if ncols == 0:
        return CosetTable(np.zeros((1, 0), dtype=np.int64), "closed", 1, 1)
    table, n, total, status = _enumerate(ncols, inv, rel_letters, rel_starts,
                                         int(max_cosets), reserve)
    if status == OVERFLOWED:
        return CosetTable(table[:0].copy(), "overflowed", int(n), int(total))
    return CosetTable(table[:n].copy(), "closed", int(n), int(total))
