"""
Exact rank and nullspace computations for sparse integer matrices.

Rows are dicts ``column -> value``.  Elimination picks pivots with a
Markowitz-style rule: the sparsest remaining row, and inside it the column
with the fewest remaining entries, which keeps fill-in low on the very
sparse symmetrizer blocks.
"""

from __future__ import annotations

import heapq
from fractions import Fraction

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components

__all__ = [
    "DEFAULT_PRIMES", "SparseMatrix", "rank_mod_p", "rank_rational",
    "nullspace_rational", "block_components", "is_probable_prime",
]

DEFAULT_PRIMES = (2147483629, 2147483587)


def is_probable_prime(p: int) -> bool:
    if p < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if p % q == 0:
            return p == q
    d, s = p - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(s - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


class SparseMatrix:
    """Integer matrix stored as CSR; thin wrapper with exact rank helpers."""

    def __init__(self, data):
        if isinstance(data, SparseMatrix):
            data = data.csr
        m = sp.csr_matrix(data, dtype=np.int64)
        m.eliminate_zeros()
        m.sort_indices()
        self.csr = m

    @classmethod
    def identity(cls, dim: int) -> SparseMatrix:
        return cls(sp.identity(dim, dtype=np.int64, format="csr"))

    @property
    def shape(self):
        return self.csr.shape

    @property
    def nnz(self) -> int:
        return self.csr.nnz

    def __add__(self, other):
        return SparseMatrix(self.csr + _csr(other))

    def __sub__(self, other):
        return SparseMatrix(self.csr - _csr(other))

    def __matmul__(self, other):
        return SparseMatrix(self.csr @ _csr(other))

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.shape == other.shape and (self.csr != other.csr).nnz == 0

    def toarray(self) -> np.ndarray:
        return self.csr.toarray()

    def rows(self, indices=None) -> list[dict]:
        m = self.csr
        idx = range(m.shape[0]) if indices is None else indices
        out = []
        for r in idx:
            lo, hi = m.indptr[r], m.indptr[r + 1]
            out.append(dict(zip(m.indices[lo:hi].tolist(), m.data[lo:hi].tolist())))
        return out

    def blocks(self) -> list[np.ndarray]:
        """Index sets of a block-diagonal decomposition (row index = column index)."""
        return block_components(self.csr)

    def submatrix_rows(self, block) -> list[dict]:
        """Rows of the principal submatrix on ``block``, relabelled ``0..len-1``."""
        sub = self.csr[block][:, block]
        return SparseMatrix(sub).rows()


def _csr(x):
    return x.csr if isinstance(x, SparseMatrix) else sp.csr_matrix(x)


def block_components(m) -> list[np.ndarray]:
    m = _csr(m)
    if m.shape[0] != m.shape[1]:
        raise ValueError("block decomposition needs a square matrix")
    pattern = (abs(m) + abs(m.T)).tocsr()
    ncomp, labels = connected_components(pattern, directed=False)
    order = np.argsort(labels, kind="stable")
    bounds = np.searchsorted(labels[order], np.arange(ncomp + 1))
    return [order[bounds[c]:bounds[c + 1]] for c in range(ncomp)]


def _eliminate(rows, reduce_value, divide):
    """Markowitz-style elimination; returns the rank."""
    rows = {r: dict(row) for r, row in enumerate(rows) if row}
    col_rows: dict = {}
    for r, row in rows.items():
        for c in row:
            col_rows.setdefault(c, set()).add(r)
    heap = [(len(row), r) for r, row in rows.items()]
    heapq.heapify(heap)
    rank = 0
    while heap:
        size, r = heapq.heappop(heap)
        row = rows.get(r)
        if row is None:
            continue
        if not row:
            del rows[r]
            continue
        if size != len(row):
            heapq.heappush(heap, (len(row), r))
            continue
        pc = min(row, key=lambda c: (len(col_rows[c]), c))
        pv = row[pc]
        del rows[r]
        for c in row:
            col_rows[c].discard(r)
        rank += 1
        for t in sorted(col_rows[pc]):
            trow = rows[t]
            f = divide(trow[pc], pv)
            for c, v in row.items():
                nv = reduce_value(trow.get(c, 0) - f * v)
                if nv:
                    if c not in trow:
                        col_rows.setdefault(c, set()).add(t)
                    trow[c] = nv
                elif c in trow:
                    del trow[c]
                    col_rows[c].discard(t)
            heapq.heappush(heap, (len(trow), t))
        del col_rows[pc]
    return rank


def rank_mod_p(rows, p: int) -> int:
    """Rank over GF(p) of integer rows (dicts column -> value)."""
    rows = [{c: v % p for c, v in row.items() if v % p} for row in rows]
    return _eliminate(
        rows,
        reduce_value=lambda v: v % p,
        divide=lambda a, b: a * pow(b, -1, p) % p,
    )


def _qnorm(v):
    if type(v) is int:
        return v
    return v.numerator if v.denominator == 1 else v


def rank_rational(rows) -> int:
    """Exact rank over the rationals."""
    rows = [{c: v for c, v in row.items() if v} for row in rows]
    return _eliminate(
        rows,
        reduce_value=_qnorm,
        divide=lambda a, b: _qnorm(Fraction(a, b)) if type(a) is int and type(b) is int
        else _qnorm(Fraction(a) / Fraction(b)),
    )


def nullspace_rational(rows, ncols: int) -> list[dict]:
    """Basis of the right nullspace ``{x : A x = 0}`` as sparse rational vectors."""
    pivots: dict = {}
    for row in rows:
        row = {c: v for c, v in row.items() if v}
        for c in sorted(pivots):
            if c in row:
                f = row[c]
                for k, v in pivots[c].items():
                    nv = _qnorm(row.get(k, 0) - f * v)
                    if nv:
                        row[k] = nv
                    else:
                        row.pop(k, None)
        if not row:
            continue
        pc = min(row)
        inv = Fraction(1) / Fraction(row[pc])
        row = {k: _qnorm(v * inv) for k, v in row.items()}
        for c, prow in pivots.items():
            if pc in prow:
                f = prow[pc]
                for k, v in row.items():
                    nv = _qnorm(prow.get(k, 0) - f * v)
                    if nv:
                        prow[k] = nv
                    else:
                        prow.pop(k, None)
        pivots[pc] = row
    basis = []
    for free in range(ncols):
        if free in pivots:
            continue
        vec = {free: 1}
        for c, prow in pivots.items():
            v = prow.get(free)
            if v:
                vec[c] = _qnorm(-v)
        basis.append(vec)
    return basis
