"""
The braided vector space spanned by transpositions.

Basis vectors ``v_t`` are labelled by the transpositions of ``S_n`` in the
same order as the generators of :func:`~fkalg.presentations.fk_presentation`.
The braiding sends ``v_s (x) v_t`` to ``chi(s, t) v_{s t s^-1} (x) v_s`` with
``chi(s, (i j)) = +1`` exactly when ``s(i) < s(j)``.

On tensor powers the braiding acting on two adjacent factors permutes the
tensor-word basis up to sign, so it is stored as a :class:`SignedPermMatrix`.
Tensor words are ordered lexicographically by basis index, which is also the
order used for words in the free algebra.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .linalg import SparseMatrix
from .presentations import Transposition, transpositions

__all__ = [
    "BraidedSpace", "SignedPermMatrix", "chi", "braid_on_basis",
    "braid_matrix", "check_yang_baxter", "TensorBudgetExceeded",
]


class TensorBudgetExceeded(MemoryError):
    pass


def chi(sigma: Transposition, tau: Transposition) -> int:
    return 1 if sigma(tau.i) < sigma(tau.j) else -1


def braid_on_basis(sigma: Transposition, tau: Transposition):
    """``c(v_sigma (x) v_tau)`` as ``(sign, left label, right label)``."""
    return chi(sigma, tau), sigma.conjugate(tau), sigma


class BraidedSpace:
    def __init__(self, n: int):
        if n < 3:
            raise ValueError("n must be at least 3")
        self.n = n
        self.basis = transpositions(n)
        self.index = {t: k for k, t in enumerate(self.basis)}
        m = len(self.basis)
        signs = np.empty((m, m), dtype=np.int8)
        left = np.empty((m, m), dtype=np.int64)
        for a, s in enumerate(self.basis):
            for b, t in enumerate(self.basis):
                sign, u, _ = braid_on_basis(s, t)
                signs[a, b] = sign
                left[a, b] = self.index[u]
        # c(v_a (x) v_b) = signs[a, b] * v_{left[a, b]} (x) v_a
        self.pair_sign = signs
        self.pair_left = left

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __repr__(self):
        return f"BraidedSpace(n={self.n}, dim={self.dim})"

    def __eq__(self, other):
        return isinstance(other, BraidedSpace) and other.n == self.n

    def __hash__(self):
        return hash(("BraidedSpace", self.n))

    def tensor_dim(self, k: int) -> int:
        return self.dim ** k

    def encode(self, word) -> int:
        m = self.dim
        idx = 0
        for a in word:
            idx = idx * m + a
        return idx

    def decode(self, index: int, k: int) -> tuple:
        m = self.dim
        out = []
        for _ in range(k):
            index, a = divmod(index, m)
            out.append(a)
        return tuple(reversed(out))


@dataclass(frozen=True)
class SignedPermMatrix:
    """Column ``j`` has a single entry ``sign[j]`` in row ``perm[j]``."""

    perm: np.ndarray
    sign: np.ndarray

    @property
    def dimension(self) -> int:
        return len(self.perm)

    @classmethod
    def identity(cls, dim: int) -> SignedPermMatrix:
        return cls(np.arange(dim, dtype=np.int64), np.ones(dim, dtype=np.int8))

    def __matmul__(self, other: SignedPermMatrix) -> SignedPermMatrix:
        if self.dimension != other.dimension:
            raise ValueError("dimension mismatch")
        return SignedPermMatrix(
            self.perm[other.perm],
            (self.sign[other.perm] * other.sign).astype(np.int8),
        )

    def inverse(self) -> SignedPermMatrix:
        perm = np.empty_like(self.perm)
        perm[self.perm] = np.arange(self.dimension)
        sign = np.empty_like(self.sign)
        sign[self.perm] = self.sign
        return SignedPermMatrix(perm, sign)

    def apply(self, column: int):
        """Image of basis vector ``column`` as ``(row, sign)``."""
        return int(self.perm[column]), int(self.sign[column])

    def is_signed_permutation(self) -> bool:
        return (
            np.array_equal(np.sort(self.perm), np.arange(self.dimension))
            and bool(np.all(np.abs(self.sign) == 1))
        )

    def __eq__(self, other):
        if not isinstance(other, SignedPermMatrix):
            return NotImplemented
        return np.array_equal(self.perm, other.perm) and np.array_equal(self.sign, other.sign)

    def __hash__(self):
        return hash((self.perm.tobytes(), self.sign.tobytes()))

    def to_sparse(self) -> SparseMatrix:
        n = self.dimension
        m = sp.csr_matrix(
            (self.sign.astype(np.int64), (self.perm, np.arange(n))), shape=(n, n)
        )
        return SparseMatrix(m)

    def toarray(self) -> np.ndarray:
        return self.to_sparse().toarray()

    def fixed_columns(self) -> list:
        return [int(j) for j in np.nonzero(self.perm == np.arange(self.dimension))[0]]


def _check_budget(space: BraidedSpace, k: int, max_dim):
    if max_dim is not None and space.tensor_dim(k) > max_dim:
        raise TensorBudgetExceeded(
            f"tensor dimension {space.tensor_dim(k)} exceeds budget {max_dim}"
        )


def braid_matrix(space: BraidedSpace, k: int, slot: int, max_dim=None) -> SignedPermMatrix:
    """Braiding on tensor factors ``slot`` and ``slot + 1`` (1-based) of ``V^(x)k``."""
    if not 1 <= slot <= k - 1:
        raise ValueError(f"slot {slot} out of range for k={k}")
    _check_budget(space, k, max_dim)
    m = space.dim
    cols = np.arange(m ** k, dtype=np.int64)
    # digits of each column index: position 0 is the leftmost tensor factor
    lo = m ** (k - slot - 1)
    a = (cols // (m * lo)) % m
    b = (cols // lo) % m
    rest = cols - (a * m + b) * lo
    new_left = space.pair_left[a, b]
    perm = rest + (new_left * m + a) * lo
    sign = space.pair_sign[a, b].astype(np.int8)
    return SignedPermMatrix(perm, sign)


def check_yang_baxter(space: BraidedSpace, k: int = 3) -> bool:
    """Braid relation ``c1 c2 c1 = c2 c1 c2`` on every basis vector of ``V^(x)3``."""
    if k != 3:
        raise ValueError("the braid relation is checked on the third tensor power")
    c1 = braid_matrix(space, 3, 1)
    c2 = braid_matrix(space, 3, 2)
    return (c1 @ c2 @ c1) == (c2 @ c1 @ c2)
