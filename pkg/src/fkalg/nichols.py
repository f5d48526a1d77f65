"""
Graded dimensions of the Nichols algebra of the transposition braided space.

The degree-``k`` piece is the image of the quantum symmetrizer

    S_k = sum over w in S_k of  c_{i_1} c_{i_2} ... c_{i_l},

where ``s_{i_1} ... s_{i_l}`` is any reduced word for ``w``; the braid
relation makes the product independent of the choice.  Ranks are computed
blockwise: ``S_k`` is block diagonal along the orbits of the braid group on
tensor words, which keeps every elimination small.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from .braided import BraidedSpace, SignedPermMatrix, TensorBudgetExceeded, braid_matrix
from .linalg import (
    DEFAULT_PRIMES, SparseMatrix, nullspace_rational, rank_mod_p, rank_rational,
)
from .presentations import fk_presentation

__all__ = [
    "Permutation", "NicholsDims", "PrimeDisagreement", "lex_reduced_word",
    "reduced_words", "matsumoto_lift", "quantum_symmetrizer",
    "symmetrizer_rank", "nichols_dimension", "nichols_dims",
    "quadratic_kernel_compare", "KernelComparison", "DEFAULT_MAX_TENSOR_DIM",
    "symmetric_group",
]

DEFAULT_MAX_TENSOR_DIM = 50_000


class PrimeDisagreement(ArithmeticError):
    pass


class Permutation(tuple):
    """One-line notation on ``1..k``; ``w[x - 1]`` is the image of ``x``."""

    def __new__(cls, images):
        images = tuple(int(x) for x in images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"not a permutation: {images}")
        return super().__new__(cls, images)

    @classmethod
    def identity(cls, k: int) -> Permutation:
        return cls(range(1, k + 1))

    @classmethod
    def simple(cls, i: int, k: int) -> Permutation:
        w = list(range(1, k + 1))
        w[i - 1], w[i] = w[i], w[i - 1]
        return cls(w)

    @classmethod
    def longest(cls, k: int) -> Permutation:
        return cls(range(k, 0, -1))

    @property
    def size(self) -> int:
        return len(self)

    def __mul__(self, other: Permutation) -> Permutation:
        """Composition: ``(self * other)(x) = self(other(x))``."""
        return Permutation(self[x - 1] for x in other)

    def inverse(self) -> Permutation:
        inv = [0] * len(self)
        for x, y in enumerate(self, start=1):
            inv[y - 1] = x
        return Permutation(inv)

    def length(self) -> int:
        return sum(1 for a, b in itertools.combinations(self, 2) if a > b)

    def left_descents(self) -> list:
        """``i`` with ``l(s_i w) < l(w)``, i.e. ``i + 1`` appears before ``i``."""
        pos = self.inverse()
        return [i for i in range(1, len(self)) if pos[i - 1] > pos[i]]


def lex_reduced_word(w) -> list:
    """Lexicographically smallest reduced word ``[i_1, ..., i_l]`` with ``w = s_{i_1}...s_{i_l}``."""
    w = Permutation(w)
    word = []
    while True:
        desc = w.left_descents()
        if not desc:
            return word
        i = desc[0]
        word.append(i)
        w = Permutation.simple(i, len(w)) * w


def reduced_words(w) -> list:
    """Every reduced word of ``w``, in lexicographic order."""
    w = Permutation(w)
    desc = w.left_descents()
    if not desc:
        return [[]]
    out = []
    for i in desc:
        rest = Permutation.simple(i, len(w)) * w
        out.extend([i] + tail for tail in reduced_words(rest))
    return out


def matsumoto_lift(w, space: BraidedSpace, k: int | None = None, word=None,
                   max_dim=None) -> SignedPermMatrix:
    """``c_{i_1} ... c_{i_l}`` along a reduced word of ``w`` (lex-smallest by default)."""
    w = Permutation(w)
    if k is None:
        k = len(w)
    if len(w) != k:
        raise ValueError("permutation size differs from tensor power")
    if word is None:
        word = lex_reduced_word(w)
    if max_dim is not None and space.tensor_dim(k) > max_dim:
        raise TensorBudgetExceeded(f"tensor dimension {space.tensor_dim(k)} exceeds budget {max_dim}")
    gens = {i: braid_matrix(space, k, i) for i in set(word)}
    out = SignedPermMatrix.identity(space.tensor_dim(k))
    for i in word:
        out = out @ gens[i]
    return out


def _all_lifts(space: BraidedSpace, k: int):
    """Lifts of every permutation in ``S_k``, grown along the left weak order."""
    dim = space.tensor_dim(k)
    gens = [None] + [braid_matrix(space, k, i) for i in range(1, k)]
    start = Permutation.identity(k)
    lifts = {start: SignedPermMatrix.identity(dim)}
    frontier = [start]
    while frontier:
        nxt = []
        for w in frontier:
            for i in range(1, k):
                v = Permutation.simple(i, k) * w
                if v in lifts or v.length() != w.length() + 1:
                    continue
                lifts[v] = gens[i] @ lifts[w]
                nxt.append(v)
        frontier = sorted(nxt)
    return lifts


def _sum_signed(mats, dim) -> SparseMatrix:
    rows = np.concatenate([m.perm for m in mats])
    cols = np.tile(np.arange(dim, dtype=np.int64), len(mats))
    vals = np.concatenate([m.sign.astype(np.int64) for m in mats])
    return SparseMatrix(sp.csr_matrix((vals, (rows, cols)), shape=(dim, dim)))


def quantum_symmetrizer(space: BraidedSpace, k: int, method: str = "direct",
                        max_dim: int | None = DEFAULT_MAX_TENSOR_DIM) -> SparseMatrix:
    """Quantum symmetrizer on ``V^(x)k``.

    ``method="direct"`` sums all ``k!`` lifts; ``method="factorized"`` uses
    ``S_k = (id (x) S_{k-1}) (1 + c_1 + c_1 c_2 + ... + c_1 ... c_{k-1})``.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    if max_dim is not None and space.tensor_dim(k) > max_dim:
        raise TensorBudgetExceeded(
            f"tensor dimension {space.tensor_dim(k)} exceeds budget {max_dim}"
        )
    dim = space.tensor_dim(k)
    if k <= 1:
        return SparseMatrix.identity(dim)
    if method == "direct":
        lifts = _all_lifts(space, k)
        return _sum_signed([lifts[w] for w in sorted(lifts)], dim)
    if method != "factorized":
        raise ValueError(f"unknown method {method!r}")
    prev = quantum_symmetrizer(space, k - 1, "factorized", max_dim)
    # id (x) S_{k-1}: block diagonal with one copy per first tensor factor
    inner = SparseMatrix(sp.kron(sp.identity(space.dim, dtype=np.int64, format="csr"), prev.csr))
    chain = [SignedPermMatrix.identity(dim)]
    for i in range(1, k):
        chain.append(chain[-1] @ braid_matrix(space, k, i))
    return inner @ _sum_signed(chain, dim)


def _block_rank(args):
    rows, backend, primes = args
    if backend == "rational":
        return (rank_rational(rows),)
    return tuple(rank_mod_p(rows, p) for p in primes)


def symmetrizer_rank(sym: SparseMatrix, backend: str = "modular",
                     primes=DEFAULT_PRIMES, workers: int = 1) -> dict:
    """Rank of a symmetrizer, block by block.

    ``backend`` is ``"modular"`` (every prime in ``primes`` must agree; a
    disagreement falls back to exact rationals), ``"rational"`` or
    ``"both"`` (modular and rational, which must agree).
    """
    blocks = sym.blocks()
    jobs_rows = [sym.submatrix_rows(b) for b in blocks]
    result = {"backend": backend, "primes": list(primes) if backend != "rational" else [],
              "blocks": len(blocks), "fallback": False}
    kinds = ["modular", "rational"] if backend == "both" else [backend]
    for kind in kinds:
        jobs = [(rows, kind, tuple(primes)) for rows in jobs_rows]
        if workers > 1 and len(jobs) > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                ranks = list(pool.map(_block_rank, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
        else:
            ranks = [_block_rank(j) for j in jobs]
        if kind == "modular":
            per_prime = [sum(r[i] for r in ranks) for i in range(len(primes))]
            result["per_prime"] = per_prime
            if len(set(per_prime)) == 1:
                result["rank"] = per_prime[0]
            else:
                result["fallback"] = True
                result["rank"] = sum(rank_rational(rows) for rows in jobs_rows)
                result["rational_rank"] = result["rank"]
        else:
            rat = sum(r[0] for r in ranks)
            result["rational_rank"] = rat
            if "rank" in result and result["rank"] != rat:
                raise PrimeDisagreement(
                    f"modular rank {result['rank']} differs from rational rank {rat}"
                )
            result["rank"] = rat
    return result


def nichols_dimension(space: BraidedSpace, k: int, backend: str = "modular",
                      primes=DEFAULT_PRIMES, max_dim=DEFAULT_MAX_TENSOR_DIM,
                      workers: int = 1) -> int:
    """Dimension of the degree-``k`` piece of the Nichols algebra."""
    if k == 0:
        return 1
    if k == 1:
        return space.dim
    sym = quantum_symmetrizer(space, k, max_dim=max_dim)
    return symmetrizer_rank(sym, backend, primes, workers)["rank"]


@dataclass
class NicholsDims:
    n: int
    dims: list
    method: str
    primes_used: list = field(default_factory=list)
    details: list = field(default_factory=list, repr=False)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "dims": list(self.dims),
            "method": self.method,
            "primes_used": list(self.primes_used),
            "blocks": [d.get("blocks") for d in self.details],
        }


def nichols_dims(n: int, max_degree: int, backend: str = "modular",
                 primes=DEFAULT_PRIMES, max_dim=DEFAULT_MAX_TENSOR_DIM,
                 workers: int = 1) -> NicholsDims:
    """Nichols dimensions in degrees ``0..max_degree``.

    Stops early (filling zeros) once a degree vanishes: the symmetrizer of a
    longer word factors through the shorter one.
    """
    space = BraidedSpace(n)
    dims = [1]
    details = [{"rank": 1, "blocks": 1}]
    for k in range(1, max_degree + 1):
        if dims[-1] == 0:
            dims.append(0)
            details.append({"rank": 0, "blocks": 0, "implied": True})
            continue
        if k == 1:
            dims.append(space.dim)
            details.append({"rank": space.dim, "blocks": space.dim})
            continue
        sym = quantum_symmetrizer(space, k, max_dim=max_dim)
        info = symmetrizer_rank(sym, backend, primes, workers)
        dims.append(info["rank"])
        details.append(info)
    return NicholsDims(
        n=n,
        dims=dims,
        method=backend,
        primes_used=[] if backend == "rational" else list(primes),
        details=details,
    )


@dataclass
class KernelComparison:
    verdict: str  # "equal", "fk_strictly_inside" or "incomparable"
    kernel_dim: int
    relation_dim: int
    joint_dim: int
    codimension: int = 0

    def __str__(self):
        if self.verdict == "equal":
            return f"equal (dim {self.kernel_dim})"
        if self.verdict == "fk_strictly_inside":
            return f"fk_strictly_inside (codim {self.codimension})"
        return "incomparable"

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "kernel_dim": self.kernel_dim,
            "relation_dim": self.relation_dim,
            "joint_dim": self.joint_dim,
            "codimension": self.codimension,
        }


def quadratic_kernel_compare(n: int) -> KernelComparison:
    """Compare ``ker S_2`` with the span of the quadratic relations, exactly."""
    space = BraidedSpace(n)
    m = space.dim
    sym = quantum_symmetrizer(space, 2, max_dim=None)
    kernel = []
    for block in sym.blocks():
        for vec in nullspace_rational(sym.submatrix_rows(block), len(block)):
            kernel.append({int(block[c]): v for c, v in vec.items()})
    relations = [
        {a * m + b: c for (a, b), c in rel.terms.items()}
        for rel in fk_presentation(n).relations
    ]
    k_dim = len(kernel)
    r_dim = rank_rational(relations)
    joint = rank_rational(kernel + relations)
    if joint == k_dim == r_dim:
        return KernelComparison("equal", k_dim, r_dim, joint)
    if joint == k_dim:
        return KernelComparison("fk_strictly_inside", k_dim, r_dim, joint, k_dim - r_dim)
    return KernelComparison("incomparable", k_dim, r_dim, joint)


def symmetric_group(k: int) -> list:
    return [Permutation(p) for p in itertools.permutations(range(1, k + 1))]

