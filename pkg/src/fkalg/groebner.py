"""
Degree-truncated noncommutative Buchberger procedure for graded ideals.

For a homogeneous ideal the reduced Groebner basis can be built one degree at
a time: every obstruction (overlap of two leading words) of S-degree ``d``
only involves basis elements of lower degree, so once degree ``d`` has been
processed nothing of degree ``<= d`` changes again.  Stopping after degree
``D`` therefore gives a basis that is exact through ``D``, and normal words
of degree ``<= D`` count the graded pieces of the quotient exactly.

Inside a degree all S-polynomials are reduced against the (frozen) lower
basis; normal forms of individual words are memoised for the duration of
the degree.  The reduced polynomials are then brought to reduced row
echelon form, which yields the new basis elements already tail-reduced.
Since the reduced basis of each degree is unique, the result does not
depend on processing order or on how the reductions are distributed over
workers.
"""

from __future__ import annotations

import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .automaton import FactorAutomaton
from .ncpoly import DEGLEX, MonomialOrder, NCPolynomial
from .presentations import Presentation

__all__ = [
    "Obstruction", "HilbertSeries", "TruncatedGroebnerBasis", "Budget",
    "BudgetExceeded", "DegreeBoundError", "Inconclusive",
    "truncated_groebner", "normal_form", "hilbert_coefficients", "dimension",
]

log = logging.getLogger(__name__)


class BudgetExceeded(RuntimeError):
    """The basis computation hit a resource cap.

    ``partial`` holds the basis complete through ``partial.complete_to``.
    """

    def __init__(self, message, partial: "TruncatedGroebnerBasis"):
        super().__init__(message)
        self.partial = partial


class DegreeBoundError(ValueError):
    """A query went past the degree up to which the basis is known."""


@dataclass(frozen=True)
class Budget:
    max_basis: Optional[int] = None
    max_reductions: Optional[int] = None
    time_limit: Optional[float] = None

    @classmethod
    def from_env(cls, **overrides) -> Budget:
        def read(name, cast):
            raw = os.environ.get(name)
            return cast(raw) if raw else None

        values = dict(
            max_basis=read("FKALG_MAX_BASIS", int),
            max_reductions=read("FKALG_MAX_REDUCTIONS", int),
            time_limit=read("FKALG_TIME_LIMIT", float),
        )
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)


@dataclass(frozen=True, order=True)
class Obstruction:
    """Overlap of ``lm(left)`` and ``lm(right)``.

    The right leading word starts ``shift`` letters into the left one, so
    the common multiple is ``lm(left) + lm(right)[len(lm(left)) - shift:]``.
    """

    degree: int
    left: int
    right: int
    shift: int

    def s_word(self, left_lm, right_lm):
        overlap = len(left_lm) - self.shift
        return left_lm + right_lm[overlap:]


@dataclass
class HilbertSeries:
    coefficients: list
    exact_to: int
    complete: bool = False

    def __getitem__(self, d):
        return self.coefficients[d]

    def __len__(self):
        return len(self.coefficients)

    @property
    def degree(self) -> int:
        """Top degree with a nonzero coefficient."""
        return max((d for d, c in enumerate(self.coefficients) if c), default=-1)

    def value_at_one(self) -> int:
        return sum(self.coefficients)

    def trimmed(self) -> list:
        return self.coefficients[: self.degree + 1]

    def to_dict(self) -> dict:
        return {
            "coefficients": list(self.coefficients),
            "exact_to": self.exact_to,
            "complete": self.complete,
        }


@dataclass
class Inconclusive:
    """Dimension could not be decided; ``partial_sum`` covers exact degrees."""

    partial_sum: int
    exact_to: int

    def __str__(self):
        return f"inconclusive (>= {self.partial_sum} through degree {self.exact_to})"


@dataclass
class TruncatedGroebnerBasis:
    presentation: Presentation
    order: MonomialOrder
    max_degree: int
    complete_to: int
    elements: list = field(repr=False)
    stats: dict = field(default_factory=dict, repr=False)
    # internal data in relabelled letters (letter r = generator priority[r])
    _lms: list = field(default=None, repr=False)
    _tails: list = field(default=None, repr=False)
    _to_internal: tuple = field(default=None, repr=False)
    _to_external: tuple = field(default=None, repr=False)
    _weights: tuple = field(default=None, repr=False)
    _nf_cache: dict = field(default_factory=dict, repr=False)

    def __len__(self):
        return len(self.elements)

    def leading_words(self) -> list:
        ext = self._to_external
        return [tuple(ext[a] for a in w) for w in self._lms]

    def degrees(self) -> list:
        return [_wdeg(w, self._weights) for w in self._lms]


def _wdeg(word, weights):
    if weights is None:
        return len(word)
    return sum(weights[a] for a in word)


class _Engine:
    """Mutable state of one basis computation."""

    def __init__(self, p: Presentation, order: MonomialOrder):
        self.p = p
        self.field = p.field
        self.mod = p.field.modulus
        rank = order.rank_map(p.ngens)
        self.to_internal = rank
        ext = [0] * p.ngens
        for g, r in enumerate(rank):
            ext[r] = g
        self.to_external = tuple(ext)
        self.weights = None if p.is_standard_graded() else tuple(
            p.degrees[ext[r]] for r in range(p.ngens)
        )
        self.lms: list = []
        self.tails: list = []
        self.lm_index: dict = {}
        self.lm_lengths: set = set()
        # (prefix, weighted degree of element) -> element indices
        self.prefix_index: dict = {}
        self.relations_by_degree: dict = {}
        for rel in p.relations:
            d = p.relation_degree(rel)
            terms = {tuple(rank[g] for g in w): c for w, c in rel.terms.items()}
            self.relations_by_degree.setdefault(d, []).append(terms)
        self.cache: dict = {}
        self.reductions = 0

    def wdeg(self, word):
        return _wdeg(word, self.weights)

    def find_reducer(self, w):
        lm_index = self.lm_index
        n = len(w)
        lengths = self.lm_lengths
        for i in range(n):
            for length in lengths:
                j = i + length
                if j <= n:
                    k = lm_index.get(w[i:j])
                    if k is not None:
                        return k, i
        return None

    def nf_word(self, w):
        """Normal form of a word modulo the current basis, as a dict."""
        cache = self.cache
        hit = cache.get(w)
        if hit is not None:
            return hit
        mod = self.mod
        stack = [w]
        pending = {}
        while stack:
            x = stack[-1]
            if x in cache:
                stack.pop()
                continue
            red = pending.get(x)
            if red is None:
                red = self.find_reducer(x)
                if red is None:
                    cache[x] = {x: 1}
                    stack.pop()
                    continue
                k, i = red
                a, b = x[:i], x[i + len(self.lms[k]):]
                children = [(a + t + b, c) for t, c in self.tails[k]]
                pending[x] = children
                missing = [y for y, _ in children if y not in cache]
                if missing:
                    stack.extend(missing)
                    continue
            else:
                children = red
            acc = {}
            for y, c in children:
                for z, e in cache[y].items():
                    acc[z] = acc.get(z, 0) - c * e
            if mod:
                acc = {z: v % mod for z, v in acc.items() if v % mod}
            else:
                acc = {z: _norm(v) for z, v in acc.items() if v}
            cache[x] = acc
            del pending[x]
            stack.pop()
        return cache[w]

    def reduce(self, terms):
        """Normal form of a linear combination ``[(word, coeff), ...]``."""
        acc = {}
        for w, c in terms:
            for z, e in self.nf_word(w).items():
                acc[z] = acc.get(z, 0) + c * e
        mod = self.mod
        if mod:
            return {z: v % mod for z, v in acc.items() if v % mod}
        return {z: _norm(v) for z, v in acc.items() if v}

    def obstructions(self, d):
        """All overlaps of S-degree ``d`` among current elements, sorted."""
        out = []
        lms = self.lms
        wdeg = self.wdeg
        for i, u in enumerate(lms):
            du = wdeg(u)
            if du >= d:
                continue
            for s in range(1, len(u)):
                suffix = u[len(u) - s:]
                target = d - du + wdeg(suffix)
                for j in self.prefix_index.get((suffix, target), ()):
                    if s < len(lms[j]):
                        out.append(Obstruction(d, i, j, len(u) - s))
        out.sort()
        return out

    def s_polynomial_terms(self, ob: Obstruction):
        u, v = self.lms[ob.left], self.lms[ob.right]
        overlap = len(u) - ob.shift
        right_ext = v[overlap:]
        left_ext = u[: ob.shift]
        terms = [(t + right_ext, c) for t, c in self.tails[ob.left]]
        terms += [(left_ext + t, -c) for t, c in self.tails[ob.right]]
        return terms

    def add_element(self, lm, tail):
        k = len(self.lms)
        self.lms.append(lm)
        self.tails.append(tail)
        self.lm_index[lm] = k
        self.lm_lengths.add(len(lm))
        dk = self.wdeg(lm)
        for s in range(1, len(lm)):
            self.prefix_index.setdefault((lm[:s], dk), []).append(k)


def _norm(v):
    if type(v) is int:
        return v
    return v.numerator if v.denominator == 1 else v


def _echelon(rows, mod):
    """Reduced row echelon form of sparse rows (dicts word -> coeff)."""
    pivots = {}
    for row in rows:
        row = dict(row)
        while row:
            lm = max(row)
            piv = pivots.get(lm)
            if piv is None:
                lc = row[lm]
                if mod:
                    inv = pow(lc, -1, mod)
                    row = {w: c * inv % mod for w, c in row.items()}
                elif lc != 1:
                    row = {w: _norm(Fraction(c) / lc) for w, c in row.items()}
                pivots[lm] = row
                break
            c = row[lm]
            for w, e in piv.items():
                v = row.get(w, 0) - c * e
                if mod:
                    v %= mod
                else:
                    v = _norm(v)
                if v:
                    row[w] = v
                else:
                    row.pop(w, None)
    for lm in sorted(pivots):
        row = pivots[lm]
        for w in sorted((w for w in row if w != lm and w in pivots), reverse=True):
            c = row.get(w)
            if not c:
                continue
            for z, e in pivots[w].items():
                v = row.get(z, 0) - c * e
                if mod:
                    v %= mod
                else:
                    v = _norm(v)
                if v:
                    row[z] = v
                else:
                    row.pop(z, None)
    return [(lm, pivots[lm]) for lm in sorted(pivots)]


_WORKER_ENGINE: Optional[_Engine] = None


def _reduce_chunk(chunk):
    eng = _WORKER_ENGINE
    return [eng.reduce(terms) for terms in chunk]


def _reduce_all(engine: _Engine, candidates, workers: int):
    if workers <= 1 or len(candidates) < 64:
        return [engine.reduce(t) for t in candidates]
    global _WORKER_ENGINE
    _WORKER_ENGINE = engine
    try:
        import multiprocessing as mp

        ctx = mp.get_context("fork")
        size = -(-len(candidates) // workers)
        chunks = [candidates[i:i + size] for i in range(0, len(candidates), size)]
        with ProcessPoolExecutor(max_workers=workers, mp_context=ctx) as pool:
            results = list(pool.map(_reduce_chunk, chunks))
    finally:
        _WORKER_ENGINE = None
    return [r for part in results for r in part]


def truncated_groebner(
    p: Presentation,
    order: MonomialOrder = DEGLEX,
    max_degree: int = 6,
    budget: Budget = Budget(),
    workers: int = 1,
) -> TruncatedGroebnerBasis:
    """Reduced Groebner basis of the ideal of ``p``, complete through ``max_degree``.

    Raises :class:`BudgetExceeded` (carrying the basis complete through the
    last finished degree) when a cap in ``budget`` is hit.
    """
    top_rel = max((p.relation_degree(r) for r in p.relations), default=0)
    if max_degree < top_rel:
        raise ValueError(f"max_degree {max_degree} below relation degree {top_rel}")
    eng = _Engine(p, order)
    started = time.perf_counter()
    per_degree = []
    complete_to = 0
    for d in range(1, max_degree + 1):
        t0 = time.perf_counter()
        eng.cache = {}
        obs = eng.obstructions(d)
        candidates = [list(r.items()) for r in eng.relations_by_degree.get(d, [])]
        candidates += [eng.s_polynomial_terms(ob) for ob in obs]
        if budget.max_reductions is not None and eng.reductions + len(candidates) > budget.max_reductions:
            raise BudgetExceeded(
                f"reduction budget exhausted in degree {d}",
                _finish(eng, p, order, max_degree, complete_to, per_degree, started),
            )
        eng.reductions += len(candidates)
        reduced = [r for r in _reduce_all(eng, candidates, workers) if r]
        new = _echelon(reduced, eng.mod)
        for lm, row in new:
            tail = [(w, c) for w, c in sorted(row.items(), reverse=True) if w != lm]
            eng.add_element(lm, tail)
        per_degree.append({
            "degree": d,
            "obstructions": len(obs),
            "new_elements": len(new),
            "basis_size": len(eng.lms),
            "seconds": round(time.perf_counter() - t0, 6),
        })
        log.info("degree %d: %d obstructions, %d new, basis %d",
                 d, len(obs), len(new), len(eng.lms))
        complete_to = d
        if d == max_degree:
            break
        if budget.max_basis is not None and len(eng.lms) > budget.max_basis:
            raise BudgetExceeded(
                f"basis size {len(eng.lms)} exceeds cap {budget.max_basis} in degree {d}",
                _finish(eng, p, order, max_degree, complete_to, per_degree, started),
            )
        if budget.time_limit is not None and time.perf_counter() - started > budget.time_limit:
            raise BudgetExceeded(
                f"time limit reached after degree {d}",
                _finish(eng, p, order, max_degree, complete_to, per_degree, started),
            )
    return _finish(eng, p, order, max_degree, complete_to, per_degree, started)


def _finish(eng, p, order, max_degree, complete_to, per_degree, started):
    # elements of degree above complete_to never get stored, so nothing to trim
    ext = eng.to_external
    elements = []
    for lm, tail in zip(eng.lms, eng.tails):
        terms = {tuple(ext[a] for a in lm): 1}
        for w, c in tail:
            terms[tuple(ext[a] for a in w)] = c
        elements.append(NCPolynomial._raw(terms, eng.field))
    return TruncatedGroebnerBasis(
        presentation=p,
        order=order,
        max_degree=max_degree,
        complete_to=complete_to,
        elements=elements,
        stats={
            "per_degree": per_degree,
            "reductions": eng.reductions,
            "seconds": round(time.perf_counter() - started, 6),
        },
        _lms=list(eng.lms),
        _tails=list(eng.tails),
        _to_internal=eng.to_internal,
        _to_external=eng.to_external,
        _weights=eng.weights,
    )


def _engine_for(gb: TruncatedGroebnerBasis) -> _Engine:
    eng = _Engine.__new__(_Engine)
    eng.mod = gb.presentation.field.modulus
    eng.lms = gb._lms
    eng.tails = gb._tails
    eng.lm_index = {w: k for k, w in enumerate(gb._lms)}
    eng.lm_lengths = {len(w) for w in gb._lms}
    eng.cache = gb._nf_cache
    return eng


def normal_form(f: NCPolynomial, gb: TruncatedGroebnerBasis) -> NCPolynomial:
    """Reduce ``f`` modulo the basis; every word of the result is normal."""
    weights = gb._weights
    if f.field != gb.presentation.field:
        raise ValueError("polynomial and basis live over different fields")
    rank = gb._to_internal
    internal = [(tuple(rank[g] for g in w), c) for w, c in f.terms.items()]
    top = max((_wdeg(w, weights) for w, _ in internal), default=0)
    if top > gb.complete_to:
        raise DegreeBoundError(f"degree {top} exceeds completeness bound {gb.complete_to}")
    red = _engine_for(gb).reduce(internal)
    ext = gb._to_external
    return NCPolynomial._raw({tuple(ext[a] for a in w): c for w, c in red.items()}, f.field)


def hilbert_coefficients(gb: TruncatedGroebnerBasis, up_to: Optional[int] = None) -> HilbertSeries:
    """Graded dimensions of the quotient through ``up_to`` via normal-word counting."""
    if up_to is None:
        up_to = gb.complete_to
    if up_to > gb.complete_to:
        raise DegreeBoundError(f"degree {up_to} exceeds completeness bound {gb.complete_to}")
    auto = FactorAutomaton(gb._lms, gb.presentation.ngens)
    coeffs = auto.count(up_to, gb._weights)
    complete = _vanishing_degree(gb, coeffs) is not None
    return HilbertSeries(coeffs, exact_to=up_to, complete=complete)


def _vanishing_degree(gb, coeffs):
    # with generator weights above one a single zero does not force the tail
    span = max(gb._weights) if gb._weights else 1
    run = 0
    for d, c in enumerate(coeffs):
        run = run + 1 if c == 0 else 0
        if run >= span:
            return d
    return None


def dimension(gb: TruncatedGroebnerBasis):
    """Total dimension of the quotient, or :class:`Inconclusive`."""
    series = hilbert_coefficients(gb, gb.complete_to)
    if _vanishing_degree(gb, series.coefficients) is not None:
        return series.value_at_one()
    return Inconclusive(series.value_at_one(), gb.complete_to)
