"""
Hilbert-series arithmetic: products of t-numbers and their recovery.

``(k)_t = 1 + t + ... + t^(k-1)``.  A finite Hilbert series that is a
product of t-numbers determines the multiset of factors, which
:func:`factor_t_numbers` recovers by exact division with backtracking.  For
a series known only through some degree, :func:`prefix_consistency`
decides whether *any* product of t-numbers can start that way.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import accumulate
from math import comb, inf

import numpy as np

from .groebner import HilbertSeries

__all__ = [
    "t_number", "poly_mul", "expand_t_product", "factor_t_numbers",
    "TNumberFactorization", "prefix_consistency", "PrefixVerdict",
    "NUMEROLOGY", "NumerologyRow", "numerology_report", "NumerologyReport",
]


def t_number(k: int) -> list:
    if k < 1:
        raise ValueError("t-numbers start at k = 1")
    return [1] * k


def poly_mul(a, b, truncate: int | None = None) -> list:
    n = len(a) + len(b) - 1
    if truncate is not None:
        n = min(n, truncate + 1)
    out = [0] * n
    for i, x in enumerate(a):
        if not x or i >= n:
            continue
        for j, y in enumerate(b[: n - i]):
            out[i + j] += x * y
    return out


def expand_t_product(factors) -> HilbertSeries:
    factors = sorted(factors)
    bound = 1
    for k in factors:
        if k < 1:
            raise ValueError("t-numbers start at k = 1")
        bound *= k
    if bound < 2 ** 62 and sum(factors) < _SHORT:
        coeffs = [1]
        for k in factors:
            coeffs = _times_t_list(coeffs, k)
    else:
        poly = np.ones(1, dtype=_dtype(bound))
        for k in factors:
            poly = _times_t_number(poly, k)
        coeffs = poly.tolist()
    return HilbertSeries(coeffs, exact_to=len(coeffs) - 1, complete=True)


# below this length plain lists beat numpy's per-call overhead
_SHORT = 128


def _times_t_list(poly: list, k: int) -> list:
    c = [0, *accumulate(poly)]
    c.extend([c[-1]] * (k - 1))
    return [c[i] - c[i - k] if i >= k else c[i] for i in range(1, len(c))]


def _dtype(bound: int):
    return np.int64 if bound < 2 ** 62 else object


def _times_t_number(poly: np.ndarray, k: int) -> np.ndarray:
    c = np.zeros(len(poly) + k - 1, dtype=poly.dtype)
    c[:len(poly)] = poly
    c = np.cumsum(c)
    c[k:] -= c[:-k].copy()
    return c


def _over_one_minus_power(q: np.ndarray, j: int) -> np.ndarray:
    """Power-series quotient ``q / (1 - t^j)`` truncated to ``len(q)`` terms."""
    n = len(q)
    rows = -(-n // j)
    padded = np.zeros(rows * j, dtype=q.dtype)
    padded[:n] = q
    return np.cumsum(padded.reshape(rows, j), axis=0).reshape(-1)[:n]


def _divide_t_number(poly: np.ndarray, k: int):
    """Exact quotient ``poly / (k)_t`` with nonnegative coefficients, or ``None``."""
    n = len(poly) - (k - 1)
    if n < 1:
        return None
    # (1 - t) p = (1 - t^k) q: q is a running sum of (1 - t) p along residues
    # mod k, and the division is exact iff that sum vanishes past degree n - 1
    m = len(poly) + 1
    rows = -(-m // k)
    d = np.zeros(rows * k, dtype=poly.dtype)
    d[:m - 1] = poly
    d[1:m] -= poly
    q = np.cumsum(d.reshape(rows, k), axis=0).reshape(-1)
    if (q[n:m] != 0).any() or (q[:n] < 0).any():
        return None
    return q[:n]


@dataclass
class TNumberFactorization:
    factors: list | None
    refutation: str | None = None

    @property
    def ok(self) -> bool:
        return self.factors is not None

    def __str__(self):
        if self.ok:
            return "{" + ",".join(map(str, self.factors)) + "}"
        return f"refuted: {self.refutation}"

    def to_dict(self) -> dict:
        return {"factors": self.factors, "refutation": self.refutation}


def factor_t_numbers(series, method: str = "peel") -> TNumberFactorization:
    """Multiset ``{k_1, ..., k_m}`` (each ``k >= 2``) with ``prod (k_i)_t == series``.

    ``method="peel"`` multiplies by ``(1 - t)^m`` (``m`` = the t coefficient,
    the number of factors) and reads the factors of ``prod (1 - t^k)`` off
    its lowest terms; the answer is unique, so a failure is a refutation.
    ``method="search"`` divides by ``(k)_t`` largest ``k`` first and
    backtracks; it is slower and used as a cross-check.
    """
    if method not in ("peel", "search"):
        raise ValueError(f"unknown method {method!r}")
    if isinstance(series, HilbertSeries):
        if not series.complete:
            raise ValueError("factorisation needs a complete series")
        coeffs = series.coefficients
    else:
        coeffs = list(series)
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs = coeffs[:-1]
    if not coeffs or coeffs[0] != 1:
        return TNumberFactorization(None, "constant term is not 1")
    if coeffs != coeffs[::-1]:
        return TNumberFactorization(None, "not palindromic")
    deg = len(coeffs) - 1
    m = coeffs[1] if deg else 0
    if m < 0:
        return TNumberFactorization(None, "negative coefficient")
    if method == "search":
        head = coeffs
    else:
        if m > deg:
            return TNumberFactorization(None, f"{m} factors cannot have total degree {deg}")
        # by symmetry the first half of the coefficients decides everything
        head = coeffs[: (deg + m) // 2 + 1]
    if min(head) < 0:
        return TNumberFactorization(None, "negative coefficient")
    if method == "peel":
        if len(head) < _SHORT:
            found = _peel_list(head, deg)
        else:
            found = _peel(_as_array(head), deg)
        if found is None:
            return TNumberFactorization(
                None, f"(1 - t)^{m} times the series is not a product of terms 1 - t^k",
            )
        return TNumberFactorization(found)
    found = _search(_as_array(head), len(head), {})
    if found is None:
        return TNumberFactorization(
            None, f"no multiset of t-numbers has product of degree {deg} "
                  f"and value {sum(coeffs)} at t=1 matching these coefficients",
        )
    return TNumberFactorization(sorted(found))


def _as_array(coeffs: list) -> np.ndarray:
    try:
        arr = np.array(coeffs, dtype=np.int64)
    except OverflowError:
        return np.array(coeffs, dtype=object)
    if arr.size and int(np.abs(arr).max()) >= 2 ** 40:
        return np.array(coeffs, dtype=object)
    return arr


def _peel_list(head: list, deg: int):
    """:func:`_peel` on plain lists, for short series."""
    m = head[1] if deg else 0
    if m == 0:
        return [] if deg == 0 else None
    top = deg + m
    half = top // 2
    q = head[: half + 1]
    for _ in range(m):
        q = [q[0]] + [b - a for a, b in zip(q, q[1:])]
    factors = []
    j, n = 1, len(q)
    while len(factors) < m:
        while j < n and q[j] == 0:
            j += 1
        if j == n:
            break
        mult = -q[j]
        if j == 1 or mult <= 0 or len(factors) + mult > m:
            return None
        for _ in range(mult):
            for r in range(j):
                q[r::j] = accumulate(q[r::j])
        factors.extend([j] * mult)
    else:
        if any(q[1:]):
            return None
    return _close(factors, m, top, half)


def _close(factors, m, top, half):
    if len(factors) < m:
        # the factors left over all exceed top // 2, so there is exactly one
        if len(factors) != m - 1:
            return None
        factors.append(top - sum(factors))
        if factors[-1] <= half:
            return None
    return factors if sum(factors) == top else None


def _peel(head: np.ndarray, deg: int):
    """Factors from the first ``(deg + m) // 2 + 1`` coefficients of a palindromic series."""
    m = int(head[1]) if deg else 0
    if m == 0:
        return [] if deg == 0 else None
    top = deg + m
    half = top // 2
    # q = series * (1 - t)^m, which should be prod (1 - t^k); q(t) and the
    # product share the symmetry q_i = (-1)^m q_(top - i), so agreeing up to
    # degree top // 2 means agreeing everywhere
    binom = np.array([(-1) ** i * comb(m, i) for i in range(m + 1)], dtype=head.dtype)
    q = np.convolve(head, binom)[: half + 1]
    factors = []
    j = 1
    while len(factors) < m:
        nz = np.flatnonzero(q[j:])
        if not len(nz):
            break
        j += int(nz[0])
        mult = -int(q[j])
        if j == 1 or mult <= 0 or len(factors) + mult > m:
            return None
        for _ in range(mult):
            q = _over_one_minus_power(q, j)
        factors.extend([j] * mult)
    else:
        if np.flatnonzero(q[1:]).size:
            return None
    return _close(factors, m, top, half)


def _search(poly: np.ndarray, max_k: int, failed: dict):
    """Factors (largest first, each ``<= max_k``) or ``None``; ``failed`` memoises dead ends."""
    if len(poly) == 1:
        return () if poly[0] == 1 else None
    key = (poly.tobytes() if poly.dtype != object else tuple(poly), max_k)
    if key in failed:
        return None
    total = int(poly.sum())
    # m = poly[1] factors with sum(k - 1) = deg bound the largest factor
    deg, m = len(poly) - 1, int(poly[1])
    if m < 1:
        failed[key] = True
        return None
    lo = max(2, -(-deg // m) + 1)
    for k in range(min(max_k, deg - m + 2), lo - 1, -1):
        if total % k:
            continue
        q = _divide_t_number(poly, k)
        if q is None:
            continue
        rest = _search(q, k, failed)
        if rest is not None:
            return (k,) + rest
    failed[key] = True
    return None


@dataclass
class PrefixVerdict:
    consistent: bool
    depth: int
    witness: list | None = None
    reason: str = ""

    def __str__(self):
        if self.consistent:
            return f"consistent through degree {self.depth}, witness {{{','.join(map(str, self.witness))}}}"
        return f"refuted through degree {self.depth}: {self.reason}"

    def to_dict(self) -> dict:
        return {
            "consistent": self.consistent,
            "depth": self.depth,
            "witness": self.witness,
            "reason": self.reason,
        }


def prefix_consistency(prefix, depth: int | None = None) -> PrefixVerdict:
    """Can some product of t-numbers agree with ``prefix`` through ``depth``?

    Modulo ``t^(depth+1)`` a factor ``(k)_t`` only depends on ``min(k, depth+1)``,
    so the search runs over profiles (how many factors of each truncated
    size), pruning as soon as a partial product overshoots the prefix.
    """
    prefix = list(prefix)
    if depth is None:
        depth = len(prefix) - 1
    if depth > len(prefix) - 1:
        raise ValueError("depth exceeds the available prefix")
    target = prefix[: depth + 1]
    if target[0] != 1:
        return PrefixVerdict(False, depth, reason="constant term is not 1")
    if any(c < 0 for c in target):
        return PrefixVerdict(False, depth, reason="negative coefficient")
    if depth == 0:
        return PrefixVerdict(True, 0, witness=[])
    m = target[1]
    if depth >= 2:
        big = target[2] - comb(m, 2)
        if big < 0 or big > m:
            return PrefixVerdict(
                False, depth,
                reason=(
                    f"the t^2 coefficient {target[2]} needs {big} factors of size >= 3 "
                    f"(= {target[2]} - C({m},2)) but there are only {m} factors in total"
                    if big > m else
                    f"the t^2 coefficient {target[2]} is below C({m},2) = {comb(m, 2)}"
                ),
            )
    witness = _profile_search(tuple(target), m, depth)
    if witness is None:
        return PrefixVerdict(
            False, depth,
            reason=f"no profile of {m} t-numbers reproduces the coefficients through degree {depth}",
        )
    return PrefixVerdict(True, depth, witness=witness)


def _profile_search(target, m, depth):
    sizes = list(range(depth + 1, 1, -1))
    dtype = np.int64 if sum(target) * (depth + 2) < 2 ** 62 else object
    goal = np.array(target, dtype=dtype)

    def grow(poly, k):
        return _times_t_number(poly, k)[: depth + 1]

    def rec(idx, left, poly, chosen):
        k = sizes[idx]
        if idx == len(sizes) - 1:
            for _ in range(left):
                poly = grow(poly, k)
                if (poly > goal).any():
                    return None
            return chosen + [k] * left if np.array_equal(poly, goal) else None
        cur = poly
        for count in range(left + 1):
            if count:
                cur = grow(cur, k)
                if (cur > goal).any():
                    break
            found = rec(idx + 1, left - count, cur, chosen + [k] * count)
            if found is not None:
                return found
        return None

    start = np.zeros(depth + 1, dtype=dtype)
    start[0] = 1
    if not sizes:
        return [] if np.array_equal(start, goal) else None
    found = rec(0, m, start, [])
    return sorted(found) if found is not None else None


@dataclass(frozen=True)
class NumerologyRow:
    top_degree: float | None  # None when unknown
    indecomposables: float
    clusters: float


# Literature values, not computed here: number of indecomposable modules of
# the preprojective algebra of type A_{n-1} and number of clusters of C[N]
# for SL_n.  Rows for n >= 6 are infinite.
NUMEROLOGY = {
    3: NumerologyRow(4, 4, 4),
    4: NumerologyRow(12, 12, 12),
    5: NumerologyRow(40, 40, 40),
}
INFINITE_ROW = NumerologyRow(None, inf, inf)


def numerology_row(n: int) -> NumerologyRow:
    if n < 3:
        raise ValueError("n must be at least 3")
    return NUMEROLOGY.get(n, INFINITE_ROW)


@dataclass
class NumerologyReport:
    n: int
    status: str  # "match", "mismatch", "consistent", "inconsistent"
    computed_degree: int | None
    lower_bound: int | None
    row: NumerologyRow = field(repr=False)
    message: str = ""

    def to_dict(self) -> dict:
        def num(x):
            return "inf" if x == inf else x

        return {
            "n": self.n,
            "status": self.status,
            "computed_degree": self.computed_degree,
            "lower_bound": self.lower_bound,
            "table": {
                "top_degree": num(self.row.top_degree),
                "indecomposables": num(self.row.indecomposables),
                "clusters": num(self.row.clusters),
            },
            "message": self.message,
        }


def numerology_report(n: int, computed: HilbertSeries) -> NumerologyReport:
    row = numerology_row(n)
    if computed.complete:
        deg = computed.degree
        if row.indecomposables == inf:
            return NumerologyReport(
                n, "mismatch", deg, None, row,
                f"finite top degree {deg} against an infinite table row",
            )
        ok = deg == row.indecomposables == row.clusters
        return NumerologyReport(
            n, "match" if ok else "mismatch", deg, None, row,
            f"degree {deg} = indecomposables {row.indecomposables} = clusters {row.clusters}"
            if ok else
            f"degree {deg} vs indecomposables {row.indecomposables}, clusters {row.clusters}",
        )
    lower = computed.degree
    if row.indecomposables == inf:
        return NumerologyReport(
            n, "consistent", None, lower, row,
            "no finite degree established; table row inf - consistent",
        )
    ok = lower <= row.indecomposables
    return NumerologyReport(
        n, "consistent" if ok else "inconsistent", None, lower, row,
        f"top degree >= {lower} (exact through {computed.exact_to}); "
        f"table value {row.indecomposables}",
    )

