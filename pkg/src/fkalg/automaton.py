"""
Counting words that avoid a set of forbidden factors.

An Aho-Corasick automaton is built over the forbidden words; states that
recognise (a suffix equal to) a forbidden word are dead.  The number of
surviving words of each degree is a dynamic program over live states, so
the cost is ``O(degree * states * alphabet)`` and no word is enumerated.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, Sequence

__all__ = ["FactorAutomaton", "count_avoiding", "brute_force_count"]


class FactorAutomaton:
    """Complete DFA over ``range(alphabet)`` rejecting words with a forbidden factor."""

    def __init__(self, forbidden: Iterable[Sequence[int]], alphabet: int):
        self.alphabet = alphabet
        goto: list[dict] = [{}]
        dead = [False]
        for word in forbidden:
            if not word:
                # the empty word is a factor of everything
                dead[0] = True
                continue
            s = 0
            for a in word:
                if not 0 <= a < alphabet:
                    raise ValueError(f"letter {a} outside alphabet of size {alphabet}")
                nxt = goto[s].get(a)
                if nxt is None:
                    nxt = len(goto)
                    goto[s][a] = nxt
                    goto.append({})
                    dead.append(False)
                s = nxt
            dead[s] = True

        nstates = len(goto)
        delta = [[0] * alphabet for _ in range(nstates)]
        fail = [0] * nstates
        queue = deque()
        for a in range(alphabet):
            t = goto[0].get(a)
            if t is not None:
                delta[0][a] = t
                queue.append(t)
        while queue:
            s = queue.popleft()
            dead[s] = dead[s] or dead[fail[s]]
            row, frow = delta[s], delta[fail[s]]
            for a in range(alphabet):
                t = goto[s].get(a)
                if t is None:
                    row[a] = frow[a]
                else:
                    fail[t] = frow[a]
                    row[a] = t
                    queue.append(t)
        self.delta = delta
        self.dead = dead

    @property
    def nstates(self) -> int:
        return len(self.delta)

    def accepts(self, word: Sequence[int]) -> bool:
        s = 0
        if self.dead[s]:
            return False
        for a in word:
            s = self.delta[s][a]
            if self.dead[s]:
                return False
        return True

    def count(self, up_to: int, weights: Sequence[int] | None = None) -> list[int]:
        """Number of accepted words of each (weighted) degree ``0..up_to``."""
        if self.dead[0]:
            return [0] * (up_to + 1)
        live = [s for s in range(self.nstates) if not self.dead[s]]
        pos = {s: k for k, s in enumerate(live)}
        # transitions restricted to live targets, grouped by letter weight
        weights = list(weights) if weights is not None else [1] * self.alphabet
        edges = [
            [(pos[self.delta[s][a]], weights[a]) for a in range(self.alphabet)
             if not self.dead[self.delta[s][a]]]
            for s in live
        ]
        layers = [[0] * len(live) for _ in range(up_to + 1)]
        layers[0][pos[0]] = 1
        out = [1] + [0] * up_to
        for d in range(up_to + 1):
            cur = layers[d]
            total = 0
            for k, c in enumerate(cur):
                if not c:
                    continue
                total += c
                for t, w in edges[k]:
                    if d + w <= up_to:
                        layers[d + w][t] += c
            out[d] = total
        return out


def count_avoiding(forbidden, alphabet: int, up_to: int, weights=None) -> list[int]:
    return FactorAutomaton(forbidden, alphabet).count(up_to, weights)


def brute_force_count(forbidden, alphabet: int, up_to: int) -> list[int]:
    """Enumerate every word; only for tests on tiny alphabets."""
    import itertools

    forbidden = [tuple(f) for f in forbidden]
    out = []
    for d in range(up_to + 1):
        n = 0
        for w in itertools.product(range(alphabet), repeat=d):
            if not any(
                len(f) <= d and any(w[i:i + len(f)] == f for i in range(d - len(f) + 1))
                for f in forbidden
            ):
                n += 1
        out.append(n)
    return out
