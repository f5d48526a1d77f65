"""
Graded presentations of quadratic (and other homogeneous) algebras.

The Fomin-Kirillov algebra on ``n`` strands has one generator per
transposition ``(i j)`` and four families of quadratic relations; see
:func:`fk_presentation`.  Presentations round-trip through a small JSON
format (``version``, ``generators``, ``degrees``, ``relations``).
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from dataclasses import field as dc_field
from fractions import Fraction
from math import comb
from pathlib import Path

from .ncpoly import QQ, Field, NCPolynomial

__all__ = [
    "Transposition", "Presentation", "PresentationError",
    "fk_presentation", "relation_count", "transpositions",
    "load_presentation", "save_presentation", "dumps_presentation",
    "loads_presentation", "FORMAT_VERSION",
]

FORMAT_VERSION = 1


class PresentationError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Transposition:
    i: int
    j: int

    def __post_init__(self):
        if not self.i < self.j:
            raise ValueError(f"transposition needs i < j, got ({self.i} {self.j})")

    @classmethod
    def of(cls, a: int, b: int) -> Transposition:
        return cls(min(a, b), max(a, b))

    def __call__(self, point: int) -> int:
        if point == self.i:
            return self.j
        if point == self.j:
            return self.i
        return point

    def conjugate(self, other: Transposition) -> Transposition:
        """``self * other * self^-1``, renormalised so that ``i < j``."""
        return Transposition.of(self(other.i), self(other.j))

    def disjoint(self, other: Transposition) -> bool:
        return not {self.i, self.j} & {other.i, other.j}

    def __str__(self):
        return f"({self.i}{self.j})" if self.j < 10 else f"({self.i},{self.j})"


def transpositions(n: int) -> list[Transposition]:
    return [Transposition(i, j) for i, j in itertools.combinations(range(1, n + 1), 2)]


@dataclass
class Presentation:
    """Generators, their degrees and a list of homogeneous relations."""

    generators: list
    relations: list
    degrees: list = None
    n: int = 0
    field: Field = QQ
    labels: list = dc_field(default=None, repr=False)

    def __post_init__(self):
        if self.degrees is None:
            self.degrees = [1] * len(self.generators)
        if len(self.degrees) != len(self.generators):
            raise PresentationError("degrees and generators differ in length")
        if any(d < 1 for d in self.degrees):
            raise PresentationError("generator degrees must be positive")
        if self.labels is None:
            self.labels = [str(g) for g in self.generators]
        if len(set(self.labels)) != len(self.labels):
            raise PresentationError("duplicate generator label")
        seen = set()
        unique = []
        for idx, rel in enumerate(self.relations):
            if rel.field != self.field:
                raise PresentationError(f"relation {idx} lives over {rel.field}")
            for w in rel.terms:
                if any(not 0 <= g < len(self.generators) for g in w):
                    raise PresentationError(f"relation {idx} uses an unknown generator")
            if rel.homogeneous_degree(self.degrees) is None:
                raise PresentationError(f"inhomogeneous relation {idx}")
            if rel not in seen:
                seen.add(rel)
                unique.append(rel)
        self.relations = unique

    @property
    def ngens(self) -> int:
        return len(self.generators)

    def relation_degree(self, rel: NCPolynomial) -> int:
        return rel.homogeneous_degree(self.degrees)

    def is_standard_graded(self) -> bool:
        return all(d == 1 for d in self.degrees)

    def __eq__(self, other):
        if not isinstance(other, Presentation):
            return NotImplemented
        return (
            self.labels == other.labels
            and self.degrees == other.degrees
            and self.field == other.field
            and [r.terms for r in self.relations] == [r.terms for r in other.relations]
        )


def relation_count(n: int) -> tuple[int, int, int]:
    """Sizes of the square, triangle and commutation relation families."""
    if n < 3:
        raise ValueError("n must be at least 3")
    return comb(n, 2), 2 * comb(n, 3), 3 * comb(n, 4)


def fk_presentation(n: int, field: Field = QQ) -> Presentation:
    """The quadratic presentation of the Fomin-Kirillov algebra on n strands."""
    if n < 3:
        raise ValueError("n must be at least 3")
    gens = transpositions(n)
    idx = {t: k for k, t in enumerate(gens)}

    def x(i, j):
        return idx[Transposition(i, j)]

    def rel(*signed_words):
        return NCPolynomial({w: c for c, w in signed_words}, field)

    squares = [rel((1, (k, k))) for k in range(len(gens))]
    triples = []
    for i, j, k in itertools.combinations(range(1, n + 1), 3):
        ij, jk, ik = x(i, j), x(j, k), x(i, k)
        triples.append(rel((1, (ij, jk)), (-1, (jk, ik)), (-1, (ik, ij))))
        triples.append(rel((1, (jk, ij)), (-1, (ik, jk)), (-1, (ij, ik))))
    commuting = []
    for a, b in itertools.combinations(range(len(gens)), 2):
        if gens[a].disjoint(gens[b]):
            commuting.append(rel((1, (a, b)), (-1, (b, a))))
    return Presentation(
        generators=gens,
        relations=squares + triples + commuting,
        n=n,
        field=field,
        labels=[f"x{t.i}_{t.j}" for t in gens],
    )


def _coeff_str(c) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def dumps_presentation(p: Presentation) -> str:
    if not p.field.is_rational:
        raise PresentationError("only rational presentations are serialised")
    doc = {
        "version": FORMAT_VERSION,
        "n": p.n,
        "generators": list(p.labels),
        "degrees": list(p.degrees),
        "relations": [
            [
                {"coeff": _coeff_str(c), "word": [p.labels[g] for g in w]}
                for w, c in sorted(rel.terms.items())
            ]
            for rel in p.relations
        ],
    }
    return json.dumps(doc, indent=1, ensure_ascii=True) + "\n"


def loads_presentation(text: str) -> Presentation:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PresentationError(f"parse error: {exc}") from None
    if not isinstance(doc, dict):
        raise PresentationError("parse error: top level must be an object")
    version = doc.get("version")
    if version != FORMAT_VERSION:
        raise PresentationError(f"unsupported version {version!r}")
    labels = doc.get("generators")
    if not isinstance(labels, list) or not all(isinstance(s, str) for s in labels):
        raise PresentationError("parse error: generators must be a list of strings")
    degrees = doc.get("degrees", [1] * len(labels))
    if not isinstance(degrees, list) or not all(isinstance(d, int) for d in degrees):
        raise PresentationError("parse error: degrees must be a list of integers")
    index = {s: k for k, s in enumerate(labels)}
    relations = []
    for r, terms in enumerate(doc.get("relations", [])):
        if not isinstance(terms, list):
            raise PresentationError(f"parse error: relation {r} must be a list of terms")
        items = []
        for term in terms:
            try:
                coeff = Fraction(str(term["coeff"]))
                word = tuple(index[s] for s in term["word"])
            except KeyError as exc:
                raise PresentationError(f"unknown generator label {exc} in relation {r}") from None
            except (TypeError, ValueError):
                raise PresentationError(f"parse error in relation {r}") from None
            items.append((word, coeff))
        rel = NCPolynomial(items, QQ)
        if rel.homogeneous_degree(degrees) is None and rel:
            raise PresentationError(f"inhomogeneous relation {r}")
        if rel:
            relations.append(rel)
    return Presentation(
        generators=list(labels),
        relations=relations,
        degrees=degrees,
        n=int(doc.get("n", 0)),
        labels=list(labels),
    )


def save_presentation(p: Presentation, path) -> None:
    Path(path).write_text(dumps_presentation(p), encoding="ascii")


def load_presentation(path) -> Presentation:
    return loads_presentation(Path(path).read_text(encoding="utf-8"))
