"""
Exact arithmetic in the free associative algebra.

Words are tuples of generator indices; the empty tuple is the unit.  A
polynomial is an immutable map from words to nonzero coefficients living in
a coefficient field (exact rationals or integers modulo a prime).

>>> x0, x1 = NCPolynomial.gen(0), NCPolynomial.gen(1)
>>> ((x0 + x1) * (x0 - x1)).terms == {(0, 0): 1, (0, 1): -1, (1, 0): 1, (1, 1): -1}
True
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Union

__all__ = [
    "Word", "Field", "QQ", "GF", "MonomialOrder", "NCPolynomial",
    "compare", "multiply", "leading_term", "FieldMismatchError",
]

Word = tuple  # tuple[int, ...]
Coefficient = Union[int, Fraction]


class FieldMismatchError(ValueError):
    """Raised when polynomials over different coefficient fields meet."""


class Field:
    """Coefficient field: ``modulus == 0`` means the rationals."""

    __slots__ = ("modulus",)

    def __init__(self, modulus: int = 0):
        if modulus < 0 or modulus == 1:
            raise ValueError(f"invalid modulus {modulus}")
        self.modulus = modulus

    def __eq__(self, other):
        return isinstance(other, Field) and other.modulus == self.modulus

    def __hash__(self):
        return hash(("Field", self.modulus))

    def __repr__(self):
        return "QQ" if not self.modulus else f"GF({self.modulus})"

    @property
    def is_rational(self) -> bool:
        return self.modulus == 0

    def __call__(self, value) -> Coefficient:
        """Coerce ``value`` (int, Fraction or ``"p/q"`` string) into the field."""
        if isinstance(value, str):
            value = Fraction(value)
        p = self.modulus
        if p:
            if isinstance(value, int):
                return value % p
            value = Fraction(value)
            if value.denominator % p == 0:
                raise ZeroDivisionError(f"denominator of {value} vanishes mod {p}")
            return value.numerator * pow(value.denominator, -1, p) % p
        return normalize_rational(value)

    def add(self, a, b):
        return (a + b) % self.modulus if self.modulus else normalize_rational(a + b)

    def sub(self, a, b):
        return (a - b) % self.modulus if self.modulus else normalize_rational(a - b)

    def mul(self, a, b):
        return (a * b) % self.modulus if self.modulus else normalize_rational(a * b)

    def neg(self, a):
        return (-a) % self.modulus if self.modulus else -a

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        if self.modulus:
            return pow(a, -1, self.modulus)
        return normalize_rational(Fraction(1) / a)

    def div(self, a, b):
        return self.mul(a, self.inv(b))


def normalize_rational(value) -> Coefficient:
    """Return an ``int`` when the rational is integral, else a ``Fraction``."""
    if isinstance(value, int):
        return value
    if isinstance(value, Rational):
        if value.denominator == 1:
            return int(value.numerator)
        return Fraction(value)
    raise TypeError(f"not an exact rational: {value!r}")


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)


@dataclass(frozen=True)
class MonomialOrder:
    """Degree-lexicographic order with a priority ranking of the generators.

    ``priority`` lists generator indices from smallest to largest; the
    identity priority compares letters by index.
    """

    priority: tuple = ()

    def rank_map(self, ngens: int) -> tuple:
        if not self.priority:
            return tuple(range(ngens))
        if sorted(self.priority) != list(range(len(self.priority))):
            raise ValueError("priority must be a permutation of generator indices")
        if len(self.priority) < ngens:
            raise ValueError("priority does not cover every generator")
        rank = [0] * len(self.priority)
        for r, g in enumerate(self.priority):
            rank[g] = r
        return tuple(rank)

    def key(self, word: Word):
        if not self.priority:
            return (len(word), word)
        rank = self.rank_map(len(self.priority))
        return (len(word), tuple(rank[g] for g in word))

    @classmethod
    def identity(cls) -> MonomialOrder:
        return cls(())


DEGLEX = MonomialOrder()


def compare(a: Word, b: Word, order: MonomialOrder = DEGLEX) -> int:
    """-1, 0 or 1 as ``a`` is less than, equal to or greater than ``b``."""
    ka, kb = order.key(a), order.key(b)
    return (ka > kb) - (ka < kb)


class NCPolynomial:
    """An element of the free algebra with exact coefficients."""

    __slots__ = ("terms", "field", "_hash")

    def __init__(self, terms: Mapping[Word, object] | Iterable = (), field: Field = QQ):
        self.field = field
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean = {}
        for word, coeff in items:
            word = tuple(word)
            c = field(coeff)
            if word in clean:
                c = field.add(clean[word], c)
            if c:
                clean[word] = c
            else:
                clean.pop(word, None)
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict, field: Field) -> NCPolynomial:
        obj = cls.__new__(cls)
        obj.terms = terms
        obj.field = field
        obj._hash = None
        return obj

    @classmethod
    def gen(cls, index: int, field: Field = QQ) -> NCPolynomial:
        return cls._raw({(index,): 1}, field)

    @classmethod
    def word(cls, word: Iterable[int], coeff=1, field: Field = QQ) -> NCPolynomial:
        return cls({tuple(word): coeff}, field)

    @classmethod
    def one(cls, field: Field = QQ) -> NCPolynomial:
        return cls._raw({(): 1}, field)

    @classmethod
    def zero(cls, field: Field = QQ) -> NCPolynomial:
        return cls._raw({}, field)

    def _coerce(self, other) -> NCPolynomial:
        if isinstance(other, NCPolynomial):
            if other.field != self.field:
                raise FieldMismatchError(f"{self.field} vs {other.field}")
            return other
        if isinstance(other, (int, Fraction)):
            return NCPolynomial({(): other}, self.field)
        return NotImplemented

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, frozenset(self.terms.items())))
        return self._hash

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        add = self.field.add
        for w, c in other.terms.items():
            s = add(out[w], c) if w in out else c
            if s:
                out[w] = s
            else:
                out.pop(w, None)
        return NCPolynomial._raw(out, self.field)

    __radd__ = __add__

    def __neg__(self):
        neg = self.field.neg
        return NCPolynomial._raw({w: neg(c) for w, c in self.terms.items()}, self.field)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return multiply(self, other)

    def __rmul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return multiply(other, self)

    def scale(self, c) -> NCPolynomial:
        c = self.field(c)
        if not c:
            return NCPolynomial.zero(self.field)
        mul = self.field.mul
        return NCPolynomial._raw({w: mul(a, c) for w, a in self.terms.items()}, self.field)

    def degree(self) -> int:
        """Maximal word length; -1 for the zero polynomial."""
        return max((len(w) for w in self.terms), default=-1)

    def homogeneous_degree(self, weights=None):
        """The common weighted degree of all words, or ``None`` if mixed."""
        degs = {
            len(w) if weights is None else sum(weights[g] for g in w)
            for w in self.terms
        }
        return degs.pop() if len(degs) == 1 else None

    def monic(self, order: MonomialOrder = DEGLEX) -> NCPolynomial:
        _, lc = leading_term(self, order)
        return self.scale(self.field.inv(lc))

    def sorted_terms(self, order: MonomialOrder = DEGLEX, reverse=True):
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=reverse)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for w, c in self.sorted_terms():
            mono = "*".join(f"x{g}" for g in w) or "1"
            parts.append(f"{c}*{mono}")
        return " + ".join(parts)


def multiply(f: NCPolynomial, g: NCPolynomial) -> NCPolynomial:
    if f.field != g.field:
        raise FieldMismatchError(f"{f.field} vs {g.field}")
    field = f.field
    out: dict = {}
    for u, a in f.terms.items():
        for v, b in g.terms.items():
            w = u + v
            c = field.mul(a, b)
            s = field.add(out[w], c) if w in out else c
            if s:
                out[w] = s
            else:
                out.pop(w, None)
    return NCPolynomial._raw(out, field)


def leading_term(f: NCPolynomial, order: MonomialOrder = DEGLEX):
    if not f.terms:
        raise ValueError("zero polynomial has no leading term")
    word = max(f.terms, key=order.key)
    return word, f.terms[word]
