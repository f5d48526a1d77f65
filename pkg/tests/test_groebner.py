import random

import pytest
import sympy

from fkalg.automaton import brute_force_count
from fkalg.groebner import (
    Budget, BudgetExceeded, DegreeBoundError, Inconclusive, dimension, hilbert_coefficients,
    normal_form, truncated_groebner,
)
from fkalg.hilbert import expand_t_product
from fkalg.ncpoly import GF, MonomialOrder, NCPolynomial
from fkalg.presentations import Presentation, Transposition, fk_presentation

from oracles import ideal_slice_rows, quotient_dims


@pytest.fixture(scope="module")
def gb3():
    return truncated_groebner(fk_presentation(3), max_degree=6)


@pytest.fixture(scope="module")
def gb4():
    return truncated_groebner(fk_presentation(4), max_degree=13)


def _contains(word, factor):
    n = len(factor)
    return any(word[i:i + n] == factor for i in range(len(word) - n + 1))


def test_e3_normal_words_degree_two(gb3):
    assert hilbert_coefficients(gb3, 2).coefficients[2] == 4


def test_commutative_plane():
    p = Presentation(["a", "b"], [NCPolynomial({(0, 1): 1, (1, 0): -1})])
    gb = truncated_groebner(p, max_degree=4)
    assert len(gb) == 1
    assert gb.elements[0] == NCPolynomial({(1, 0): 1, (0, 1): -1})
    assert hilbert_coefficients(gb, 4).coefficients == [1, 2, 3, 4, 5]


def test_e4_vanishes_in_degree_13(gb4):
    assert hilbert_coefficients(gb4, 13).coefficients[13] == 0


def test_free_algebra():
    p = Presentation(["a", "b"], [])
    gb = truncated_groebner(p, max_degree=3)
    assert hilbert_coefficients(gb, 3).coefficients == [1, 2, 4, 8]
    assert isinstance(dimension(gb), Inconclusive)


def test_e3_series_and_dimension(gb3):
    assert hilbert_coefficients(gb3, 5).coefficients == [1, 3, 4, 3, 1, 0]
    assert dimension(gb3) == 12


def test_e4_dimension(gb4):
    assert dimension(gb4) == 576
    assert hilbert_coefficients(gb4).trimmed() == expand_t_product([2, 2, 3, 3, 4, 4]).coefficients


def test_e6_prefix():
    gb = truncated_groebner(fk_presentation(6), max_degree=4)
    assert hilbert_coefficients(gb, 4).coefficients == [1, 15, 125, 765, 3831]


def test_e6_inconclusive():
    gb = truncated_groebner(fk_presentation(6), max_degree=7)
    dim = dimension(gb)
    assert isinstance(dim, Inconclusive)
    assert dim.partial_sum == 1 + 15 + 125 + 765 + 3831 + 16605 + 64432 + 228855
    assert dim.exact_to == 7


def test_relations_reduce_to_zero(gb3, gb4):
    for gb in (gb3, gb4):
        for rel in gb.presentation.relations:
            assert not normal_form(rel, gb)


def test_unit_is_normal(gb3):
    one = NCPolynomial.one()
    assert normal_form(one, gb3) == one


def test_braid_relation_in_ideal(gb3):
    x = {t: k for k, t in enumerate(gb3.presentation.generators)}
    a, b = x[Transposition(1, 2)], x[Transposition(2, 3)]
    f = NCPolynomial({(a, b, a): 1, (b, a, b): -1})
    # oracle: membership in the degree-3 slice of the ideal by exact rank
    rows, index = ideal_slice_rows(gb3.presentation, 3)
    vec = [0] * len(index)
    for w, c in f.terms.items():
        vec[index[w]] = int(c)
    span = sympy.Matrix([list(r) for r in rows])
    assert span.rank() == sympy.Matrix([list(r) for r in rows] + [vec]).rank()
    assert not normal_form(f, gb3)


def test_normal_form_is_normal_and_idempotent(gb4):
    rng = random.Random(7)
    lms = gb4.leading_words()
    for _ in range(40):
        d = rng.randint(0, 6)
        terms = {tuple(rng.randrange(6) for _ in range(d)): rng.randint(-3, 3) for _ in range(5)}
        f = NCPolynomial(terms)
        g = normal_form(f, gb4)
        assert all(not _contains(w, lm) for w in g.terms for lm in lms)
        assert normal_form(g, gb4) == g
        # linearity
        assert normal_form(f + f, gb4) == g + g


def test_normal_form_degree_guard(gb3):
    with pytest.raises(DegreeBoundError):
        normal_form(NCPolynomial({(0,) * 7: 1}), gb3)
    with pytest.raises(DegreeBoundError):
        hilbert_coefficients(gb3, 7)


def test_basis_reduced_and_monic(gb4):
    lms = gb4.leading_words()
    for i, u in enumerate(lms):
        for j, v in enumerate(lms):
            if i != j:
                assert not _contains(v, u)
    for g, lm in zip(gb4.elements, lms):
        assert g.terms[lm] == 1
        assert max(g.terms, key=lambda w: (len(w), w)) == lm
        # tails contain no leading word
        assert all(not _contains(w, u) for w in g.terms if w != lm for u in lms)


def test_truncation_soundness():
    low = truncated_groebner(fk_presentation(3), max_degree=4)
    high = truncated_groebner(fk_presentation(3), max_degree=8)
    assert hilbert_coefficients(low, 4).coefficients == hilbert_coefficients(high, 4).coefficients


@pytest.mark.parametrize("n, up_to", [(3, 4), (4, 4)])
def test_coefficients_match_linear_algebra(n, up_to):
    gb = truncated_groebner(fk_presentation(n), max_degree=up_to)
    assert hilbert_coefficients(gb, up_to).coefficients == quotient_dims(fk_presentation(n), up_to)


@pytest.mark.parametrize("n", [3, 4])
def test_order_independence(n):
    p = fk_presentation(n)
    base = hilbert_coefficients(truncated_groebner(p, max_degree=6)).coefficients
    rng = random.Random(n)
    for _ in range(3):
        priority = list(range(p.ngens))
        rng.shuffle(priority)
        gb = truncated_groebner(p, MonomialOrder(tuple(priority)), max_degree=6)
        assert hilbert_coefficients(gb).coefficients == base
        for rel in p.relations:
            assert not normal_form(rel, gb)


@pytest.mark.parametrize("n", [3, 4])
def test_automaton_matches_enumeration(n):
    gb = truncated_groebner(fk_presentation(n), max_degree=5)
    expected = brute_force_count([w for w in gb.leading_words()], gb.presentation.ngens, 5)
    assert hilbert_coefficients(gb, 5).coefficients == expected


@pytest.mark.parametrize("n, factors", [(3, [2, 2, 3]), (4, [2, 2, 3, 3, 4, 4])])
def test_palindromic(n, factors):
    gb = truncated_groebner(fk_presentation(n), max_degree=13)
    coeffs = hilbert_coefficients(gb).trimmed()
    assert coeffs == coeffs[::-1]


def test_modular_field_agrees():
    p = fk_presentation(4, field=GF(101))
    gb = truncated_groebner(p, max_degree=13)
    assert dimension(gb) == 576


def test_deterministic_elements():
    a = truncated_groebner(fk_presentation(4), max_degree=8)
    b = truncated_groebner(fk_presentation(4), max_degree=8, workers=2)
    assert [e.terms for e in a.elements] == [e.terms for e in b.elements]


def test_budget_basis_cap():
    with pytest.raises(BudgetExceeded) as info:
        truncated_groebner(fk_presentation(5), max_degree=8, budget=Budget(max_basis=60))
    partial = info.value.partial
    # degree 4 pushes the basis from 55 to 65 elements
    assert partial.complete_to == 4
    assert hilbert_coefficients(partial).coefficients == [1, 10, 55, 220, 711]


def test_budget_reductions():
    with pytest.raises(BudgetExceeded) as info:
        truncated_groebner(fk_presentation(4), max_degree=8, budget=Budget(max_reductions=10))
    assert info.value.partial.complete_to == 1


def test_max_degree_below_relations():
    with pytest.raises(ValueError):
        truncated_groebner(fk_presentation(3), max_degree=1)


def test_inhomogeneous_rejected():
    with pytest.raises(ValueError, match="inhomogeneous"):
        Presentation(["a"], [NCPolynomial({(0, 0): 1, (0,): -1})])


def test_weighted_grading():
    # a of degree 1, b of degree 2, relation ab - ba: commutative, weights (1, 2)
    p = Presentation(["a", "b"], [NCPolynomial({(0, 1): 1, (1, 0): -1})], degrees=[1, 2])
    gb = truncated_groebner(p, max_degree=6)
    # Hilbert series 1 / ((1 - t)(1 - t^2))
    assert hilbert_coefficients(gb).coefficients == [1, 1, 2, 2, 3, 3, 4]


def test_obstructions_reconstruct_common_multiple():
    from fkalg.groebner import _Engine

    eng = _Engine(fk_presentation(4), MonomialOrder())
    gb = truncated_groebner(fk_presentation(4), max_degree=3)
    for lm, tail in zip(gb._lms, gb._tails):
        eng.add_element(lm, tail)
    obs = eng.obstructions(3)
    assert obs == sorted(obs)
    for ob in obs:
        u, v = eng.lms[ob.left], eng.lms[ob.right]
        w = ob.s_word(u, v)
        assert len(w) == ob.degree == 3
        assert w[:len(u)] == u and w[len(w) - len(v):] == v
