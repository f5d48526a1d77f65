import itertools

import numpy as np
import pytest
import sympy

from fkalg.braided import BraidedSpace, SignedPermMatrix, TensorBudgetExceeded, braid_matrix
from fkalg.groebner import hilbert_coefficients, truncated_groebner
from fkalg.hilbert import expand_t_product
from fkalg.linalg import SparseMatrix
from fkalg.nichols import (
    Permutation, lex_reduced_word, matsumoto_lift, nichols_dimension, nichols_dims,
    quadratic_kernel_compare, quantum_symmetrizer, reduced_words, symmetric_group,
    symmetrizer_rank,
)
from fkalg.presentations import fk_presentation


@pytest.fixture(scope="module")
def v3():
    return BraidedSpace(3)


def test_reduced_word_examples():
    assert lex_reduced_word(Permutation.identity(3)) == []
    assert lex_reduced_word(Permutation.simple(1, 2)) == [1]
    assert lex_reduced_word(Permutation.longest(3)) == [1, 2, 1]
    assert reduced_words(Permutation.longest(3)) == [[1, 2, 1], [2, 1, 2]]


@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_reduced_words_are_reduced(k):
    for w in symmetric_group(k):
        words = reduced_words(w)
        assert lex_reduced_word(w) == words[0]
        for word in words:
            assert len(word) == w.length()
            prod = Permutation.identity(k)
            for i in word:
                prod = prod * Permutation.simple(i, k)
            assert prod == w


def test_lift_examples(v3):
    assert matsumoto_lift(Permutation.identity(3), v3) == SignedPermMatrix.identity(27)
    assert matsumoto_lift(Permutation.simple(1, 3), v3) == braid_matrix(v3, 3, 1)
    w0 = Permutation.longest(3)
    assert matsumoto_lift(w0, v3, word=[1, 2, 1]) == matsumoto_lift(w0, v3, word=[2, 1, 2])


@pytest.mark.parametrize("k", [2, 3, 4])
def test_matsumoto_well_defined(v3, k):
    for w in symmetric_group(k):
        lifts = {matsumoto_lift(w, v3, word=word) for word in reduced_words(w)}
        assert len(lifts) == 1


def test_small_symmetrizers(v3):
    assert quantum_symmetrizer(v3, 0).toarray().tolist() == [[1]]
    assert quantum_symmetrizer(v3, 1) == SparseMatrix.identity(3)
    c = braid_matrix(v3, 2, 1).to_sparse()
    assert quantum_symmetrizer(v3, 2) == SparseMatrix.identity(9) + c


@pytest.mark.parametrize("n, k", [(3, 2), (3, 3), (3, 4), (4, 3)])
def test_factorized_equals_direct(n, k):
    space = BraidedSpace(n)
    assert quantum_symmetrizer(space, k, "factorized") == quantum_symmetrizer(space, k, "direct")


def test_direct_is_sum_of_six_lifts(v3):
    total = sum((matsumoto_lift(w, v3).toarray() for w in symmetric_group(3)), np.zeros((27, 27), int))
    assert np.array_equal(quantum_symmetrizer(v3, 3).toarray(), total)


def test_rank_s2_n3(v3):
    sym = quantum_symmetrizer(v3, 2)
    assert sympy.Matrix(sym.toarray().tolist()).rank() == 4
    assert nichols_dimension(v3, 2) == 4


def test_dims_n3():
    assert nichols_dims(3, 5, backend="both").dims == [1, 3, 4, 3, 1, 0]


def test_dims_n4_degree2():
    assert nichols_dimension(BraidedSpace(4), 2, backend="both") == 19


def test_dims_n5_degree2():
    assert nichols_dimension(BraidedSpace(5), 2) == 55


def test_degree_zero_and_one():
    for n in (3, 4, 5):
        d = nichols_dims(n, 1)
        assert d.dims == [1, n * (n - 1) // 2]


def test_quotient_inequality():
    for n, up_to in [(3, 5), (4, 4), (5, 3)]:
        fk = hilbert_coefficients(truncated_groebner(fk_presentation(n), max_degree=up_to), up_to)
        assert all(a <= b for a, b in zip(nichols_dims(n, up_to).dims, fk.coefficients))
    fk6 = hilbert_coefficients(truncated_groebner(fk_presentation(6), max_degree=2), 2)
    assert all(a <= b for a, b in zip(nichols_dims(6, 2).dims, fk6.coefficients))


@pytest.mark.parametrize("n, dim", [(3, 5), (4, 17), (6, 100)])
def test_kernel_compare(n, dim):
    res = quadratic_kernel_compare(n)
    assert res.verdict == "equal"
    assert res.kernel_dim == res.relation_dim == dim
    assert str(res) == f"equal (dim {dim})"


def test_kernel_matches_sympy_nullspace():
    space = BraidedSpace(3)
    sym = sympy.Matrix(quantum_symmetrizer(space, 2).toarray().tolist())
    assert len(sym.nullspace()) == quadratic_kernel_compare(3).kernel_dim


def test_prime_disagreement_falls_back():
    m = SparseMatrix(np.array([[2, 0], [0, 1]]))
    info = symmetrizer_rank(m, primes=(2, 2147483629))
    assert info["per_prime"] == [1, 2]
    assert info["fallback"]
    assert info["rank"] == 2


def test_backends_agree():
    sym = quantum_symmetrizer(BraidedSpace(4), 3)
    info = symmetrizer_rank(sym, backend="both")
    assert info["rank"] == info["rational_rank"] == 42
    assert info["per_prime"] == [42, 42]


def test_rank_independent_of_workers():
    sym = quantum_symmetrizer(BraidedSpace(4), 3)
    assert symmetrizer_rank(sym, workers=2)["rank"] == symmetrizer_rank(sym)["rank"]


def test_tensor_budget():
    with pytest.raises(TensorBudgetExceeded):
        quantum_symmetrizer(BraidedSpace(5), 5)
    with pytest.raises(TensorBudgetExceeded):
        nichols_dims(5, 4, max_dim=1000)


def test_dims_agree_with_products():
    # E_4 coefficients from the t-number product, degrees 0..3
    assert nichols_dims(4, 3).dims == expand_t_product([2, 2, 3, 3, 4, 4]).coefficients[:4]


def test_permutation_validation():
    with pytest.raises(ValueError):
        Permutation([1, 1, 2])
    w = Permutation([2, 3, 1])
    assert w * w.inverse() == Permutation.identity(3)
    assert w.length() == 2
    assert sorted(itertools.chain.from_iterable(reduced_words(w))) == [1, 2]
