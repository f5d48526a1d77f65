import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fkalg.automaton import FactorAutomaton, brute_force_count, count_avoiding


def test_no_forbidden_words():
    assert count_avoiding([], 3, 4) == [1, 3, 9, 27, 81]


def test_forbid_repeated_letter():
    # binary words with no "aa": Fibonacci numbers
    assert count_avoiding([(0, 0)], 2, 6) == [1, 2, 3, 5, 8, 13, 21]


def test_forbidden_letter():
    assert count_avoiding([(1,)], 2, 3) == [1, 1, 1, 1]


def test_accepts():
    a = FactorAutomaton([(0, 1), (1, 1, 0)], 2)
    assert a.accepts((1, 0, 0))
    assert not a.accepts((0, 0, 1))
    assert not a.accepts((1, 1, 0, 0))
    assert a.accepts(())


def test_weighted_counts():
    # letters of weight 1 and 2, nothing forbidden: compositions into 1s and 2s
    assert count_avoiding([], 2, 5, weights=[1, 2]) == [1, 1, 2, 3, 5, 8]


forbidden_sets = st.lists(
    st.lists(st.integers(0, 2), min_size=1, max_size=4).map(tuple), max_size=6,
)


@settings(max_examples=120, deadline=None)
@given(forbidden_sets)
def test_matches_brute_force(forbidden):
    assert count_avoiding(forbidden, 3, 6) == brute_force_count(forbidden, 3, 6)


@pytest.mark.parametrize("forbidden", [[(0, 1, 0), (1, 0, 1)], [(2, 2), (0, 1), (1, 2, 0)]])
def test_overlapping_patterns(forbidden):
    assert count_avoiding(forbidden, 3, 7) == brute_force_count(forbidden, 3, 7)
