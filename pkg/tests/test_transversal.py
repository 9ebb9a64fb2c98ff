from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

import oracles
from stanleydepth.fields import QQ, PrimeField
from stanleydepth.linalg import Matrix
from stanleydepth.transversal import has_full_transversal, max_independent_transversal

F2 = PrimeField(2)


def test_disjoint_lines_give_a_full_transversal():
    families = [[(1, 0)], [(0, 1)]]
    picks = max_independent_transversal(QQ, 2, families)
    assert sorted(i for i, _ in picks) == [0, 1]
    assert has_full_transversal(QQ, 2, families)


def test_shared_line_blocks_all_but_one():
    line = [(Fraction(1), Fraction(2))]
    families = [line, line, [(Fraction(2), Fraction(4))]]
    picks = max_independent_transversal(QQ, 2, families)
    assert len(picks) == 1
    assert not has_full_transversal(QQ, 2, families)


def test_augmenting_path_reassigns_an_early_greedy_pick():
    # family 0 must give up e1 for e2 once family 1 claims e1
    e1, e2 = (1, 0), (0, 1)
    families = [[e1, e2], [e1]]
    picks = dict(max_independent_transversal(QQ, 2, families))
    assert picks == {0: e2, 1: e1}


def test_empty_input_is_vacuously_full():
    assert max_independent_transversal(QQ, 3, []) == []
    assert has_full_transversal(QQ, 3, [])


def test_zero_vectors_are_never_picked():
    assert max_independent_transversal(QQ, 2, [[(0, 0)]]) == []
    assert not has_full_transversal(QQ, 2, [[(0, 0)], [(1, 0)]])


def test_ambient_dimension_caps_the_transversal():
    families = [[(1, 0), (0, 1)], [(1, 1)], [(0, 1)]]
    picks = max_independent_transversal(F2, 2, families)
    assert len(picks) == 2
    assert not has_full_transversal(F2, 2, families)


def _families_strategy(entry_st):
    return st.lists(
        st.lists(
            st.tuples(entry_st, entry_st, entry_st),
            min_size=0,
            max_size=3,
        ),
        min_size=0,
        max_size=4,
    )


def _check_transversal(field, ambient, families):
    picks = max_independent_transversal(field, ambient, families)
    indices = [i for i, _ in picks]
    assert len(set(indices)) == len(indices)
    for i, v in picks:
        assert v in [tuple(w) for w in families[i]]
    rows = [list(v) for _, v in picks]
    if rows:
        assert Matrix(field, rows, ambient).rank() == len(rows)
    assert len(picks) == oracles.max_transversal_bound(field, ambient, families)
    assert has_full_transversal(field, ambient, families) == oracles.rado_full_transversal(
        field, ambient, families
    )


@given(_families_strategy(st.integers(0, 1)))
def test_transversal_matches_min_max_bound_mod_two(families):
    _check_transversal(F2, 3, families)


@given(_families_strategy(st.integers(-2, 2).map(Fraction)))
def test_transversal_matches_min_max_bound_rational(families):
    _check_transversal(QQ, 3, families)
