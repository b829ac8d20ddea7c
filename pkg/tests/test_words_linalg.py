import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from chevpres.linalg import rank_mod_p, row_echelon_mod_p, solve_mod_p
from chevpres.words import Word, comm, conj, product, relator

words = st.lists(st.tuples(st.integers(0, 3), st.integers(-3, 3)), max_size=12).map(Word)


def expand(w):
    return [g if e > 0 else ~g for g, e in w for _ in range(abs(e))]


def freely_reduced(w):
    return all(g1 != g2 for (g1, _), (g2, _) in zip(w, w[1:])) and all(e for _, e in w)


@settings(max_examples=200, deadline=None)
@given(words, words, words)
def test_free_group_laws(x, y, z):
    assert freely_reduced(x * y)
    assert (x * y) * z == x * (y * z)
    assert x * x.inverse() == Word()
    assert (x * y).inverse() == y.inverse() * x.inverse()
    assert x ** 3 == x * x * x
    assert x ** -2 == (x * x).inverse()


@settings(max_examples=100, deadline=None)
@given(words, words, words)
def test_commutator_conventions_free(x, y, z):
    assert comm(x, y) == x * y * ~x * ~y
    assert conj(x, y) == y * x * ~y
    # [a, bc] = [a, b] [a, c]^b holds in the free group
    assert comm(x, y * z) == comm(x, y) * conj(comm(x, z), y)
    # Hall-Witt
    hw = (conj(comm(comm(y, ~x), ~z), ~y) * conj(comm(comm(z, ~y), ~x), ~z)
          * conj(comm(comm(x, ~z), ~y), ~x))
    assert hw == Word()


def test_word_helpers():
    a, b = Word.gen(0), Word.gen(1)
    w = a ** 2 * b * a ** -1
    assert w.length == 4
    assert w.generators() == {0, 1}
    assert w.exponent_sum(0) == 1
    assert w.relabel([5, 7]) == Word([(5, 2), (7, 1), (5, -1)])
    assert relator(a, b) == a * ~b
    assert product([a, b, ~a]) == a * b * ~a
    assert Word([(0, 2), (0, -2)]) == Word()


def test_row_echelon_and_rank():
    M = np.array([[1, 2, 0], [2, 4, 0], [0, 1, 1]])
    R, piv = row_echelon_mod_p(M, 5)
    assert piv == [0, 1]
    assert rank_mod_p(M, 5) == 2
    assert rank_mod_p(np.zeros((0, 3)), 3) == 0


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(0, 6), min_size=9, max_size=9), st.lists(st.integers(0, 6), min_size=3, max_size=3))
def test_solve_mod_p(entries, x):
    A = np.array(entries).reshape(3, 3)
    b = A @ np.array(x) % 7
    sol = solve_mod_p(A, b, 7)
    assert np.array_equal(A @ sol % 7, b)
