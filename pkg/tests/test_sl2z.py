import itertools

import pytest
from hypothesis import given, strategies as st

from torusbundles import oracles
from torusbundles.sl2z import (
    E,
    INFINITE,
    MINUS_E,
    SHEAR,
    S,
    T,
    Mat,
    centralizer_root,
    conj,
    lift,
    matrix_to_word,
    order,
    parse_psl_word,
    parse_sl_word,
    project,
    psl_conjugate,
    psl_inv,
    psl_mul,
    psl_order,
    psl_reduce,
    sl_conjugate,
    word_to_matrix,
)

sl_words = st.lists(st.tuples(st.sampled_from("st"), st.sampled_from((1, -1))), max_size=20)
psl_words = st.lists(st.sampled_from(["a", "b", "b2"]), max_size=12).map(psl_reduce)


def test_rejects_bad_determinant():
    with pytest.raises(ValueError):
        Mat(1, 1, 1, 1)


def test_rejects_non_integer_entries():
    with pytest.raises(TypeError):
        Mat(1.0, 0, 0, 1)


def test_products():
    assert S * S == MINUS_E
    assert T * T * T == MINUS_E
    assert E * T == T


def test_relators():
    assert S**4 == E
    assert word_to_matrix(parse_sl_word("s s t^-1 t^-1 t^-1")) == E
    assert word_to_matrix(()) == E


@pytest.mark.parametrize(
    "m, expected", [(S, 4), (T, 6), (SHEAR, INFINITE), (MINUS_E, 2), (E, 1), (-T, 3)]
)
def test_order_examples(m, expected):
    assert order(m) == expected


def test_word_examples():
    assert matrix_to_word(E) == ()
    assert word_to_matrix(matrix_to_word(MINUS_E)) == MINUS_E
    assert word_to_matrix(parse_sl_word("t^-1 s")) == SHEAR


@given(sl_words)
def test_word_roundtrip(w):
    m = word_to_matrix(tuple(w))
    x = matrix_to_word(m)
    assert word_to_matrix(x) == m
    # output is freely reduced
    assert all(x[i] != (x[i + 1][0], -x[i + 1][1]) for i in range(len(x) - 1))


def test_projection_examples():
    assert project(MINUS_E) == ()
    assert project(S) == ("a",)
    assert project(T * T) == ("b2",)


@given(sl_words)
def test_projection_ignores_sign(w):
    m = word_to_matrix(tuple(w))
    assert project(m) == project(-m)
    assert project(lift(project(m))) == project(m)


def test_psl_reduce_examples():
    assert psl_reduce(["a", "a"]) == ()
    assert psl_reduce(["b", "b2"]) == ()
    assert psl_reduce(["a", "b", "b", "a"]) == ("a", "b2", "a")


@given(psl_words, psl_words)
def test_psl_group_laws(u, v):
    assert psl_mul(u, psl_inv(u)) == ()
    assert psl_reduce(list(u)) == u
    assert project(lift(u) * lift(v)) == psl_mul(u, v)


def test_psl_conjugate_examples():
    assert psl_conjugate(parse_psl_word("a b"), parse_psl_word("b a")) == ("a",)
    assert psl_conjugate(("a",), ("b",)) is None
    assert psl_conjugate(("b",), ("b2",)) is None


@given(psl_words, psl_words)
def test_psl_conjugate_finds_planted_conjugator(u, g):
    v = psl_mul(g, u, psl_inv(g))
    h = psl_conjugate(u, v)
    assert h is not None
    assert psl_mul(h, u, psl_inv(h)) == v


def test_psl_order_matches_lift():
    for w in ["a", "b", "b2", "a b", "b a b2"]:
        u = parse_psl_word(w)
        n = order(lift(u))
        assert psl_order(u) == (INFINITE if n == INFINITE else {2: 1, 4: 2, 3: 3, 6: 3, 1: 1}[n])


def test_centralizer_root_examples():
    assert centralizer_root(parse_psl_word("a b")) == ("a", "b")
    assert centralizer_root(parse_psl_word("a b a b")) == ("a", "b")
    assert centralizer_root(("b2",)) == ("b",)
    with pytest.raises(ValueError):
        centralizer_root(())


def test_sl_conjugate_examples():
    assert sl_conjugate(T, T) is not None
    assert sl_conjugate(S, -S) is None
    assert oracles.brute_conjugator(S.rows(), (-S).rows()) is None


def test_sl_conjugate_t_and_inverse_are_not_conjugate():
    # p(t) = b and p(t^-1) = b2 have different images in the abelianization Z6
    assert sl_conjugate(T, T.inv()) is None
    assert oracles.brute_conjugator(T.rows(), T.inv().rows()) is None


@given(sl_words, sl_words)
def test_sl_conjugate_planted(w, q):
    a = word_to_matrix(tuple(w))
    b = conj(word_to_matrix(tuple(q)), a)
    found = sl_conjugate(a, b)
    assert found is not None and conj(found, a) == b


def test_order_table_small_entries():
    for a, b, c, d in itertools.product(range(-3, 4), repeat=4):
        if a * d - b * c != 1:
            continue
        m = Mat(a, b, c, d)
        expected = oracles.brute_order(m.rows())
        assert order(m) == (INFINITE if expected is None else expected)
