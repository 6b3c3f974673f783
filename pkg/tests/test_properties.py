"""Generated-case property suites.  Each runs at least 200 examples and can be
run on its own: ``pytest tests/test_properties.py``."""

from __future__ import annotations

from functools import lru_cache

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from braidmono.braid_core import (
    BraidWord,
    FreeWord,
    HalfTwist,
    action_table,
    artin_action,
    braid_eq,
    compose_tables,
    is_identity,
)
from braidmono.doubling import lines_factorization, smooth_curve_factorization
from braidmono.factorization import (
    ALLOWED_R,
    LEFT,
    RIGHT,
    Factor,
    Factorization,
    FactorizationError,
    global_conjugate,
    hurwitz_move,
    is_certified,
    pair_cancel,
    pair_create,
    product,
    same_factors,
)
from braidmono.monodromy import compat_rule, endpoint_transpositions, theta_pencil, theta_std, theta_v2
from braidmono.pencil import TWIST_SIGN, build_covering, transvection

CASES = settings(max_examples=200, deadline=None, derandomize=True)


@st.composite
def braid_words(draw, strands=None, max_len=12):
    n = strands if strands is not None else draw(st.integers(2, 6))
    letters = draw(st.lists(st.integers(1, n - 1).flatmap(lambda i: st.sampled_from([i, -i])),
                            max_size=max_len))
    return BraidWord(n, tuple(letters))


@st.composite
def half_twists(draw, strands):
    base = draw(st.integers(1, strands - 1))
    return HalfTwist(strands, base, draw(braid_words(strands, max_len=4)))


@st.composite
def factorizations(draw):
    n = draw(st.integers(3, 5))
    fs = draw(st.lists(st.tuples(half_twists(n), st.sampled_from(ALLOWED_R)), min_size=2, max_size=4))
    return Factorization(n, tuple(Factor(h, r) for h, r in fs))


def _size(h: HalfTwist) -> int:
    return max(len(img) for img in h.table())


def _factor_product_table(f: Factorization):
    t = tuple((k,) for k in range(1, f.strands + 1))
    for x in f.factors:
        t = compose_tables(t, x.twist.power_table(x.r))
    return t


def moves(max_index, max_size=4):
    return st.lists(st.tuples(st.integers(1, max_index), st.sampled_from([RIGHT, LEFT])), max_size=max_size)


# ---- braid relations


@CASES
@given(w=braid_words(), data=st.data())
def test_braid_relations_inside_random_words(w, data):
    n = w.strands
    cut = data.draw(st.integers(0, len(w.letters)))
    pre, post = BraidWord(n, w.letters[:cut]), BraidWord(n, w.letters[cut:])
    if n >= 3:
        i = data.draw(st.integers(1, n - 2))
        lhs = BraidWord(n, (i, i + 1, i))
        rhs = BraidWord(n, (i + 1, i, i + 1))
        assert braid_eq(pre * lhs * post, pre * rhs * post)
    if n >= 4:
        i = data.draw(st.integers(1, n - 3))
        j = data.draw(st.integers(i + 2, n - 1))
        assert braid_eq(pre * BraidWord(n, (i, j)) * post, pre * BraidWord(n, (j, i)) * post)
    assert is_identity(w * w.inverse())


@CASES
@given(w=braid_words())
def test_action_preserves_boundary_loop(w):
    top = FreeWord.product_class(w.strands)
    assert artin_action(w, top) == top


@CASES
@given(w=braid_words(), v=braid_words(strands=None))
def test_action_is_a_right_action(w, v):
    if v.strands != w.strands:
        v = BraidWord(w.strands, tuple(x for x in v.letters if abs(x) < w.strands))
    for k in range(1, w.strands + 1):
        g = FreeWord.gen(w.strands, k)
        assert artin_action(w * v, g) == artin_action(v, artin_action(w, g))


# ---- Hurwitz moves


@CASES
@given(f=factorizations(), data=st.data())
def test_hurwitz_moves_preserve_product(f, data):
    g = f
    for i, direction in data.draw(moves(len(f) - 1)):
        # repeated moves at one spot multiply arc complexity; stop before the
        # tables get too large to hold
        a, b = _size(g.factors[i - 1].twist), _size(g.factors[i].twist)
        if a * b * max(a, b) > 20_000:
            break
        g = hurwitz_move(g, i, direction)
        assert sorted(x.r for x in g.factors) == sorted(x.r for x in f.factors)
    assert _factor_product_table(g) == action_table(product(f))
    # the word of a moved factorization can be long enough that rebuilding its
    # action from scratch passes through huge intermediate words
    if len(product(g).letters) <= 120:
        assert braid_eq(product(g), product(f))


@CASES
@given(f=factorizations(), data=st.data())
def test_move_then_inverse_move_is_identity(f, data):
    i = data.draw(st.integers(1, len(f) - 1))
    assert same_factors(hurwitz_move(hurwitz_move(f, i, RIGHT), i, LEFT), f)


# ---- pair creation and cancellation

THETAS = [theta_v2(), theta_std(4, 3), theta_std(6, 3), theta_pencil(1, 3)]


@CASES
@given(k=st.integers(0, len(THETAS) - 1), data=st.data())
def test_pair_create_legality(k, data):
    theta = THETAS[k]
    n = theta.degree
    h = data.draw(half_twists(n))
    f = lines_factorization(n)
    at = data.draw(st.integers(1, len(f) + 1))
    t1, t2 = endpoint_transpositions(theta, h)
    legal = t1 != t2 and t1.disjoint(t2)
    assert legal == compat_rule(2, t1, t2)
    try:
        g = pair_create(f, at, h, theta)
    except FactorizationError:
        assert not legal
        return
    assert legal
    assert braid_eq(product(g), product(f))
    assert same_factors(pair_cancel(g, at), f)


# ---- certified factorizations


@CASES
@given(d=st.integers(2, 5), smooth=st.booleans(), data=st.data())
def test_exponent_sum_conserved(d, smooth, data):
    f = smooth_curve_factorization(d) if smooth else lines_factorization(d)
    if len(f) > 1:
        for i, direction in data.draw(moves(len(f) - 1)):
            f = hurwitz_move(f, i, direction)
    f = global_conjugate(f, data.draw(braid_words(d, max_len=6)))
    assert is_certified(f)
    assert f.exponent_sum() == d * (d - 1)
    assert product(f).permutation() == tuple(range(1, d + 1))


# ---- transvections

SURFACES = [theta_std(6, 3), theta_pencil(1, 2), theta_pencil(2, 2), theta_pencil(2, 3)]


@lru_cache(maxsize=None)
def _gram(k: int) -> np.ndarray:
    return build_covering(SURFACES[k]).gram


@CASES
@given(k=st.integers(0, len(SURFACES) - 1), data=st.data())
def test_transvections_preserve_the_form(k, data):
    J = _gram(k)
    dim = J.shape[0]
    vectors = data.draw(st.lists(st.lists(st.integers(-4, 4), min_size=dim, max_size=dim),
                                 min_size=1, max_size=4))
    total = np.eye(dim, dtype=np.int64)
    for v in vectors:
        m = transvection(v, J, TWIST_SIGN)
        assert (m.T @ J @ m == J).all()
        total = m @ total
    assert (total.T @ J @ total == J).all()
