from __future__ import annotations

import pytest

from braidmono.braid_core import BraidInputError, BraidWord, FreeWord, HalfTwist, band_generator
from braidmono.doubling import smooth_curve_factorization, v2_branch_factorization
from braidmono.factorization import Factor
from braidmono.monodromy import (
    GeomRep,
    Permutation,
    b_d0_membership,
    check_factor_compat,
    check_factorization,
    compat_rule,
    doubled_sheet_labels,
    dumps,
    endpoint_transpositions,
    loads,
    pull_back,
    standard_pairs,
    theta_doubled,
    theta_eval,
    theta_pencil,
    theta_std,
    theta_v2,
)


def T(n, a, b):
    return Permutation.transposition(n, a, b)


def test_permutation_composes_left_to_right():
    p, q = T(3, 1, 2), T(3, 2, 3)
    # (p*q)(x) = q(p(x)): 1 -> 2 -> 3
    assert (p * q)(1) == 3
    assert (p * q).cycle_str() == "(1 3 2)"
    assert (p * p).is_identity()
    assert p.inverse() == p
    assert T(4, 1, 2).disjoint(T(4, 3, 4))
    assert T(4, 1, 2).commutes(T(4, 3, 4))
    assert not T(3, 1, 2).commutes(T(3, 2, 3))


def test_geomrep_validation():
    GeomRep.from_pairs(2, [(1, 2), (1, 2)])
    with pytest.raises(BraidInputError, match="not the identity"):
        GeomRep.from_pairs(3, [(1, 2), (2, 3)])
    with pytest.raises(BraidInputError, match="transitively"):
        GeomRep.from_pairs(4, [(1, 2), (1, 2), (3, 4), (3, 4)])
    with pytest.raises(BraidInputError, match="not a transposition"):
        GeomRep(3, (Permutation((2, 3, 1)),))


def test_theta_std_examples():
    t = theta_std(2, 2)
    assert t.pairs() == [(1, 2), (1, 2)]
    # the product of (12)(12)(13)(13) is trivial and the image is transitive
    assert theta_std(4, 3).pairs() == [(1, 2), (1, 2), (1, 3), (1, 3)]
    assert theta_std(6, 3).degree == 6
    assert theta_std(0, 1).degree == 0
    for d, n in ((3, 3), (2, 3), (8, 3)):
        with pytest.raises(BraidInputError):
            theta_std(d, n)
    assert standard_pairs(3) == [(1, 2), (1, 2), (1, 3), (1, 3), (2, 3), (2, 3)]


def test_theta_pencil():
    t = theta_pencil(1, 2)
    assert t.pairs() == [(1, 2)] * 4
    with pytest.raises(BraidInputError):
        theta_pencil(1, 1)


def test_theta_eval_of_product_loop_is_trivial():
    t = theta_v2()
    assert theta_eval(t, FreeWord.product_class(6)).is_identity()


def test_endpoint_transpositions_of_generator():
    t = theta_v2()
    t1, t2 = endpoint_transpositions(t, HalfTwist(6, 1))
    assert (t1, t2) == (T(4, 1, 2), T(4, 3, 4))


def test_compat_rule_table():
    a, b, c = T(4, 1, 2), T(4, 3, 4), T(4, 2, 3)
    assert compat_rule(1, a, a) and not compat_rule(1, a, b)
    assert compat_rule(2, a, b) and compat_rule(-2, a, b)
    assert not compat_rule(2, a, a) and not compat_rule(2, a, c)
    assert compat_rule(3, a, c) and not compat_rule(3, a, b)
    with pytest.raises(BraidInputError):
        compat_rule(4, a, b)


def test_sextic_factors_compatible():
    res = check_factorization(theta_v2(), v2_branch_factorization())
    assert len(res) == 12 and all(r.ok for r in res)


def test_violation_is_described():
    t = theta_std(2, 2)
    r = check_factor_compat(t, Factor(band_generator(1, 2, 2), 2), 1)
    assert not r.ok
    assert "VIOLATION" in r.describe(t) and "(1 2)" in r.describe(t)


def test_b_d0_membership_and_pull_back():
    t = theta_std(2, 2)
    assert b_d0_membership(t, BraidWord.gen(2, 1))
    v = theta_v2()
    x1 = BraidWord.gen(6, 1)
    assert not b_d0_membership(v, x1)
    assert b_d0_membership(v, x1 * x1)
    pulled = pull_back(v, x1)
    assert pulled.images[0] == v.images[1]
    assert b_d0_membership(t, smooth_curve_factorization(2).factors[0].word())


def test_theta_doubled_shape():
    t = theta_doubled(theta_std(2, 2), 2, 2)
    assert t.sheets == 8 and t.degree == 16
    labels = doubled_sheet_labels(2)
    assert labels == ("1a", "2a", "1b", "2b", "1c", "2c", "1d", "2d")
    assert t.images[0].cycle_str(labels) == "(1a 2a)"
    assert t.images[2].cycle_str(labels) == "(1a 2a)"
    # with one sheet and no branch points the doubled map is the sextic representation
    assert theta_doubled(theta_std(0, 1), 0, 1).pairs() == theta_v2().pairs()


def test_theta_file_round_trip():
    for t in (theta_v2(), theta_doubled(theta_std(2, 2), 2, 2)):
        u = loads(dumps(t))
        assert u.pairs() == t.pairs()
        assert u.sheet_labels == t.sheet_labels


def test_theta_loads_rejects_bad_input():
    with pytest.raises(BraidInputError):
        loads("theta v1\nsheets: 3\ngen 1: (1 2)\n")
    with pytest.raises(BraidInputError):
        loads("nonsense")
