from __future__ import annotations

import numpy as np
import pytest

from braidmono.braid_core import FreeWord, HalfTwist, band_generator
from braidmono.doubling import smooth_curve_factorization
from braidmono.monodromy import endpoint_transpositions, theta_doubled, theta_eval, theta_pencil, theta_std, theta_v2
from braidmono.pencil import (
    TWIST_SIGN,
    LiftError,
    VanishingCycle,
    build_covering,
    dumps,
    enclosing_loop,
    lift_and_classify,
    loads,
    pencil_doubling,
    transvection,
)

TORUS = np.array([[0, 1], [-1, 0]])


@pytest.fixture(scope="module")
def doubled_22():
    return pencil_doubling(smooth_curve_factorization(2), theta_std(2, 2), 2, 2)


@pytest.mark.parametrize("theta,genus", [
    (theta_std(2, 2), 0),
    (theta_std(6, 3), 1),
    (theta_pencil(2, 3), 2),
    (theta_v2(), 0),
    (theta_doubled(theta_std(2, 2), 2, 2), 1),
])
def test_genus_and_form(theta, genus):
    s = build_covering(theta)
    assert s.genus == genus
    assert s.boundary_count == theta.sheets
    J = s.gram
    assert J.shape == (2 * genus, 2 * genus)
    assert (J == -J.T).all()
    if genus:
        assert round(np.linalg.det(J)) == 1


def test_boundary_walks_are_null():
    s = build_covering(theta_pencil(2, 3))
    lifts = s.homology_basis
    for w in s.boundary_walks:
        assert not any(s.classify(w))
        assert all(s.intersection(w, v) == 0 for v in lifts)


def test_enclosing_loop_examples():
    assert enclosing_loop(HalfTwist(2, 1)) == FreeWord(2, (1, 2))
    loop = enclosing_loop(band_generator(1, 3, 3))
    assert loop == FreeWord(3, (1, 3))
    theta = theta_std(2, 2)
    t1, t2 = endpoint_transpositions(theta, HalfTwist(2, 1))
    assert t1 == t2
    assert theta_eval(theta, enclosing_loop(HalfTwist(2, 1))).is_identity()


def test_lift_basics():
    s = build_covering(theta_std(2, 2))
    assert lift_and_classify(s, FreeWord(2, ()), 1).is_zero()
    assert lift_and_classify(s, FreeWord(2, (1, 2)), 1).coords == ()
    with pytest.raises(LiftError):
        s.lift(FreeWord(2, (1,)), 1)


def test_two_lifts_have_opposite_classes():
    theta = theta_doubled(theta_std(2, 2), 2, 2)
    s = build_covering(theta)
    h = band_generator(1, 2, 16)
    loop = enclosing_loop(h)
    a, b = sorted(endpoint_transpositions(theta, h)[0].support())
    ca, cb = s.classify(s.lift(loop, a)), s.classify(s.lift(loop, b))
    assert any(ca)
    assert tuple(-x for x in ca) == cb


def test_transvection_examples():
    assert (transvection((0, 0), TORUS) == np.eye(2)).all()
    assert transvection((1, 0), TORUS, TWIST_SIGN).tolist() == [[1, 1], [0, 1]]
    m = transvection((2, -3), TORUS, TWIST_SIGN)
    assert (m.T @ TORUS @ m == TORUS).all()


def test_conic_pencil():
    p = pencil_doubling(None, theta_std(0, 1), 0, 1)
    assert (p.genus, p.genus_doubled) == (0, 0)
    assert len(p.cycles) == 3
    assert all(c.is_zero() for c in p.cycles)
    assert p.product_matrix().shape == (0, 0)


def test_doubled_22_twist_count(doubled_22):
    assert (doubled_22.genus, doubled_22.genus_doubled) == (0, 1)
    assert len(doubled_22.cycles) == 12
    assert all(not c.is_zero() for c in doubled_22.cycles)


def test_doubled_22_inner_twists_agree(doubled_22):
    inner = [c.coords for c in doubled_22.cycles if c.provenance.startswith("F#")]
    assert len(inner) == 2 and inner[0] == inner[1]


def test_doubled_22_cross_twists_agree_up_to_sign(doubled_22):
    cross = [c.coords for c in doubled_22.cycles if c.provenance.startswith("V_")]
    assert len(cross) == 6
    v = cross[0]
    assert all(c in (v, tuple(-x for x in v)) for c in cross)


def test_doubled_22_product_is_identity(doubled_22):
    assert (doubled_22.product_matrix() == np.eye(2, dtype=int)).all()


def test_opposite_sign_does_not_close_up(doubled_22):
    m = np.eye(2, dtype=np.int64)
    for c in doubled_22.cycles:
        m = transvection(c.coords, doubled_22.gram, -TWIST_SIGN) @ m
    assert not (m == np.eye(2)).all()


def test_reordering_keeps_product_identity():
    p = pencil_doubling(smooth_curve_factorization(2), theta_std(2, 2), 2, 2, reorder=True)
    assert len(p.cycles) == 12
    assert (p.product_matrix() == np.eye(2, dtype=int)).all()


def test_pencil_file_round_trip(doubled_22):
    text = dumps(doubled_22)
    assert text.splitlines()[1] == "genus: 0 bars 1"
    assert loads(text) == [c.coords for c in doubled_22.cycles]


def test_vanishing_cycle_zero():
    assert VanishingCycle((0, 0)).is_zero()
    assert not VanishingCycle((0, 1)).is_zero()
