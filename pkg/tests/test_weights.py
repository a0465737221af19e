from fractions import Fraction as F

import pytest

from weighted_ehrhart.weights import LinearForm, Weight, WeightTerm, expand_weight, homogenize_weight


def test_lift_and_evaluate():
    f = LinearForm((1, 2))
    assert f.lift(2).coeffs == (1, 2, 0)
    assert f.lift(1) is f
    with pytest.raises(ValueError):
        f.lift(4)
    assert f.lift(2)((1, 1, 5)) == 3


def test_integer_scale():
    ints, s = LinearForm((F(1, 2), F(2, 3), 0)).integer_scale()
    assert (ints, s) == ((3, 4, 0), 6)


def test_weight_homogeneity_enforced():
    with pytest.raises(ValueError):
        Weight((WeightTerm(1), WeightTerm(1, (LinearForm((1,)),))))
    with pytest.raises(ValueError):
        Weight.constant() + Weight.square(LinearForm((1,)))


def test_homogenize_splits_by_degree():
    parts = homogenize_weight({(2, 0): 1, (0, 0): 3, (1, 1): F(1, 2)})
    assert [m for m, _ in parts] == [2, 0]
    top = parts[0][1]
    assert top((2, 3)) == 4 + 3
    assert parts[1][1]((2, 3)) == 3


def test_expand_round_trip():
    w = Weight.product([LinearForm((1, -1, 0)), LinearForm((2, 0, 1))])
    poly = expand_weight(w, 3)
    assert poly == {(2, 0, 0): 2, (1, 0, 1): 1, (1, 1, 0): -2, (0, 1, 1): -1}
    (m, back), = homogenize_weight(poly)
    for p in [(1, 2, 3), (F(1, 2), -1, 2)]:
        assert back(p) == w(p)
