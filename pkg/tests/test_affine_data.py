from fractions import Fraction
from itertools import product

import pytest

from loopnet import affine_data, lie
from loopnet.errors import UnsupportedAlgebraError


def brute_force_alcove_count(n, level):
    """Independent enumerator: for A_{n-1} the pairing <lambda, theta> is the
    plain coordinate sum, checked here without the Gram machinery."""
    rank = n - 1
    return sum(1 for coords in product(range(level + 1), repeat=rank)
               if sum(coords) <= level)


def test_alcove_su2_counts(su2):
    weights = affine_data.alcove(su2, 1)
    assert [w.weight for w in weights] == [(0,), (1,)]
    for level in range(1, 7):
        got = affine_data.alcove(su2, level)
        assert len(got) == level + 1
        assert len(got) == brute_force_alcove_count(2, level)


def test_alcove_su3(su3):
    weights = affine_data.alcove(su3, 1)
    assert len(weights) == 3 == brute_force_alcove_count(3, 1)
    for level in (2, 3):
        assert len(affine_data.alcove(su3, level)) == \
            brute_force_alcove_count(3, level)


def test_alcove_theta_pairing_is_exact(su3):
    for w in affine_data.alcove(su3, 3):
        assert w.theta_pairing == sum(w.weight)
        assert w.theta_pairing <= 3


def test_conformal_weights_su2(su2):
    data = affine_data.level_data(su2, 1)
    assert affine_data.conformal_weight((0,), data) == 0
    assert affine_data.conformal_weight((1,), data) == Fraction(1, 4)
    # the Casimir splits as <w,w> = 1/2 and <w, 2 rho> = 1
    weights = {w.weight: w for w in affine_data.alcove(su2, 1)}
    assert weights[(1,)].casimir == Fraction(3, 2)


def test_conformal_weights_su3(su3):
    data = affine_data.level_data(su3, 1)
    assert affine_data.conformal_weight((1, 0), data) == Fraction(1, 3)
    assert affine_data.conformal_weight((0, 1), data) == Fraction(1, 3)


def test_conformal_weight_domain_error(su2):
    data = affine_data.level_data(su2, 1)
    with pytest.raises(ValueError):
        affine_data.conformal_weight((2,), data)  # outside the level-1 alcove
    with pytest.raises(ValueError):
        affine_data.conformal_weight((-1,), data)


def test_central_charge_exact(su2, su3):
    assert affine_data.level_data(su2, 1).central_charge == 1
    assert affine_data.level_data(su3, 1).central_charge == 2
    e8 = lie.simple_type_record("E8")
    assert affine_data.level_data(e8, 1).central_charge == 8
    b2 = lie.simple_type_record("B", 2)
    assert affine_data.level_data(b2, 1).central_charge == Fraction(10, 4)


def test_central_charge_at_least_one_all_families():
    for rec in lie.simple_type_table(8):
        for level in range(1, 11):
            c = affine_data.level_data(rec, level).central_charge
            assert c >= 1, (rec, level, c)


def test_bounds_su2(su2):
    rep = affine_data.alcove_bounds(su2, 1)
    assert rep.c_ge_1
    assert rep.m == pytest.approx(1.0)
    assert rep.h_max_bound == pytest.approx(1.0 / 12.0)
    assert rep.max_bare_h <= rep.h_max_bound + 1e-12
    assert rep.all_within_bound
    assert rep.max_dressed_h == Fraction(1, 4)


def test_bounds_sweep():
    for n in (2, 3, 4):
        alg = lie.build_su(n)
        for level in (1, 2, 3):
            rep = affine_data.alcove_bounds(alg, level)
            assert rep.c_ge_1
            assert rep.m is not None and rep.m > 0
            assert rep.all_within_bound


def test_bounds_table_only_families():
    rep = affine_data.alcove_bounds(lie.simple_type_record("G2"), 2)
    assert rep.c_ge_1
    assert rep.m is None and rep.all_within_bound is None


def test_non_type_a_alcove_unsupported():
    with pytest.raises(UnsupportedAlgebraError):
        affine_data.alcove(lie.simple_type_record("F4"), 1)


def test_level_validation(su2):
    with pytest.raises(ValueError):
        affine_data.level_data(su2, 0)
    with pytest.raises(ValueError):
        affine_data.alcove(su2, 0)
