import random

from hypothesis import given, settings, strategies as st

from oracles import (bjj_add_oracle, bjj_on_curve_oracle,
                     bjj_scalar_mul_oracle)
from zktax.babyjubjub import (BASE, IDENTITY, SUBGROUP_ORDER, in_subgroup,
                              point_add, scalar_mul)

scalars = st.integers(min_value=0, max_value=SUBGROUP_ORDER - 1)


def test_base_point():
    assert bjj_on_curve_oracle(BASE)
    assert in_subgroup(BASE)
    assert scalar_mul(SUBGROUP_ORDER, BASE) == IDENTITY


def test_identity_laws():
    assert point_add(IDENTITY, BASE) == BASE
    assert point_add(BASE, IDENTITY) == BASE
    assert scalar_mul(0, BASE) == IDENTITY
    assert scalar_mul(1, BASE) == BASE


@settings(max_examples=25, deadline=None)
@given(scalars, scalars)
def test_add_matches_oracle(a, b):
    pa = scalar_mul(a, BASE)
    pb = scalar_mul(b, BASE)
    assert point_add(pa, pb) == bjj_add_oracle(pa, pb)


@settings(max_examples=15, deadline=None)
@given(scalars)
def test_scalar_mul_matches_double_and_add_oracle(k):
    assert scalar_mul(k, BASE) == bjj_scalar_mul_oracle(k, BASE)


@settings(max_examples=15, deadline=None)
@given(scalars, scalars)
def test_scalar_mul_is_homomorphic(a, b):
    lhs = scalar_mul((a + b) % SUBGROUP_ORDER, BASE)
    rhs = point_add(scalar_mul(a, BASE), scalar_mul(b, BASE))
    assert lhs == rhs


def test_points_stay_on_curve():
    rnd = random.Random(7)
    for _ in range(20):
        p = scalar_mul(rnd.randrange(SUBGROUP_ORDER), BASE)
        assert bjj_on_curve_oracle(p)
        assert in_subgroup(p)
