"""Property tests for the product inequalities and the involution."""
import random

from hypothesis import given, settings, strategies as st

from pbmonoid.cards import Card
from pbmonoid.classify import profile
from pbmonoid.diagram import compose, identity, params, random_diagram, star
from pbmonoid.periodic import (compose_lazy, coshift, detect_periodicity, shift, star_periodic,
                               window_equal)
from pbmonoid.props import (all_product_checks, defect_carry, excess_bounds, left_unit_product,
                            product_bounds, star_identities)
from pbmonoid.verify import random_periodic_pair

finite_pair = st.integers(1, 8).flatmap(
    lambda n: st.tuples(st.integers(0, 2 ** 32), st.integers(0, 2 ** 32)).map(
        lambda s: (random_diagram(n, s[0]), random_diagram(n, s[1]))))


@settings(max_examples=500, deadline=None)
@given(finite_pair)
def test_finite_product_checks(pair):
    a, b = pair
    pa, pb, pab = params(a), params(b), params(compose(a, b))
    assert product_bounds(pa, pb, pab) == []
    assert left_unit_product(pa, pb, pab) == []
    assert defect_carry(pa, pb, pab) == []
    assert excess_bounds(pa, pb, pab) == []


@settings(max_examples=500, deadline=None)
@given(finite_pair)
def test_finite_star_identities(pair):
    a, b = pair
    assert star_identities(a, b, compose, star, lambda x, y: x == y) == []


@settings(max_examples=300, deadline=None)
@given(finite_pair)
def test_positive_codefect_is_a_left_ideal(pair):
    x, b = pair
    if params(b).codef > 0:
        assert params(compose(x, b)).codef > 0


@settings(max_examples=300, deadline=None)
@given(finite_pair)
def test_units_preserve_profile(pair):
    a, _ = pair
    assert params(compose(identity(a.n), a)) == params(a)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 2 ** 30))
def test_periodic_product_checks(seed):
    a, b, ab = random_periodic_pair(random.Random(seed))
    assert all_product_checks(profile(a), profile(b), profile(ab)) == []


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 2 ** 30))
def test_periodic_star_identities(seed):
    a, b, _ = random_periodic_pair(random.Random(seed))
    eq = lambda x, y: window_equal(x, y, 200)
    assert star_identities(a, b, compose_lazy, star_periodic, eq) == []


def test_left_unit_product_on_coshift():
    # coshift has codefect 0, so the product parameters are forced
    for b in (shift(), coshift(), shift(2)):
        ab = detect_periodicity(compose_lazy(coshift(), b), 64)
        assert left_unit_product(profile(coshift()), profile(b), profile(ab)) == []


def test_checks_report_violations():
    p = params(identity(2))
    q = p._replace(h=Card.of(5))
    assert product_bounds(p, p, q)
    assert left_unit_product(p, p, q)
