import random

import pytest
from hypothesis import given, settings, strategies as st

from pbmonoid.cards import ALEPH0
from pbmonoid.classify import MonoidClass as M, member, profile
from pbmonoid.closure import closure, idempotent_set
from pbmonoid.diagram import (compose, compose_all, decode, enumerate_all, from_permutation,
                              identity, is_idempotent, make_diagram, params, random_diagram)
from pbmonoid.errors import (NotACycle, NotATrail, NotInFL, PreconditionViolated, SizeMismatch,
                             UnsupportedShape, WrongAmbientSize)
from pbmonoid.factor import (CHAIN_VARIANTS, conjugators, factor_E_GL, factor_GR_GL,
                             factor_infinite_cycle_trail, factor_IX_idempotents, factor_mcycle,
                             factor_mtrail, factor_two_trails, factor_unit_regular,
                             factor_via_words, has_singletons_on_window, idempotent_on_window,
                             infinite_chain, mcycle, mtrail, sandwich_E, sandwich_S)
from pbmonoid.periodic import (LO, UP, S, T, compose_all_lazy, coshift, empty_n, identity_n,
                               make_descriptor, random_descriptor, shift, window_equal,
                               window_mismatches)
from pbmonoid.scaled import spread, squeeze
from pbmonoid.verify import periodic_library

WINDOW = 500


def recomposes(factors, target, window=WINDOW):
    return not window_mismatches(compose_all_lazy(factors), target, window)


# unit-regular factorization

def test_unit_regular_idempotent_input():
    a = make_diagram(3, [(3, 3)], [(1, 2)], [(1, 2)])
    e, g = factor_unit_regular(a)
    assert e == a and g == identity(3)


def test_unit_regular_transposition():
    a = from_permutation([2, 1])
    e, g = factor_unit_regular(a)
    assert e == identity(2) and g == a


def test_unit_regular_three_cycle():
    a = make_diagram(3, [(1, 2), (2, 3), (3, 1)])
    e, g = factor_unit_regular(a)
    assert e == identity(3) and g == a


def test_unit_regular_single_transversal():
    a = make_diagram(3, [(1, 3)])
    e, g = factor_unit_regular(a)
    assert e.transversals() == [(1, 1)]
    assert compose(e, g) == a and member(g, M.S) and is_idempotent(e)


def test_unit_regular_exhaustive():
    for n in (3, 4):
        for a in enumerate_all(n):
            e, g = factor_unit_regular(a)
            assert compose(e, g) == a and is_idempotent(e) and member(g, M.S)


# idempotent times left unit

def test_E_GL_left_unit_gives_identity():
    e, l = factor_E_GL(coshift())
    assert window_equal(e, identity_n(), WINDOW) and window_equal(l, coshift(), WINDOW)


def test_E_GL_finite_exhaustive():
    for n in (1, 2, 3, 4):
        for a in enumerate_all(n):
            e, l = factor_E_GL(a)
            assert compose(e, l) == a and is_idempotent(e) and member(l, M.GL)


def test_E_GL_surplus_defect():
    # upper 0 singleton, upper hook {1, 2}, then i -> (i - 2)'; lower 0 singleton
    a = make_descriptor(1, [T(-2)], [T(2)], m=3,
                        prefix=[((UP, 1), (UP, 2)), ((UP, 3), (LO, 1)), ((UP, 4), (LO, 2))])
    p = profile(a)
    assert (p.s, p.h, p.sstar, p.hstar) == (1, 1, 1, 0)
    assert 0 < p.codef < p.defect
    e, l = factor_E_GL(a)
    assert recomposes([e, l], a)
    assert idempotent_on_window(e) and member(l, M.GL)


def test_E_GL_library():
    for name, a in periodic_library():
        p = profile(a)
        if not p.codef <= p.defect:
            with pytest.raises(NotInFL):
                factor_E_GL(a)
            continue
        e, l = factor_E_GL(a)
        assert recomposes([e, l], a, 300), name
        assert idempotent_on_window(e, 300), name
        assert all(l.partner((LO, i)) is not None for i in range(300)), name


def test_E_GL_rejects_shift():
    with pytest.raises(NotInFL):
        factor_E_GL(shift())


# right unit times left unit

@pytest.mark.parametrize("a", [identity_n(), empty_n(), None], ids=["identity", "empty", "fig4"])
def test_GR_GL(a, fig4):
    a = fig4[2] if a is None else a
    r, l = factor_GR_GL(a)
    assert recomposes([r, l], a)
    assert not has_singletons_on_window(r, WINDOW) and not has_singletons_on_window(l, WINDOW)
    assert all(r.partner((UP, i))[0] == LO for i in range(WINDOW))      # defect 0
    assert all(l.partner((LO, i))[0] == UP for i in range(WINDOW))      # codefect 0


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 2 ** 30))
def test_GR_GL_random(seed):
    a = random_descriptor(seed)
    r, l = factor_GR_GL(a)
    assert recomposes([r, l], a)
    assert not has_singletons_on_window(r, WINDOW) and not has_singletons_on_window(l, WINDOW)


# sandwiches

def _gammas():
    return [("identity", identity_n()), ("alpha", spread(3)),
            ("singletons", make_descriptor(3, [S, T(0), T(0)], [S, T(0), T(0)]))]


@pytest.mark.parametrize("name,gamma", _gammas())
def test_sandwich_S_examples(name, gamma):
    alpha = spread(3)
    beta = alpha.star()
    delta = sandwich_S(alpha, beta, gamma)
    assert recomposes([alpha, delta, beta], gamma)
    # delta is a permutation: total and row-crossing on the window
    assert all(delta.partner((UP, i))[0] == LO for i in range(WINDOW))
    assert all(delta.partner((LO, i))[0] == UP for i in range(WINDOW))


@pytest.mark.parametrize("name,gamma", _gammas())
def test_sandwich_E_examples(name, gamma):
    alpha = spread(2, "singletons")
    beta = alpha.star()
    res = sandwich_E(alpha, beta, gamma)
    assert recomposes([alpha, res.eps, beta], gamma)
    # eps has infinite defect and codefect, which places it in E
    for row in (UP, LO):
        assert sum(res.eps.partner((row, i)) is None or res.eps.partner((row, i))[0] == row
                   for i in range(WINDOW)) > WINDOW // 4


def test_sandwich_S_random():
    rng = random.Random(2)
    alpha = spread(3)
    for _ in range(10):
        g = random_descriptor(rng.randrange(1 << 30))
        assert recomposes([alpha, sandwich_S(alpha, alpha.star(), g), alpha.star()], g)


def test_sandwich_S_needs_infinitely_many_lower_hooks():
    with pytest.raises(PreconditionViolated):
        sandwich_S(shift(), squeeze(3), identity_n())
    with pytest.raises(PreconditionViolated):
        sandwich_S(identity_n(), squeeze(3), identity_n())


def test_sandwich_E_needs_infinite_codefect():
    with pytest.raises(PreconditionViolated):
        sandwich_E(identity_n(), squeeze(2, "singletons"), identity_n())


# orbits

def test_conjugators_example():
    a = make_diagram(2, [(2, 2)])
    b = make_diagram(2, [(1, 1)])
    g, d = conjugators(a, b)
    t = from_permutation([2, 1])
    assert g == d == t
    assert compose_all([g, a, d]) == b


def test_conjugators_same_element():
    rng = random.Random(1)
    for _ in range(50):
        a = random_diagram(5, rng)
        g, d = conjugators(a, a)
        assert compose_all([g, a, d]) == a


def test_conjugators_negative():
    assert conjugators(make_diagram(3, [(1, 1)]), make_diagram(3, [(1, 1), (2, 2)])) is None
    with pytest.raises(SizeMismatch):
        conjugators(identity(2), identity(3))


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 7), st.integers(0, 2 ** 32), st.integers(0, 2 ** 32))
def test_conjugators_criterion(n, s1, s2):
    a, b = random_diagram(n, s1), random_diagram(n, s2)
    pa, pb = params(a), params(b)
    same = (pa.t, pa.h, pa.hstar, pa.s, pa.sstar) == (pb.t, pb.h, pb.hstar, pb.s, pb.sstar)
    got = conjugators(a, b)
    assert (got is not None) == same
    if got:
        assert compose_all([got[0], a, got[1]]) == b


# cycles and trails

@pytest.mark.parametrize("m", [2, 3, 4])
def test_mcycle_and_mtrail(m):
    for a, fn in ((mcycle(m), factor_mcycle), (mtrail(m), factor_mtrail)):
        fs = fn(a)
        assert len(fs) == 3
        assert all(is_idempotent(f) for f in fs)
        assert compose_all(fs) == a


def test_mcycle_sizes():
    assert mcycle(2).n == 6 and mtrail(2).n == 4


def test_cycle_trail_shape_errors():
    with pytest.raises(WrongAmbientSize):
        factor_mcycle(make_diagram(5, [(1, 4), (4, 1)]))
    with pytest.raises(NotACycle):
        factor_mcycle(make_diagram(6, [(1, 4)]))
    with pytest.raises(NotATrail):
        factor_mtrail(identity(4))


def test_two_trails():
    a = make_diagram(4, [(1, 3), (2, 4)])
    fs = factor_two_trails(a)
    assert all(is_idempotent(f) for f in fs)
    assert compose_all(fs) == a


@pytest.mark.parametrize("variant", CHAIN_VARIANTS)
def test_infinite_chains(variant):
    alpha, triple = infinite_chain(variant)
    assert all(idempotent_on_window(f) for f in triple)
    assert recomposes(triple, alpha)
    assert factor_infinite_cycle_trail(variant) is not None


def test_infinite_chain_wrong_layout():
    with pytest.raises(NotACycle):
        factor_infinite_cycle_trail("bi", identity_n())
    with pytest.raises(NotATrail):
        factor_infinite_cycle_trail("right", identity_n())


# partial bijections of N

def _three_cycle():
    return make_descriptor(1, [S], [S], m=3,
                           prefix=[((UP, 0), (LO, 1)), ((UP, 1), (LO, 2)), ((UP, 2), (LO, 0))])


def test_ix_cycle_with_cofinite_fail():
    a = _three_cycle()
    fs = factor_IX_idempotents(a)
    assert len(fs) == 3
    assert all(idempotent_on_window(f) for f in fs)
    assert recomposes(fs, a)


def test_ix_shift_exceeds_fail():
    # evens go to the next odd: infinitely many 2-trails and no fails
    a = make_descriptor(2, [T(1), S], [S, T(-1)])
    p = profile(a)
    assert p.defect == p.codef == p.shift == ALEPH0
    fs = factor_IX_idempotents(a)
    assert all(idempotent_on_window(f) for f in fs)
    assert recomposes(fs, a)


def test_ix_idempotent_input():
    a = make_descriptor(2, [T(0), S], [T(0), S])
    assert factor_IX_idempotents(a) == [a]


def test_ix_errors():
    for bad in (shift(), identity_n(), make_descriptor(2, [("H", 1), ("H", -1)], [S, S])):
        with pytest.raises(PreconditionViolated):
            factor_IX_idempotents(bad)
    trail = make_descriptor(2, [T(2), S], [T(-2), S], m=2, prefix=[((UP, 0), (LO, 2))])
    with pytest.raises(UnsupportedShape):
        factor_IX_idempotents(trail)


# words over generators

def test_words_idempotent_closure():
    gens = idempotent_set(3)
    E = closure(gens)
    rng = random.Random(0)
    for key in rng.sample(sorted(E.encodings), 20):
        a = decode(key)
        w = factor_via_words(a, gens)
        assert w is not None
        assert compose_all([identity(3)] + [gens[i] for i in w]) == a


def test_words_generator_and_transposition():
    gens = idempotent_set(2)
    assert factor_via_words(gens[1], gens) == (1,)
    assert factor_via_words(from_permutation([2, 1]), gens) is None
    with pytest.raises(SizeMismatch):
        factor_via_words(identity(3), gens)
