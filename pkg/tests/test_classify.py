import random

import pytest
from hypothesis import given, settings, strategies as st

from pbmonoid.cards import ALEPH0
from pbmonoid.classify import MonoidClass as M, lattice_consistent, member, memberships, profile
from pbmonoid.closure import closure, idempotent_set
from pbmonoid.diagram import (canonical_encode, empty, enumerate_all, identity, is_idempotent,
                              make_diagram, params, random_diagram)
from pbmonoid.errors import UnvalidatedDescriptor
from pbmonoid.factor import factor_unit_regular, idempotent_on_window
from pbmonoid.periodic import (H, S, T, coshift, empty_n, identity_n, make_descriptor,
                               random_descriptor, shift, window_equal)
from pbmonoid.scaled import spread, squeeze
from pbmonoid.verify import periodic_library


def test_shift_classes():
    m = memberships(shift())
    assert m[M.GR] and m[M.FR] and m[M.PB]
    assert not (m[M.GL] or m[M.FL] or m[M.F] or m[M.S])


def test_coshift_classes():
    m = memberships(coshift())
    assert m[M.GL] and m[M.FL] and not m[M.GR] and not m[M.F]


def test_identity_in_every_class():
    for d in (identity(3), identity_n()):
        assert all(memberships(d).values())


def test_two_point_defect_in_E():
    d = make_diagram(3, [(1, 2)])
    assert params(d).defect == 2
    assert member(d, M.E)
    E3 = closure(idempotent_set(3))
    assert canonical_encode(d) in E3.encodings


def test_nontrivial_unit_not_in_E():
    assert not member(make_diagram(3, [(1, 2), (2, 1), (3, 3)]), M.E)


def test_membership_rules_on_profiles():
    p = profile(spread(3))
    assert p.defect == 0 and p.codef == ALEPH0
    assert member(spread(3), M.GR) and not member(spread(3), M.E)
    assert member(squeeze(3), M.GL)
    # full descriptors with infinitely many hooks in both rows are in E
    hooks = make_descriptor(2, [H(1), H(-1)], [H(1), H(-1)])
    assert member(hooks, M.E) and member(empty_n(), M.E)


def test_countable_E_finite_support_clause():
    swap = [((0, 0), (1, 1)), ((0, 1), (1, 0))]
    d = make_descriptor(1, [T(0)], [T(0)], m=2, prefix=swap)
    assert profile(d).defect == 0 and not member(d, M.E)
    # indices 2, 3 below m carry no edge, so they are singletons in both rows
    e = make_descriptor(1, [T(0)], [T(0)], m=4, prefix=swap)
    p = profile(e)
    assert p.defect == 2 and p.supp < ALEPH0
    assert member(e, M.E)


def test_unvalidated_descriptor():
    with pytest.raises(UnvalidatedDescriptor):
        member(make_descriptor(1, [H(1)], [S]), M.PB)
    with pytest.raises(UnvalidatedDescriptor):
        member(object(), M.PB)


def test_lattice_exhaustive_pb3_and_pb4():
    assert all(lattice_consistent(a) for a in enumerate_all(3))
    assert all(lattice_consistent(a) for a in enumerate_all(4))


def test_lattice_on_library():
    for name, d in periodic_library():
        assert lattice_consistent(d), name


def test_lattice_examples():
    assert lattice_consistent(shift())
    m = memberships(empty(3))
    assert m[M.E] and m[M.F] and m[M.FL] and m[M.FR]


def test_E_matches_idempotent_closure():
    for n in (2, 3, 4):
        want = {canonical_encode(a) for a in enumerate_all(n) if member(a, M.E)}
        assert closure(idempotent_set(n)).encodings == want


def test_finite_one_sided_units_are_units():
    for n in (1, 2, 3, 4):
        for a in enumerate_all(n):
            gl, gr, s = member(a, M.GL), member(a, M.GR), member(a, M.S)
            assert gl == gr == s


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 8), st.integers(0, 2 ** 32))
def test_finite_diagrams_are_in_F_and_factor(n, seed):
    a = random_diagram(n, seed)
    assert member(a, M.F)
    e, g = factor_unit_regular(a)
    assert is_idempotent(e) and member(g, M.S)


def test_only_idempotent_left_unit_is_identity():
    for n in (1, 2, 3, 4):
        for a in enumerate_all(n):
            if is_idempotent(a) and member(a, M.GL):
                assert a == identity(n)
    rng = random.Random(8)
    descs = [d for _, d in periodic_library()]
    descs += [random_descriptor(rng.randrange(1 << 30)) for _ in range(300)]
    for d in descs:
        if member(d, M.GL) and idempotent_on_window(d, 200):
            assert window_equal(d, identity_n(), 200)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2 ** 30))
def test_lattice_random_descriptors(seed):
    assert lattice_consistent(random_descriptor(seed))
