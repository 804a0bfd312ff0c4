import random

import pytest
from hypothesis import given, settings, strategies as st

from pbmonoid.diagram import (apply, canonical_encode, compose, compose_all, count_pb,
                              cycle_trail_decompose, decode, disjoint_union, empty,
                              enumerate_all, from_permutation, identity, is_idempotent,
                              is_projection, make_diagram, params, parse_pbd, preimage,
                              random_diagram, random_partial_perm, reassemble, restrict, star,
                              to_pbd, vertex_sets)
from pbmonoid.errors import (CrossingEdge, DuplicateVertex, IndexOutOfRange, NotInIX,
                             ParseError, SizeMismatch, SizeTooLarge)


@st.composite
def diagrams(draw, max_n=8, n=None):
    n = n if n is not None else draw(st.integers(1, max_n))
    return random_diagram(n, draw(st.integers(0, 2 ** 32)))


@st.composite
def diagram_pairs(draw, max_n=8):
    n = draw(st.integers(1, max_n))
    return draw(diagrams(n=n)), draw(diagrams(n=n))


# construction

def test_fig2_construction(fig2):
    d = make_diagram(12, [(2, 2), (12, 11)], [(1, 3), (5, 9), (6, 8), (10, 11)],
                     [(3, 6), (4, 5), (7, 10), (8, 9)])
    assert d == fig2
    assert d.transversals() == [(2, 2), (12, 11)]
    assert d.upper_singletons() == [4, 7]
    assert d.lower_singletons() == [1, 12]


def test_identity_from_transversals():
    assert make_diagram(3, [(1, 1), (2, 2), (3, 3)]) == identity(3)


def test_duplicate_vertex():
    with pytest.raises(DuplicateVertex):
        make_diagram(2, [(1, 1), (1, 2)])


def test_index_out_of_range():
    with pytest.raises(IndexOutOfRange):
        make_diagram(3, [(1, 4)])
    with pytest.raises(IndexOutOfRange):
        make_diagram(3, [], [(0, 1)])


def test_hook_with_itself_rejected():
    with pytest.raises(DuplicateVertex):
        make_diagram(3, [], [(2, 2)])


# composition

def test_fig3_product(fig3):
    a, b, ab = fig3
    got = compose(a, b)
    assert got == ab
    assert got.transversals() == [(2, 5)]
    assert got.upper_hooks() == [(1, 3), (5, 9), (6, 8), (10, 11)]
    assert got.lower_hooks() == [(1, 3), (4, 7), (8, 9), (11, 12)]


def test_size_mismatch():
    with pytest.raises(SizeMismatch):
        compose(identity(2), identity(3))


def test_identity_is_neutral():
    rng = random.Random(5)
    for _ in range(50):
        d = random_diagram(5, rng)
        assert compose(identity(5), d) == d == compose(d, identity(5))


def test_hook_is_idempotent():
    d = make_diagram(2, [], [(1, 2)])
    assert compose(d, d) == d


def test_hook_pair_loop_is_forgotten():
    d = make_diagram(2, [], [(1, 2)], [(1, 2)])
    assert compose(d, d) == d


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 8).flatmap(lambda n: st.tuples(*[diagrams(n=n)] * 3)))
def test_associativity(triple):
    a, b, c = triple
    assert compose(compose(a, b), c) == compose(a, compose(b, c))


# involution

def test_star_identity():
    for n in range(1, 6):
        assert star(identity(n)) == identity(n)


def test_star_fig2(fig2):
    s = star(fig2)
    assert s.transversals() == [(2, 2), (11, 12)]
    assert s.upper_hooks() == [(3, 6), (4, 5), (7, 10), (8, 9)]
    assert s.lower_hooks() == [(1, 3), (5, 9), (6, 8), (10, 11)]


def test_regular_on_random():
    rng = random.Random(0)
    for _ in range(1000):
        a = random_diagram(rng.randint(1, 8), rng)
        assert compose_all([a, star(a), a]) == a


@settings(max_examples=300, deadline=None)
@given(diagram_pairs())
def test_star_antihomomorphism(pair):
    a, b = pair
    assert star(star(a)) == a
    assert star(compose(a, b)) == compose(star(b), star(a))


def test_star_identities_exhaustive_pb3():
    els = enumerate_all(3)
    stars = {canonical_encode(a): star(a) for a in els}
    for a in els:
        sa = stars[canonical_encode(a)]
        assert star(sa) == a
        for b in els:
            assert star(compose(a, b)) == compose(stars[canonical_encode(b)], sa)


# parameters

def test_params_fig2(fig2):
    p = params(fig2)
    assert (p.t, p.h, p.hstar, p.s, p.sstar) == (2, 4, 4, 2, 2)
    assert (p.defect, p.codef, p.fix, p.shift) == (10, 10, 1, 1)


def test_params_fig3_beta(fig3):
    p = params(fig3[1])
    assert (p.t, p.h, p.hstar, p.s, p.sstar, p.defect, p.codef) == (3, 3, 3, 3, 3, 9, 9)


def test_params_identity():
    p = params(identity(4))
    assert p.t == 4 and p.fix == 4
    assert (p.h, p.hstar, p.s, p.sstar, p.defect, p.codef, p.shift, p.supp) == (0,) * 8


@settings(max_examples=300, deadline=None)
@given(diagrams())
def test_finite_defect_equals_codefect(a):
    p = params(a)
    assert p.defect == p.codef
    assert p.t + p.defect == a.n
    assert p.defect == 2 * p.h + p.s and p.codef == 2 * p.hstar + p.sstar
    assert p.fix + p.shift == p.t


@settings(max_examples=200, deadline=None)
@given(diagram_pairs())
def test_non_left_units_form_left_ideal(pair):
    a, _ = pair
    if params(a).codef == 0:
        return
    rng = random.Random(params(a).t)
    perm = list(range(1, a.n + 1))
    rng.shuffle(perm)
    assert params(compose(from_permutation(perm), a)).codef > 0


# points and vertex sets

def test_apply_fig2(fig2):
    assert apply(fig2, 2) == 2
    assert apply(fig2, 12) == 11
    assert apply(fig2, 4) is None
    assert preimage(fig2, 11) == 12
    assert preimage(fig2, 1) is None
    with pytest.raises(IndexOutOfRange):
        apply(fig2, 13)


def test_apply_identity():
    assert all(apply(identity(6), x) == x for x in range(1, 7))


def test_vertex_sets_fig2(fig2):
    vs = vertex_sets(fig2)
    assert vs.dom == {2, 12}
    assert len(vs.defect) == 10
    assert vs.fix == {2} and vs.sh == {12}


def test_vertex_sets_identity_and_empty():
    X = set(range(1, 5))
    vs = vertex_sets(identity(4))
    assert vs.dom == vs.codom == vs.fix == X
    assert not (vs.defect or vs.codef or vs.sh or vs.supp)
    ve = vertex_sets(empty(4))
    assert ve.defect == ve.codef == ve.supp == X


@settings(max_examples=200, deadline=None)
@given(diagrams())
def test_vertex_set_partitions(a):
    X = set(range(1, a.n + 1))
    vs = vertex_sets(a)
    assert vs.dom | vs.defect == X and not vs.dom & vs.defect
    assert vs.codom | vs.codef == X and not vs.codom & vs.codef


# idempotents

def test_transposition_not_idempotent():
    assert not is_idempotent(from_permutation([2, 1]))


def test_seven_idempotents_in_pb2():
    els = enumerate_all(2)
    assert len(els) == 10
    assert sum(is_idempotent(a) for a in els) == 7


def test_dom_equals_fix_gives_idempotent():
    for a in enumerate_all(3):
        vs = vertex_sets(a)
        if vs.dom == vs.fix:
            assert is_idempotent(a)


def test_projection():
    d = make_diagram(3, [(3, 3)], [(1, 2)], [(1, 2)])
    assert is_projection(d)
    e = make_diagram(3, [(3, 3)], [(1, 2)])
    assert is_idempotent(e) and not is_projection(e)


# restriction and unions

def test_restrict_identity():
    assert restrict(identity(5), {1, 2}) == identity(2)


def test_restrict_fig2_cuts_leaving_edges(fig2):
    r = restrict(fig2, {1, 3}, strict=False)
    assert r.n == 2 and r.upper_hooks() == [(1, 2)]
    assert r.transversals() == [] and r.lower_singletons() == [1, 2]


def test_restrict_crossing(fig2):
    with pytest.raises(CrossingEdge):
        restrict(fig2, {1, 2})


def test_disjoint_union_roundtrip():
    d = make_diagram(6, [(1, 2), (2, 1)], [(3, 4)], [(5, 6)])
    parts = [([1, 2], restrict(d, {1, 2})), ([3, 4], restrict(d, {3, 4})),
             ([5, 6], restrict(d, {5, 6}))]
    assert disjoint_union(parts) == d


# cycles and trails

def test_cycle_trail_example():
    a = make_diagram(5, [(1, 2), (2, 3), (3, 1), (4, 5)])
    dec = cycle_trail_decompose(a)
    assert dec.cycles == ((1, 2, 3),)
    assert dec.trails == ((4, 5),)


def test_identity_decomposes_into_fixed_points():
    dec = cycle_trail_decompose(identity(4))
    assert dec.cycles == ((1,), (2,), (3,), (4,))
    assert dec.trails == ()


def test_hooks_rejected(fig2):
    with pytest.raises(NotInIX):
        cycle_trail_decompose(fig2)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2 ** 32))
def test_partial_perm_reassembly(seed):
    a = random_partial_perm(8, seed)
    assert reassemble(8, cycle_trail_decompose(a)) == a


# enumeration and encoding

def test_counts():
    assert len(enumerate_all(1)) == 2
    assert [len(enumerate_all(n)) for n in (2, 3, 4)] == [10, 76, 764]
    assert [count_pb(n) for n in (1, 2, 3, 4, 5)] == [2, 10, 76, 764, 9496]


def test_enumeration_unique_and_ordered():
    els = enumerate_all(3)
    keys = [(len(a.edges()), canonical_encode(a)) for a in els]
    assert len(set(keys)) == len(keys)
    assert keys == sorted(keys)


def test_enumeration_guard():
    with pytest.raises(SizeTooLarge):
        enumerate_all(7)


def test_encode_roundtrip_random():
    rng = random.Random(3)
    for _ in range(10_000):
        a = random_diagram(rng.randint(0, 8), rng)
        assert decode(canonical_encode(a)) == a


@settings(max_examples=200, deadline=None)
@given(diagram_pairs())
def test_encoding_is_equality_compatible(pair):
    a, b = pair
    assert (canonical_encode(a) == canonical_encode(b)) == (a == b)


# text format

def test_pbd_roundtrip(fig2):
    text = to_pbd(fig2)
    assert parse_pbd(text) == fig2
    assert to_pbd(parse_pbd(text)) == text


@settings(max_examples=200, deadline=None)
@given(diagrams())
def test_pbd_roundtrip_random(a):
    assert parse_pbd(to_pbd(a)) == a


@pytest.mark.parametrize("text", ["", "pbd 1 finite", "pbd 2 finite n=2", "pbd 1 finite n=2\nT 1",
                                  "pbd 1 finite n=2\nX 1 2", "pbd 1 finite n=2\nT 1 x",
                                  "pbd 1 finite n=q"])
def test_pbd_parse_errors(text):
    with pytest.raises(ParseError):
        parse_pbd(text)
