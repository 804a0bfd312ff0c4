from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from pbmonoid.cardinal import (INFINITY, RELRANK_ROWS, SR_ROWS, Aleph, CardExpr, Finite, PowAleph,
                               bergman, finite_rank, relrank, render_table, rho, sierpinski)
from pbmonoid.classify import MonoidClass as M
from pbmonoid.closure import closure, idempotent_set, is_generating, pb_pair, small_idempotent_gens, symmetric_gens
from pbmonoid.diagram import canonical_encode, enumerate_all
from pbmonoid.errors import IndexUnsupported, PairNotCovered, Unsupported

DATA = Path(__file__).parent / "data"


def test_rho():
    assert rho(Aleph(0)) == Finite(1)
    assert rho(Aleph(2)) == Finite(3)
    assert rho(5) == Finite(6)
    with pytest.raises(IndexUnsupported):
        rho(Aleph("omega"))
    with pytest.raises(IndexUnsupported):
        rho(Finite(3))


def test_relrank_examples():
    assert relrank(M.PB, M.S, Aleph(0)) == Finite(2)
    assert relrank(M.FL, M.S, Aleph(0)) == Finite(6)
    assert relrank(M.F, M.E, Aleph(3)) == PowAleph(3)
    assert relrank(M.GL, M.S, Aleph(0)) == Finite(4)
    assert relrank(M.F, M.S, Aleph(0)) == Finite(4)
    assert relrank(M.FL, M.F, Aleph(0)) == Finite(2)
    assert relrank(M.FL, M.GL, Aleph(1)) == Finite(6)
    assert relrank(M.FL, M.E, Aleph(1)) == PowAleph(1)


def test_relrank_duals_and_gaps():
    for n in range(4):
        x = Aleph(n)
        assert relrank(M.FR, M.GR, x) == relrank(M.FL, M.GL, x)
        assert relrank(M.GR, M.S, x) == relrank(M.GL, M.S, x)
        assert relrank(M.PB, M.GR, x) == relrank(M.PB, M.GL, x) == Finite(1)
        assert relrank(M.PB, M.E, x) == relrank(M.PB, M.F, x) == Finite(2)
    with pytest.raises(PairNotCovered):
        relrank(M.S, M.PB, Aleph(0))
    with pytest.raises(PairNotCovered):
        relrank(M.GL, M.GR, Aleph(0))
    with pytest.raises(IndexUnsupported):
        relrank(M.PB, M.S, "x")


@given(st.integers(0, 50))
def test_affine_rows_follow_rho(n):
    r = n + 1
    x = Aleph(n)
    assert relrank(M.FL, M.F, x) == Finite(1 + r)
    assert relrank(M.GL, M.S, x) == relrank(M.F, M.S, x) == relrank(M.FL, M.GL, x) == Finite(2 + 2 * r)
    assert relrank(M.FL, M.S, x) == Finite(3 + 3 * r)
    assert sierpinski(M.F, x) == Finite(2 * n + 6)
    assert sierpinski(M.FL, x) == sierpinski(M.FR, x) == Finite(3 * n + 8)


def test_sierpinski():
    assert sierpinski(M.PB, Aleph(5)) == Finite(2)
    assert sierpinski(M.FL, Aleph(2)) == Finite(14)
    assert sierpinski(M.F, Aleph(2)) == Finite(10)
    assert sierpinski(M.E, Aleph(0)) == INFINITY
    assert sierpinski(M.GL, Aleph("omega")) == INFINITY
    assert sierpinski(M.S, Aleph(1)) == Finite(2)
    assert sierpinski(M.PB, 3) == Finite(4)


def test_bergman():
    assert bergman(M.PB) is True
    assert bergman(M.F) is False
    assert not any(bergman(m) for m in (M.E, M.GL, M.GR, M.FL, M.FR))
    with pytest.raises(Unsupported):
        bergman(M.S)


def test_finite_rank():
    assert finite_rank(M.E, 3) == 7
    assert finite_rank(M.E, 4) == 11
    assert finite_rank(M.PB, 3) == 4 == finite_rank(M.FL, 5)
    assert finite_rank(M.S, 3) == 2
    with pytest.raises(Unsupported):
        finite_rank(M.PB, 2)


def test_finite_rank_pb3_generates():
    # two unit generators plus the hook/singleton pair: four elements
    gens = symmetric_gens(3) + list(pb_pair(3))
    assert len(gens) == finite_rank(M.PB, 3)
    pb3 = [canonical_encode(a) for a in enumerate_all(3)]
    assert is_generating(gens, pb3)


def test_finite_rank_E3_cross_check():
    assert len(small_idempotent_gens(3)) == finite_rank(M.E, 3)
    assert is_generating(small_idempotent_gens(3), closure(idempotent_set(3)))


def test_card_expr_order_and_text():
    assert Finite(3) < Aleph(0) < Aleph(1) < PowAleph(1) < INFINITY
    assert Aleph(0) < PowAleph(0) and PowAleph(2) > Aleph(1)
    with pytest.raises(Unsupported):
        PowAleph(0) < Aleph(1)
    with pytest.raises(Unsupported):
        Aleph("omega") < Aleph(3)
    assert Finite(2) + Aleph(1) == Aleph(1) and 3 * Finite(2) == Finite(6)
    assert Aleph(1) + Aleph(2) == Aleph(2)
    assert [str(c) for c in (Finite(2), Aleph(0), PowAleph(3), INFINITY)] == \
        ["2", "aleph_0", "2^aleph_3", "inf"]
    assert Finite(4).to_json() == 4 and PowAleph(1).to_json() == "2^aleph_1"
    with pytest.raises(ValueError):
        CardExpr("bogus")


def test_lattice_chain_agrees():
    for n in range(4):
        x = Aleph(n)
        assert relrank(M.PB, M.E, x) == relrank(M.PB, M.F, x)


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_table_matches_golden(n):
    assert render_table(n) == (DATA / f"table_aleph{n}.txt").read_text()


def test_table_rows_cover_everything():
    text = render_table(0)
    assert len(text.splitlines()) == 1 + len(RELRANK_ROWS) + 2 * len(SR_ROWS)
    for line in ("relrank GL S = 4", "relrank F S = 4", "relrank FL F = 2",
                 "relrank FL S = 6", "SR F = 6", "SR FL = 8", "Bergman PB = yes"):
        assert line in text.splitlines()
    two = render_table(2).splitlines()
    assert "SR F = 10" in two and "SR FL = 14" in two
