"""Cycle structure of domino tableaux and moves on tableau pairs."""

import pytest
from hypothesis import given, settings, strategies as st

from dominocells import cycles as C, partitions as P, tableaux as T, weyl


def random_tableaux(max_n=5):
    @st.composite
    def build(draw):
        n = draw(st.integers(1, max_n))
        base = draw(st.permutations(list(range(1, n + 1))))
        signs = [draw(st.sampled_from((1, -1))) for _ in range(n)]
        w = tuple(s * v for s, v in zip(signs, base))
        return T.domino_rs(w).insertion

    return build()


def test_fixed_cell_parity():
    # pinned corner of each domino: even r+c in the main coloring
    dom = ((1, 1), (1, 2))
    assert C.fixed_cell(dom) == (1, 1)
    assert C.variable_cell(dom) == (1, 2)
    dom = ((2, 1), (3, 1))
    assert C.fixed_cell(dom) == (3, 1)


@given(random_tableaux())
def test_retilings_preserve_fixed_cells(tab):
    fixed = {C.fixed_cell(d) for _, d in tab.entries}
    for other in C.retilings(tab):
        assert {C.fixed_cell(d) for _, d in other.entries} == fixed
        assert other.is_standard()
        assert other.labels == tab.labels


def test_retiling_shapes_example():
    (t,) = T.enumerate_standard((4,))
    assert sorted(r.shape() for r in C.retilings(t)) == [(3, 1), (4,)]


@given(random_tableaux())
def test_cycles_partition_labels(tab):
    cyc = C.cycles(tab)
    seen = []
    for c in cyc:
        seen.extend(c.labels)
    assert sorted(seen) == list(tab.labels)


@given(random_tableaux())
def test_open_cycle_shape_delta(tab):
    for c in C.open_cycles(tab):
        assert c.movable and c.open
        assert c.removed is not None and c.added is not None
        other = C.move_through(tab, c.labels)
        assert other.is_standard()
        assert other.cells() == (tab.cells() - {c.removed}) | {c.added}


@given(random_tableaux())
def test_move_through_is_involutive(tab):
    for c in C.cycles(tab):
        if not c.movable:
            continue
        other = C.move_through(tab, c.labels)
        assert C.move_through(other, c.labels) == tab


def test_single_row_cycle_example():
    # the unique tableau of shape (4): one cycle {1, 2}, moving it gives (3, 1)
    (t,) = T.enumerate_standard((4,))
    cyc = C.cycles(t)
    assert len(cyc) == 1 and set(cyc[0].labels) == {1, 2}
    assert cyc[0].open
    assert C.move_through(t, cyc[0].labels).shape() == (3, 1)


@given(random_tableaux())
def test_closed_or_immobile_cycles_fix_shape(tab):
    for c in C.cycles(tab):
        if c.movable and not c.open:
            assert C.move_through(tab, c.labels).shape() == tab.shape()


def pair_st(max_n=4):
    @st.composite
    def build(draw):
        n = draw(st.integers(2, max_n))
        idx = draw(st.integers(0, len(weyl.enumerate_group(n)) - 1))
        return T.tableau_pair(weyl.enumerate_group(n)[idx])

    return build()


@settings(deadline=None)
@given(pair_st())
def test_pair_moves_preserve_shape_equality(pair):
    for pm in C.extended_cycles(pair):
        moved = C.move_pair(pair, pm)
        assert moved.left.shape() == moved.right.shape()
        assert moved.left.is_standard() and moved.right.is_standard()


@settings(deadline=None)
@given(pair_st())
def test_pair_move_orbit_closure(pair):
    orbit = C.pair_move_orbit(pair)
    assert pair in orbit
    for p in orbit:
        assert C.pair_move_orbit(p) == orbit


@settings(deadline=None)
@given(pair_st())
def test_admissible_orbit_consistency(pair):
    orbit = C.pair_move_orbit(pair)
    adm = C.admissible_orbit(pair)
    assert adm <= orbit
    assert pair in adm
    want = {p for p in orbit if T.is_admissible_pair(*p) == T.is_admissible_pair(*pair)}
    assert adm == want


def test_cycle_report_shape():
    t = T.domino_rs((-2, 3, -1)).insertion
    rep = C.cycle_report(t)
    assert rep["coloring"] == C.MAIN_COLORING
    assert tuple(rep["shape"]) == t.shape()
    labels = sorted(l for c in rep["cycles"] for l in c["labels"])
    assert labels == list(t.labels)
    for c in rep["cycles"]:
        assert set(c) >= {"labels", "open", "movable"}


def test_main_coloring_is_fully_mobile_small():
    # every cycle is movable in the main coloring (ranks <= 3 exhaustively)
    for n in (1, 2, 3):
        for la in P.tileable_shapes(n):
            for t in T.enumerate_standard(la):
                assert all(c.movable for c in C.cycles(t))
