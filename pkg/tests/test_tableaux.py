"""Domino insertion: standardness, bijectivity, inverses and exchange laws."""

import pytest
from hypothesis import given, settings, strategies as st

from dominocells import partitions as P, tableaux as T, weyl
from tests.conftest import long_test


def signed_words(max_n=6):
    # arbitrary sign pattern: insertion is defined on the full signed group
    @st.composite
    def build(draw):
        n = draw(st.integers(1, max_n))
        base = draw(st.permutations(list(range(1, n + 1))))
        return tuple(draw(st.sampled_from((1, -1))) * v for v in base)

    return build()


def all_signed(n):
    from itertools import permutations, product

    for base in permutations(range(1, n + 1)):
        for signs in product((1, -1), repeat=n):
            yield tuple(s * v for s, v in zip(signs, base))


@given(signed_words())
def test_insertion_produces_standard_pair(w):
    pair = T.domino_rs(w)
    assert pair.insertion.is_standard()
    assert pair.recording.is_standard()
    assert pair.insertion.shape() == pair.recording.shape()
    assert pair.insertion.labels == tuple(range(1, len(w) + 1))


@given(signed_words())
def test_recording_tracks_shape_growth(w):
    q = T.domino_rs(w).recording
    shapes = []
    for k in range(len(w) + 1):
        shapes.append(q.restrict(k).shape() or ())
    for k in range(len(w)):
        assert P.size(shapes[k + 1]) == P.size(shapes[k]) + 2


@given(signed_words())
def test_reverse_insert_inverts_single_step(w):
    p = T.domino_rs(w).insertion
    prev_cells = T.domino_rs(w[:-1]).insertion.cells() if len(w) > 1 else set()
    delta = tuple(sorted(p.cells() - prev_cells))
    prev, value = T.reverse_insert(p.as_dict(), delta)
    assert value == w[-1]
    assert T.insert_value(prev, value) == p.as_dict()


@given(signed_words())
def test_round_trip(w):
    pair = T.domino_rs(w)
    assert T.inverse_rs(pair.insertion, pair.recording) == w


@given(signed_words())
def test_inverse_swaps_tableaux(w):
    pair = T.domino_rs(w)
    ipair = T.domino_rs(weyl.inverse(w))
    assert ipair.insertion == pair.recording
    assert ipair.recording == pair.insertion


@given(signed_words())
def test_spin_counts_negatives(w):
    pair = T.domino_rs(w)
    v = pair.insertion.vertical_count() + pair.recording.vertical_count()
    assert v == 2 * sum(1 for x in w if x < 0)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_bijection_small(n):
    seen = {}
    for w in all_signed(n):
        pair = T.domino_rs(w)
        key = (pair.insertion, pair.recording)
        assert key not in seen
        seen[key] = w
    # image = same-shape standard pairs
    count = sum(P.domino_standard_count(la) ** 2 for la in P.tileable_shapes(n))
    assert len(seen) == count


def test_bijection_n4():
    seen = set()
    for w in all_signed(4):
        pair = T.domino_rs(w)
        assert T.inverse_rs(pair.insertion, pair.recording) == w
        seen.add((pair.insertion, pair.recording))
    assert len(seen) == 2**4 * 24


@long_test
def test_bijection_n5():
    seen = set()
    for w in all_signed(5):
        pair = T.domino_rs(w)
        assert T.inverse_rs(pair.insertion, pair.recording) == w
        seen.add((pair.insertion, pair.recording))
    assert len(seen) == 2**5 * 120


@pytest.mark.parametrize("n", [2, 3])
def test_image_characterization(n):
    # pairs hit by index-n elements (even sign changes) are exactly the
    # same-shape standard pairs whose total vertical count is divisible by 4
    hit = {tuple(T.domino_rs(w)) for w in weyl.enumerate_group(n)}
    universe = set()
    for la in P.tileable_shapes(n):
        tabs = T.enumerate_standard(la)
        for p in tabs:
            for q in tabs:
                if (p.vertical_count() + q.vertical_count()) % 4 == 0:
                    universe.add((p, q))
    assert hit == universe


@given(signed_words())
def test_admissible_pair_matches_membership(w):
    pair = T.tableau_pair(w)
    assert T.is_admissible_pair(pair.left, pair.right) == (
        sum(1 for x in w if x < 0) % 2 == 0
    )


def test_tableau_pair_orientation():
    # left slot records, right slot receives insertions
    w = (-2, 3, -1)
    rs = T.domino_rs(w)
    pr = T.tableau_pair(w)
    assert pr.left == rs.recording
    assert pr.right == rs.insertion


def test_element_of_pair():
    for w in all_signed(3):
        assert T.element_of_pair(T.tableau_pair(w)) == w


@given(signed_words())
def test_json_round_trip(w):
    p = T.domino_rs(w).insertion
    assert T.DominoTableau.from_json(p.to_json()) == p


def test_enumerate_standard_counts():
    for la in P.tileable_shapes(3):
        assert len(T.enumerate_standard(la)) == P.domino_standard_count(la)


def test_transpose_is_standard():
    for w in all_signed(3):
        p = T.domino_rs(w).insertion
        assert p.transpose().is_standard()
        assert p.transpose().shape() == P.transpose(p.shape())


@settings(deadline=None)
@given(st.permutations(list(range(1, 7))))
def test_positive_words_double_ordinary_schensted(perm):
    # on unsigned words the construction is row Schensted with every row doubled
    la = T.domino_rs(tuple(perm)).insertion.shape()
    assert la == tuple(2 * x for x in _row_schensted(perm))


def _row_schensted(word):
    rows = []
    for val in word:
        x = val
        for r in rows:
            bigger = [i for i, v in enumerate(r) if v > x]
            if not bigger:
                r.append(x)
                x = None
                break
            j = bigger[0]
            r[j], x = x, r[j]
        if x is not None:
            rows.append([x])
    return tuple(len(r) for r in rows)
