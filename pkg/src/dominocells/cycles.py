"""Cycles of domino tableaux and shape-preserving pair moves.

Checkerboard-color the cells; each domino covers one cell of either color.
Under coloring "A" the cells with even row+column sum are pinned, under "B"
the odd ones.  A cycle is a minimal nonempty set of labels that can be
simultaneously re-tiled -- every domino pivoting around its pinned cell --
while remaining a standard tableau.  Moving through an open cycle removes one
boundary cell and adds another; closed cycles preserve the shape.

For a same-shape pair of tableaux, moving open cycles on one side alone
breaks the shape equality; a pair move couples minimal sets of open cycles on
both sides with equal shape deltas.  Pair moves are involutions and commute,
so an orbit has size 2^r with r the number of coupled moves.
"""

from collections import namedtuple
from functools import lru_cache
from itertools import combinations

from .tableaux import DominoTableau, TableauPair, _cells_to_shape

#: Coloring used throughout the cell and operator theory.
MAIN_COLORING = "A"

_FIXED_PARITY = {"A": 0, "B": 1}


def fixed_cell(dom, coloring=MAIN_COLORING):
    p = _FIXED_PARITY[coloring]
    a, b = dom
    return a if (a[0] + a[1]) % 2 == p else b


def variable_cell(dom, coloring=MAIN_COLORING):
    a, b = dom
    return b if fixed_cell(dom, coloring) == a else a


def _positions_around(cell):
    r, c = cell
    cands = [((r, c), (r, c + 1)), ((r, c), (r + 1, c))]
    if c > 1:
        cands.append(((r, c - 1), (r, c)))
    if r > 1:
        cands.append(((r - 1, c), (r, c)))
    return cands


@lru_cache(maxsize=None)
def retilings(tab, coloring=MAIN_COLORING):
    """All standard tableaux with the same labels and the same pinned cells.

    >>> t = DominoTableau([(1, ((1, 1), (1, 2))), (2, ((1, 3), (1, 4)))])
    >>> sorted(r.shape() for r in retilings(t))
    [(3, 1), (4,)]
    """
    entries = tab.entries
    options = [
        (label, _positions_around(fixed_cell(dom, coloring)))
        for label, dom in entries
    ]
    out = []

    def young_after(occupied):
        return _cells_to_shape(occupied) is not None

    def dfs(i, occupied, chosen):
        if i == len(options):
            out.append(DominoTableau(chosen))
            return
        label, cands = options[i]
        for dom in cands:
            cells = set(dom)
            if cells & occupied:
                continue
            occ2 = occupied | cells
            if not young_after(occ2):
                continue
            dfs(i + 1, occ2, chosen + [(label, dom)])

    dfs(0, set(), [])
    return tuple(sorted(out, key=lambda t: t.entries))


Cycle = namedtuple("Cycle", ["labels", "movable", "open", "removed", "added"])


def _moved_labels(tab, other):
    a, b = tab.as_dict(), other.as_dict()
    return frozenset(l for l in a if a[l] != b[l])


@lru_cache(maxsize=None)
def cycles(tab, coloring=MAIN_COLORING):
    """Partition of labels into cycles, minimal label first.

    >>> t = DominoTableau([(1, ((1, 1), (1, 2))), (2, ((1, 3), (1, 4)))])
    >>> cycles(t)
    (Cycle(labels=frozenset({1, 2}), movable=True, open=True, removed=(1, 4), added=(2, 1)),)
    """
    tilings = retilings(tab, coloring)
    moved = sorted(
        {m for t2 in tilings if (m := _moved_labels(tab, t2))}, key=len
    )
    minimal = []
    for m in moved:
        if not any(c < m for c in moved if c != m):
            minimal.append(m)
    taken = set()
    for m in minimal:
        if m & taken:
            raise AssertionError(f"overlapping minimal cycles in {tab}")
        taken |= m
    # every movable set must decompose into minimal ones
    for m in moved:
        rest = set(m)
        for c in minimal:
            if c <= rest:
                rest -= c
        if rest:
            raise AssertionError(f"non-cycle movable set {m} in {tab}")
    out = []
    base_cells = tab.cells()
    for m in minimal:
        t2 = move_through(tab, m, coloring)
        gone = base_cells - t2.cells()
        new = t2.cells() - base_cells
        if len(gone) > 1 or len(new) > 1 or len(gone) != len(new):
            raise AssertionError(f"cycle {m} changes more than one cell")
        is_open = bool(gone)
        out.append(Cycle(m, True, is_open,
                         next(iter(gone)) if gone else None,
                         next(iter(new)) if new else None))
    for l in tab.labels:
        if l not in taken:
            out.append(Cycle(frozenset([l]), False, False, None, None))
    return tuple(sorted(out, key=lambda c: min(c.labels)))


def open_cycles(tab, coloring=MAIN_COLORING):
    return tuple(c for c in cycles(tab, coloring) if c.open)


def move_through(tab, labels, coloring=MAIN_COLORING):
    """The retiling moving exactly ``labels`` (a union of movable cycles)."""
    labels = frozenset(labels)
    hits = [
        t2 for t2 in retilings(tab, coloring)
        if _moved_labels(tab, t2) == labels
    ]
    if len(hits) != 1:
        raise ValueError(f"no unique retiling moving {set(labels)}")
    return hits[0]


# --- pair moves --------------------------------------------------------------

PairMove = namedtuple("PairMove", ["left_labels", "right_labels"])


def _delta(tab, cyc_subset):
    gone = frozenset(c.removed for c in cyc_subset)
    new = frozenset(c.added for c in cyc_subset)
    return gone, new


def extended_cycles(pair, coloring=MAIN_COLORING):
    """Minimal coupled moves of a same-shape pair: subsets of open cycles on
    each side with equal shape deltas.  For a pair (t, t) these are the open
    cycles of t, coupled with themselves."""
    if pair.left.shape() != pair.right.shape():
        raise ValueError("pair members differ in shape")
    oc_l = open_cycles(pair.left, coloring)
    oc_r = open_cycles(pair.right, coloring)
    found = []
    for kl in range(1, len(oc_l) + 1):
        for sub_l in combinations(oc_l, kl):
            dl = _delta(pair.left, sub_l)
            for kr in range(1, len(oc_r) + 1):
                for sub_r in combinations(oc_r, kr):
                    if _delta(pair.right, sub_r) == dl:
                        found.append(
                            (frozenset().union(*(c.labels for c in sub_l)),
                             frozenset().union(*(c.labels for c in sub_r)))
                        )
    minimal = []
    for l, r in found:
        if not any((l2 <= l and r2 <= r and (l2, r2) != (l, r)) for l2, r2 in found):
            minimal.append(PairMove(l, r))
    return tuple(sorted(minimal, key=lambda p: (min(p.left_labels), min(p.right_labels))))


def move_pair(pair, pm, coloring=MAIN_COLORING):
    return TableauPair(
        left=move_through(pair.left, pm.left_labels, coloring),
        right=move_through(pair.right, pm.right_labels, coloring),
    )


def pair_move_orbit(pair, coloring=MAIN_COLORING):
    """Closure of the pair under all coupled moves; size 2^r."""
    seen = {pair}
    frontier = [pair]
    while frontier:
        p = frontier.pop()
        for pm in extended_cycles(p, coloring):
            q = move_pair(p, pm, coloring)
            if q not in seen:
                seen.add(q)
                frontier.append(q)
    return frozenset(seen)


def admissible_orbit(pair, coloring=MAIN_COLORING):
    """Members of the coupled-move orbit with vertical sum still 0 mod 4.

    A coupled move shifts the total vertical count by 0 or 2 mod 4, so this
    subset is itself an orbit of half or all of the moves.
    """
    from .tableaux import is_admissible_pair

    return frozenset(
        p for p in pair_move_orbit(pair, coloring)
        if is_admissible_pair(p.left, p.right)
    )


def cycle_report(tab, coloring=MAIN_COLORING):
    """JSON-ready summary of the cycle structure."""
    out = []
    for c in cycles(tab, coloring):
        rec = {"labels": sorted(c.labels), "open": c.open, "movable": c.movable}
        if c.open:
            rec["removed"] = list(c.removed)
            rec["added"] = list(c.added)
        out.append(rec)
    return {"coloring": coloring, "shape": list(tab.shape()), "cycles": out}
