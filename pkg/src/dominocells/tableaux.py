"""Standard domino tableaux and the two-tableau correspondence.

A domino tableau assigns to each label a pair of adjacent cells; it is
standard when the union of the dominoes with the k smallest labels is a Young
diagram for every k.  Signed permutations correspond bijectively to pairs of
same-shape standard tableaux: each letter is inserted as a horizontal (positive
letter) or vertical (negative letter) domino, displacing larger labels by
local bump rules, while the recording tableau logs the growth.

The correspondence restricts to even-signed permutations exactly on the pairs
whose total vertical-domino count is divisible by four; half the sum counts
the negative letters of the preimage.
"""

from collections import namedtuple
from functools import lru_cache

from . import partitions


def _norm_domino(cells):
    a, b = sorted(tuple(c) for c in cells)
    if not (a[0] == b[0] and a[1] + 1 == b[1]) and not (a[0] + 1 == b[0] and a[1] == b[1]):
        raise ValueError(f"cells do not form a domino: {cells}")
    return (a, b)


def is_horizontal(dom):
    return dom[0][0] == dom[1][0]


class DominoTableau:
    """Immutable, hashable; labels may be any increasing ints."""

    __slots__ = ("entries",)

    def __init__(self, entries):
        self.entries = tuple(sorted((int(l), _norm_domino(c)) for l, c in entries))
        labels = [l for l, _ in self.entries]
        if len(set(labels)) != len(labels):
            raise ValueError("duplicate labels")

    def __eq__(self, other):
        return isinstance(other, DominoTableau) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"DominoTableau({list(self.entries)})"

    def __len__(self):
        return len(self.entries)

    @property
    def labels(self):
        return tuple(l for l, _ in self.entries)

    def domino(self, label):
        for l, c in self.entries:
            if l == label:
                return c
        raise KeyError(label)

    def as_dict(self):
        return {l: c for l, c in self.entries}

    def cells(self):
        out = set()
        for _, (a, b) in self.entries:
            out.add(a)
            out.add(b)
        return out

    def shape(self):
        return _cells_to_shape(self.cells())

    def vertical_count(self):
        return sum(1 for _, d in self.entries if not is_horizontal(d))

    def is_standard(self):
        occupied = set()
        for _, (a, b) in self.entries:
            if a in occupied or b in occupied:
                return False
            occupied |= {a, b}
            if _cells_to_shape(occupied) is None:
                return False
        return True

    def with_domino(self, label, cells):
        return DominoTableau(self.entries + ((label, _norm_domino(cells)),))

    def restrict(self, k):
        """Subtableau of labels <= k."""
        return DominoTableau(tuple(e for e in self.entries if e[0] <= k))

    def transpose(self):
        return DominoTableau(
            (l, ((a[1], a[0]), (b[1], b[0]))) for l, (a, b) in self.entries
        )

    def relabel(self, mapping):
        return DominoTableau((mapping[l], c) for l, c in self.entries)

    def to_json(self):
        return {
            "shape": list(self.shape()),
            "dominoes": {str(l): [list(a), list(b)] for l, (a, b) in self.entries},
        }

    @classmethod
    def from_json(cls, data):
        return cls(
            (int(l), tuple(tuple(c) for c in cells))
            for l, cells in data["dominoes"].items()
        )


def _cells_to_shape(cell_set):
    """Partition formed by a cell set, or None if it is not a Young diagram."""
    if not cell_set:
        return ()
    rows = {}
    for r, c in cell_set:
        rows[r] = rows.get(r, 0) + 1
    m = max(rows)
    if set(rows) != set(range(1, m + 1)):
        return None
    shape = tuple(rows[r] for r in range(1, m + 1))
    if any(shape[i] < shape[i + 1] for i in range(m - 1)):
        return None
    if {(r, c) for r in range(1, m + 1) for c in range(1, shape[r - 1] + 1)} != cell_set:
        return None
    return shape


def removable_dominoes(shape):
    """Border dominoes whose removal leaves a partition."""
    out = []
    m = len(shape)
    for r in range(1, m + 1):
        c = shape[r - 1]
        below = shape[r] if r < m else 0
        if c >= 2 and c - 2 >= below:
            out.append(((r, c - 1), (r, c)))
        if r < m and shape[r] == c:
            below2 = shape[r + 1] if r + 1 < m else 0
            if c - 1 >= below2:
                out.append(((r, c), (r + 1, c)))
    return out


def addable_dominoes(shape):
    """Dominoes whose addition yields a partition."""
    out = []
    m = len(shape)
    for r in range(1, m + 2):
        c = shape[r - 1] if r <= m else 0
        above = shape[r - 2] if r >= 2 else None
        if above is None or c + 2 <= above:
            out.append(((r, c + 1), (r, c + 2)))
        if r <= m:
            nxt = shape[r] if r < m else 0
            if c == nxt and (above is None or c + 1 <= above):
                out.append(((r, c + 1), (r + 1, c + 1)))
        elif r == m + 1:
            if above is None or 1 <= above:
                out.append(((r, 1), (r + 1, 1)))
    return out


def shape_minus(shape, dom):
    cell_set = {(r, c) for r in range(1, len(shape) + 1) for c in range(1, shape[r - 1] + 1)}
    cell_set -= set(dom)
    return _cells_to_shape(cell_set)


@lru_cache(maxsize=None)
def enumerate_standard(shape):
    """All standard domino tableaux of the given shape (empty-core required).

    >>> [len(enumerate_standard(s)) for s in ((2,), (2, 2), (4, 2))]
    [1, 2, 3]
    >>> len(enumerate_standard((5, 4, 4, 2, 2, 1)))
    378
    """
    shape = tuple(shape)
    if shape == ():
        return (DominoTableau(()),)
    n = sum(shape) // 2
    out = []
    for dom in removable_dominoes(shape):
        sub = shape_minus(shape, dom)
        if sub is None:
            continue
        for t in enumerate_standard(sub):
            out.append(t.with_domino(n, dom))
    return tuple(out)


# --- insertion -------------------------------------------------------------

def _shape_rows(occupied):
    rows = {}
    for r, c in occupied:
        rows[r] = max(rows.get(r, 0), c)
    return rows


def insert_value(tab, value):
    """Insert a signed value into a tableau (dict label -> domino).

    The new domino is horizontal in row 1 for positive values, vertical in
    column 1 for negative ones, placed after the labels below |value|; labels
    above |value| are then displaced in increasing order by the bump rules.
    """
    j = abs(value)
    if j in tab:
        raise ValueError(f"label {j} already present")
    new = {l: d for l, d in tab.items() if l < j}
    occupied = set()
    for d in new.values():
        occupied |= set(d)
    if value > 0:
        c = max((cc for (r, cc) in occupied if r == 1), default=0)
        dom = ((1, c + 1), (1, c + 2))
    else:
        r = max((rr for (rr, cc) in occupied if cc == 1), default=0)
        dom = ((r + 1, 1), (r + 2, 1))
    new[j] = dom
    occupied |= set(dom)
    for v in sorted(l for l in tab if l > j):
        d = tab[v]
        hit = set(d) & occupied
        (a, b) = d
        if not hit:
            f = d
        elif len(hit) == 2:
            if is_horizontal(d):
                r = a[0] + 1
                rho = max((cc for (rr, cc) in occupied if rr == r), default=0)
                f = ((r, rho + 1), (r, rho + 2))
            else:
                c = a[1] + 1
                h = max((rr for (rr, cc) in occupied if cc == c), default=0)
                f = ((h + 1, c), (h + 2, c))
        else:
            # only the left / top cell can be covered
            if hit != {a}:
                raise AssertionError(f"impossible partial cover of {d} by {sorted(occupied)}")
            if is_horizontal(d):
                f = ((a[0], a[1] + 1), (a[0] + 1, a[1] + 1))
            else:
                f = ((a[0] + 1, a[1]), (a[0] + 1, a[1] + 1))
        new[v] = f
        occupied |= set(f)
    if _cells_to_shape(occupied) is None:
        raise AssertionError("insertion produced a non-Young shape")
    return new


RSPair = namedtuple("RSPair", ["insertion", "recording"])
TableauPair = namedtuple("TableauPair", ["left", "right"])


def domino_rs(w):
    """Insertion/recording tableaux of a signed permutation.

    >>> p, q = domino_rs((-2, 3, -1))
    >>> p.shape(), p.vertical_count(), q.vertical_count()
    ((3, 3), 3, 1)
    """
    ins = {}
    rec = []
    prev = set()
    for i, x in enumerate(w, start=1):
        ins = insert_value(ins, x)
        cur = set()
        for d in ins.values():
            cur |= set(d)
        rec.append((i, tuple(sorted(cur - prev))))
        prev = cur
    return RSPair(DominoTableau(ins.items()), DominoTableau(rec))


def tableau_pair(w):
    """The (left, right) tableau pair of w: recording on the left, insertion
    on the right.  Left tableaux classify by row-equivalence of elements, right
    tableaux by column-equivalence; ``tableau_pair(inverse(w))`` swaps the two."""
    p, q = domino_rs(w)
    return TableauPair(left=q, right=p)


def is_admissible_pair(left, right):
    """Same shape and total vertical count divisible by 4: exactly the pairs
    realized by even-signed permutations."""
    return (
        left.shape() == right.shape()
        and (left.vertical_count() + right.vertical_count()) % 4 == 0
    )


# --- reverse insertion -----------------------------------------------------

def reverse_insert(tab, delta):
    """Undo one insertion: find (smaller tableau, signed value) whose insertion
    grows the shape by exactly ``delta``.

    ``tab`` is a dict label -> domino; ``delta`` the two added cells.  Returns
    (dict, value).  The solution is unique; the search backtracks over the
    locally consistent displacement preimages and validates leaves by
    re-inserting.
    """
    delta = frozenset(delta)
    labels = sorted(tab, reverse=True)
    target_cells = set()
    for d in tab.values():
        target_cells |= set(d)
    # smaller[u] = cells of labels < u; these never move during one insertion
    smaller = {}
    acc = set()
    for u in sorted(tab):
        smaller[u] = set(acc)
        acc |= set(tab[u])

    def row_len(cell_set, r):
        return max((c for (rr, c) in cell_set if rr == r), default=0)

    def col_len(cell_set, c):
        return max((rr for (rr, cc) in cell_set if cc == c), default=0)

    def validate(new, value):
        new_cells = set()
        for d in new.values():
            new_cells |= set(d)
        if len(new_cells) != 2 * len(new) or new_cells != target_cells - delta:
            return False
        if not DominoTableau(new.items()).is_standard():
            return False
        try:
            redone = insert_value(new, value)
        except (AssertionError, ValueError):
            return False
        return redone == tab

    def origin_candidates(u):
        """Positions u may have been displaced from, given it ends at tab[u]."""
        f = tab[u]
        (a, b) = f
        lam = smaller[u]
        out = []
        if is_horizontal(f):
            r, c = a
            # rotation: vertical with covered top at (r-1, c)
            if r > 1 and (r - 1, c) in lam and (r, c) not in lam:
                out.append(((r - 1, c), (r, c)))
            # full displacement from row r-1; lands at the end of row r of lam
            if r > 1 and c == row_len(lam, r) + 1:
                for cc in range(1, row_len(lam, r - 1)):
                    if (r - 1, cc) in lam and (r - 1, cc + 1) in lam:
                        out.append(((r - 1, cc), (r - 1, cc + 1)))
        else:
            r, c = a
            if c > 1 and (r, c - 1) in lam and (r, c) not in lam:
                out.append(((r, c - 1), (r, c)))
            if c > 1 and r == col_len(lam, c) + 1:
                for rr in range(1, col_len(lam, c - 1)):
                    if (rr, c - 1) in lam and (rr + 1, c - 1) in lam:
                        out.append(((rr, c - 1), (rr + 1, c - 1)))
        return out

    def entry_ok(u):
        """Could u's final domino be a fresh entry (row 1 / column 1)?"""
        f = tab[u]
        (a, _) = f
        lam = smaller[u]
        if is_horizontal(f):
            return a[0] == 1 and a[1] == row_len(lam, 1) + 1
        return a[1] == 1 and a[0] == col_len(lam, 1) + 1

    def dfs(idx, xi, moved):
        # xi: cells awaiting vacation; moved: {label: origin}
        for k in range(idx, len(labels)):
            u = labels[k]
            f = tab[u]
            if not (set(f) & xi):
                continue
            results = []
            if xi == set(f) and entry_ok(u):
                new = {l2: moved.get(l2, tab[l2]) for l2 in tab if l2 != u}
                value = u if is_horizontal(f) else -u
                if validate(new, value):
                    results.append((new, value))
            for o in origin_candidates(u):
                xi2 = (xi | set(o)) - set(f)
                moved[u] = o
                results.extend(dfs(k + 1, xi2, moved))
                del moved[u]
                if len(results) > 1:
                    break
            return results
        return []

    sols = dfs(0, set(delta), {})
    if len(sols) != 1:
        raise AssertionError(f"reverse insertion found {len(sols)} solutions")
    return sols[0]


def inverse_rs(insertion, recording):
    """Signed permutation mapping to the given insertion/recording pair.

    >>> w = (-2, 3, -1)
    >>> inverse_rs(*domino_rs(w)) == w
    True
    """
    tab = insertion.as_dict()
    rec = recording.as_dict()
    out = []
    for k in sorted(rec, reverse=True):
        tab, value = reverse_insert(tab, rec[k])
        out.append(value)
    if tab:
        raise ValueError("recording tableau does not exhaust the insertion tableau")
    return tuple(reversed(out))


def element_of_pair(pair):
    """Inverse of :func:`tableau_pair`."""
    return inverse_rs(pair.right, pair.left)


@lru_cache(maxsize=None)
def rs_image(n):
    """dict TableauPair -> element, over all of W(D_n).  Exact but exhaustive;
    intended for small ranks."""
    from . import weyl

    out = {}
    for w in weyl.enumerate_group(n):
        out[tableau_pair(w)] = w
    return out
