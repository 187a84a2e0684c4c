"""Operators on admissible tableau pairs.

Four families act on an admissible pair:

* wall-crossing ``star_op`` for an adjacent pair of simple roots,
* the fork operators for the exceptional pair {alpha_1', alpha_3}, where the
  branch node of the Dynkin diagram makes plain wall-crossing break down,
* the chain operators for the root alpha_3 against the set X = {alpha_1,
  alpha_1'}, truncated to outputs that keep the right tableau,
* prefix swaps ``s_op`` on quasi-staircase subtableaux, together with their
  extensions ``enlarged_op`` across open-cycle moves.

The first three families and the plain prefix swaps fix the right tableau
exactly.  The enlargements fix only its move closure: they may slide the
right tableau through open cycles, so they preserve right cells rather than
right tableaux.

The wall/fork/chain family is realized on group elements: un-insert the pair,
multiply on the right by a single simple reflection chosen so the right
descent pattern trades the two roots, and re-insert.  Right multiplication is
forced by the requirement that the right (insertion) tableau is preserved;
single steps are forced by compatibility with the induced maps between
Kazhdan-Lusztig cells (both calibrated exhaustively at ranks 3 and 4).

``orbit_closure`` and ``deficiency_report`` give the transitivity machinery:
closures of an admissible pair under a chosen operator set, with witness
sequences, and orbit decompositions of all left tableaux against a fixed
right tableau.
"""

from collections import deque
from dataclasses import dataclass
import json
from pathlib import Path

from . import cycles as _cycles
from . import weyl
from .tableaux import (
    DominoTableau,
    TableauPair,
    addable_dominoes,
    domino_rs,
    element_of_pair,
    enumerate_standard,
    is_admissible_pair,
)


class DomainViolation(ValueError):
    """The pair lies outside the operator's domain."""


class RightTableauNotPreserved(RuntimeError):
    """A fork move exists but no branch keeps the right tableau."""


class NotInImage(ValueError):
    """The input is not an admissible pair, so no element realizes it."""


FORK_ROOTS = ("1'", "3")
CHAIN_ROOT = "3"
CHAIN_SET = ("1", "1'")
_FORK_GENS = ("1", "1'", "3")

_DATA_DIR = Path(__file__).parent / "data"
_MODEL_FILE = _DATA_DIR / "quasi_staircase.json"


# --- operator identifiers ----------------------------------------------------
#
# Operators are named by plain tuples:
#   ("wall", a, b)      wall-crossing for the adjacent roots a, b
#   ("fork", d)         d in {"1'3", "31'"}: descent moves from the first
#                       named root to the second
#   ("chain", d)        d in {"aX", "Xa"}: a = alpha_3, X = {alpha_1, alpha_1'}
#   ("s", m) ("sp", m) ("ts", m) ("tsp", m)
#                       prefix swap on the rank-m quasi-staircase models:
#                       plain, primed, and their transposes
#   ("enl", v, m)       enlargement of the s-operator variant v in
#                       {"s", "sp", "ts", "tsp"} through open-cycle moves

FORK_DIRECTIONS = ("1'3", "31'")
CHAIN_DIRECTIONS = ("aX", "Xa")
_S_VARIANTS = ("s", "sp", "ts", "tsp")


def format_operator(op):
    """JSON-ready tagged array for an operator id."""
    return list(op)


def parse_operator(data):
    """Inverse of :func:`format_operator`; validates the tag."""
    op = tuple(data)
    tag = op[0]
    if tag == "id" and len(op) == 1:
        return op
    if tag == "wall" and len(op) == 3:
        if not weyl.adjacent_roots(op[1], op[2]):
            raise ValueError(f"non-adjacent wall roots {op[1]}, {op[2]}")
        return op
    if tag == "fork" and len(op) == 2 and op[1] in FORK_DIRECTIONS:
        return op
    if tag == "chain" and len(op) == 2 and op[1] in CHAIN_DIRECTIONS:
        return op
    if tag in _S_VARIANTS and len(op) == 2 and int(op[1]) >= 1:
        return (tag, int(op[1]))
    if tag == "enl" and len(op) == 3 and op[1] in _S_VARIANTS and int(op[2]) >= 1:
        return (tag, op[1], int(op[2]))
    raise ValueError(f"unrecognized operator id {data!r}")


def wall_ops(n):
    """All directed wall-crossing ids for rank n, excluding the fork pair."""
    roots = weyl.simple_roots(n)
    out = []
    for a in roots:
        for b in roots:
            if a != b and weyl.adjacent_roots(a, b) and {a, b} != set(FORK_ROOTS):
                out.append(("wall", a, b))
    return tuple(out)


def theorem1_ops(n):
    """The transitivity generating set at rank n: wall crossings, forks,
    chains, and all four prefix-swap variants for every model that fits."""
    ops = list(wall_ops(n))
    ops += [("fork", d) for d in FORK_DIRECTIONS]
    ops += [("chain", d) for d in CHAIN_DIRECTIONS]
    m = 1
    while (m + 1) ** 2 <= n:
        ops += [(v, m) for v in _S_VARIANTS]
        m += 1
    return tuple(ops)


# --- quasi-staircase shapes and model tableaux -------------------------------


def staircase_shape(n):
    """The rank-n quasi-staircase shape (2n+1,...,n+3,n+2,n+2,n,n,n-1,...,1)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    rows = list(range(2 * n + 1, n + 2, -1))
    rows += [n + 2, n + 2, n, n]
    rows += list(range(n - 1, 0, -1))
    return tuple(rows)


def staircase_shape_prime(n):
    """The primed shape: ``staircase_shape(n)`` with a leading row 2n+2."""
    return (2 * n + 2,) + staircase_shape(n)


@dataclass(frozen=True)
class QuasiStaircaseTable:
    """Model tableaux for rank n: two of staircase shape and two primed.

    ``u1``/``u2`` equal ``t1``/``t2`` with the two largest labels swapped.
    """

    n: int
    lambda_shape: tuple
    mu_shape: tuple
    t1: DominoTableau
    u1: DominoTableau
    t2: DominoTableau
    u2: DominoTableau


def _pinned_largest(shape, n):
    """The forced positions of the two largest dominoes: a vertical at the
    ends of the two rows of length n and a horizontal at the end of the row
    directly above them."""
    short_rows = [r for r, ln in enumerate(shape, start=1) if ln == n]
    if len(short_rows) != 2 or short_rows[1] != short_rows[0] + 1:
        raise AssertionError(f"shape {shape} lacks two adjacent rows of length {n}")
    r = short_rows[0]
    vertical = ((r, n), (r + 1, n))
    horizontal = ((r - 1, shape[r - 2] - 1), (r - 1, shape[r - 2]))
    return horizontal, vertical


def _complete_filling(shape, pinned):
    """Deterministic standard filling of ``shape`` around pinned dominoes.

    ``pinned`` maps labels to dominoes; the remaining labels are filled
    greedily (first addable domino in sorted order, with backtracking) so the
    result is the lexicographically first standard completion.
    """
    total = sum(shape) // 2
    region = set()
    for rr, ln in enumerate(shape, start=1):
        region.update((rr, cc) for cc in range(1, ln + 1))
    for dom in pinned.values():
        region.difference_update(dom)
    free = [l for l in range(1, total + 1) if l not in pinned]

    def extend(current, placed):
        if len(placed) == len(free):
            return placed
        partial = list(current)
        options = sorted(
            d for d in addable_dominoes(tuple(partial))
            if set(d) <= region and not any(set(d) & set(p) for p in placed)
        )
        for dom in options:
            rows = list(partial)
            for (rr, _cc) in dom:
                while len(rows) < rr:
                    rows.append(0)
                rows[rr - 1] += 1
            got = extend(tuple(rows), placed + [dom])
            if got is not None:
                return got
        return None

    placed = extend((), [])
    if placed is None:
        raise AssertionError(f"no standard completion of {shape} around {pinned}")
    entries = list(pinned.items()) + list(zip(free, placed))
    tab = DominoTableau(entries)
    if not tab.is_standard() or tab.shape() != shape:
        raise AssertionError(f"invalid completion for {shape}")
    return tab


def _swap_top_labels(tab):
    """Exchange the two largest labels of ``tab``."""
    labels = tab.labels
    a, b = labels[-2], labels[-1]
    mapping = {l: l for l in labels}
    mapping[a], mapping[b] = b, a
    out = tab.relabel(mapping)
    if not out.is_standard():
        raise AssertionError("top-label swap broke standardness")
    return out


def _build_model(shape, n, extra_pins=None):
    horizontal, vertical = _pinned_largest(shape, n)
    total = sum(shape) // 2
    pins = {total - 1: horizontal, total: vertical}
    if extra_pins:
        pins.update(extra_pins)
    t = _complete_filling(shape, pins)
    return t, _swap_top_labels(t)


def _load_persisted_model(key):
    if not _MODEL_FILE.exists():
        return None
    data = json.loads(_MODEL_FILE.read_text())
    if key not in data:
        return None
    return DominoTableau.from_json(data[key])


_TABLE_CACHE = {}


def quasi_staircase_tables(n):
    """Model tableaux of ranks up to n, built once and cached.

    For n = 1 every choice is forced by the tiling.  For n = 2 the staircase
    model is the calibrated filling persisted under ``data/``; the nine-domino
    models additionally pin label 7 horizontally directly above label 8 and
    label 6 horizontally at the end of the first row.  Larger ranks use the
    lexicographically first standard completion.
    """
    if n in _TABLE_CACHE:
        return _TABLE_CACHE[n]
    lam = staircase_shape(n)
    mu = staircase_shape_prime(n)
    persisted = _load_persisted_model(f"lambda-{n}")
    if persisted is not None:
        t1 = persisted
        if not t1.is_standard() or t1.shape() != lam:
            raise AssertionError(f"persisted rank-{n} model is invalid")
        u1 = _swap_top_labels(t1)
    elif n == 2:
        raise RuntimeError(
            "missing calibrated rank-2 model in data/quasi_staircase.json"
        )
    else:
        t1, u1 = _build_model(lam, n)
    t2, u2 = _build_model(mu, n)
    table = QuasiStaircaseTable(n, lam, mu, t1, u1, t2, u2)
    _TABLE_CACHE[n] = table
    return table


def _staircase_prefix_candidates(n):
    """All standard model tableaux compatible with the pinning rules: used to
    calibrate the persisted rank-2 choice."""
    lam = staircase_shape(n)
    horizontal, vertical = _pinned_largest(lam, n)
    total = sum(lam) // 2
    pins = {total - 1: horizontal, total: vertical}
    if n == 2:
        pins[7] = ((2, 3), (2, 4))
        pins[6] = ((1, 4), (1, 5))
    region_shape = []
    region = set()
    for rr, ln in enumerate(lam, start=1):
        region.update((rr, cc) for cc in range(1, ln + 1))
    for dom in pins.values():
        region.difference_update(dom)
    rows = {}
    for rr, cc in region:
        rows[rr] = max(rows.get(rr, 0), cc)
    for rr in sorted(rows):
        if rr != len(region_shape) + 1:
            raise AssertionError("pinned region is not a Young diagram prefix")
        region_shape.append(rows[rr])
    out = []
    for base in enumerate_standard(tuple(region_shape)):
        if set(c for _, d in base.entries for c in d) != region:
            continue
        tab = DominoTableau(tuple(base.entries) + tuple(pins.items()))
        if tab.is_standard():
            out.append(tab)
    return tuple(out)


# --- element-level single steps ----------------------------------------------


def _require_admissible(pair):
    if not is_admissible_pair(pair.left, pair.right):
        raise NotInImage(f"inadmissible pair of shapes {pair.left.shape()}, "
                         f"{pair.right.shape()}")


def _right_step(w, root, right):
    """Multiply w by a simple reflection on the right; report the new descent
    set and, when the insertion tableau is unchanged, the new pair."""
    y = weyl.apply_right(w, root)
    ins, rec = domino_rs(y)
    keeps = ins == right
    return y, weyl.right_descents(y), (TableauPair(rec, ins) if keeps else None)


def star_op(pair, alpha, beta):
    """Wall-crossing: trade the descent roles of the adjacent roots alpha
    (a descent) and beta (not one) by one right multiplication.  The right
    tableau is preserved for every adjacent pair except the fork pair, which
    is rejected here."""
    if not weyl.adjacent_roots(alpha, beta):
        raise ValueError(f"roots {alpha}, {beta} are not adjacent")
    if {alpha, beta} == set(FORK_ROOTS):
        raise ValueError("the pair {1', 3} is handled by fork_op")
    _require_admissible(pair)
    w = element_of_pair(pair)
    des = weyl.right_descents(w)
    if alpha not in des or beta in des:
        raise DomainViolation(f"need {alpha} and not {beta} in the right "
                              f"descent set {sorted(des)}")
    hits = []
    for root in (alpha, beta):
        y, des_y, out = _right_step(w, root, pair.right)
        if beta in des_y and alpha not in des_y:
            hits.append(out)
    if len(hits) != 1:
        raise AssertionError(f"wall-crossing candidates not unique: {len(hits)}")
    if hits[0] is None:
        raise AssertionError("wall-crossing failed to preserve the right tableau")
    return hits[0]


def fork_op(pair, direction):
    """The branch-node operators for the pair {alpha_1', alpha_3}: all single
    right steps through the generators {s_1, s_1', s_3} whose descent pattern
    trades the two roots and whose insertion tableau is unchanged."""
    if direction not in FORK_DIRECTIONS:
        raise ValueError(f"unknown fork direction {direction!r}")
    src, dst = ("1'", "3") if direction == "1'3" else ("3", "1'")
    _require_admissible(pair)
    w = element_of_pair(pair)
    des = weyl.right_descents(w)
    if src not in des or dst in des:
        raise DomainViolation(f"need {src} and not {dst} in the right "
                              f"descent set {sorted(des)}")
    outs = set()
    moved = False
    for root in _FORK_GENS:
        y, des_y, out = _right_step(w, root, pair.right)
        if dst in des_y and src not in des_y:
            moved = True
            if out is not None:
                outs.add(out)
    if not moved or not outs:
        raise RightTableauNotPreserved(
            f"no {direction} fork branch preserves the right tableau")
    if len(outs) > 2:
        raise AssertionError(f"fork produced {len(outs)} branches")
    return frozenset(outs)


def chain_ops(pair, direction):
    """Truncated chain operators for alpha_3 against X = {alpha_1, alpha_1'}.

    Direction aX starts with alpha_3 a descent and X descent-free and moves
    to the opposite pattern; Xa is the reverse.  Outputs are the single right
    steps through {s_1, s_1', s_3} realizing the target pattern that keep the
    right tableau; the truncation may be empty.
    """
    if direction not in CHAIN_DIRECTIONS:
        raise ValueError(f"unknown chain direction {direction!r}")
    _require_admissible(pair)
    w = element_of_pair(pair)
    des = weyl.right_descents(w)
    a_in = CHAIN_ROOT in des
    x_in = any(r in des for r in CHAIN_SET)
    if direction == "aX":
        if not (a_in and not x_in):
            raise DomainViolation("need alpha_3 a descent and X descent-free")
    else:
        if not (x_in and not a_in):
            raise DomainViolation("need some X descent and alpha_3 not one")
    outs = set()
    for root in _FORK_GENS:
        y, des_y, out = _right_step(w, root, pair.right)
        a_y = CHAIN_ROOT in des_y
        x_y = any(r in des_y for r in CHAIN_SET)
        wanted = (x_y and not a_y) if direction == "aX" else (a_y and not x_y)
        if wanted and out is not None:
            outs.add(out)
    return frozenset(outs)


# --- prefix swaps and their enlargements --------------------------------------


def _model_for_variant(which):
    tag, m = which[0], which[1]
    tables = quasi_staircase_tables(m)
    if tag == "s":
        a, b = tables.t1, tables.u1
    elif tag == "sp":
        a, b = tables.t2, tables.u2
    elif tag == "ts":
        a, b = tables.t1.transpose(), tables.u1.transpose()
    elif tag == "tsp":
        a, b = tables.t2.transpose(), tables.u2.transpose()
    else:
        raise ValueError(f"unknown prefix-swap variant {which!r}")
    return a, b, len(a)


def s_op(pair, which):
    """Swap the two largest labels of the model subtableau at the start of
    the left tableau; the right tableau is untouched."""
    model_a, model_b, k = _model_for_variant(which)
    prefix = pair.left.restrict(k)
    if prefix == model_a:
        target = model_b
    elif prefix == model_b:
        target = model_a
    else:
        raise DomainViolation(f"leading {k} dominoes match no rank-{which[1]} model")
    rest = tuple((l, c) for l, c in pair.left.entries if l > k)
    new_left = DominoTableau(rest + target.entries)
    if not new_left.is_standard():
        raise AssertionError("prefix swap broke standardness")
    return TableauPair(new_left, pair.right)


_closure_cache = {}


def move_closure(tab):
    """All tableaux reachable from ``tab`` by open-cycle moves, itself
    included.  Moves are involutive, so closures partition the standard
    tableaux of each total into equivalence classes."""
    cached = _closure_cache.get(tab)
    if cached is not None:
        return cached
    seen = {tab}
    queue = deque([tab])
    while queue:
        cur = queue.popleft()
        for c in _cycles.open_cycles(cur):
            nxt = _cycles.move_through(cur, c.labels)
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    closure = frozenset(seen)
    for member in closure:
        _closure_cache[member] = closure
    return closure


def enlarged_op(pair, which):
    """Extend the prefix swap across open-cycle moves.

    The left tableau must be movable into the swap's domain: its move
    closure must contain one of the two model tableaux.  The image then
    collects every same-shape admissible pairing of the partner model's
    move closure with the move closure of the right tableau.  Equivalently
    it is the block of the partner left cell lying in the input's right
    cell; the block contains the plain prefix swap whenever the swap itself
    applies, normally holds one or two pairs, and may be empty when the two
    cells share no constituent over that right cell.  The linear extension
    of this rule (all coefficients one) is the unique equivariant map
    between the two cell modules at rank 4.
    """
    if which[0] != "enl":
        raise ValueError(f"unknown enlargement id {which!r}")
    model_a, model_b, _ = _model_for_variant((which[1], which[2]))
    closure = move_closure(pair.left)
    if model_a in closure:
        partner = move_closure(model_b)
    elif model_b in closure:
        partner = move_closure(model_a)
    else:
        raise DomainViolation("no open-cycle moves reach the swap domain")
    right_closure = move_closure(pair.right)
    results = set()
    for left in partner:
        shape = left.shape()
        for right in right_closure:
            if right.shape() == shape and is_admissible_pair(left, right):
                results.add(TableauPair(left, right))
    return frozenset(results)


# --- dispatch and orbit machinery ---------------------------------------------


def apply_operator(pair, op):
    """Apply one operator; always returns a frozenset of pairs."""
    tag = op[0]
    if tag == "wall":
        return frozenset([star_op(pair, op[1], op[2])])
    if tag == "fork":
        return fork_op(pair, op[1])
    if tag == "chain":
        return chain_ops(pair, op[1])
    if tag in _S_VARIANTS:
        return frozenset([s_op(pair, op)])
    if tag == "enl":
        return enlarged_op(pair, op)
    raise ValueError(f"unrecognized operator id {op!r}")


def _try_operator(pair, op):
    try:
        return apply_operator(pair, op)
    except (DomainViolation, RightTableauNotPreserved):
        return frozenset()


def apply_sequence(pair, ops):
    """Left-to-right set-valued composition; domain failures prune branches."""
    current = frozenset([pair])
    for op in ops:
        current = frozenset(q for p in current for q in _try_operator(p, op))
        if not current:
            break
    return current


def _expand_element(w, pair, ops):
    """All (op, output pair, output element) edges from one node.

    Wall, fork, and chain operators share the per-generator single-step table,
    so each neighbour's insertion is computed once.  The element slot is None
    for prefix-swap and enlargement outputs, whose realizing elements are only
    recovered on demand.
    """
    des = weyl.right_descents(w)
    steps = {}

    def step(root):
        if root not in steps:
            steps[root] = _right_step(w, root, pair.right)
        return steps[root]

    for op in ops:
        tag = op[0]
        if tag == "wall":
            alpha, beta = op[1], op[2]
            if alpha in des and beta not in des:
                hits = []
                for root in (alpha, beta):
                    y, des_y, out = step(root)
                    if beta in des_y and alpha not in des_y:
                        hits.append((out, y))
                if len(hits) != 1:
                    raise AssertionError("wall-crossing candidates not unique")
                if hits[0][0] is None:
                    raise AssertionError("wall-crossing lost the right tableau")
                yield op, hits[0][0], hits[0][1]
        elif tag == "fork":
            src, dst = ("1'", "3") if op[1] == "1'3" else ("3", "1'")
            if src in des and dst not in des:
                for root in _FORK_GENS:
                    y, des_y, out = step(root)
                    if dst in des_y and src not in des_y and out is not None:
                        yield op, out, y
        elif tag == "chain":
            a_in = CHAIN_ROOT in des
            x_in = any(r in des for r in CHAIN_SET)
            ok = (a_in and not x_in) if op[1] == "aX" else (x_in and not a_in)
            if ok:
                for root in _FORK_GENS:
                    y, des_y, out = step(root)
                    a_y = CHAIN_ROOT in des_y
                    x_y = any(r in des_y for r in CHAIN_SET)
                    wanted = (x_y and not a_y) if op[1] == "aX" \
                        else (a_y and not x_y)
                    if wanted and out is not None:
                        yield op, out, y
        else:
            for out in _try_operator(pair, op):
                yield op, out, None


def orbit_closure(seed, ops):
    """Closure of an admissible pair under the operators, with witnesses.

    Returns a dict mapping each reachable pair to a minimal operator sequence
    producing it from the seed.  Every member keeps the seed's right tableau;
    enlargement outputs that slide the right tableau fall outside this orbit
    and are dropped.
    """
    _require_admissible(seed)
    ops = tuple(ops)
    start = element_of_pair(seed)
    witness = {seed: ()}
    elements = {seed: start}
    queue = deque([seed])
    while queue:
        pair = queue.popleft()
        w = elements[pair]
        for op, out, y in _expand_element(w, pair, ops):
            if out in witness:
                continue
            if out.right != seed.right:
                if op[0] == "enl":
                    continue
                raise AssertionError("orbit left the fixed right tableau")
            if not is_admissible_pair(out.left, out.right):
                raise AssertionError("orbit left the admissible image")
            witness[out] = witness[pair] + (op,)
            elements[out] = y if y is not None else element_of_pair(out)
            queue.append(out)
    return witness


def default_right_tableau(shape):
    """Deterministic right tableau for orbit scans on a shape: the first
    standard tableau (enumeration order) admitting admissible partners,
    preferring compatibility with a quasi-staircase model of the shape so
    prefix swaps are live."""
    tabs = enumerate_standard(shape)
    if not tabs:
        raise ValueError(f"shape {shape} is not tileable")
    model = _model_of_shape(shape)
    if model is not None:
        for t in tabs:
            if is_admissible_pair(model, t):
                return t
    residues = {t.vertical_count() % 4 for t in tabs}
    for t in tabs:
        if (-t.vertical_count()) % 4 in residues:
            return t
    return None


def _model_of_shape(shape):
    from .partitions import transpose as _transpose

    n = 1
    while True:
        lam = staircase_shape(n)
        if sum(lam) > sum(shape):
            return None
        if lam == tuple(shape):
            return quasi_staircase_tables(n).t1
        if _transpose(lam) == tuple(shape):
            return quasi_staircase_tables(n).t1.transpose()
        n += 1


def deficiency_report(shape, ops, right=None):
    """Partition the admissible left tableaux against a fixed right tableau
    into orbits of the operator set.  A complete operator set yields a single
    orbit; extra orbits measure its deficiency."""
    ops = tuple(ops)
    if right is None:
        right = default_right_tableau(shape)
    if right is None:
        return {"shape": tuple(shape), "right": None, "orbits": ()}
    lefts = [t for t in enumerate_standard(shape) if is_admissible_pair(t, right)]
    remaining = set(lefts)
    orbits = []
    while remaining:
        seed_left = min(remaining, key=lambda t: t.entries)
        closure = orbit_closure(TableauPair(seed_left, right), ops)
        members = frozenset(p.left for p in closure)
        if not members <= remaining:
            raise AssertionError("orbit escaped the admissible set")
        remaining -= members
        orbits.append(members)
    orbits.sort(key=lambda ms: min(t.entries for t in ms))
    return {"shape": tuple(shape), "right": right, "orbits": tuple(orbits)}
