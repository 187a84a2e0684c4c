"""Cell intersections, sign vectors, and the submodules they generate.

A block is the intersection of a left cell C with a right cell (a left
cell R read through the inverse convention).  Its elements correspond to
the admissible coupled-move orbit of any member's tableau pair, which is
a torsor over GF(2)^r; the coordinates of that torsor are the f-subsets.
Signing the KL basis vectors of C by the parity of f-subset overlaps
yields one vector per realized shape, and each vector generates an
irreducible constituent of the cell module.  The base point giving the
all-plus vector is the unique element whose left tableau has special
shape when one exists, else the cell's distinguished involution.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from . import cycles, linalg, partitions, reps, tableaux, weyl
from .polynomials import pdeg
from .reps import VeryEvenShape


class NoCommonDoubleCell(ValueError):
    """The two cells intersect trivially, so they share no double cell."""


class NoSpecialElement(LookupError):
    """No special-shape element and no involution to anchor the block."""


class UnreachableShape(ValueError):
    """No element of the block has a left tableau of the requested shape."""


def _gf2_basis(masks):
    """Reduced row-echelon basis of a set of bit masks, sorted by pivot."""
    basis = []
    for v in sorted(masks):
        cur = v
        for b in basis:
            if cur >> (b.bit_length() - 1) & 1:
                cur ^= b
        if cur:
            basis.append(cur)
            basis.sort(key=lambda b: b.bit_length(), reverse=True)
    for i, b in enumerate(basis):
        for j in range(i):
            if basis[j] >> (b.bit_length() - 1) & 1:
                basis[j] ^= b
    return tuple(sorted(basis))


def _gf2_coords(mask, basis):
    cur = mask
    out = set()
    for j in reversed(range(len(basis))):
        if cur >> (basis[j].bit_length() - 1) & 1:
            cur ^= basis[j]
            out.add(j)
    if cur:
        raise ValueError("vector outside the admissible span")
    return frozenset(out)


def block_coordinates(base_pair, coloring=cycles.MAIN_COLORING):
    """Admissible coupled-move orbit of ``base_pair`` with GF(2) coordinates.

    The orbit of all coupled moves is a torsor over subsets of the base
    pair's minimal moves (matched across the orbit by label sets; the walk
    verifies consistency).  Admissibility cuts out a linear subspace of
    those subsets — a move shifts the vertical sum by 0 or 2 mod 4 — so
    the admissible members are re-coordinatized over a reduced basis of
    that subspace.  Returns (moves, generators, coords): ``generators``
    lists each basis vector as a frozenset of move indices, and ``coords``
    maps each admissible pair to a frozenset of generator indices.
    """
    moves = cycles.extended_cycles(base_pair, coloring)
    index = {(m.left_labels, m.right_labels): i for i, m in enumerate(moves)}
    raw = {base_pair: 0}
    frontier = [base_pair]
    while frontier:
        p = frontier.pop()
        for m in cycles.extended_cycles(p, coloring):
            i = index.get((m.left_labels, m.right_labels))
            if i is None:
                raise ValueError("coupled move does not match any base move")
            q = cycles.move_pair(p, m, coloring)
            c = raw[p] ^ (1 << i)
            if q in raw:
                if raw[q] != c:
                    raise ValueError("coupled-move coordinates are inconsistent")
            else:
                raw[q] = c
                frontier.append(q)
    admissible = {
        p: c
        for p, c in raw.items()
        if tableaux.is_admissible_pair(p.left, p.right)
    }
    if len(admissible) & (len(admissible) - 1):
        raise ValueError("admissible orbit size is not a power of two")
    basis = _gf2_basis(admissible.values())
    if len(admissible) != 1 << len(basis):
        raise ValueError("admissible masks do not form a subspace")
    generators = tuple(
        frozenset(i for i in range(len(moves)) if b >> i & 1) for b in basis
    )
    coords = {p: _gf2_coords(c, basis) for p, c in admissible.items()}
    return moves, generators, coords


@dataclass(frozen=True)
class IntersectionData:
    """One block, ordered from its base point.

    ``generators`` are the free coupled moves of the block: each is a
    frozenset of indices into ``moves`` whose combination preserves
    admissibility.  ``f_subsets`` maps each element to the generator
    subset carrying the base pair to its pair; the base has the empty
    subset.
    """

    left_cell: frozenset
    right_cell: frozenset
    elements: tuple
    base: tuple
    base_rule: str
    moves: tuple
    generators: tuple
    f_subsets: dict = field(compare=False)
    pairs: dict = field(compare=False)

    @property
    def r(self):
        return len(self.generators)

    def shape(self, w):
        return self.pairs[w].left.shape()

    @property
    def shapes(self):
        return tuple(self.shape(w) for w in self.elements)

    def element_of_shape(self, sigma):
        hits = [w for w in self.elements if self.shape(w) == tuple(sigma)]
        if not hits:
            raise UnreachableShape(f"no element of left shape {sigma}")
        if len(hits) > 1:
            raise ValueError(f"left shape {sigma} is realized more than once")
        return hits[0]


def _distinguished_involution(t, block):
    """Involution minimizing len(z) - 2 deg P(e, z), or None."""
    e = weyl.identity(t.n)
    best = None
    for z in sorted(block):
        if weyl.inverse(z) != z:
            continue
        score = weyl.length(z) - 2 * pdeg(t.kl_polynomial(e, z))
        if best is None or score < best[0]:
            best = (score, z)
    return None if best is None else best[1]


def cell_intersection(t, C, R):
    """Ordered block data for C cap R, with R read as a right cell.

    The base point is the unique special-shape element when one exists;
    otherwise the block's distinguished involution (diagonal blocks always
    have one); otherwise NoSpecialElement.  The block is checked against
    the admissible coupled-move orbit of the base pair, element for
    element.
    """
    block = frozenset(w for w in C if weyl.inverse(w) in R)
    if not block:
        raise NoCommonDoubleCell("the cells intersect trivially")
    pairs = {w: tableaux.tableau_pair(w) for w in block}
    special = [w for w in block if reps.is_special_shape(pairs[w].left.shape())]
    if len(special) > 1:
        raise ValueError(f"block has {len(special)} special-shape elements")
    if special:
        base, rule = special[0], "special-shape"
    else:
        base = _distinguished_involution(t, block)
        if base is None:
            raise NoSpecialElement(
                "no special-shape element and no involution in the block"
            )
        rule = "distinguished-involution"
    moves, generators, coords = block_coordinates(pairs[base])
    by_pair = {p: w for w, p in pairs.items()}
    if set(by_pair) != set(coords):
        raise ValueError("block does not match the admissible coupled-move orbit")
    f_subsets = {w: coords[pairs[w]] for w in block}
    elements = tuple(
        sorted(block, key=lambda w: (len(f_subsets[w]), sorted(f_subsets[w]), w))
    )
    assert len(elements) == 1 << len(generators)
    return IntersectionData(
        left_cell=frozenset(C),
        right_cell=frozenset(R),
        elements=elements,
        base=base,
        base_rule=rule,
        moves=moves,
        generators=generators,
        f_subsets=f_subsets,
        pairs=pairs,
    )


@dataclass(frozen=True)
class IsotypicVector:
    """Signed indicator vector of a block in the KL basis of its left cell."""

    shape: tuple
    support: tuple
    signs: dict = field(compare=False)

    def coefficient(self, w):
        return self.signs[w]


def r_sigma(data, sigma):
    """Sign vector for one reachable shape: (-1)^|f(w) cap e| on each w."""
    sigma = tuple(sigma)
    if reps.is_very_even(sigma):
        raise VeryEvenShape(f"{sigma} labels a split pair; nothing to do")
    e = data.f_subsets[data.element_of_shape(sigma)]
    signs = {
        w: -1 if len(data.f_subsets[w] & e) % 2 else 1 for w in data.elements
    }
    assert signs[data.base] == 1
    return IsotypicVector(shape=sigma, support=data.elements, signs=signs)


# --- submodule checks -------------------------------------------------------


def _submodule(t, C, coefficients):
    """Row basis of the W-submodule generated by one vector of the cell module."""
    basis = sorted(C)
    mats = t.cell_module(C)
    v = tuple(Fraction(coefficients.get(w, 0)) for w in basis)
    sub = linalg.closure_under(tuple(mats.values()), (v,))
    return mats, sub


def _submodule_character(t, mats, sub):
    """Class function of the W-action restricted to an invariant subspace."""
    chi = {}
    for label, g in reps.class_representatives(t.n).items():
        rho = linalg.restricted_matrix(sub, t.element_matrix(mats, g))
        chi[label] = linalg.trace(rho)
    return chi


def _module_constituents(t, cell):
    """Irreducibles of a cell module with their multiplicities."""
    chi = _cell_character_dict(t, cell)
    out = {}
    for pi in reps.irreducibles(t.n):
        m = reps.inner_product(chi, reps.character(pi, t.n), t.n)
        assert m.denominator == 1 and m >= 0
        if m:
            out[pi] = int(m)
    return out


def _cell_character_dict(t, cell):
    mats = t.cell_module(cell)
    return {
        label: linalg.trace(t.element_matrix(mats, g))
        for label, g in reps.class_representatives(t.n).items()
    }


def shared_constituents(t, C, R):
    """Constituents common to the two cell modules, with multiplicities."""
    mc = _module_constituents(t, C)
    mr = _module_constituents(t, R)
    return {pi: min(m, mr[pi]) for pi, m in mc.items() if pi in mr}


def _block_labels(shapes):
    """Unordered bipartition labels of the realized shapes."""
    return {s: tuple(sorted(partitions.two_quotient(s))) for s in shapes}


def expected_constituent(t, data, sigma):
    """The module constituent the sign vector of ``sigma`` must generate.

    Combinatorially this is rep(sigma) whenever the realized shapes carry
    distinct labels; when two realized shapes share a label (both
    preimages of the special label can appear in one block), the base
    shape keeps its label and the other one takes the remaining shared
    constituent.  The result is returned in module coordinates, which are
    the sign twist of the shape labels (positive KL basis at q = 1).
    """
    sigma = tuple(sigma)
    labels = _block_labels(data.shapes)
    if len(set(labels.values())) == len(labels):
        return reps.sign_twist(reps.shape_to_rep(sigma))
    base_shape = data.shape(data.base)
    if sigma == base_shape:
        return reps.sign_twist(reps.shape_to_rep(sigma))
    shared = shared_constituents(t, data.left_cell, data.right_cell)
    rest = [
        pi for pi in shared if pi != reps.sign_twist(reps.shape_to_rep(base_shape))
    ]
    if len(rest) != 1:
        raise ValueError("cannot identify the complementary constituent")
    return rest[0]


def verify_theorem2(t, C, R, sigma):
    """Check that the sign vector of ``sigma`` generates an irreducible
    submodule with the expected character, multiplicity one.

    Very even shapes short-circuit to the irreducibility of both cell
    modules.  Check failures come back as report entries, never as
    exceptions; precondition violations (wrong cells, unreachable shape)
    raise.
    """
    sigma = tuple(sigma)
    report = {"rank": t.n, "sigma": sigma, "checks": {}, "ok": False}
    if reps.is_very_even(sigma):
        report["mode"] = "very-even"
        for tag, cell in (("left", C), ("right", R)):
            chi = _cell_character_dict(t, cell)
            norm = reps.inner_product(chi, chi, t.n)
            report["checks"][f"{tag}_cell_irreducible"] = norm == 1
        report["ok"] = all(report["checks"].values())
        return report
    report["mode"] = "sign-vector"
    try:
        data = cell_intersection(t, C, R)
    except NoSpecialElement as exc:
        report["error"] = {"kind": "NoSpecialElement", "detail": str(exc)}
        return report
    vec = r_sigma(data, sigma)
    expected = expected_constituent(t, data, sigma)
    mats, sub = _submodule(t, C, vec.signs)
    report["base_rule"] = data.base_rule
    report["expected"] = (expected.first, expected.second, expected.split)
    report["checks"]["dimension"] = len(sub) == reps.dimension(expected)
    chi_sub = _submodule_character(t, mats, sub)
    chi_exp = reps.character(expected, t.n)
    report["checks"]["character"] = chi_sub == chi_exp
    if not report["checks"]["character"]:
        report["counterexample"] = {
            label: (chi_sub[label], chi_exp[label])
            for label in chi_exp
            if chi_sub[label] != chi_exp[label]
        }
    mult = reps.inner_product(chi_sub, chi_exp, t.n)
    report["checks"]["multiplicity_one"] = mult == 1
    neg = {w: -s for w, s in vec.signs.items()}
    _, sub_neg = _submodule(t, C, neg)
    report["checks"]["sign_independent"] = sub == sub_neg
    report["ok"] = all(report["checks"].values())
    return report


def hadamard_check(t, C, R):
    """Every sign pattern over the block's coordinates generates an
    irreducible, and together they exhaust the shared constituents.

    Works for any block, including those without a base point; the sign
    patterns are taken relative to an arbitrary member, which only
    permutes them.
    """
    block = frozenset(w for w in C if weyl.inverse(w) in R)
    if not block:
        raise NoCommonDoubleCell("the cells intersect trivially")
    pairs = {w: tableaux.tableau_pair(w) for w in block}
    seed = min(block)
    _, generators, coords = block_coordinates(pairs[seed])
    by_pair = {p: w for w, p in pairs.items()}
    if set(by_pair) != set(coords):
        raise ValueError("block does not match the admissible coupled-move orbit")
    support = sorted(block)
    axes = list(range(len(generators)))
    mats = t.cell_module(C)
    tables = {pi: reps.character(pi, t.n) for pi in reps.irreducibles(t.n)}
    generated = []
    ok = True
    for mask in range(1 << len(axes)):
        chosen = frozenset(a for i, a in enumerate(axes) if mask >> i & 1)
        signs = {
            w: -1 if len(coords[pairs[w]] & chosen) % 2 else 1 for w in support
        }
        _, sub = _submodule(t, C, signs)
        chi = _submodule_character(t, mats, sub)
        norm = reps.inner_product(chi, chi, t.n)
        if norm != 1:
            ok = False
            continue
        hit = [
            pi
            for pi, table in tables.items()
            if reps.inner_product(chi, table, t.n) == 1
            and reps.dimension(pi) == len(sub)
        ]
        generated.append(hit[0] if len(hit) == 1 else None)
    shared = shared_constituents(t, C, R)
    expected = sorted(pi for pi, m in shared.items() for _ in range(m))
    ok = ok and None not in generated and sorted(generated) == expected
    return {
        "rank": t.n,
        "block_size": len(block),
        "r": len(axes),
        "generated": [(p.first, p.second, p.split) for p in generated if p],
        "shared": [(p.first, p.second, p.split) for p in expected],
        "ok": ok,
    }


# --- operator equivariance ---------------------------------------------------


def _group_matrices(t, mats):
    """Matrix of every group element on a cell module, one product each."""
    n = t.n
    e = weyl.identity(n)
    k = len(next(iter(mats.values())))
    out = {e: linalg.identity(k)}
    frontier = [e]
    while frontier:
        nxt = []
        for w in frontier:
            for s in weyl.simple_roots(n):
                ws = weyl.apply_right(w, s)
                if weyl.length(ws) > weyl.length(w) and ws not in out:
                    out[ws] = linalg.mat_mul(out[w], mats[s])
                    nxt.append(ws)
        frontier = nxt
    return out


def isotypic_projector(t, mats, pi):
    """Projector onto the pi-isotypic part of a cell module (exact)."""
    n = t.n
    labels = reps.class_map(n)
    chi = reps.character(pi, n)
    k = len(next(iter(mats.values())))
    total = tuple(tuple(Fraction(0) for _ in range(k)) for _ in range(k))
    for w, rho in _group_matrices(t, mats).items():
        total = linalg.mat_add(total, linalg.mat_scale(chi[labels[w]], rho))
    scale = Fraction(reps.dimension(pi), reps.group_order(n))
    return linalg.mat_scale(scale, total)


def _operator_matrices(t, op, C1):
    """Linear extension of an operator on the KL basis of a left cell,
    split by the left cells its outputs land in.

    Returns (parts, coverage): ``parts`` lists (matrix, target cell) with
    matrix rows over the sorted target basis, one entry per target cell;
    ``coverage`` is "full" when the operator applies to every element,
    "none" to no element, and "partial" otherwise (descent-style domains
    are cell invariants, but plain prefix swaps require a literal model
    prefix, which only some members of a cell carry — their cell-level
    extension is the enlarged operator, so no matrix is built).
    Truncating operators may send in-domain elements to the empty set;
    those give zero columns, and if every output is empty ``parts`` is
    empty (the zero map).
    """
    from . import operators

    basis1 = sorted(C1)
    if op == ("id",):
        return [(linalg.identity(len(basis1)), C1)], "full"
    images = {}
    for w in basis1:
        pair = tableaux.tableau_pair(w)
        try:
            outs = operators.apply_operator(pair, op)
        except (operators.DomainViolation, operators.RightTableauNotPreserved):
            outs = None
        images[w] = outs
    defined = [w for w, outs in images.items() if outs is not None]
    if not defined:
        return [], "none"
    if len(defined) != len(basis1):
        return [], "partial"
    by_target = {}
    for j, w in enumerate(basis1):
        for p in images[w]:
            v = tableaux.element_of_pair(p)
            by_target.setdefault(t.left_cell_of(v), []).append((j, v))
    parts = []
    for cell in sorted(by_target, key=min):
        basis2 = sorted(cell)
        pos2 = {v: i for i, v in enumerate(basis2)}
        m = [[0] * len(basis1) for _ in range(len(basis2))]
        for j, v in by_target[cell]:
            m[pos2[v]][j] += 1
        parts.append((tuple(tuple(row) for row in m), cell))
    return parts, "full"


def equivariance_check(t, op, C1):
    """Report whether an operator's linear extension commutes with the
    W-action and is injective on each shared isotypic component.

    Multi-valued operators may scatter their outputs over several left
    cells; the extension then maps into the direct sum of those cell
    modules.  Commutation is checked block by block (equivalent to
    commutation into the direct sum), injectivity for the total map on
    every constituent the source shares with some target.
    """
    from . import operators

    report = {
        "rank": t.n,
        "operator": operators.format_operator(op),
        "checks": {},
        "ok": False,
    }
    parts, coverage = _operator_matrices(t, op, C1)
    report["coverage"] = coverage
    report["defined"] = coverage == "full"
    if coverage != "full":
        report["ok"] = True
        return report
    if not parts:
        report["zero"] = True
        report["ok"] = True
        return report
    report["targets"] = len(parts)
    mats1 = t.cell_module(C1)
    commutes = True
    shared = set()
    for m, C2 in parts:
        mats2 = t.cell_module(C2)
        commutes = commutes and all(
            linalg.mat_mul(m, mats1[s]) == linalg.mat_mul(mats2[s], m)
            for s in weyl.simple_roots(t.n)
        )
        shared.update(shared_constituents(t, C1, C2))
    report["checks"]["commutes"] = commutes
    total = tuple(row for m, _ in parts for row in m)
    injective = {}
    for pi in shared:
        p1 = isotypic_projector(t, mats1, pi)
        image = linalg.mat_mul(total, p1)
        injective[pi] = linalg.rank(tuple(zip(*image))) == linalg.rank(
            tuple(zip(*p1))
        )
    report["checks"]["isotypic_injective"] = all(injective.values())
    report["shared"] = [
        ((p.first, p.second, p.split), bool(v)) for p, v in sorted(injective.items())
    ]
    report["ok"] = all(report["checks"].values())
    return report
