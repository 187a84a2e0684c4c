"""Irreducible characters of the type-D Weyl group, at label level.

An irreducible is an unordered bipartition {first, second} with
|first| + |second| = n; when the two components coincide the label splits
into a '+' and a '-' representation of half the dimension.  Character
values come from the sign-wreath Murnaghan-Nakayama rule in the ambient
group of all signed permutations, which restricts irreducibly to the
index-two subgroup whenever the components differ; split labels add the
classical difference term supported on the split classes (all cycles
positive of even length).  Symbols built from beta-sets carry the
a-function, the specialness test, and truncated (j-) induction; induced
characters are computed through class fusion only, never by coset
enumeration.

Class labels are ``(positive, negative, tag)`` with the two partitions
from :func:`dominocells.weyl.signed_cycle_type` and ``tag`` one of
``None``/``'+'``/``'-'``; only types with an even number of negative
cycles occur, and a type splits exactly when it has no negative cycles
and every positive cycle length is even.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from . import partitions, weyl


class VeryEvenShape(ValueError):
    """The shape's bipartition has equal components; the label is ambiguous."""


@dataclass(frozen=True, order=True)
class Rep:
    """Unordered bipartition label, optionally split into '+'/'-'."""

    first: tuple
    second: tuple
    split: str = None

    def __post_init__(self):
        if (self.first, self.second) != tuple(sorted((self.first, self.second))):
            raise ValueError("components must be canonically ordered")
        if self.split is not None and self.first != self.second:
            raise ValueError("only equal components split")
        if self.split not in (None, "+", "-"):
            raise ValueError(f"bad split tag {self.split!r}")

    @property
    def rank(self):
        return partitions.size(self.first) + partitions.size(self.second)


def rep_label(alpha, beta, split=None):
    """Canonical unordered label."""
    a, b = sorted((tuple(alpha), tuple(beta)))
    return Rep(a, b, split)


def irreducibles(n):
    """All irreducible labels of rank n, split pairs listed twice."""
    out = []
    for j in range(n + 1):
        for a in partitions.partitions_of(j):
            for b in partitions.partitions_of(n - j):
                if (a, b) != tuple(sorted((a, b))):
                    continue
                if a == b:
                    out.append(Rep(a, b, "+"))
                    out.append(Rep(a, b, "-"))
                else:
                    out.append(Rep(a, b))
    return tuple(sorted(out))


def dimension(rep):
    """Degree: binomial times hook-length counts, halved on split labels."""
    n = rep.rank
    full = (
        comb(n, partitions.size(rep.first))
        * partitions.standard_count(rep.first)
        * partitions.standard_count(rep.second)
    )
    if rep.split is not None:
        assert full % 2 == 0
        return full // 2
    return full


def group_order(n):
    return 2 ** (n - 1) * factorial(n)


# --- conjugacy class labels -----------------------------------------------


def _splits(pos, neg):
    return not neg and all(p % 2 == 0 for p in pos)


def class_labels(n):
    """All class labels of rank n, deterministically ordered."""
    out = []
    for j in range(n + 1):
        for pos in partitions.partitions_of(j):
            for neg in partitions.partitions_of(n - j):
                if len(neg) % 2:
                    continue
                if _splits(pos, neg):
                    out.append((pos, neg, "+"))
                    out.append((pos, neg, "-"))
                else:
                    out.append((pos, neg, None))
    return tuple(sorted(out, key=lambda c: (c[0], c[1], c[2] or "")))


def _ambient_centralizer(pos, neg):
    z = 1
    for part in (pos, neg):
        mult = {}
        for p in part:
            mult[p] = mult.get(p, 0) + 1
        for length, m in mult.items():
            z *= (2 * length) ** m * factorial(m)
    return z


def class_size(label, n):
    """Class cardinality inside the index-two subgroup."""
    pos, neg, tag = label
    full = (2**n * factorial(n)) // _ambient_centralizer(pos, neg)
    if tag is not None:
        assert full % 2 == 0
        return full // 2
    return full


def class_representatives(n):
    """dict label -> group element, from honest conjugacy classes.

    The '+' tag goes to the split half containing the smaller minimal
    element in tuple order; the convention only has to be applied
    consistently, and every consumer reads it through this map.
    """
    by_type = {}
    for cls in weyl.conjugacy_classes(n):
        rep = min(cls)
        by_type.setdefault(weyl.signed_cycle_type(rep), []).append(rep)
    out = {}
    for (pos, neg), reps in by_type.items():
        if _splits(pos, neg):
            assert len(reps) == 2
            lo, hi = sorted(reps)
            out[(pos, neg, "+")] = lo
            out[(pos, neg, "-")] = hi
        else:
            assert len(reps) == 1
            out[(pos, neg, None)] = reps[0]
    assert set(out) == set(class_labels(n))
    return out


def class_label_of(w, n=None, reps_map=None):
    """Label of the class containing w (explicit conjugacy for split types)."""
    n = n if n is not None else len(w)
    pos, neg = weyl.signed_cycle_type(w)
    if not _splits(pos, neg):
        return (pos, neg, None)
    reps_map = reps_map if reps_map is not None else class_representatives(n)
    plus = reps_map[(pos, neg, "+")]
    orbit = {plus}
    frontier = [plus]
    gens = [weyl.apply_right(weyl.identity(n), r) for r in weyl.simple_roots(n)]
    while frontier:
        v = frontier.pop()
        if v == w:
            return (pos, neg, "+")
        for g in gens:
            u = weyl.multiply(weyl.multiply(g, v), g)
            if u not in orbit:
                orbit.add(u)
                frontier.append(u)
    return (pos, neg, "-") if w not in orbit else (pos, neg, "+")


# --- Murnaghan-Nakayama ----------------------------------------------------


@lru_cache(maxsize=None)
def _strips(la, size):
    """Border strips of the given size: tuple of (smaller shape, height)."""
    if size <= 0 or partitions.size(la) < size:
        return ()
    slots = max(len(la), 1)
    betas = partitions.beta_set(la, slots)
    bset = set(betas)
    out = []
    for b in betas:
        nb = b - size
        if nb >= 0 and nb not in bset:
            smaller = partitions.from_beta(sorted(bset - {b} | {nb}, reverse=True))
            height = sum(1 for c in bset if nb < c < b)
            out.append((smaller, height))
    return tuple(out)


@lru_cache(maxsize=None)
def _mn(lam, mu, parts):
    """Sign-wreath Murnaghan-Nakayama on the ordered pair (lam, mu).

    ``parts`` is a tuple of (length, sign); a negative cycle weights the
    strips removed from the second component by -1.
    """
    if not parts:
        return 1 if not lam and not mu else 0
    (c, eps), rest = parts[0], parts[1:]
    total = 0
    for sub, height in _strips(lam, c):
        total += (-1) ** height * _mn(sub, mu, rest)
    for sub, height in _strips(mu, c):
        total += eps * (-1) ** height * _mn(lam, sub, rest)
    return total


def _class_parts(pos, neg):
    return tuple((p, 1) for p in pos) + tuple((q, -1) for q in neg)


def character_value(rep, label):
    """Exact character value of an irreducible on one class label."""
    pos, neg, tag = label
    parts = _class_parts(pos, neg)
    if rep.split is None:
        if rep.first == rep.second:
            raise VeryEvenShape("equal components need a '+'/'-' tag")
        return _mn(rep.first, rep.second, parts)
    base = _mn(rep.first, rep.first, parts)
    if tag is None:
        assert base % 2 == 0
        return base // 2
    gamma = tuple(p // 2 for p in pos)
    diff = 2 ** len(gamma) * _mn(rep.first, (), _class_parts(gamma, ()))
    signed = diff if tag == rep.split else -diff
    assert (base + signed) % 2 == 0
    return (base + signed) // 2


def character(rep, n=None):
    """dict class label -> integer value."""
    n = n if n is not None else rep.rank
    if n != rep.rank:
        raise ValueError("rank mismatch")
    return {label: character_value(rep, label) for label in class_labels(n)}


def inner_product(chi1, chi2, n):
    """Class-weighted inner product of two class functions (exact)."""
    total = Fraction(0)
    for label in class_labels(n):
        total += Fraction(class_size(label, n)) * chi1[label] * chi2[label]
    return total / group_order(n)


@lru_cache(maxsize=None)
def class_map(n):
    """dict group element -> class label, one conjugacy sweep."""
    reps_map = class_representatives(n)
    out = {}
    for cls in weyl.conjugacy_classes(n):
        label = class_label_of(min(cls), n, reps_map)
        for w in cls:
            out[w] = label
    return out


# --- shapes, symbols, a-function ------------------------------------------


def shape_to_rep(shape):
    """Unordered bipartition of a tileable shape, via the 2-quotient."""
    if not partitions.has_empty_core(shape):
        raise ValueError(f"shape {shape} is not tileable")
    q1, q2 = partitions.two_quotient(shape)
    return rep_label(q1, q2)


def is_very_even(shape):
    """Both 2-quotient components equal: the label splits."""
    q1, q2 = partitions.two_quotient(shape)
    return q1 == q2


def sign_twist(rep):
    """Label of the representation tensored with sign: both components
    transpose.  Cell modules in the positive KL basis at q = 1 carry the
    sign twist of the combinatorial shape correspondence, so this is the
    bridge between shape labels and module constituents."""
    return rep_label(
        partitions.transpose(rep.first), partitions.transpose(rep.second), rep.split
    )


def rep_shapes(rep, n=None):
    """The tileable preimage shapes of a label (two, or one if very even)."""
    n = n if n is not None else rep.rank
    return tuple(
        s
        for s in partitions.tileable_shapes(n)
        if sorted(partitions.two_quotient(s)) == [rep.first, rep.second]
    )


def symbol(rep, n=None):
    """Defect-zero symbol: the pair of beta-sets padded to rank slots."""
    n = n if n is not None else rep.rank
    return (
        partitions.beta_set(rep.first, n),
        partitions.beta_set(rep.second, n),
    )


def _pair_min_sum(entries):
    asc = sorted(entries)
    m = len(asc)
    return sum(asc[i] * (m - 1 - i) for i in range(m))


@lru_cache(maxsize=None)
def _a_baseline(n):
    triv = rep_label((n,), ())
    s, t = symbol(triv, n)
    return _pair_min_sum(s + t)


def a_value(rep, n=None):
    """Lusztig a-invariant from the symbol, normalized to a(trivial) = 0."""
    n = n if n is not None else rep.rank
    s, t = symbol(rep, n)
    return _pair_min_sum(s + t) - _a_baseline(n)


def _interleaves(s, t):
    pairs = list(zip(sorted(s), sorted(t)))
    le = all(a <= b for a, b in pairs)
    ge = all(a >= b for a, b in pairs)
    if not (le or ge):
        return False
    first, second = (s, t) if le else (t, s)
    fs, ss = sorted(first), sorted(second)
    return all(ss[i] <= fs[i + 1] for i in range(len(fs) - 1))


def is_special_rep(rep):
    """The symbol entries interleave in some order."""
    s, t = symbol(rep)
    return _interleaves(s, t)


def shape_partner(shape):
    """The other tileable shape with the same label (itself if very even)."""
    q1, q2 = partitions.two_quotient(shape)
    return partitions.quotient_to_shape(q2, q1)


def _odd_parts(shape):
    return sum(1 for p in shape if p % 2)


def is_special_shape(shape):
    """Whether this is the distinguished preimage of a special label.

    The label must be special (symbol interleaving), and among the two
    preimage shapes the distinguished one has a multiple of four odd parts
    (so it supports involutions), with fewer odd parts breaking ties.
    Calibrated against KL Duflo data at ranks up to 4; for some special
    labels at rank 5 and beyond neither preimage qualifies.
    """
    if not is_special_rep(shape_to_rep(shape)):
        return False
    mate = shape_partner(shape)
    if mate == shape:
        return True
    mine, theirs = _odd_parts(shape), _odd_parts(mate)
    if mine % 4:
        return False
    if theirs % 4:
        return True
    return mine < theirs


def special_shape_of(rep, n=None):
    """The distinguished special-shape preimage of a special label, or None."""
    if not is_special_rep(rep):
        raise ValueError(f"label {rep} is not special")
    n = n if n is not None else rep.rank
    for s in rep_shapes(rep, n):
        if is_special_shape(s):
            return s
    return None


# --- induction --------------------------------------------------------------


def fuse_class(label, k, n):
    """Image of a rank-k class label inside rank n (pad positive fixed points)."""
    pos, neg, tag = label
    fused_pos = tuple(sorted(pos + (1,) * (n - k), reverse=True))
    if n > k:
        return (fused_pos, neg, None)
    return label


def parabolic_induction(k, n, rep):
    """Multiplicities of the character induced from the first-k-coordinates
    subgroup, by Frobenius reciprocity over fused classes."""
    if k >= n:
        raise ValueError("need k < n")
    if rep.rank != k:
        raise ValueError("rank mismatch")
    sub_classes = class_labels(k)
    sub_sizes = {c: class_size(c, k) for c in sub_classes}
    chi_sub = {c: character_value(rep, c) for c in sub_classes}
    order_k = group_order(k)
    out = {}
    for pi in irreducibles(n):
        total = Fraction(0)
        for c in sub_classes:
            total += (
                Fraction(sub_sizes[c])
                * chi_sub[c]
                * character_value(pi, fuse_class(c, k, n))
            )
        mult = total / order_k
        assert mult.denominator == 1 and mult >= 0
        if mult:
            out[pi] = int(mult)
    index = group_order(n) // group_order(k)
    assert sum(m * dimension(p) for p, m in out.items()) == index * dimension(rep)
    return out


def _cycle_permutation(mu, offset, n):
    """Signed permutation with positive cycles of lengths mu on the last slots."""
    w = list(range(1, n + 1))
    start = offset + 1
    for c in mu:
        for i in range(c - 1):
            w[start + i - 1] = start + i + 1
        w[start + c - 2] = w[start + c - 2] if c == 1 else start
        start += c
    return tuple(w)


def _symmetric_class_size(mu, m):
    z = 1
    for c in set(mu):
        k = mu.count(c)
        z *= c**k * factorial(k)
    return factorial(m) // z


def signed_parabolic_induction(k, n, rep):
    """Multiplicities of the character induced from the subgroup fixing the
    last n - k coordinates up to permutation, with sign on the permutation
    factor.  Classes of the product are fused through concrete elements:
    a rank-k representative extended by positive cycles on the tail."""
    if k >= n:
        raise ValueError("need k < n")
    if rep.rank != k:
        raise ValueError("rank mismatch")
    m = n - k
    reps_k = class_representatives(k)
    sub_order = group_order(k) * factorial(m)
    acc = {pi: Fraction(0) for pi in irreducibles(n)}
    for label_k in class_labels(k):
        chi_k = character_value(rep, label_k)
        if not chi_k:
            continue
        w_k = reps_k[label_k]
        size_k = class_size(label_k, k)
        for mu in partitions.partitions_of(m):
            sign_mu = -1 if (m - len(mu)) % 2 else 1
            weight = Fraction(size_k * _symmetric_class_size(mu, m) * chi_k * sign_mu)
            tail = _cycle_permutation(mu, k, n)
            w = w_k + tail[k:]
            fused = class_label_of(w, n)
            for pi in acc:
                acc[pi] += weight * character_value(pi, fused)
    out = {}
    for pi, total in acc.items():
        mult = total / sub_order
        assert mult.denominator == 1 and mult >= 0
        if mult:
            out[pi] = int(mult)
    index = group_order(n) // sub_order
    assert sum(mlt * dimension(p) for p, mlt in out.items()) == index * dimension(rep)
    return out


def truncated_induction(k, n, rep):
    """Minimal-a constituents of the sign-twisted parabolic induction.

    The sign twist on the symmetric factor makes the minimal a-value of
    the induced character equal a(rep) + C(n-k, 2); the minimal-a
    constituents form the truncated induction image.
    """
    out = signed_parabolic_induction(k, n, rep)
    best = min(a_value(p) for p in out)
    assert best == a_value(rep) + comb(n - k, 2)
    return frozenset(p for p in out if a_value(p) == best)
