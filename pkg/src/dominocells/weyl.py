"""Even-signed permutations: the Weyl group W(D_n).

Elements are tuples of signed integers in one-line notation: ``w[i-1] = w(i)``,
with ``{|w(i)|} = {1..n}`` and an even number of negative entries.  The action
extends to negative arguments by ``w(-i) = -w(i)``.

Simple roots are indexed by strings ``"1"``, ``"1'"``, ``"3"``, ..., ``"n"``
(no index 2): the two fork roots ``"1"`` and ``"1'"`` are both adjacent to
``"3"`` but not to each other.  Right multiplication by the reflection of
``"i"`` (i >= 3) swaps positions i-1 and i; ``"1"`` swaps positions 1 and 2;
``"1'"`` swaps them with both signs flipped.
"""

from itertools import combinations, permutations


def identity(n):
    return tuple(range(1, n + 1))


def is_element(w, n=None):
    """True iff ``w`` is an even-signed permutation (of rank ``n`` if given).

    >>> is_element((-2, 3, -1))
    True
    >>> is_element((2, -1))       # one negative sign
    False
    """
    if n is not None and len(w) != n:
        return False
    if sorted(abs(x) for x in w) != list(range(1, len(w) + 1)):
        return False
    return sum(1 for x in w if x < 0) % 2 == 0


def check_element(w, n=None):
    if not is_element(w, n):
        raise ValueError(f"not an even-signed permutation: {w}")
    return w


def act(w, i):
    """Value of w at i, for i in {-n..-1, 1..n}."""
    return w[i - 1] if i > 0 else -w[-i - 1]


def multiply(a, b):
    """Composition a∘b: (a∘b)(i) = a(b(i)).

    >>> multiply((2, 1, 3), (-2, 3, -1))
    (-1, 3, -2)
    """
    return tuple(act(a, x) for x in b)


def inverse(w):
    """Group inverse.

    >>> inverse((-2, 3, -1))
    (-3, -1, 2)
    """
    out = [0] * len(w)
    for i, x in enumerate(w, start=1):
        if x > 0:
            out[x - 1] = i
        else:
            out[-x - 1] = -i
    return tuple(out)


def simple_roots(n):
    """Root labels of D_n in diagram order: fork pair first, then the chain.

    >>> simple_roots(4)
    ('1', "1'", '3', '4')
    """
    return ("1", "1'") + tuple(str(i) for i in range(3, n + 1))


def root_positions(root):
    """The pair of one-based positions the reflection of ``root`` touches."""
    if root in ("1", "1'"):
        return (1, 2)
    i = int(root)
    return (i - 1, i)


def adjacent_roots(r1, r2):
    """True iff the two simple roots are joined in the Coxeter diagram."""
    if {r1, r2} == {"1", "1'"}:
        return False
    a = 2 if r1 == "1'" else int(r1.rstrip("'")) if r1 != "1" else 1
    b = 2 if r2 == "1'" else int(r2.rstrip("'")) if r2 != "1" else 1
    if {a, b} in ({1, 3}, {2, 3}):
        return True
    return a >= 3 and b >= 3 and abs(a - b) == 1


def apply_right(w, root):
    """w * s_root (acts on positions).

    >>> apply_right((1, 2, 3), "1'")
    (-2, -1, 3)
    >>> apply_right((-2, 3, -1), '3')
    (-2, -1, 3)
    """
    v = list(w)
    i, j = root_positions(root)
    if root == "1'":
        v[i - 1], v[j - 1] = -w[j - 1], -w[i - 1]
    else:
        v[i - 1], v[j - 1] = w[j - 1], w[i - 1]
    return tuple(v)


def apply_left(root, w):
    """s_root * w (acts on values)."""
    i, j = root_positions(root)
    neg = root == "1'"
    out = []
    for x in w:
        a = abs(x)
        if a == i:
            y = j if not neg else -j
        elif a == j:
            y = i if not neg else -i
        else:
            y = a
        out.append(y if x > 0 else -y)
    return tuple(out)


def length(w):
    """Coxeter length: inversions plus negative-sum pairs.

    >>> length((1, 2, 3)), length((-2, 3, -1))
    (0, 2)
    """
    n = len(w)
    inv = sum(1 for i, j in combinations(range(n), 2) if w[i] > w[j])
    nsp = sum(1 for i, j in combinations(range(n), 2) if w[i] + w[j] < 0)
    return inv + nsp


def right_descents(w):
    """Set of simple roots s with l(ws) < l(w).

    >>> sorted(right_descents((-3, 2, -1)))
    ["1'", '3']
    """
    out = set()
    if w[0] > w[1]:
        out.add("1")
    if w[0] + w[1] < 0:
        out.add("1'")
    for i in range(3, len(w) + 1):
        if w[i - 2] > w[i - 1]:
            out.add(str(i))
    return frozenset(out)


def left_descents(w):
    return right_descents(inverse(w))


def enumerate_group(n):
    """All elements of W(D_n), in a deterministic order.

    >>> len(enumerate_group(3))
    24
    """
    out = []
    for perm in permutations(range(1, n + 1)):
        for k in range(0, n + 1, 2):
            for neg in combinations(range(n), k):
                v = list(perm)
                for i in neg:
                    v[i] = -v[i]
                out.append(tuple(v))
    return sorted(out)


def longest_element(n):
    """Longest element: -1 for even rank, else -1 with the sign at 1 undone.

    >>> longest_element(4), longest_element(3)
    ((-1, -2, -3, -4), (1, -2, -3))
    """
    if n % 2 == 0:
        return tuple(-i for i in range(1, n + 1))
    return (1,) + tuple(-i for i in range(2, n + 1))


def signed_cycle_type(w):
    """Cycle type as ``(positive, negative)`` partitions.

    A cycle of the underlying permutation of absolute values is negative when
    the signs along it multiply to -1; negative cycles come in even number.

    >>> signed_cycle_type((-2, -1))
    ((2,), ())
    >>> signed_cycle_type((-1, -2, 3))
    ((1,), (1, 1))
    """
    n = len(w)
    seen = [False] * n
    pos, neg = [], []
    for start in range(1, n + 1):
        if seen[start - 1]:
            continue
        sign, size, i = 1, 0, start
        while not seen[i - 1]:
            seen[i - 1] = True
            size += 1
            x = w[i - 1]
            if x < 0:
                sign = -sign
            i = abs(x)
        (pos if sign == 1 else neg).append(size)
    return tuple(sorted(pos, reverse=True)), tuple(sorted(neg, reverse=True))


def conjugacy_classes(n):
    """Conjugacy classes of W(D_n) as a list of frozensets (exact, small n).

    Classes refine signed cycle types: a type with no negative cycles and all
    positive cycle lengths even splits into two classes.
    """
    gens = [
        [apply_right(identity(n), r) for r in simple_roots(n)],
    ][0]
    elements = enumerate_group(n)
    unassigned = set(elements)
    classes = []
    while unassigned:
        seed = min(unassigned)
        orbit = {seed}
        frontier = [seed]
        while frontier:
            w = frontier.pop()
            for g in gens:
                v = multiply(multiply(g, w), g)  # g w g^{-1}; generators are involutions
                if v not in orbit:
                    orbit.add(v)
                    frontier.append(v)
        classes.append(frozenset(orbit))
        unassigned -= orbit
    return sorted(classes, key=min)
