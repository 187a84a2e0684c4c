"""Integer partitions, beta numbers, and the 2-core / 2-quotient correspondence.

Partitions are tuples of weakly decreasing positive ints; () is the empty
partition.  Beta sets use a fixed even number of slots so the two parity
classes of beta numbers are well defined; the first quotient component is
read off the odd beta numbers, the second off the even ones.
"""

from functools import lru_cache
from math import comb, factorial


def is_partition(la):
    return all(isinstance(x, int) and x > 0 for x in la) and all(
        la[i] >= la[i + 1] for i in range(len(la) - 1)
    )


def check_partition(la):
    if not is_partition(la):
        raise ValueError(f"not a partition: {la}")
    return tuple(la)


def size(la):
    return sum(la)


def transpose(la):
    """Conjugate partition.

    >>> transpose((4, 2, 1))
    (3, 2, 1, 1)
    >>> transpose(())
    ()
    """
    if not la:
        return ()
    return tuple(sum(1 for x in la if x >= c) for c in range(1, la[0] + 1))


def cells(la):
    """All (row, col) cells, 1-based, row-major."""
    return [(r, c) for r, row in enumerate(la, 1) for c in range(1, row + 1)]


def contains(la, mu):
    """True iff the diagram of la contains that of mu."""
    return len(mu) <= len(la) and all(la[i] >= mu[i] for i in range(len(mu)))


def partitions_of(n, max_part=None):
    """All partitions of n, largest part first, in reverse-lex order.

    >>> partitions_of(4)
    [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    """
    if max_part is None:
        max_part = n
    if n == 0:
        return [()]
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions_of(n - first, first):
            out.append((first,) + rest)
    return out


def beta_set(la, slots):
    """Strictly decreasing beta numbers la_i + (slots - i), i = 1..slots.

    >>> beta_set((2, 2), 2)
    (3, 2)
    >>> beta_set((2, 2), 4)
    (5, 4, 1, 0)
    """
    if slots < len(la):
        raise ValueError("not enough slots")
    padded = tuple(la) + (0,) * (slots - len(la))
    return tuple(padded[i] + (slots - 1 - i) for i in range(slots))


def from_beta(betas):
    """Partition recovered from a strictly decreasing beta sequence."""
    s = sorted(betas, reverse=True)
    m = len(s)
    la = [s[i] - (m - 1 - i) for i in range(m)]
    if any(x < 0 for x in la) or len(set(s)) != m:
        raise ValueError(f"invalid beta set: {betas}")
    return tuple(x for x in la if x > 0)


def _even_slots(la):
    m = len(la)
    return m if m % 2 == 0 else m + 1


def two_quotient(la, slots=None):
    """The 2-quotient as an ordered pair (odd-derived, even-derived).

    The result does not depend on the (even) slot count.

    >>> two_quotient((2,))
    ((1,), ())
    >>> two_quotient((1, 1))
    ((), (1,))
    >>> two_quotient((2, 2))
    ((1,), (1,))
    """
    if slots is None:
        slots = _even_slots(la)
    if slots % 2:
        raise ValueError("slot count must be even")
    betas = beta_set(la, slots)
    odd = sorted(((b - 1) // 2 for b in betas if b % 2), reverse=True)
    even = sorted((b // 2 for b in betas if b % 2 == 0), reverse=True)
    return from_beta(odd), from_beta(even)


def two_core(la):
    """The 2-core: what remains after removing all removable dominoes.

    >>> two_core((3, 1, 1))
    (1,)
    >>> two_core((2, 2))
    ()
    """
    slots = _even_slots(la)
    betas = beta_set(la, slots)
    n_odd = sum(1 for b in betas if b % 2)
    n_even = slots - n_odd
    core_betas = [2 * i + 1 for i in range(n_odd)] + [2 * i for i in range(n_even)]
    return from_beta(core_betas)


def has_empty_core(la):
    return two_core(la) == ()


def quotient_to_shape(q1, q2):
    """Inverse of :func:`two_quotient` on empty-core shapes.

    >>> quotient_to_shape((1,), ())
    (2,)
    >>> all(two_quotient(quotient_to_shape(*two_quotient(s))) == two_quotient(s)
    ...     for s in partitions_of(6) if has_empty_core(s))
    True
    """
    half = max(len(q1), len(q2), 1)
    b1 = beta_set(q1, half)
    b2 = beta_set(q2, half)
    betas = [2 * b + 1 for b in b1] + [2 * b for b in b2]
    return from_beta(betas)


def tileable_shapes(n):
    """Empty-2-core partitions of 2n (the shapes tiled by n dominoes)."""
    return [la for la in partitions_of(2 * n) if has_empty_core(la)]


def hooks(la):
    """Hook lengths by cell, as a dict {(r, c): h}."""
    tr = transpose(la)
    return {
        (r, c): (la[r - 1] - c) + (tr[c - 1] - r) + 1
        for r, c in cells(la)
    }


@lru_cache(maxsize=None)
def standard_count(la):
    """Number of standard Young tableaux, by the hook length formula.

    >>> standard_count((3, 2))
    5
    >>> standard_count(())
    1
    """
    num = factorial(size(la))
    for h in hooks(la).values():
        num //= h
    return num


@lru_cache(maxsize=None)
def domino_standard_count(la):
    """Number of standard domino tableaux of an empty-core shape.

    Dominoes split by the 2-quotient: C(n, |q1|) * f(q1) * f(q2).

    >>> domino_standard_count((2, 2))
    2
    >>> domino_standard_count((5, 4, 4, 2, 2, 1))
    378
    """
    if not has_empty_core(la):
        return 0
    q1, q2 = two_quotient(la)
    n = size(la) // 2
    return comb(n, size(q1)) * standard_count(q1) * standard_count(q2)
