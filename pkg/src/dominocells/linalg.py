"""Exact linear algebra over the rationals for module computations.

Vectors are tuples of Fractions (or ints); matrices are tuples of row
tuples.  Everything is immutable and exact.
"""

from fractions import Fraction


def vec(entries):
    return tuple(Fraction(x) for x in entries)


def mat(rows):
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def identity(d):
    return tuple(tuple(Fraction(int(i == j)) for j in range(d)) for i in range(d))


def mat_vec(m, v):
    return tuple(sum(row[j] * v[j] for j in range(len(v))) for row in m)


def mat_mul(a, b):
    cols = tuple(zip(*b))
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a
    )


def mat_add(a, b):
    return tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(a, b))


def mat_scale(c, a):
    c = Fraction(c)
    return tuple(tuple(c * x for x in row) for row in a)


def trace(a):
    return sum(a[i][i] for i in range(len(a)))


def rref(rows):
    """Reduced row echelon form; returns (rows, pivot column indices)."""
    m = [list(map(Fraction, r)) for r in rows]
    pivots = []
    r = 0
    width = len(m[0]) if m else 0
    for c in range(width):
        pivot = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    basis = tuple(tuple(row) for row in m[:r])
    return basis, tuple(pivots)


def row_basis(rows):
    return rref(rows)[0]


def rank(rows):
    return len(rref(rows)[0])


def solve_coords(basis, v):
    """Coefficients of v in an independent row basis, or None if outside."""
    if not basis:
        return None if any(v) else ()
    width = len(basis[0])
    aug = [list(row) + [Fraction(0)] * len(basis) for row in basis]
    for i in range(len(basis)):
        aug[i][width + i] = Fraction(1)
    reduced, pivots = rref(aug)
    coords = [Fraction(0)] * len(basis)
    residue = list(map(Fraction, v))
    for row, p in zip(reduced, pivots):
        if p >= width:
            raise ValueError("basis rows are dependent")
        f = residue[p]
        if f:
            for j in range(width):
                residue[j] -= f * row[j]
            for k in range(len(basis)):
                coords[k] += f * row[width + k]
    if any(residue):
        return None
    return tuple(coords)


def closure_under(mats, vectors):
    """Row basis of the smallest subspace containing ``vectors`` and stable
    under every matrix in ``mats`` (acting on column vectors)."""
    basis = row_basis(vectors)
    frontier = list(basis)
    while frontier:
        new = []
        for m in mats:
            for v in frontier:
                new.append(mat_vec(m, v))
        bigger = row_basis(basis + tuple(new))
        if len(bigger) == len(basis):
            break
        frontier = [v for v in bigger if solve_coords(basis, v) is None]
        basis = bigger
    return basis


def restricted_matrix(basis, m):
    """Matrix of v -> m v on span(basis), in that basis.  Raises if the span
    is not invariant."""
    cols = []
    for b in basis:
        coords = solve_coords(basis, mat_vec(m, b))
        if coords is None:
            raise ValueError("subspace is not invariant")
        cols.append(coords)
    return tuple(tuple(cols[j][i] for j in range(len(basis))) for i in range(len(basis)))
