"""Kazhdan-Lusztig polynomials, mu-graph cells and cell modules for W(D_n).

Bruhat order is computed by the lifting property; the polynomials by the
classical descent recursion (the result is independent of the descent chosen,
which the tests exercise).  Left cells are the strongly connected components
of the graph with an edge w -> z when z, w are mu-connected and some left
descent of z is not one of w.  The cell module is the based quotient at q=1:

    s . C_w  =  C_w                                       if sw < w
    s . C_w  =  -C_w + C_{sw} + sum_z mu(z, w) C_z        if sw > w

with C_{sw} and the z (z < w, sz < z) kept only when they lie in the cell.
"""

import os
import pickle

from . import weyl
from .polynomials import ONE, padd, pcoeff, pdeg, pscale, pshift, psub, ptrim

_CACHE_VERSION = 1


class KLContext:
    """All KL data of one rank; heavy parts computed once (or unpickled)."""

    def __init__(self, n, cache_dir=None, descent_choice=min):
        self.n = n
        self.roots = weyl.simple_roots(n)
        self._pick = descent_choice
        if cache_dir:
            path = os.path.join(cache_dir, f"kl_d{n}_v{_CACHE_VERSION}.pkl")
            if os.path.exists(path):
                with open(path, "rb") as fh:
                    data = pickle.load(fh)
                self._load(data)
                return
        self._compute()
        if cache_dir:
            os.makedirs(cache_dir, exist_ok=True)
            tmp = path + ".tmp"
            with open(tmp, "wb") as fh:
                pickle.dump(self._dump(), fh, protocol=pickle.HIGHEST_PROTOCOL)
            os.replace(tmp, path)

    def _dump(self):
        return {
            "elements": self.elements,
            "masks": self.masks,
            "kl": self.kl,
            "mu": self.mu,
        }

    def _load(self, data):
        self.elements = data["elements"]
        self.masks = data["masks"]
        self.kl = data["kl"]
        self.mu = data["mu"]
        self._finish_init()

    def _finish_init(self):
        self.index = {w: i for i, w in enumerate(self.elements)}
        self.lengths = [weyl.length(w) for w in self.elements]
        self._left_cells = None
        self._right_cells = None

    # -- construction --------------------------------------------------------

    def _compute(self):
        n = self.n
        self.elements = sorted(weyl.enumerate_group(n), key=lambda w: (weyl.length(w), w))
        self._finish_init()
        idx = self.index
        N = len(self.elements)
        right = {
            s: [idx[weyl.apply_right(w, s)] for w in self.elements]
            for s in self.roots
        }
        self._right_idx = right
        descents = [weyl.right_descents(w) for w in self.elements]

        # Bruhat masks by the lifting property: down(w) = down(ws) closed under s
        masks = [0] * N
        masks[0] = 1
        for iw in range(1, N):
            s = self._pick(descents[iw])
            iv = right[s][iw]
            m = masks[iv]
            extra = 0
            mm = m
            while mm:
                low = mm & -mm
                extra |= 1 << right[s][low.bit_length() - 1]
                mm ^= low
            masks[iw] = m | extra | (1 << iw)
        self.masks = masks

        # KL polynomials, sparse: only entries differing from 1 are stored
        kl = {}
        mu = {}
        lengths = self.lengths

        def getp(iy, iw):
            if not (masks[iw] >> iy) & 1:
                return ()
            return kl.get((iy, iw), ONE)

        for iw in range(1, N):
            s = self._pick(descents[iw])
            iv = right[s][iw]
            lw = lengths[iw]
            zs = [
                (iz, m)
                for (iz, ivv), m in mu.items()
                if ivv == iv and (lengths[right[s][iz]] < lengths[iz])
            ]
            m = masks[iw]
            mm = m
            while mm:
                low = mm & -mm
                iy = low.bit_length() - 1
                mm ^= low
                if iy == iw:
                    continue
                iys = right[s][iy]
                c = 1 if lengths[iys] < lengths[iy] else 0
                p = padd(pshift(getp(iys, iv), 1 - c), pshift(getp(iy, iv), c))
                for iz, muz in zs:
                    if (masks[iz] >> iy) & 1:
                        pz = getp(iy, iz)
                        if pz:
                            p = psub(p, pshift(pscale(pz, muz), (lw - lengths[iz]) // 2))
                p = ptrim(p)
                gap = lw - lengths[iy]
                if pdeg(p) * 2 > gap - 1:
                    raise AssertionError(
                        f"degree bound violated at {self.elements[iy]} <= {self.elements[iw]}: {p}"
                    )
                if p != ONE:
                    kl[(iy, iw)] = p
                if gap % 2 == 1:
                    m_coeff = pcoeff(p, (gap - 1) // 2)
                    if m_coeff:
                        mu[(iy, iw)] = m_coeff
        self.kl = kl
        self.mu = mu

    # -- queries --------------------------------------------------------------

    def bruhat_leq(self, y, w):
        return (self.masks[self.index[w]] >> self.index[y]) & 1 == 1

    def kl_polynomial(self, y, w):
        """Coefficient tuple of P(y, w), ascending in q."""
        iy, iw = self.index[y], self.index[w]
        if not (self.masks[iw] >> iy) & 1:
            return ()
        return self.kl.get((iy, iw), ONE)

    def mu_value(self, y, w):
        """mu(y, w) for y < w (0 unless the top-degree bound is attained)."""
        return self.mu.get((self.index[y], self.index[w]), 0)

    def mu_connected(self, a, b):
        ia, ib = self.index[a], self.index[b]
        return (ia, ib) in self.mu or (ib, ia) in self.mu

    # -- cells ----------------------------------------------------------------

    def _scc(self, succ):
        """Iterative Tarjan; succ: list of successor index lists."""
        N = len(self.elements)
        index_of = [-1] * N
        low = [0] * N
        on_stack = [False] * N
        stack = []
        comps = []
        counter = [0]
        for root in range(N):
            if index_of[root] != -1:
                continue
            work = [(root, 0)]
            while work:
                v, pi = work[-1]
                if pi == 0:
                    index_of[v] = low[v] = counter[0]
                    counter[0] += 1
                    stack.append(v)
                    on_stack[v] = True
                recurse = False
                for i in range(pi, len(succ[v])):
                    u = succ[v][i]
                    if index_of[u] == -1:
                        work[-1] = (v, i + 1)
                        work.append((u, 0))
                        recurse = True
                        break
                    if on_stack[u]:
                        low[v] = min(low[v], index_of[u])
                if recurse:
                    continue
                work.pop()
                if work:
                    low[work[-1][0]] = min(low[work[-1][0]], low[v])
                if low[v] == index_of[v]:
                    comp = []
                    while True:
                        u = stack.pop()
                        on_stack[u] = False
                        comp.append(u)
                        if u == v:
                            break
                    comps.append(comp)
        return comps

    def _mu_edges(self, tau):
        """Successor lists: w -> z iff mu-connected and tau(z) not within tau(w)."""
        N = len(self.elements)
        succ = [[] for _ in range(N)]
        for (iy, iw) in self.mu:
            ty, tw = tau[iy], tau[iw]
            if not ty <= tw:
                succ[iw].append(iy)
            if not tw <= ty:
                succ[iy].append(iw)
        return succ

    def left_cells(self):
        if self._left_cells is None:
            tau = [weyl.left_descents(w) for w in self.elements]
            comps = self._scc(self._mu_edges(tau))
            self._left_cells = sorted(
                (frozenset(self.elements[i] for i in comp) for comp in comps),
                key=min,
            )
        return self._left_cells

    def right_cells(self):
        if self._right_cells is None:
            tau = [weyl.right_descents(w) for w in self.elements]
            comps = self._scc(self._mu_edges(tau))
            self._right_cells = sorted(
                (frozenset(self.elements[i] for i in comp) for comp in comps),
                key=min,
            )
        return self._right_cells

    def left_cell_of(self, w):
        for c in self.left_cells():
            if w in c:
                return c
        raise KeyError(w)

    def right_cell_of(self, w):
        for c in self.right_cells():
            if w in c:
                return c
        raise KeyError(w)

    # -- cell modules at q = 1 -------------------------------------------------

    def cell_module(self, cell):
        """dict root -> matrix (tuple of row tuples) on basis sorted(cell)."""
        basis = sorted(cell)
        pos = {w: i for i, w in enumerate(basis)}
        k = len(basis)
        out = {}
        for s in self.roots:
            cols = []
            for w in basis:
                sw = weyl.apply_left(s, w)
                col = [0] * k
                if weyl.length(sw) < weyl.length(w):
                    col[pos[w]] = 1
                else:
                    col[pos[w]] = -1
                    if sw in pos:
                        col[pos[sw]] += 1
                    iw = self.index[w]
                    for z in basis:
                        iz = self.index[z]
                        if (iz, iw) in self.mu:
                            szz = weyl.apply_left(s, z)
                            if weyl.length(szz) < weyl.length(z):
                                col[pos[z]] += self.mu[(iz, iw)]
                cols.append(col)
            out[s] = tuple(tuple(cols[j][i] for j in range(k)) for i in range(k))
        return out

    def element_matrix(self, mats, w):
        """Matrix of w acting on a cell module, from its generator matrices."""
        word = []
        v = w
        while v != weyl.identity(self.n):
            s = min(weyl.right_descents(v))
            word.append(s)
            v = weyl.apply_right(v, s)
        word.reverse()
        k = len(next(iter(mats.values()))) if mats else 0
        prod = tuple(tuple(1 if i == j else 0 for j in range(k)) for i in range(k))
        for s in word:
            prod = _matmul(prod, mats[s])
        return prod

    def cell_character(self, cell, class_reps):
        """Character values of the cell module on the given representatives."""
        mats = self.cell_module(cell)
        return tuple(_trace(self.element_matrix(mats, w)) for w in class_reps)

    def duflo_involution(self, cell):
        """The unique involution z in the cell minimizing len(z) - 2 deg P(e, z)."""
        e = weyl.identity(self.n)
        best = None
        for z in cell:
            if weyl.inverse(z) != z:
                continue
            score = weyl.length(z) - 2 * pdeg(self.kl_polynomial(e, z))
            if best is None or score < best[0]:
                best = (score, z, 1)
            elif score == best[0]:
                best = (score, best[1], best[2] + 1)
        if best is None or best[2] != 1:
            raise ValueError("cell lacks a unique distinguished involution")
        return best[1]


def _matmul(a, b):
    k = len(a)
    bt = tuple(zip(*b))
    return tuple(
        tuple(sum(x * y for x, y in zip(row, colv)) for colv in bt) for row in a
    )


def _trace(a):
    return sum(a[i][i] for i in range(len(a)))


def cell_intersection(left_cell, right_cell):
    """Elements lying in both a left cell and a right cell."""
    return frozenset(left_cell) & frozenset(right_cell)
