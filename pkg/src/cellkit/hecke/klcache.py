"""
Kazhdan-Lusztig polynomials, mu, dual KL basis and left cells for S_n.

The table stores classical coefficients: ``table[w, x, k]`` is the
coefficient of q^k in P_{x,w}. Everything exposed publicly is converted to
the v-normalization ``p_{w,x}(v) = v^(l(w)-l(x)) P_{x,w}(v^-2)`` which lies in
vZ[v] for x < w.

Columns come from expanding KL(s) KL(sw), where s is the smallest left
descent of w:

    P_{x,w} = q^{1-c} P_{sx,v} + q^c P_{x,v}
              - sum_{z < v, sz < z} mu(z,v) q^{(l(w)-l(z))/2} P_{x,z},

with v = sw and c = 1 if sx < x else 0, for all x at once.
"""

from __future__ import annotations

import logging
from collections import deque

import numpy as np

from ..errors import CacheNotFilled, RankMismatch
from ..groupdata import GroupTables, group_tables
from ..laurent import ONE, ZERO, LaurentPoly
from ..permgroup import Permutation
from .algebra import HeckeElement, _raw

log = logging.getLogger(__name__)

NORMALIZATION = "soergel"


class KLCache:
    """
    KL data for one rank, with a fill phase and a read-only query phase.

    >>> cache = KLCache(3).fill()
    >>> str(cache.kl_polynomial(Permutation([1, 2, 3]), Permutation([3, 2, 1])))
    'v^3'
    """

    def __init__(self, n: int):
        self.n = n
        self.g: GroupTables = group_tables(n)
        self.table: np.ndarray | None = None
        # mu_down[w] = (x indices with x < w and mu != 0, mu values)
        self.mu_down: list[tuple[np.ndarray, np.ndarray]] | None = None
        self._mu_dict: dict[tuple[int, int], int] | None = None
        self._left_succ: list[list[int]] | None = None
        self._left_pred: list[list[int]] | None = None

    # -- fill phase -------------------------------------------------------

    @property
    def filled(self) -> bool:
        return self.table is not None

    def fill(self, preloaded: dict[int, np.ndarray] | None = None, on_column=None) -> KLCache:
        """
        Compute every column in length order.

        ``preloaded`` maps w indices to finished classical columns (shape
        (N, D)), which are taken as-is. ``on_column(w, column)`` is called for
        each column computed here.
        """
        if self.filled:
            return self
        preloaded = preloaded or {}
        g = self.g
        N, n = g.size, self.n
        D = self.degree_bound
        dtype = np.int8 if n >= 7 else np.int16
        table = np.zeros((N, N, D), dtype=dtype)
        table[0, 0, 0] = 1
        mu_down: list = [None] * N
        mu_down[0] = (np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64))
        length = g.length
        work = np.zeros((N, D + 1), dtype=np.int64)
        for w in g.by_length[1:]:
            w = int(w)
            lw = int(length[w])
            if w in preloaded:
                col = np.asarray(preloaded[w])
                if col.shape != (N, D):
                    raise ValueError(f"preloaded column {w} has shape {col.shape}")
                if col.max(initial=0) > np.iinfo(table.dtype).max or col.min(initial=0) < np.iinfo(table.dtype).min:
                    table = table.astype(np.int32)
                table[w] = col
                mu_down[w] = self._extract_mu(table[w], lw)
                continue
            s = next(i for i in range(n - 1) if length[g.lmul[i, w]] < lw)
            v = int(g.lmul[s, w])
            sx = g.lmul[s]
            c = length[sx] < length
            Pv = table[v].astype(np.int64)
            Psx = Pv[sx]
            work[:] = 0
            # sx < x: P_{sx,v} + q P_{x,v};  sx > x: q P_{sx,v} + P_{x,v}
            work[c, :D] += Psx[c]
            work[c, 1:] += Pv[c]
            nc = ~c
            work[nc, 1:] += Psx[nc]
            work[nc, :D] += Pv[nc]
            zs, mus = mu_down[v]
            for z, m in zip(zs.tolist(), mus.tolist()):
                if length[g.lmul[s, z]] < length[z]:
                    k = (lw - int(length[z])) // 2
                    keep = D + 1 - k
                    Pz = table[z]
                    if keep < D and Pz[:, keep:].any():
                        raise ArithmeticError("KL degree bound violated")
                    work[:, k:] -= m * Pz[:, :keep].astype(np.int64)
            if work[:, D].any():
                raise ArithmeticError("KL degree bound violated")
            col = work[:, :D]
            lo, hi = int(col.min()), int(col.max())
            info = np.iinfo(table.dtype)
            if lo < info.min or hi > info.max:
                log.info("widening KL table storage for n=%d", n)
                table = table.astype(np.int32)
            table[w] = col
            mu_down[w] = self._extract_mu(table[w], lw)
            if on_column is not None:
                on_column(w, table[w])
        self.table = table
        self.table.setflags(write=False)
        self.mu_down = mu_down
        return self

    def _extract_mu(self, col: np.ndarray, lw: int) -> tuple[np.ndarray, np.ndarray]:
        length = self.g.length
        diff = lw - length
        cand = np.nonzero((diff > 0) & (diff % 2 == 1))[0]
        k = (diff[cand] - 1) // 2
        ok = k < col.shape[1]
        cand, k = cand[ok], k[ok]
        vals = col[cand, k].astype(np.int64)
        nz = vals != 0
        return cand[nz], vals[nz]

    @property
    def degree_bound(self) -> int:
        return max(self.n * (self.n - 1) // 2 - 1, 0) // 2 + 1

    def load_table(self, table: np.ndarray):
        """Install a complete classical table (e.g. read from disk) and derive mu."""
        N = self.g.size
        if table.shape != (N, N, self.degree_bound):
            raise ValueError(f"table shape {table.shape} does not fit S_{self.n}")
        self.table = table
        self.table.setflags(write=False)
        self.mu_down = [self._extract_mu(table[w], int(self.g.length[w])) for w in range(N)]
        self._mu_dict = self._left_succ = self._left_pred = None

    def _require(self):
        if not self.filled:
            raise CacheNotFilled(f"KL cache for S_{self.n} has not been filled")

    def _idx(self, w: Permutation) -> int:
        if w.n != self.n:
            raise RankMismatch(f"{w} is not in S_{self.n}")
        return self.g.index[w.images]

    # -- polynomial queries ---------------------------------------------

    def classical(self, x: Permutation, w: Permutation) -> list[int]:
        """Coefficients of the classical P_{x,w}(q), lowest degree first."""
        self._require()
        row = self.table[self._idx(w), self._idx(x)].tolist()
        while row and row[-1] == 0:
            row.pop()
        return row

    def _soergel(self, wi: int, xi: int) -> LaurentPoly:
        row = self.table[wi, xi]
        d = int(self.g.length[wi] - self.g.length[xi])
        return LaurentPoly._raw({d - 2 * k: int(a) for k, a in enumerate(row.tolist()) if a})

    def kl_polynomial(self, x: Permutation, w: Permutation) -> LaurentPoly:
        """p_{w,x}: the coefficient of H_x in the KL basis element of w."""
        self._require()
        if x.n != w.n:
            raise RankMismatch("x and w live in different ranks")
        return self._soergel(self._idx(w), self._idx(x))

    def bruhat_leq(self, x: Permutation, w: Permutation) -> bool:
        self._require()
        return bool(self.table[self._idx(w), self._idx(x), 0])

    def mu_index(self, xi: int, wi: int) -> int:
        self._require()
        if self._mu_dict is None:
            d = {}
            for w, (xs, ms) in enumerate(self.mu_down):
                for x, m in zip(xs.tolist(), ms.tolist()):
                    d[(x, w)] = m
            self._mu_dict = d
        if xi == wi:
            return 0
        return self._mu_dict.get((xi, wi)) or self._mu_dict.get((wi, xi), 0)

    def mu(self, x: Permutation, w: Permutation) -> int:
        """Symmetrized mu; 0 for incomparable or equal elements."""
        if x.n != w.n:
            raise RankMismatch("x and w live in different ranks")
        return self.mu_index(self._idx(x), self._idx(w))

    # -- basis elements ---------------------------------------------------

    def kl_element(self, w: Permutation) -> HeckeElement:
        """The KL basis element of w expanded in the standard basis."""
        self._require()
        wi = self._idx(w)
        rows = np.nonzero(self.table[wi, :, 0])[0]
        perms = self.g.perms
        return _raw(self.n, {perms[x]: self._soergel(wi, int(x)) for x in rows.tolist()})

    def up_set(self, w: Permutation) -> list[int]:
        """Indices z >= w in Bruhat order, sorted by length."""
        self._require()
        wi = self._idx(w)
        mask = self.table[:, wi, 0] != 0
        return [int(z) for z in self.g.by_length if mask[z]]

    def dual_kl_element(self, w: Permutation, method: str = "triangular") -> HeckeElement:
        """
        Dual KL element of w in the standard basis.

        Its coefficients form the inverse transpose of the KL matrix, so it
        equals H_w plus terms H_x with x > w. ``method="triangular"`` solves
        the triangular system on the Bruhat up-set of w; ``method="longest"``
        uses the closed form (-1)^{l(x)-l(w)} p_{w w0, x w0}.
        """
        self._require()
        wi = self._idx(w)
        perms = self.g.perms
        if method == "longest":
            w0 = perms[-1]
            out = {}
            for z in self.up_set(w):
                sign = -1 if (self.g.length[z] - self.g.length[wi]) % 2 else 1
                c = self.kl_polynomial(perms[z] * w0, w * w0) * sign
                if c:
                    out[perms[z]] = c
            return _raw(self.n, out)
        if method != "triangular":
            raise ValueError(f"unknown method {method!r}")
        coeff: dict[int, LaurentPoly] = {wi: ONE}
        for z in self.up_set(w):
            if z == wi:
                continue
            col = self.table[z]
            acc = ZERO
            for x, c in coeff.items():
                if col[x, 0]:
                    acc = acc + c * self._soergel(z, x)
            if acc:
                coeff[z] = -acc
        return _raw(self.n, {perms[x]: c for x, c in coeff.items()})

    def express_in_dual_kl(self, a: HeckeElement) -> dict[Permutation, LaurentPoly]:
        """
        Coefficients c_z with a = sum_z c_z * dual(z).

        Dual-ness means c_z is the standard-coordinate dot product of a with
        the KL element of z: c_z = sum_x a_x p_{z,x}.
        """
        self._require()
        if a.n != self.n:
            raise RankMismatch(f"element of H(S_{a.n}) given to S_{self.n} cache")
        acc: dict[int, LaurentPoly] = {}
        for x, c in a.terms.items():
            xi = self._idx(x)
            for z in np.nonzero(self.table[:, xi, 0])[0].tolist():
                t = acc.get(z, ZERO) + c * self._soergel(z, xi)
                if t:
                    acc[z] = t
                else:
                    acc.pop(z, None)
        perms = self.g.perms
        return {perms[z]: c for z, c in acc.items()}

    def dual_combination(self, coeffs: dict[Permutation, LaurentPoly]) -> HeckeElement:
        out = _raw(self.n, {})
        for w, c in coeffs.items():
            out = out + self.dual_kl_element(w).scale(c)
        return out

    def kl_combination(self, coeffs: dict[Permutation, LaurentPoly]) -> HeckeElement:
        out = _raw(self.n, {})
        for w, c in coeffs.items():
            out = out + self.kl_element(w).scale(c)
        return out

    def express_in_kl(self, a: HeckeElement) -> dict[Permutation, LaurentPoly]:
        """Coefficients in the KL basis, peeling off the longest support element."""
        self._require()
        rest = a
        out: dict[Permutation, LaurentPoly] = {}
        while rest.terms:
            top = max(rest.terms, key=lambda w: (w.length(), w.images))
            c = rest.terms[top]
            out[top] = c
            rest = rest - self.kl_element(top).scale(c)
        return out

    # -- cells ------------------------------------------------------------

    def _left_graph(self):
        if self._left_succ is not None:
            return
        self._require()
        g = self.g
        N = g.size
        succ = [set() for _ in range(N)]
        desc = [g.left_descent_mask(i + 1) for i in range(self.n - 1)]
        for i in range(self.n - 1):
            for y in np.nonzero(~desc[i])[0].tolist():
                succ[y].add(int(g.lmul[i, y]))
        for y in range(N):
            xs, _ = self.mu_down[y]
            for x in xs.tolist():
                for i in range(self.n - 1):
                    if desc[i][x] and not desc[i][y]:
                        succ[y].add(x)
        self._left_succ = [sorted(s) for s in succ]
        pred = [[] for _ in range(N)]
        for y, ss in enumerate(self._left_succ):
            for x in ss:
                pred[x].append(y)
        self._left_pred = pred

    def left_geq_set(self, y: Permutation) -> set[int]:
        """Indices x with x >=_L y."""
        self._left_graph()
        return _reach(self._left_succ, self._idx(y))

    def left_leq_set(self, w: Permutation) -> set[int]:
        """Indices x with x <=_L w."""
        self._left_graph()
        return _reach(self._left_pred, self._idx(w))

    def left_leq(self, x: Permutation, w: Permutation) -> bool:
        return self._idx(x) in self.left_leq_set(w)

    def right_leq(self, x: Permutation, w: Permutation) -> bool:
        return self.left_leq(x.inverse(), w.inverse())

    def nonvanishing(self, w: Permutation) -> list[int]:
        """Indices x with x^-1 <=_L w, i.e. where dual(w) * KL(x) is nonzero."""
        inv = self.g.inverse
        return sorted(int(inv[x]) for x in self.left_leq_set(w))

    def left_cells(self) -> list[list[Permutation]]:
        """Strongly connected components of the left mu-graph."""
        import networkx as nx

        self._left_graph()
        G = nx.DiGraph()
        G.add_nodes_from(range(self.g.size))
        G.add_edges_from((y, x) for y, ss in enumerate(self._left_succ) for x in ss)
        perms = self.g.perms
        cells = [sorted(perms[i] for i in comp) for comp in nx.strongly_connected_components(G)]
        return sorted(cells, key=lambda c: c[0].images)

    def right_cells(self) -> list[list[Permutation]]:
        cells = [sorted(w.inverse() for w in c) for c in self.left_cells()]
        return sorted(cells, key=lambda c: c[0].images)

    def two_sided_graph(self):
        """Edges generating <=_J: left edges plus their inverse-conjugates."""
        import networkx as nx

        self._left_graph()
        inv = self.g.inverse
        G = nx.DiGraph()
        G.add_nodes_from(range(self.g.size))
        for y, ss in enumerate(self._left_succ):
            for x in ss:
                G.add_edge(y, x)
                G.add_edge(int(inv[y]), int(inv[x]))
        return G

    def two_sided_cells(self) -> list[list[Permutation]]:
        import networkx as nx

        perms = self.g.perms
        comps = nx.strongly_connected_components(self.two_sided_graph())
        cells = [sorted(perms[i] for i in comp) for comp in comps]
        return sorted(cells, key=lambda c: c[0].images)


def _reach(adj: list[list[int]], start: int) -> set[int]:
    seen = {start}
    todo = deque([start])
    while todo:
        y = todo.popleft()
        for x in adj[y]:
            if x not in seen:
                seen.add(x)
                todo.append(x)
    return seen


_CACHES: dict[int, KLCache] = {}


def get_cache(n: int) -> KLCache:
    """Process-wide filled cache for S_n."""
    if n not in _CACHES:
        _CACHES[n] = KLCache(n).fill()
    return _CACHES[n]


def install_cache(cache: KLCache):
    cache._require()
    _CACHES[cache.n] = cache


def a_function(w: Permutation) -> int:
    """Lusztig's a-value in type A: sum of binom(c, 2) over the column lengths of the RS shape."""
    from ..tableaux import rs

    P, _ = rs(w)
    return sum(c * (c - 1) // 2 for c in P.shape.conjugate().parts)
