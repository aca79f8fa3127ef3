"""
Products dual(w) * KL(x) in dual-KL coordinates, and the Kh witness search.

Right multiplication by the KL generator of s acts on dual coordinates by

    dual(u) * KL(s) = 0                                            if us > u
    dual(u) * KL(s) = (v+v^-1) dual(u) + dual(us)
                      + sum_{y > u, ys > y} mu(u, y) dual(y)       if us < u

and KL(x) = KL(xs) KL(s) - sum_{z < xs, zs < z} mu(z, xs) KL(z) for a right
descent s of x. Starting from the unit vector at w this yields dual(w) KL(x)
for every x in length order.

The witness search runs that recursion on whole vectors evaluated modulo a
prime at two fixed points (or exactly at v = 1), buckets the vectors by
digest and confirms every candidate pair with the exact Laurent recursion.
Different digests certify different products, so a negative answer needs no
exact work.
"""

from __future__ import annotations

import enum
import hashlib
from collections import defaultdict
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from ..errors import BudgetExceeded, NotInvolution, RankMismatch, RouteDisagreement
from ..laurent import QUANTUM_2, ZERO, LaurentPoly
from ..permgroup import Permutation
from .klcache import KLCache

PRIME = 2**31 - 1
EVAL_POINTS = (48271, 16807)
_INT_LIMIT = 2**60


class KhMode(enum.Enum):
    AT_V = "kh5"      # condition (V): equality as Laurent vectors
    AT_ONE = "kh4"    # condition (IV): equality after v = 1


@dataclass
class _Action:
    """Per-cache data for the right action on dual coordinates."""
    bt: list            # per s: sparse transpose of the integer part
    diag: list          # per s: mask of u with us < u
    mu_up: list         # per u: list of (y, mu) with y > u
    first_desc: np.ndarray  # smallest right descent of each x (-1 for e)


_ACTIONS: dict[int, _Action] = {}


def _action(cache: KLCache) -> _Action:
    key = id(cache)
    if key in _ACTIONS:
        return _ACTIONS[key]
    cache._require()
    g = cache.g
    N, n = g.size, cache.n
    mu_up: list[list[tuple[int, int]]] = [[] for _ in range(N)]
    for y in range(N):
        xs, ms = cache.mu_down[y]
        for u, m in zip(xs.tolist(), ms.tolist()):
            mu_up[u].append((y, m))
    bt, diag = [], []
    for i in range(n - 1):
        desc = g.length[g.rmul[i]] < g.length
        rows, cols, vals = [], [], []
        for u in np.nonzero(desc)[0].tolist():
            rows.append(u)
            cols.append(int(g.rmul[i, u]))
            vals.append(1)
            for y, m in mu_up[u]:
                if not desc[y]:
                    rows.append(u)
                    cols.append(y)
                    vals.append(m)
        B = sp.coo_matrix((vals, (rows, cols)), shape=(N, N), dtype=np.int64)
        bt.append(B.T.tocsr())
        diag.append(desc)
    first = np.full(N, -1, dtype=np.int64)
    for i in range(n - 2, -1, -1):
        first[diag[i]] = i
    act = _Action(bt, diag, mu_up, first)
    _ACTIONS[key] = act
    return act


class DualProducts:
    """Exact dual(w) * KL(x) in dual coordinates, memoized per x."""

    def __init__(self, w: Permutation, cache: KLCache):
        if w.n != cache.n:
            raise RankMismatch(f"{w} is not in S_{cache.n}")
        self.cache = cache
        self.g = cache.g
        self.w = cache._idx(w)
        self.act = _action(cache)
        self.support = set(int(x) for x in cache.nonvanishing(w))
        self._memo: dict[int, dict[int, LaurentPoly]] = {0: {self.w: LaurentPoly.const(1)}}

    def _right(self, vec: dict[int, LaurentPoly], i: int) -> dict[int, LaurentPoly]:
        g, act = self.g, self.act
        desc = act.diag[i]
        out: dict[int, LaurentPoly] = {}
        for u, c in vec.items():
            if not desc[u]:
                continue
            _acc(out, u, c * QUANTUM_2)
            _acc(out, int(g.rmul[i, u]), c)
            for y, m in act.mu_up[u]:
                if not desc[y]:
                    _acc(out, y, c * m)
        return out

    def coords_index(self, x: int) -> dict[int, LaurentPoly]:
        if x in self._memo:
            return self._memo[x]
        if x not in self.support:
            return {}
        i = int(self.act.first_desc[x])
        xs = int(self.g.rmul[i, x])
        out = self._right(self.coords_index(xs), i)
        xs_desc = self.act.diag[i]
        zs, ms = self.cache.mu_down[xs]
        for z, m in zip(zs.tolist(), ms.tolist()):
            if xs_desc[z]:
                for u, c in self.coords_index(z).items():
                    _acc(out, u, c * (-m))
        self._memo[x] = out
        return out

    def coords(self, x: Permutation) -> dict[Permutation, LaurentPoly]:
        perms = self.g.perms
        return {perms[u]: c for u, c in self.coords_index(self.cache._idx(x)).items()}


def _acc(out: dict, k: int, c: LaurentPoly):
    s = out.get(k, ZERO) + c
    if s:
        out[k] = s
    else:
        out.pop(k, None)


def dual_product(w: Permutation, x: Permutation, cache: KLCache) -> dict[Permutation, LaurentPoly]:
    """Coefficients of dual(w) * KL(x) in the dual KL basis."""
    return DualProducts(w, cache).coords(x)


@dataclass
class KhReport:
    w: Permutation
    mode: KhMode
    witness: tuple[Permutation, Permutation] | None
    nonvanishing: int
    buckets: int
    candidate_pairs: int
    rejected_pairs: int = 0
    notes: list[str] = field(default_factory=list)


def _evaluate_all(w: int, cache: KLCache, xs_order: list[int], mode: KhMode) -> np.ndarray:
    """Rows k hold dual(w) * KL(xs_order[k]) evaluated at the chosen points."""
    g, act = cache.g, _action(cache)
    N = g.size
    pos = np.full(N, -1, dtype=np.int64)
    pos[xs_order] = np.arange(len(xs_order))
    if mode is KhMode.AT_V:
        coef = np.array([(t + pow(t, -1, PRIME)) % PRIME for t in EVAL_POINTS], dtype=np.int64)
        mod = PRIME
    else:
        coef = np.array([2], dtype=np.int64)
        mod = None
    width = len(coef)
    X = np.zeros((len(xs_order), N, width), dtype=np.int64)
    for k, x in enumerate(xs_order):
        if x == 0:
            X[k, w, :] = 1
            continue
        i = int(act.first_desc[x])
        xs = int(g.rmul[i, x])
        if pos[xs] < 0:
            base = None
        else:
            base = X[pos[xs]]
            new = act.bt[i] @ base
            new += act.diag[i][:, None] * (base * coef[None, :] if mod is None else (base * coef[None, :]) % mod)
        zs, ms = cache.mu_down[xs]
        if len(zs):
            keep = act.diag[i][zs] & (pos[zs] >= 0)
            zs, ms = zs[keep], ms[keep]
        if base is None:
            new = np.zeros((N, width), dtype=np.int64)
        if len(zs):
            new -= np.tensordot(ms, X[pos[zs]], axes=(0, 0))
        if mod is not None:
            new %= mod
        elif np.abs(new).max(initial=0) > _INT_LIMIT:
            raise BudgetExceeded("integer growth in the v = 1 evaluation")
        X[k] = new
    return X


def kh_search(w: Permutation, cache: KLCache, mode: KhMode = KhMode.AT_V, paranoid: bool = False) -> KhReport:
    """Full witness search with bookkeeping; see ``kh_witness``."""
    if w.n != cache.n:
        raise RankMismatch(f"{w} is not in S_{cache.n}")
    if not w.is_involution():
        raise NotInvolution(f"{w} is not an involution")
    cache._require()
    g = cache.g
    wi = cache._idx(w)
    support = set(cache.nonvanishing(w))
    if paranoid:
        order = [int(x) for x in g.by_length]
    else:
        order = [int(x) for x in g.by_length if int(x) in support]
    X = _evaluate_all(wi, cache, order, mode)
    buckets: dict[bytes, list[int]] = defaultdict(list)
    notes = []
    for k, x in enumerate(order):
        nonzero = bool(X[k].any())
        if nonzero != (x in support):
            if nonzero or mode is KhMode.AT_ONE:
                raise RouteDisagreement(
                    f"product dual({w}) KL({g.perms[x]}) nonzero={nonzero} contradicts the left order")
            # a nonzero Laurent vector vanishing at both points: settle it exactly
            exact = DualProducts(w, cache).coords_index(x)
            if exact:
                notes.append(f"evaluation vanished for x={g.perms[x]}")
            else:
                raise RouteDisagreement(f"dual({w}) KL({g.perms[x]}) vanishes but x^-1 <=_L w")
        if x in support:
            buckets[hashlib.blake2b(X[k].tobytes(), digest_size=16).digest()].append(x)
    del X
    pairs = sorted(
        (a, b) for members in buckets.values() if len(members) > 1
        for ai, a in enumerate(sorted(members)) for b in sorted(members)[ai + 1:]
    )
    report = KhReport(w, mode, None, len(support), len(buckets), len(pairs), notes=notes)
    if not pairs:
        return report
    if mode is KhMode.AT_ONE:
        # integer evaluation at v = 1 is exact
        a, b = pairs[0]
        report.witness = (g.perms[a], g.perms[b])
        return report
    exact = DualProducts(w, cache)
    for a, b in pairs:
        if exact.coords_index(a) == exact.coords_index(b):
            report.witness = (g.perms[a], g.perms[b])
            return report
        report.rejected_pairs += 1
    return report


def kh_witness(w: Permutation, cache: KLCache, mode: KhMode = KhMode.AT_V,
               paranoid: bool = False) -> tuple[Permutation, Permutation] | None:
    """
    Smallest pair x < y (lexicographic id) with dual(w) KL(x) = dual(w) KL(y) nonzero.

    Mode AT_V compares Laurent vectors, mode AT_ONE compares their values at
    v = 1. Returns None when all nonzero products are pairwise different.
    """
    return kh_search(w, cache, mode, paranoid).witness
