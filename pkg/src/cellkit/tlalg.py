"""
Temperley-Lieb diagrams and the diagrammatic positivity test for fully
commutative permutations.

Points are numbered 1..n in each row. A diagram is stored as a partner
array over 2n slots: slot i-1 is top point i, slot n+i-1 is bottom point i.
In a product ``a * b`` the diagram of ``a`` sits below the diagram of ``b``,
so the top row of the result is the top of ``b`` and the bottom row is the
bottom of ``a``.

>>> d = tl_from_fc(Permutation([2, 1, 4, 3]))
>>> d.cups, d.caps, d.through
(((1, 2), (3, 4)), ((1, 2), (3, 4)), 0)
>>> has_non_nested_adjacent_cups(d)
True
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .errors import NotFullyCommutative, RankMismatch, RouteDisagreement
from .laurent import QUANTUM_2, ZERO, LaurentPoly
from .permgroup import Permutation, distant, is_fully_commutative, special_involution_factors
from .tableaux import StandardTableau, duflo_of_left_cell, rs


@dataclass(frozen=True)
class TLDiagram:
    n: int
    partner: tuple[int, ...]

    def __post_init__(self):
        p = self.partner
        if len(p) != 2 * self.n or any(p[p[k]] != k or p[k] == k for k in range(len(p))):
            raise ValueError("partner array is not a perfect matching")
        arcs = [(k, p[k]) for k in range(len(p)) if k < p[k]]
        # non-crossing: walk the boundary circle top 1..n then bottom n..1
        pos = {k: k if k < self.n else 3 * self.n - 1 - k for k in range(2 * self.n)}
        for a, b in arcs:
            lo, hi = sorted((pos[a], pos[b]))
            for c, d in arcs:
                x, y = sorted((pos[c], pos[d]))
                if lo < x < hi < y:
                    raise ValueError("arcs cross")

    @classmethod
    def from_arcs(cls, n: int, cups, caps) -> TLDiagram:
        """Build from cup and cap endpoint pairs; remaining points propagate in order."""
        partner = [-1] * (2 * n)
        for a, b in cups:
            partner[a - 1], partner[b - 1] = b - 1, a - 1
        for a, b in caps:
            partner[n + a - 1], partner[n + b - 1] = n + b - 1, n + a - 1
        top = [i for i in range(n) if partner[i] < 0]
        bot = [n + i for i in range(n) if partner[n + i] < 0]
        if len(top) != len(bot):
            raise ValueError("cups and caps leave unequal numbers of free points")
        for t, b in zip(top, bot):
            partner[t], partner[b] = b, t
        return cls(n, tuple(partner))

    @classmethod
    def identity(cls, n: int) -> TLDiagram:
        return cls.from_arcs(n, (), ())

    @property
    def cups(self) -> tuple[tuple[int, int], ...]:
        n, p = self.n, self.partner
        return tuple((i + 1, p[i] + 1) for i in range(n) if i < p[i] < n)

    @property
    def caps(self) -> tuple[tuple[int, int], ...]:
        n, p = self.n, self.partner
        return tuple((i + 1, p[n + i] - n + 1) for i in range(n) if n + i < p[n + i])

    @property
    def through(self) -> int:
        return self.n - 2 * len(self.cups)

    def to_json(self) -> dict:
        return {"cups": [list(a) for a in self.cups], "caps": [list(a) for a in self.caps],
                "through": self.through}

    def render(self) -> str:
        return render(self)

    def __mul__(self, other: TLDiagram) -> TLDiagram:
        return tl_multiply(self, other)[0]


def _matching_from_tableau(t: StandardTableau, n: int) -> list[tuple[int, int]]:
    second = set(t.rows[1]) if len(t.rows) > 1 else set()
    open_points: list[int] = []
    arcs = []
    for j in range(1, n + 1):
        if j in second:
            arcs.append((open_points.pop(), j))
        else:
            open_points.append(j)
    return sorted(arcs)


def tl_from_fc(w: Permutation) -> TLDiagram:
    """Diagram of a fully commutative w: cups read from Q_w, caps from P_w."""
    if not is_fully_commutative(w):
        raise NotFullyCommutative(f"{w} contains the pattern 321")
    P, Q = rs(w)
    return TLDiagram.from_arcs(w.n, _matching_from_tableau(Q, w.n), _matching_from_tableau(P, w.n))


def fc_from_tl(d: TLDiagram) -> Permutation:
    """Inverse of ``tl_from_fc``."""
    from .tableaux import rs_inverse

    def tableau(arcs):
        right = {b for _, b in arcs}
        rows = [tuple(j for j in range(1, d.n + 1) if j not in right), tuple(sorted(right))]
        return StandardTableau(rows)

    return rs_inverse(tableau(d.caps), tableau(d.cups))


class _DSU:
    def __init__(self, size: int):
        self.parent = list(range(size))

    def find(self, a: int) -> int:
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a: int, b: int):
        self.parent[self.find(a)] = self.find(b)


def tl_multiply(a: TLDiagram, b: TLDiagram) -> tuple[TLDiagram, int]:
    """Stack a below b; return the straightened diagram and the number of closed loops."""
    if a.n != b.n:
        raise RankMismatch(f"TL_{a.n} vs TL_{b.n}")
    n = a.n
    # slots 0..2n-1 are a, 2n..4n-1 are b
    dsu = _DSU(4 * n)
    for k in range(2 * n):
        dsu.union(k, a.partner[k])
        dsu.union(2 * n + k, 2 * n + b.partner[k])
    for i in range(n):
        dsu.union(i, 2 * n + n + i)     # top of a meets bottom of b
    outer = [2 * n + i for i in range(n)] + [n + i for i in range(n)]
    by_root: dict[int, list[int]] = {}
    for new_slot, old in enumerate(outer):
        by_root.setdefault(dsu.find(old), []).append(new_slot)
    partner = [0] * (2 * n)
    for ends in by_root.values():
        x, y = ends
        partner[x], partner[y] = y, x
    middle_roots = {dsu.find(i) for i in range(n)} | {dsu.find(2 * n + n + i) for i in range(n)}
    loops = len(middle_roots - set(by_root))
    return TLDiagram(n, tuple(partner)), loops


class TLElement:
    """Finite Z[v, v^-1]-combination of diagrams."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[TLDiagram, LaurentPoly] = ()):
        self.n = n
        self.terms = {d: c for d, c in dict(terms).items() if c}

    def __eq__(self, other) -> bool:
        return isinstance(other, TLElement) and self.n == other.n and self.terms == other.terms

    def __add__(self, other: TLElement) -> TLElement:
        out = dict(self.terms)
        for d, c in other.terms.items():
            out[d] = out.get(d, ZERO) + c
        return TLElement(self.n, out)

    def __mul__(self, other: TLElement) -> TLElement:
        out: dict[TLDiagram, LaurentPoly] = {}
        for da, ca in self.terms.items():
            for db, cb in other.terms.items():
                d, loops = tl_multiply(da, db)
                out[d] = out.get(d, ZERO) + ca * cb * QUANTUM_2 ** loops
        return TLElement(self.n, out)

    def __repr__(self) -> str:
        return " + ".join(f"({c})*{d.to_json()}" for d, c in self.terms.items()) or "0"


def hecke_to_tl(a, cache) -> TLElement:
    """Quotient map: KL(w) goes to its diagram for fully commutative w, else to 0."""
    out: dict[TLDiagram, LaurentPoly] = {}
    for w, c in cache.express_in_kl(a).items():
        if is_fully_commutative(w):
            d = tl_from_fc(w)
            out[d] = out.get(d, ZERO) + c
    return TLElement(a.n, out)


def has_non_nested_adjacent_cups(d: TLDiagram) -> bool:
    """Some top point i closes a cup and point i+1 opens the next one."""
    p, n = d.partner, d.n
    return any(p[i] < i and i + 1 < p[i + 1] < n for i in range(n - 1))


def _factorization_positive(w: Permutation) -> bool:
    factors = special_involution_factors(w)
    if factors is None:
        return False
    return all(distant(a, b) for k, a in enumerate(factors) for b in factors[k + 1:])


def fc_kostant_positive(w: Permutation) -> bool:
    """
    Positivity of a fully commutative w, decided on its Duflo involution.

    The cup criterion and the distant special-involution factorization are
    both evaluated; a disagreement raises RouteDisagreement.
    """
    if not is_fully_commutative(w):
        raise NotFullyCommutative(f"{w} contains the pattern 321")
    d = duflo_of_left_cell(w)
    by_cups = not has_non_nested_adjacent_cups(tl_from_fc(d))
    by_factors = _factorization_positive(d)
    if by_cups != by_factors:
        raise RouteDisagreement(f"cup criterion and factorization disagree on {d}")
    return by_cups


def _levels(arcs: list[tuple[int, int]]) -> dict[tuple[int, int], int]:
    level = {}
    for a, b in sorted(arcs, key=lambda t: t[1] - t[0]):
        inner = [level[c] for c in level if a < c[0] and c[1] < b]
        level[(a, b)] = 1 + max(inner, default=-1)
    return level


def render(d: TLDiagram) -> str:
    """
    ASCII picture: top points, cup levels, cap levels, bottom points.

    Points sit in even columns. An arc is drawn as ``[___]`` on the line of
    its nesting level (innermost next to its row); ``|`` marks strands that
    pass a line. Propagating strands keep their left-to-right order.
    """
    n = d.n
    width = 2 * n - 1 if n else 0
    cups, caps = list(d.cups), list(d.caps)
    top_free = [i for i in range(1, n + 1) if all(i not in a for a in cups)]
    bot_free = [i for i in range(1, n + 1) if all(i not in a for a in caps)]

    def block(arcs, free):
        levels = _levels(arcs)
        depth = 1 + max(levels.values(), default=-1)
        lines = []
        for lv in range(depth):
            row = [" "] * width
            for c in free:
                row[2 * c - 2] = "|"
            for (a, b), l in levels.items():
                if l > lv:
                    row[2 * a - 2] = row[2 * b - 2] = "|"
                elif l == lv:
                    row[2 * a - 2], row[2 * b - 2] = "[", "]"
                    for k in range(2 * a - 1, 2 * b - 2):
                        if row[k] == " ":
                            row[k] = "_"
            lines.append("".join(row).rstrip())
        return lines

    points = " ".join("o" for _ in range(n))
    upper = block(cups, top_free)
    lower = block(caps, bot_free)[::-1]
    middle = []
    if top_free and not upper and not lower:
        middle = ["".join("|" if k % 2 == 0 else " " for k in range(width))]
    return "\n".join([points, *upper, *middle, *lower, points])
