"""
Robinson-Schensted correspondence, standard Young tableaux and dominance.

Row insertion is used throughout. In type A the KL cells are read off the
tableaux: x ~_L y iff Q_x == Q_y, x ~_R y iff P_x == P_y, and x ~_J y iff
the common shape agrees.

>>> P, Q = rs(Permutation([1, 4, 3, 2, 5]))
>>> P.rows
((1, 2, 5), (3,), (4,))
>>> P == Q
True
"""

from __future__ import annotations

import bisect
import enum
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

from .errors import OutOfRange, RankMismatch, ShapeMismatch, SizeMismatch
from .permgroup import Permutation


@dataclass(frozen=True, order=True)
class Partition:
    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts if p != 0)
        if any(p < 0 for p in parts) or any(a < b for a, b in zip(parts, parts[1:])):
            raise OutOfRange(f"{self.parts} is not a partition")
        object.__setattr__(self, "parts", parts)

    @property
    def size(self) -> int:
        return sum(self.parts)

    def conjugate(self) -> Partition:
        if not self.parts:
            return self
        return Partition(tuple(sum(1 for p in self.parts if p > i) for i in range(self.parts[0])))

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")"


def partitions(n: int) -> Iterator[Partition]:
    """All partitions of n, in reverse lexicographic order."""
    def rec(rest: int, cap: int) -> Iterator[tuple[int, ...]]:
        if rest == 0:
            yield ()
            return
        for first in range(min(rest, cap), 0, -1):
            for tail in rec(rest - first, first):
                yield (first, *tail)
    for parts in rec(n, n):
        yield Partition(parts)


def dominance_leq(lam: Partition, mu: Partition) -> bool:
    """lam <= mu in dominance order: every prefix sum of lam is at most mu's."""
    if lam.size != mu.size:
        raise SizeMismatch(f"{lam} and {mu} have different sizes")
    a = b = 0
    for i in range(max(len(lam.parts), len(mu.parts))):
        a += lam.parts[i] if i < len(lam.parts) else 0
        b += mu.parts[i] if i < len(mu.parts) else 0
        if a > b:
            return False
    return True


@dataclass(frozen=True)
class StandardTableau:
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(a) for a in r) for r in self.rows if len(r))
        object.__setattr__(self, "rows", rows)
        entries = sorted(a for r in rows for a in r)
        if entries != list(range(1, len(entries) + 1)):
            raise OutOfRange(f"{rows} does not contain 1..n exactly once")
        for r in rows:
            if any(a >= b for a, b in zip(r, r[1:])):
                raise OutOfRange(f"row {r} is not increasing")
        for upper, lower in zip(rows, rows[1:]):
            if len(lower) > len(upper) or any(lower[c] <= upper[c] for c in range(len(lower))):
                raise OutOfRange(f"{rows} is not a standard tableau")

    @property
    def shape(self) -> Partition:
        return Partition(tuple(len(r) for r in self.rows))

    @property
    def size(self) -> int:
        return sum(len(r) for r in self.rows)

    def row_of(self) -> dict[int, int]:
        return {a: i for i, r in enumerate(self.rows) for a in r}

    def to_json(self) -> dict:
        return {"rows": [list(r) for r in self.rows]}

    @classmethod
    def from_json(cls, data: dict) -> StandardTableau:
        return cls(tuple(tuple(r) for r in data["rows"]))

    def render(self) -> str:
        width = len(str(self.size)) if self.size else 1
        return "\n".join(" ".join(str(a).rjust(width) for a in r) for r in self.rows)


def rs(w: Permutation) -> tuple[StandardTableau, StandardTableau]:
    """Schensted row insertion of w(1), ..., w(n); returns (P, Q)."""
    P: list[list[int]] = []
    Q: list[list[int]] = []
    for step, a in enumerate(w.images, 1):
        r = 0
        while True:
            if r == len(P):
                P.append([a])
                Q.append([step])
                break
            row = P[r]
            k = bisect.bisect_right(row, a)
            if k == len(row):
                row.append(a)
                Q[r].append(step)
                break
            a, row[k] = row[k], a
            r += 1
    return _trusted_tableau(P), _trusted_tableau(Q)


def _trusted_tableau(rows: Sequence[Sequence[int]]) -> StandardTableau:
    t = object.__new__(StandardTableau)
    object.__setattr__(t, "rows", tuple(tuple(r) for r in rows))
    return t


def rs_inverse(P: StandardTableau, Q: StandardTableau) -> Permutation:
    """Reverse bumping in the order recorded by Q."""
    if P.shape != Q.shape:
        raise ShapeMismatch(f"shapes {P.shape} and {Q.shape} differ")
    n = P.size
    prow = [list(r) for r in P.rows]
    where = Q.row_of()
    out = [0] * n
    for k in range(n, 0, -1):
        r = where[k]
        x = prow[r].pop()
        for rr in range(r - 1, -1, -1):
            row = prow[rr]
            j = bisect.bisect_left(row, x) - 1
            x, row[j] = row[j], x
        out[k - 1] = x
        if not prow[r]:
            prow.pop()
    return Permutation(out)


def duflo_of_left_cell(w: Permutation) -> Permutation:
    """The unique involution with the same recording tableau as w."""
    _, Q = rs(w)
    return rs_inverse(Q, Q)


class Side(enum.Enum):
    LEFT = "left"
    RIGHT = "right"
    TWO_SIDED = "two-sided"


def same_cell(x: Permutation, y: Permutation, side: Side) -> bool:
    if x.n != y.n:
        raise RankMismatch(f"S_{x.n} vs S_{y.n}")
    Px, Qx = rs(x)
    Py, Qy = rs(y)
    if side is Side.LEFT:
        return Qx == Qy
    if side is Side.RIGHT:
        return Px == Py
    return Px.shape == Py.shape


def cell_label(w: Permutation, side: Side):
    P, Q = rs(w)
    if side is Side.LEFT:
        return Q
    if side is Side.RIGHT:
        return P
    return P.shape


class Comparison(enum.Enum):
    LESS = "less"
    GREATER = "greater"
    EQUAL = "equal"
    INCOMPARABLE = "incomparable"


def _restriction_shapes(t: StandardTableau) -> list[list[int]]:
    # shapes of the subtableaux on {1..k}, as prefix sums, for k = 1..n
    where = t.row_of()
    counts = [0] * len(t.rows)
    out = []
    for k in range(1, t.size + 1):
        counts[where[k]] += 1
        acc, sums = 0, []
        for c in counts:
            acc += c
            sums.append(acc)
        out.append(sums)
    return out


def tableau_dominance_compare(t1: StandardTableau, t2: StandardTableau) -> Comparison:
    """Compare by dominance of every restriction shape T|{1..k}."""
    if t1.size != t2.size:
        raise SizeMismatch(f"tableaux of sizes {t1.size} and {t2.size}")
    s1, s2 = _restriction_shapes(t1), _restriction_shapes(t2)
    le = ge = True
    for a, b in zip(s1, s2):
        m = max(len(a), len(b))
        a = a + [a[-1]] * (m - len(a))
        b = b + [b[-1]] * (m - len(b))
        if any(x > y for x, y in zip(a, b)):
            le = False
        if any(x < y for x, y in zip(a, b)):
            ge = False
        if not (le or ge):
            return Comparison.INCOMPARABLE
    if le and ge:
        return Comparison.EQUAL
    return Comparison.LESS if le else Comparison.GREATER


def standard_tableaux(shape: Partition) -> Iterator[StandardTableau]:
    """All standard tableaux of the given shape."""
    parts = shape.parts
    n = shape.size
    rows: list[list[int]] = [[] for _ in parts]

    def rec(k: int) -> Iterator[StandardTableau]:
        if k > n:
            yield _trusted_tableau(rows)
            return
        for r, cap in enumerate(parts):
            if len(rows[r]) < cap and (r == 0 or len(rows[r - 1]) > len(rows[r])):
                rows[r].append(k)
                yield from rec(k + 1)
                rows[r].pop()

    yield from rec(1)


def count_standard_tableaux(shape: Partition) -> int:
    """Hook length formula."""
    parts = shape.parts
    conj = shape.conjugate().parts
    prod = 1
    for i, p in enumerate(parts):
        for j in range(p):
            prod *= (p - j - 1) + (conj[j] - i - 1) + 1
    return math.factorial(shape.size) // prod


@lru_cache(maxsize=None)
def _two_row_tableaux(n: int) -> tuple[StandardTableau, ...]:
    out = []
    for p in partitions(n):
        if len(p.parts) <= 2:
            out.extend(standard_tableaux(p))
    return tuple(out)


def tableaux_with_at_most_two_rows(n: int) -> tuple[StandardTableau, ...]:
    return _two_row_tableaux(n)
