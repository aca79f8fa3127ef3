"""
Permutations of {1, ..., n} in one-line notation.

Conventions used throughout the package:

* ``w.images[i - 1] == w(i)``;
* composition is ``(p * q)(i) == p(q(i))``;
* a word ``a1, a2, ..., ak`` in the simple reflections evaluates to the
  product ``s_a1 * s_a2 * ... * s_ak``, so right multiplication by ``s_i``
  swaps the entries in positions ``i`` and ``i + 1`` and left multiplication
  by ``s_i`` swaps the values ``i`` and ``i + 1``.

>>> w = from_word([1, 2, 1, 5, 6, 5], 7)
>>> str(w)
'3214765'
>>> w.length(), sorted(w.right_descents())
(6, [1, 2, 5, 6])
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import (
    DuplicateValue, OutOfRange, ParamOutOfRange, RankMismatch,
    WindowOutOfRange,
)

MAX_RANK = 12


class Permutation:
    """An element of S_n stored as its one-line notation."""

    __slots__ = ("images", "_hash")

    def __init__(self, images: Sequence[int]):
        images = tuple(int(a) for a in images)
        n = len(images)
        seen = set()
        for a in images:
            if not 1 <= a <= n:
                raise OutOfRange(f"value {a} is outside 1..{n}")
            if a in seen:
                raise DuplicateValue(f"value {a} occurs twice")
            seen.add(a)
        self.images = images
        self._hash = hash(images)

    @classmethod
    def _trusted(cls, images: tuple[int, ...]) -> Permutation:
        # skips validation; callers guarantee a permutation tuple
        obj = object.__new__(cls)
        obj.images = images
        obj._hash = hash(images)
        return obj

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __iter__(self) -> Iterator[int]:
        return iter(self.images)

    def __len__(self) -> int:
        return len(self.images)

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __lt__(self, other: Permutation) -> bool:
        return (len(self.images), self.images) < (len(other.images), other.images)

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Permutation({format_perm(self)!r})"

    def __str__(self) -> str:
        return format_perm(self)

    def __mul__(self, other: Permutation) -> Permutation:
        return compose(self, other)

    def inverse(self) -> Permutation:
        inv = [0] * len(self.images)
        for i, a in enumerate(self.images, 1):
            inv[a - 1] = i
        return Permutation._trusted(tuple(inv))

    def length(self) -> int:
        """Number of inversions, i.e. the Coxeter length."""
        w = self.images
        return sum(1 for i in range(len(w)) for j in range(i + 1, len(w)) if w[i] > w[j])

    def right_descents(self) -> frozenset[int]:
        w = self.images
        return frozenset(i for i in range(1, len(w)) if w[i - 1] > w[i])

    def left_descents(self) -> frozenset[int]:
        return self.inverse().right_descents()

    def is_involution(self) -> bool:
        w = self.images
        return all(w[a - 1] == i for i, a in enumerate(w, 1))

    def is_identity(self) -> bool:
        return all(a == i for i, a in enumerate(self.images, 1))

    def times_simple(self, i: int) -> Permutation:
        """Right multiplication by s_i (swap positions i and i+1)."""
        w = list(self.images)
        w[i - 1], w[i] = w[i], w[i - 1]
        return Permutation._trusted(tuple(w))

    def simple_times(self, i: int) -> Permutation:
        """Left multiplication by s_i (swap values i and i+1)."""
        return Permutation._trusted(tuple(
            i + 1 if a == i else i if a == i + 1 else a for a in self.images))

    def rank_id(self) -> int:
        """Position of the one-line notation in the lexicographic list of S_n."""
        w = self.images
        n = len(w)
        rank = 0
        remaining = list(range(1, n + 1))
        for pos, a in enumerate(w):
            k = remaining.index(a)
            rank += k * math.factorial(n - 1 - pos)
            remaining.pop(k)
        return rank

    @classmethod
    def from_rank_id(cls, n: int, rank: int) -> Permutation:
        if not 0 <= rank < math.factorial(n):
            raise OutOfRange(f"rank id {rank} outside 0..{math.factorial(n) - 1}")
        remaining = list(range(1, n + 1))
        out = []
        for pos in range(n):
            f = math.factorial(n - 1 - pos)
            k, rank = divmod(rank, f)
            out.append(remaining.pop(k))
        return cls._trusted(tuple(out))


def perm_from_one_line(seq: Iterable[int]) -> Permutation:
    return Permutation(seq)


def identity(n: int) -> Permutation:
    return Permutation._trusted(tuple(range(1, n + 1)))


def simple_reflection(i: int, n: int) -> Permutation:
    if not 1 <= i <= n - 1:
        raise ParamOutOfRange(f"s_{i} does not exist in S_{n}")
    return identity(n).times_simple(i)


def transposition(a: int, b: int, n: int) -> Permutation:
    if not (1 <= a <= n and 1 <= b <= n) or a == b:
        raise ParamOutOfRange(f"transposition ({a},{b}) invalid in S_{n}")
    w = list(range(1, n + 1))
    w[a - 1], w[b - 1] = b, a
    return Permutation._trusted(tuple(w))


def from_word(letters: Iterable[int], n: int) -> Permutation:
    """Evaluate ``s_a1 s_a2 ... s_ak`` (general words allowed)."""
    w = list(range(1, n + 1))
    for a in letters:
        if not 1 <= a <= n - 1:
            raise ParamOutOfRange(f"s_{a} does not exist in S_{n}")
        w[a - 1], w[a] = w[a], w[a - 1]
    return Permutation._trusted(tuple(w))


def reduced_word(w: Permutation) -> list[int]:
    """Greedy descent stripping; returns a reduced word for w."""
    letters = []
    cur = list(w.images)
    while True:
        for i in range(1, len(cur)):
            if cur[i - 1] > cur[i]:
                cur[i - 1], cur[i] = cur[i], cur[i - 1]
                letters.append(i)
                break
        else:
            break
    letters.reverse()
    return letters


def compose(p: Permutation, q: Permutation) -> Permutation:
    if p.n != q.n:
        raise RankMismatch(f"cannot compose elements of S_{p.n} and S_{q.n}")
    pi = p.images
    return Permutation._trusted(tuple(pi[a - 1] for a in q.images))


def length_and_descents(w: Permutation) -> tuple[int, frozenset[int], frozenset[int]]:
    return w.length(), w.left_descents(), w.right_descents()


def bruhat_leq(x: Permutation, y: Permutation) -> bool:
    """
    Bruhat comparison by the rank-matrix criterion: x <= y iff for all i, j
    #{a <= i : x(a) >= j} <= #{a <= i : y(a) >= j}.
    """
    if x.n != y.n:
        raise RankMismatch(f"cannot compare elements of S_{x.n} and S_{y.n}")
    n = x.n
    cx = [0] * (n + 2)
    cy = [0] * (n + 2)
    for a, b in zip(x.images, y.images):
        for j in range(1, a + 1):
            cx[j] += 1
        for j in range(1, b + 1):
            cy[j] += 1
        for j in range(1, n + 1):
            if cx[j] > cy[j]:
                return False
    return True


def flatten(values: Sequence[int]) -> Permutation:
    """Replace distinct integers by their ranks among themselves."""
    order = sorted(values)
    rank = {a: i for i, a in enumerate(order, 1)}
    return Permutation._trusted(tuple(rank[a] for a in values))


def consecutive_pattern(w: Permutation, start: int, k: int) -> Permutation:
    if k < 0 or start < 1 or start + k - 1 > w.n:
        raise WindowOutOfRange(f"window start={start}, k={k} does not fit in S_{w.n}")
    return flatten(w.images[start - 1:start - 1 + k])


def contains_consecutive(x: Permutation, p: Permutation) -> int | None:
    """Smallest start index of a window of x flattening to p, or None."""
    k = p.n
    if k > x.n:
        return None
    for start in range(1, x.n - k + 2):
        if consecutive_pattern(x, start, k) == p:
            return start
    return None


def embed(w: Permutation, k: int, i: int) -> Permutation:
    """Image of w under s_t -> s_{t+i}, as an element of S_k."""
    if i < 0 or k < w.n + i:
        raise RankMismatch(f"cannot embed S_{w.n} into S_{k} with offset {i}")
    out = list(range(1, k + 1))
    for pos, a in enumerate(w.images, 1):
        out[pos + i - 1] = a + i
    return Permutation._trusted(tuple(out))


def is_fully_commutative(w: Permutation) -> bool:
    """True iff w avoids the classical pattern 321."""
    # a 321 exists iff some entry has a larger entry on its left and a smaller one on its right
    vals = w.images
    n = len(vals)
    if n < 3:
        return True
    prefix_max = [0] * n
    m = 0
    for i, a in enumerate(vals):
        prefix_max[i] = m
        m = max(m, a)
    suffix_min = n + 1
    for i in range(n - 1, -1, -1):
        a = vals[i]
        if prefix_max[i] > a > suffix_min:
            return False
        suffix_min = min(suffix_min, a)
    return True


def support(w: Permutation) -> frozenset[int]:
    """Indices of the simple reflections appearing in any reduced word of w."""
    out = []
    m = 0
    for i, a in enumerate(w.images[:-1], 1):
        m = max(m, a)
        if m > i:
            out.append(i)
    return frozenset(out)


def all_perms(n: int) -> list[Permutation]:
    """S_n in lexicographic order (index == rank_id)."""
    return [Permutation._trusted(p) for p in itertools.permutations(range(1, n + 1))]


def involutions(n: int) -> list[Permutation]:
    """Involutions of S_n in lexicographic order."""
    out = []

    def rec(w: list[int], i: int):
        if i > n:
            out.append(Permutation._trusted(tuple(w)))
            return
        if w[i - 1]:
            rec(w, i + 1)
            return
        w[i - 1] = i
        rec(w, i + 1)
        w[i - 1] = 0
        for j in range(i + 1, n + 1):
            if not w[j - 1]:
                w[i - 1], w[j - 1] = j, i
                rec(w, i + 1)
                w[i - 1] = w[j - 1] = 0

    rec([0] * n, 1)
    return sorted(out, key=lambda p: p.images)


# --- special involutions -------------------------------------------------

@dataclass(frozen=True)
class SpecialInvolution:
    """The involution (i-j, i+1)(i-j+1, i+2)...(i, i+j+1) of S_n."""
    i: int
    j: int
    n: int

    def __post_init__(self):
        if not (1 <= self.i <= self.n - 1 and 0 <= self.j <= min(self.i - 1, self.n - self.i - 1)):
            raise ParamOutOfRange(f"sigma_({self.i},{self.j}) invalid in S_{self.n}")

    def perm(self) -> Permutation:
        w = list(range(1, self.n + 1))
        for t in range(self.j + 1):
            a, b = self.i - self.j + t, self.i + 1 + t
            w[a - 1], w[b - 1] = b, a
        return Permutation._trusted(tuple(w))

    def support(self) -> frozenset[int]:
        """Points displaced by the involution."""
        return frozenset(range(self.i - self.j, self.i + self.j + 2))

    def extended_support(self) -> frozenset[int]:
        lo = max(1, self.i - self.j - 1)
        hi = min(self.n, self.i + self.j + 2)
        return frozenset(range(lo, hi + 1))


def distant(a: SpecialInvolution, b: SpecialInvolution) -> bool:
    if a.n != b.n:
        raise RankMismatch("special involutions live in different ranks")
    return len(a.extended_support() & b.extended_support()) <= 1


def special_involution_factors(w: Permutation) -> list[SpecialInvolution] | None:
    """
    Split an involution into special involutions with disjoint supports.

    Returns None when w is not such a product. The split is unique when it
    exists: the transposition with the smallest endpoint must open its block.
    """
    if not w.is_involution():
        return None
    pairs = {a: w(a) for a in range(1, w.n + 1) if w(a) > a}
    factors = []
    while pairs:
        a = min(pairs)
        gap = pairs[a] - a
        for t in range(gap):
            if pairs.get(a + t) != a + gap + t:
                return None
        for t in range(gap):
            del pairs[a + t]
        factors.append(SpecialInvolution(a + gap - 1, gap - 1, w.n))
    return factors


# --- named elements -------------------------------------------------------

def _need(cond: bool, msg: str):
    if not cond:
        raise ParamOutOfRange(msg)


def inv(i: int, j: int, n: int) -> Permutation:
    """Reverse the block i..j of the identity of S_n."""
    _need(1 <= i < j <= n, f"inv({i},{j}) invalid in S_{n}")
    w = list(range(1, n + 1))
    w[i - 1:j] = reversed(w[i - 1:j])
    return Permutation._trusted(tuple(w))


def longest(n: int) -> Permutation:
    return Permutation._trusted(tuple(range(n, 0, -1)))


def tau(k: int, a: int) -> Permutation:
    """The fully commutative involution sigma_{a,a-1} sigma_{k+a,k-a-1} of S_{2k}."""
    _need(k >= 2 and 1 <= a <= k - 1, f"tau_({k},{a}) requires k >= 2 and 1 <= a <= k-1")
    n = 2 * k
    return SpecialInvolution(a, a - 1, n).perm() * SpecialInvolution(k + a, k - a - 1, n).perm()


def u_elem(n: int) -> Permutation:
    """s1 s2 s1 s_{n-2} s_{n-1} s_{n-2}."""
    _need(n >= 5, "u_n needs n >= 5")
    return from_word([1, 2, 1, n - 2, n - 1, n - 2], n)


def v_elem(n: int) -> Permutation:
    """s1 s2 s1 s_{n-1}."""
    _need(n >= 4, "v_n needs n >= 4")
    return from_word([1, 2, 1, n - 1], n)


def sigma_ni(n: int, i: int) -> Permutation:
    """The product of the commuting transpositions (1, i+1) and (i, n)."""
    _need(n >= 6 and 3 <= i <= n - 3, f"sigma_({n},{i}) needs n >= 6 and 3 <= i <= n-3")
    return transposition(1, i + 1, n) * transposition(i, n, n)


def x_ni(n: int, i: int) -> Permutation:
    """s_i s_1 s_2 ... s_{i+1}."""
    _need(n >= 4 and 2 <= i <= n - 2, f"x_({n},{i}) invalid")
    return from_word([i, *range(1, i + 2)], n)


def y_ni(n: int, i: int) -> Permutation:
    """s_i s_{n-1} s_{n-2} ... s_{i-1}."""
    _need(n >= 4 and 2 <= i <= n - 2, f"y_({n},{i}) invalid")
    return from_word([i, *range(n - 1, i - 2, -1)], n)


def d_elem(n: int) -> Permutation:
    """(n-2)(n-1)(n-3)(n-4)...4 3 1 2 n in one-line notation."""
    _need(n >= 5, "d needs n >= 5")
    return Permutation([n - 2, n - 1, *range(n - 3, 2, -1), 1, 2, n])


def mu_lemma_x(n: int) -> Permutation:
    """3 n 2 4 5 ... (n-3) (n-1) 1 (n-2): the element paired with u_n by mu."""
    _need(n >= 7, "needs n >= 7")
    return Permutation([3, n, 2, *range(4, n - 2), n - 1, 1, n - 2])


_NAMED = {
    "inv": lambda n, i, j: inv(i, j, n),
    "tau": lambda n, k, a: _tau_in(n, k, a),
    "u": u_elem,
    "v": v_elem,
    "sigma": sigma_ni,
    "x": x_ni,
    "y": y_ni,
    "d": d_elem,
    "w0": longest,
    "special": lambda n, i, j: SpecialInvolution(i, j, n).perm(),
    "transposition": lambda n, a, b: transposition(a, b, n),
    "s": lambda n, i: simple_reflection(i, n),
}


def _tau_in(n: int, k: int, a: int) -> Permutation:
    _need(n == 2 * k, f"tau_({k},{a}) lives in S_{2 * k}, not S_{n}")
    return tau(k, a)


def named_element(name: str, n: int, *params: int) -> Permutation:
    """
    Constructor for the named elements and families.

    ``inv(i, j)``, ``tau(k, a)`` (needs n == 2k), ``u``, ``v``, ``sigma(i)``,
    ``x(i)``, ``y(i)``, ``d``, ``w0``, ``special(i, j)``,
    ``transposition(a, b)`` and ``s(i)``.
    """
    if name not in _NAMED:
        raise ParamOutOfRange(f"unknown element name {name!r}")
    try:
        return _NAMED[name](n, *params)
    except TypeError:
        raise ParamOutOfRange(f"wrong number of parameters for {name}") from None


# --- text syntax ----------------------------------------------------------

def format_perm(w: Permutation) -> str:
    if w.n <= 9:
        return "".join(str(a) for a in w.images)
    return ",".join(str(a) for a in w.images)


def parse_perm(text: str, n: int | None = None) -> Permutation:
    """
    Parse ``426153``, ``10,2,3,...`` or a word ``w:1,2,1``.

    Word syntax needs ``n`` unless the rank is implied by the largest letter.
    """
    text = text.strip()
    if text.startswith("w:"):
        body = text[2:].strip()
        letters = [int(t) for t in body.replace(" ", "").split(",") if t] if body else []
        rank = n if n is not None else (max(letters) + 1 if letters else 1)
        return from_word(letters, rank)
    if "," in text:
        w = Permutation(int(t) for t in text.split(","))
    elif text.isdigit() or text == "":
        w = Permutation(int(c) for c in text)
    else:
        raise OutOfRange(f"cannot parse permutation {text!r}")
    if n is not None and w.n != n:
        raise RankMismatch(f"{text!r} is in S_{w.n}, expected S_{n}")
    return w
