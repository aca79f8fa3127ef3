"""
Elements of the Hecke algebra of S_n in the standard basis {H_w}.

Soergel's normalization: H_s H_s = H_e + (v^-1 - v) H_s, and the KL
generator is H_s + v H_e.
"""

from __future__ import annotations

from typing import Iterable, Mapping

from ..errors import RankMismatch
from ..laurent import ONE, V, V_INV, ZERO, LaurentPoly
from ..permgroup import Permutation, identity, reduced_word, simple_reflection


class HeckeElement:
    """Finitely supported map Permutation -> LaurentPoly (no zero terms)."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[Permutation, LaurentPoly] | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        out: dict[Permutation, LaurentPoly] = {}
        for w, c in items:
            if w.n != n:
                raise RankMismatch(f"term {w} is not in S_{n}")
            if isinstance(c, int):
                c = LaurentPoly.const(c)
            if w in out:
                c = out[w] + c
            if c:
                out[w] = c
            else:
                out.pop(w, None)
        self.n = n
        self.terms = out

    @classmethod
    def basis(cls, w: Permutation, coeff: LaurentPoly = ONE) -> HeckeElement:
        return cls(w.n, {w: coeff})

    @classmethod
    def unit(cls, n: int) -> HeckeElement:
        return cls(n, {identity(n): ONE})

    @classmethod
    def kl_simple(cls, i: int, n: int) -> HeckeElement:
        """The KL basis element H_s + v H_e for s = s_i."""
        return cls(n, {simple_reflection(i, n): ONE, identity(n): V})

    def coeff(self, w: Permutation) -> LaurentPoly:
        return self.terms.get(w, ZERO)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, HeckeElement) and self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def _check(self, other: HeckeElement):
        if self.n != other.n:
            raise RankMismatch(f"H(S_{self.n}) vs H(S_{other.n})")

    def __add__(self, other: HeckeElement) -> HeckeElement:
        self._check(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w, ZERO) + c
            if s:
                out[w] = s
            else:
                out.pop(w, None)
        return _raw(self.n, out)

    def __neg__(self) -> HeckeElement:
        return _raw(self.n, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other: HeckeElement) -> HeckeElement:
        return self + (-other)

    def scale(self, c: LaurentPoly | int) -> HeckeElement:
        if isinstance(c, int):
            c = LaurentPoly.const(c)
        if not c:
            return _raw(self.n, {})
        return _raw(self.n, {w: a * c for w, a in self.terms.items()})

    def __rmul__(self, c) -> HeckeElement:
        if isinstance(c, (int, LaurentPoly)):
            return self.scale(c)
        return NotImplemented

    def __mul__(self, other) -> HeckeElement:
        if isinstance(other, (int, LaurentPoly)):
            return self.scale(other)
        return multiply_standard(self, other)

    def times_simple(self, i: int) -> HeckeElement:
        """Right multiplication by H_{s_i}."""
        out: dict[Permutation, LaurentPoly] = {}
        q = V_INV - V
        for x, c in self.terms.items():
            xs = x.times_simple(i)
            _acc(out, xs, c)
            if x.images[i - 1] > x.images[i]:
                _acc(out, x, c * q)
        return _raw(self.n, out)

    def simple_times(self, i: int) -> HeckeElement:
        """Left multiplication by H_{s_i}."""
        out: dict[Permutation, LaurentPoly] = {}
        q = V_INV - V
        for x, c in self.terms.items():
            sx = x.simple_times(i)
            _acc(out, sx, c)
            if sx.length() < x.length():
                _acc(out, x, c * q)
        return _raw(self.n, out)

    def times_kl_simple(self, i: int) -> HeckeElement:
        return self.times_simple(i) + self.scale(V)

    def kl_simple_times(self, i: int) -> HeckeElement:
        return self.simple_times(i) + self.scale(V)

    def bar(self) -> HeckeElement:
        """Bar involution: v -> v^-1 and H_x -> (H_{x^-1})^-1."""
        out = _raw(self.n, {})
        for x, c in self.terms.items():
            img = HeckeElement.unit(self.n)
            for i in reduced_word(x):
                # H_s^-1 = H_s + (v - v^-1)
                img = img.times_simple(i) + img.scale(V - V_INV)
            out = out + img.scale(c.bar())
        return out

    def evaluate(self, value) -> dict[Permutation, object]:
        return {w: c.evaluate(value) for w, c in self.terms.items()}

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = [f"({c})*H[{w}]" for w, c in sorted(self.terms.items(), key=lambda t: (t[0].length(), t[0].images))]
        return " + ".join(parts)


def _raw(n: int, terms: dict) -> HeckeElement:
    h = object.__new__(HeckeElement)
    h.n = n
    h.terms = terms
    return h


def _acc(out: dict, w: Permutation, c: LaurentPoly):
    s = out.get(w, ZERO) + c
    if s:
        out[w] = s
    else:
        out.pop(w, None)


def multiply_standard(a: HeckeElement, b: HeckeElement) -> HeckeElement:
    """Product in the standard basis, expanding each H_y of b along a reduced word."""
    if a.n != b.n:
        raise RankMismatch(f"H(S_{a.n}) vs H(S_{b.n})")
    out = _raw(a.n, {})
    for y, c in b.terms.items():
        part = a
        for i in reduced_word(y):
            part = part.times_simple(i)
        out = out + part.scale(c)
    return out


def product(*factors: HeckeElement) -> HeckeElement:
    out = factors[0]
    for f in factors[1:]:
        out = multiply_standard(out, f)
    return out


def standard_basis_element(w: Permutation) -> HeckeElement:
    return HeckeElement.basis(w)


def kl_simple(i: int, n: int) -> HeckeElement:
    return HeckeElement.kl_simple(i, n)


def simple_element(i: int, n: int) -> HeckeElement:
    return HeckeElement.basis(simple_reflection(i, n))
