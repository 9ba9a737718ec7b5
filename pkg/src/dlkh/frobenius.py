"""Rank-two Frobenius systems.

The algebra is A = R[x]/(x^2 - h x - t) with basis {1, x}; basis letters
are encoded as 0 (for 1) and 1 (for x), and tensor words are tuples of
letters, one per factor.  ``F5`` is the universal system over Z[h, t];
``F1`` is its specialisation h = t = 0, the algebra Z[x]/(x^2).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Mapping

Word = tuple[int, ...]


class Poly:
    """Integer polynomial in commuting variables h and t."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, int], int] | int | None = None):
        if terms is None:
            terms = {}
        elif isinstance(terms, int):
            terms = {(0, 0): terms} if terms else {}
        self.terms = {k: v for k, v in terms.items() if v}

    @classmethod
    def h(cls) -> "Poly":
        return cls({(1, 0): 1})

    @classmethod
    def t(cls) -> "Poly":
        return cls({(0, 1): 1})

    @staticmethod
    def coerce(v) -> "Poly":
        return v if isinstance(v, Poly) else Poly(int(v))

    def __add__(self, other):
        other = Poly.coerce(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-Poly.coerce(other))

    def __rsub__(self, other):
        return Poly.coerce(other) - self

    def __mul__(self, other):
        other = Poly.coerce(other)
        out: dict[tuple[int, int], int] = {}
        for (a, b), u in self.terms.items():
            for (c, d), v in other.terms.items():
                out[(a + c, b + d)] = out.get((a + c, b + d), 0) + u * v
        return Poly(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int):
            other = Poly(other)
        return isinstance(other, Poly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def subs(self, h: int = 0, t: int = 0) -> int:
        return sum(c * h**a * t**b for (a, b), c in self.terms.items())

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for (a, b), c in sorted(self.terms.items()):
            mono = "*".join(
                s for s in (("h" if a == 1 else f"h^{a}") if a else "",
                            ("t" if b == 1 else f"t^{b}") if b else "") if s)
            parts.append(f"{c}*{mono}" if mono else str(c))
        return " + ".join(parts)


class Element:
    """Finitely supported map from tensor words to base-ring coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[Word, Poly | int] | None = None):
        out = {}
        for w, c in (coeffs or {}).items():
            c = Poly.coerce(c)
            if c:
                out[tuple(w)] = c
        self.coeffs = out

    @classmethod
    def basis(cls, *letters: int) -> "Element":
        return cls({tuple(letters): 1})

    def __add__(self, other: "Element") -> "Element":
        out = dict(self.coeffs)
        for w, c in other.coeffs.items():
            out[w] = out.get(w, Poly()) + c
        return Element(out)

    def __sub__(self, other: "Element") -> "Element":
        return self + other.scale(-1)

    def scale(self, c) -> "Element":
        c = Poly.coerce(c)
        return Element({w: v * c for w, v in self.coeffs.items()})

    def tensor(self, other: "Element") -> "Element":
        return Element({
            w1 + w2: c1 * c2
            for w1, c1 in self.coeffs.items()
            for w2, c2 in other.coeffs.items()
        })

    def __eq__(self, other):
        return isinstance(other, Element) and self.coeffs == other.coeffs

    def __repr__(self):
        if not self.coeffs:
            return "0"
        name = {0: "1", 1: "x"}
        return " + ".join(
            f"({c})*" + "⊗".join(name[a] for a in w) for w, c in sorted(self.coeffs.items()))

    @property
    def width(self) -> int | None:
        ws = {len(w) for w in self.coeffs}
        return ws.pop() if len(ws) == 1 else None


@dataclass(frozen=True)
class FrobeniusSystem:
    name: str
    mult: Mapping[tuple[int, int], Element]
    comult: Mapping[int, Element]
    eps: Mapping[int, Poly]
    variables: tuple[str, ...] = field(default=())

    def substitute(self, h: int = 0, t: int = 0, name: str | None = None) -> "FrobeniusSystem":
        def sub(e: Element) -> Element:
            return Element({w: c.subs(h, t) for w, c in e.coeffs.items()})

        return FrobeniusSystem(
            name or f"{self.name}|h={h},t={t}",
            {k: sub(v) for k, v in self.mult.items()},
            {k: sub(v) for k, v in self.comult.items()},
            {k: Poly(v.subs(h, t)) for k, v in self.eps.items()},
        )


def _universal() -> FrobeniusSystem:
    h, t = Poly.h(), Poly.t()
    one, x = Element.basis(0), Element.basis(1)
    mult = {
        (0, 0): one,
        (0, 1): x,
        (1, 0): x,
        (1, 1): x.scale(h) + one.scale(t),
    }
    comult = {
        0: Element.basis(0, 1) + Element.basis(1, 0) - Element.basis(0, 0).scale(h),
        1: Element.basis(1, 1) + Element.basis(0, 0).scale(t),
    }
    return FrobeniusSystem("F5", mult, comult, {0: Poly(0), 1: Poly(1)}, ("h", "t"))


F5 = _universal()
F1 = F5.substitute(0, 0, "F1")
SYSTEMS = {"f5": F5, "f1": F1}


def _linear(f: Callable[[Word], Element], a: Element) -> Element:
    out = Element()
    for w, c in a.coeffs.items():
        out = out + f(w).scale(c)
    return out


def multiply(sys: FrobeniusSystem, a: Element, b: Element) -> Element:
    """Product of two single-factor elements."""
    return _linear(lambda w: _linear(lambda v: sys.mult[(w[0], v[0])], b), a)


def comultiply(sys: FrobeniusSystem, a: Element) -> Element:
    return _linear(lambda w: sys.comult[w[0]], a)


def counit(sys: FrobeniusSystem, a: Element) -> Poly:
    out = Poly()
    for w, c in a.coeffs.items():
        out = out + sys.eps[w[0]] * c
    return out


def apply_at(a: Element, pos: int, width: int,
             f: Callable[[Word], Element | Poly]) -> Element:
    """Apply a map to the factors ``pos .. pos+width-1`` of every word in ``a``."""
    out = Element()
    for w, c in a.coeffs.items():
        img = f(w[pos:pos + width])
        if isinstance(img, Poly):
            img = Element({(): img})
        for v, d in img.coeffs.items():
            out = out + Element({w[:pos] + v + w[pos + width:]: c * d})
    return out


def mult_at(sys: FrobeniusSystem, a: Element, pos: int) -> Element:
    return apply_at(a, pos, 2, lambda w: sys.mult[w])


def comult_at(sys: FrobeniusSystem, a: Element, pos: int) -> Element:
    return apply_at(a, pos, 1, lambda w: sys.comult[w[0]])


def counit_at(sys: FrobeniusSystem, a: Element, pos: int) -> Element:
    return apply_at(a, pos, 1, lambda w: sys.eps[w[0]])


def dot_reduce(sys: FrobeniusSystem, n: int) -> tuple[Element, int]:
    """Express x^n in the basis {1, x}; also return the number of reductions."""
    if n < 0:
        raise ValueError("exponent must be non-negative")
    cur = Element.basis(0)
    steps = 0
    for i in range(n):
        cur = multiply(sys, cur, Element.basis(1))
        if i >= 1:
            steps += 1
    return cur, steps


def check_axioms(sys: FrobeniusSystem) -> dict[str, bool]:
    """Run the algebra and coalgebra identities on all basis words."""
    b = [Element.basis(0), Element.basis(1)]
    one = b[0]
    res: dict[str, bool] = {}
    allof = all

    res["unit"] = allof(multiply(sys, one, a) == a == multiply(sys, a, one) for a in b)
    res["commutative"] = allof(multiply(sys, a, c) == multiply(sys, c, a) for a in b for c in b)
    res["associative"] = allof(
        multiply(sys, multiply(sys, a, c), e) == multiply(sys, a, multiply(sys, c, e))
        for a in b for c in b for e in b)
    res["coassociative"] = allof(
        comult_at(sys, comultiply(sys, a), 0) == comult_at(sys, comultiply(sys, a), 1)
        for a in b)
    swap = lambda e: Element({w[::-1]: c for w, c in e.coeffs.items()})
    res["cocommutative"] = allof(swap(comultiply(sys, a)) == comultiply(sys, a) for a in b)
    res["counit"] = allof(
        counit_at(sys, comultiply(sys, a), 0) == a == counit_at(sys, comultiply(sys, a), 1)
        for a in b)
    frob = True
    for a in b:
        for c in b:
            lhs = mult_at(sys, comult_at(sys, a.tensor(c), 1), 0)
            mid = comultiply(sys, multiply(sys, a, c))
            rhs = mult_at(sys, comult_at(sys, a.tensor(c), 0), 1)
            frob = frob and lhs == mid == rhs
    res["frobenius"] = frob
    return res


def word_maps(sys: FrobeniusSystem) -> tuple[dict, dict]:
    """Integer structure constants for merge and split on basis letters.

    Only meaningful when the coefficients are constants (for example F1).
    """
    merge = {}
    for (a, c), e in sys.mult.items():
        merge[(a, c)] = [(w[0], p.subs()) for w, p in sorted(e.coeffs.items())]
    split = {}
    for a, e in sys.comult.items():
        split[a] = [(w, p.subs()) for w, p in sorted(e.coeffs.items())]
    for tab in (merge, split):
        for terms in tab.values():
            for _, c in terms:
                if not isinstance(c, int):
                    raise TypeError("structure constants are not integers")
    if any(any(v.terms.keys() - {(0, 0)} for v in e.coeffs.values())
           for e in list(sys.mult.values()) + list(sys.comult.values())):
        raise ValueError(f"{sys.name} has non-constant structure constants")
    return merge, split


def basis_words(n: int) -> list[Word]:
    return [tuple(w) for w in itertools.product((0, 1), repeat=n)]
