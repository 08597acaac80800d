"""The q-oscillator algebra: normal ordering, the transpose-like involution,
weight grading and closed-form Fock-space traces.

Generators a+ (creation), a- (annihilation) and the invertible counting
element k obey

    k a+ = q a+ k,    k a- = q^-1 a- k,    a+ a- = 1 - k,    a- a+ = 1 - q k.

Elements are finite linear combinations of normal-ordered words
(a+)^i k^m (a-)^j with m of either sign and RatFunc coefficients.  Traces
weighted by w^h (h the number operator, k = q^h) reduce to geometric sums
Tr(w^h k^r) = 1/(1 - q^r w); the result is a rational function of (q, w)
and the caller substitutes w afterwards.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Dict, Tuple

from .exactalg import ONE, Q, RatFunc, ZERO, qpow

NormalWord = Tuple[int, int, int]  # (plus-exp, k-exp, minus-exp)


@lru_cache(maxsize=None)
def _reorder(j: int, i: int) -> tuple:
    """Normal form of (a-)^j (a+)^i as ((word, coeff), ...).

    Peeling one a- through all the a+'s gives
    (a-)^j (a+)^i = (a-)^(j-1) (a+)^(i-1) (1 - q^i k).
    """
    if j == 0:
        return (((i, 0, 0), ONE),)
    if i == 0:
        return (((0, 0, j), ONE),)
    out: Dict[NormalWord, RatFunc] = {}
    for (a, b, c), co in _reorder(j - 1, i - 1):
        # append (1 - q^i k) on the right; (a-)^c k = q^c k (a-)^c
        _accumulate(out, (a, b, c), co)
        _accumulate(out, (a, b + 1, c), -co * qpow(i + c))
    return tuple(out.items())


def _accumulate(d: Dict[NormalWord, RatFunc], word: NormalWord, co: RatFunc):
    cur = d.get(word)
    new = co if cur is None else cur + co
    if new.is_zero():
        d.pop(word, None)
    else:
        d[word] = new


def _word_mul(w1: NormalWord, w2: NormalWord):
    """Product of two normal words as ((word, coeff), ...)."""
    i1, m1, j1 = w1
    i2, m2, j2 = w2
    out = []
    for (a, b, c), co in _reorder(j1, i2):
        co = co * qpow(m1 * a + m2 * c)
        out.append(((i1 + a, m1 + b + m2, c + j2), co))
    return out


class BosonElement:
    """Finite RatFunc-linear combination of normal-ordered q-boson words."""

    __slots__ = ("terms",)

    def __init__(self, terms: Dict[NormalWord, RatFunc] = None):
        self.terms = {w: c for w, c in (terms or {}).items() if not c.is_zero()}

    # -- generators ---------------------------------------------------------

    @staticmethod
    def one() -> "BosonElement":
        return BosonElement({(0, 0, 0): ONE})

    @staticmethod
    def aplus(power: int = 1) -> "BosonElement":
        return BosonElement({(power, 0, 0): ONE})

    @staticmethod
    def aminus(power: int = 1) -> "BosonElement":
        return BosonElement({(0, 0, power): ONE})

    @staticmethod
    def kpow(power: int = 1) -> "BosonElement":
        return BosonElement({(0, power, 0): ONE})

    @staticmethod
    def word(plus: int, k: int, minus: int, coeff: RatFunc = ONE) -> "BosonElement":
        return BosonElement({(plus, k, minus): coeff})

    # -- linear structure ----------------------------------------------------

    def __add__(self, other: "BosonElement") -> "BosonElement":
        out = dict(self.terms)
        for w, c in other.terms.items():
            _accumulate(out, w, c)
        return BosonElement(out)

    def __sub__(self, other: "BosonElement") -> "BosonElement":
        out = dict(self.terms)
        for w, c in other.terms.items():
            _accumulate(out, w, -c)
        return BosonElement(out)

    def __neg__(self) -> "BosonElement":
        return BosonElement({w: -c for w, c in self.terms.items()})

    def scale(self, c) -> "BosonElement":
        c = c if isinstance(c, RatFunc) else RatFunc.from_int(c)
        if c.is_zero():
            return BosonElement()
        return BosonElement({w: c * co for w, co in self.terms.items()})

    def __mul__(self, other: "BosonElement") -> "BosonElement":
        out: Dict[NormalWord, RatFunc] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                c12 = c1 * c2
                for w, co in _word_mul(w1, w2):
                    _accumulate(out, w, c12 * co)
        return BosonElement(out)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, BosonElement) and self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "BosonElement(0)"
        bits = []
        for (i, m, j) in sorted(self.terms):
            c = self.terms[(i, m, j)]
            word = []
            if i:
                word.append(f"(a+)^{i}" if i != 1 else "a+")
            if m:
                word.append(f"k^{m}" if m != 1 else "k")
            if j:
                word.append(f"(a-)^{j}" if j != 1 else "a-")
            bits.append(f"[{c.canonical()}] " + (" ".join(word) or "1"))
        return " + ".join(bits)

    # -- algebra maps --------------------------------------------------------

    def iota(self) -> "BosonElement":
        """Anti-automorphism a+ <-> a-, k fixed; on a normal word it just
        swaps the ladder exponents (the reversed word is already normal)."""
        return BosonElement({(j, m, i): c for (i, m, j), c in self.terms.items()})

    def grade(self):
        """Common ladder degree (plus-exp minus minus-exp) of all terms, or
        the string "inhomogeneous"."""
        degrees = {i - j for (i, m, j) in self.terms}
        if not degrees:
            return 0
        if len(degrees) > 1:
            return "inhomogeneous"
        return degrees.pop()

    def trace(self) -> RatFunc:
        """Closed form of Tr(w^h self) as a RatFunc in (q, w).

        Off-diagonal words vanish by weight grading; a balanced word reduces
        via  Tr(w^h (a+)^i k^m (a-)^i) = w^i Tr(w^h k^m prod_{s=1}^i (1-q^s k))
        and every monomial through Tr(w^h k^r) = 1/(1 - q^r w).
        """
        acc = ZERO
        for (i, m, j), c in self.terms.items():
            if i != j:
                continue
            acc = acc + c * _balanced_trace(i, m)
        return acc


@lru_cache(maxsize=None)
def _balanced_trace(i: int, m: int) -> RatFunc:
    from .exactalg import WVAR
    # expand prod_{s=1}^i (1 - q^s k) into k powers
    kpoly: Dict[int, RatFunc] = {0: ONE}
    for s in range(1, i + 1):
        nxt: Dict[int, RatFunc] = {}
        for d, co in kpoly.items():
            nxt[d] = nxt.get(d, ZERO) + co
            nxt[d + 1] = nxt.get(d + 1, ZERO) - co * qpow(s)
        kpoly = nxt
    acc = ZERO
    for d, co in kpoly.items():
        acc = acc + co / (1 - qpow(m + d) * WVAR)
    return (WVAR ** i) * acc


def normal_product(a: BosonElement, b: BosonElement) -> BosonElement:
    return a * b


def iota(x: BosonElement) -> BosonElement:
    return x.iota()


def grade(x: BosonElement):
    return x.grade()


def trace(x: BosonElement) -> RatFunc:
    return x.trace()
