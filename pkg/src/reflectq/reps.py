"""Sparse operator tables for the three level-zero representations and their
tensor products: generator actions, coideal-element actions, the coproduct,
antipode duality and the vee/star equivalence.

A table maps input basis labels (tuples of compositions, one per tensor
factor) to sparse columns of output labels with RatFunc coefficients.
Tables are immutable after construction and all operations are pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Dict, NamedTuple, Sequence, Tuple

from . import weights as wt
from .exactalg import ONE, Q, P, RatFunc, ZERO, qnumber
from .report import VerifyReport

KINDS = ("V", "Vstar", "Vvee")


class Space(NamedTuple):
    kind: str          # V | Vstar | Vvee
    n: int
    l: int
    spectral: RatFunc  # symbol or substituted expression

    def basis(self):
        return wt.enumerate_B(self.n, self.l)


Label = Tuple[wt.Composition, ...]


@dataclass(frozen=True)
class OperatorTable:
    domain: Tuple[Space, ...]
    codomain: Tuple[Space, ...]
    entries: dict  # in_label -> {out_label: RatFunc}

    @staticmethod
    def build(domain, codomain, entries) -> "OperatorTable":
        clean = {}
        for key, col in entries.items():
            col = {o: c for o, c in col.items() if not c.is_zero()}
            if col:
                clean[key] = col
        return OperatorTable(tuple(domain), tuple(codomain), clean)

    @staticmethod
    def identity(spaces) -> "OperatorTable":
        spaces = tuple(spaces)
        labels = list(product(*(s.basis() for s in spaces)))
        return OperatorTable(spaces, spaces, {lab: {lab: ONE} for lab in labels})

    def coefficient(self, in_label, out_label) -> RatFunc:
        return self.entries.get(in_label, {}).get(out_label, ZERO)

    def compose(self, first: "OperatorTable") -> "OperatorTable":
        """self after first (matrix product self . first)."""
        if first.codomain != self.domain:
            raise ValueError("composition spaces do not match")
        entries = {}
        for in_label, col in first.entries.items():
            acc: Dict[Label, RatFunc] = {}
            for mid, c in col.items():
                for out, d in self.entries.get(mid, {}).items():
                    prev = acc.get(out)
                    val = d * c if prev is None else prev + d * c
                    acc[out] = val
            entries[in_label] = acc
        return OperatorTable.build(first.domain, self.codomain, entries)

    def __add__(self, other: "OperatorTable") -> "OperatorTable":
        if (self.domain, self.codomain) != (other.domain, other.codomain):
            raise ValueError("table addition on mismatched spaces")
        entries = {k: dict(col) for k, col in self.entries.items()}
        for k, col in other.entries.items():
            tgt = entries.setdefault(k, {})
            for o, c in col.items():
                tgt[o] = tgt.get(o, ZERO) + c
        return OperatorTable.build(self.domain, self.codomain, entries)

    def __sub__(self, other: "OperatorTable") -> "OperatorTable":
        return self + other.scale(-1)

    def scale(self, c) -> "OperatorTable":
        c = c if isinstance(c, RatFunc) else RatFunc.from_int(c)
        entries = {k: {o: c * v for o, v in col.items()} for k, col in self.entries.items()}
        return OperatorTable.build(self.domain, self.codomain, entries)

    def tensor(self, other: "OperatorTable") -> "OperatorTable":
        entries = {}
        for ka, cola in self.entries.items():
            for kb, colb in other.entries.items():
                entries[ka + kb] = {oa + ob: va * vb
                                    for oa, va in cola.items()
                                    for ob, vb in colb.items()}
        return OperatorTable.build(self.domain + other.domain,
                                   self.codomain + other.codomain, entries)

    def substitute(self, bindings) -> "OperatorTable":
        def sub_space(s: Space) -> Space:
            return Space(s.kind, s.n, s.l, s.spectral.substitute(bindings))
        entries = {k: {o: v.substitute(bindings) for o, v in col.items()}
                   for k, col in self.entries.items()}
        return OperatorTable.build(tuple(map(sub_space, self.domain)),
                                   tuple(map(sub_space, self.codomain)), entries)

    def is_zero(self) -> bool:
        return not self.entries

    def nonzero_count(self) -> int:
        return sum(len(col) for col in self.entries.values())

    def same_entries(self, other: "OperatorTable") -> bool:
        return (self - other).is_zero()

    def iter_entries(self):
        for in_label in sorted(self.entries):
            col = self.entries[in_label]
            for out_label in sorted(col):
                yield in_label, out_label, col[out_label]

    def to_json(self, kind_name: str, spectral_name: str) -> dict:
        doc = {
            "kind": kind_name,
            "n": self.domain[0].n,
            "l": self.domain[0].l,
            "spectral": spectral_name,
            "entries": [
                {"in": [list(c) for c in i], "out": [list(c) for c in o],
                 "num": v.num_str(), "den": v.den_str()}
                for i, o, v in self.iter_entries()
            ],
        }
        if len(self.domain) > 1:
            doc["m"] = self.domain[1].l
        return doc


# -- single-space generator actions ------------------------------------------

def _pos(i: int, n: int) -> int:
    """0-based array position of the cyclic 1-based index i."""
    return (i - 1) % n


def act_generator(kind: str, n: int, l: int, gen: str, i: int,
                  spectral: RatFunc) -> OperatorTable:
    """Sparse table of e_i, f_i, k_i or k_i^-1 on the chosen space.

    Targets falling outside the degree-l basis are dropped (they act as
    zero); the affine index i = 0 carries the spectral parameter on e and f.
    """
    if kind not in KINDS:
        raise ValueError(f"unknown space kind {kind!r}")
    if gen not in ("e", "f", "k", "kinv"):
        raise ValueError(f"unknown generator {gen!r}")
    space = Space(kind, n, l, spectral)
    i = i % n
    pi, pi1 = _pos(i, n), _pos(i + 1, n)
    zdelta = spectral if i == 0 else ONE
    zdelta_inv = 1 / spectral if i == 0 else ONE
    entries = {}
    for alpha in space.basis():
        ai, ai1 = alpha[pi], alpha[pi1]
        if gen == "k":
            sign = 1 if kind == "V" else -1
            entries[(alpha,)] = {(alpha,): RatFunc.monomial({"q": sign * (ai - ai1)})}
            continue
        if gen == "kinv":
            sign = 1 if kind == "V" else -1
            entries[(alpha,)] = {(alpha,): RatFunc.monomial({"q": -sign * (ai - ai1)})}
            continue
        if kind == "V":
            if gen == "e":
                coeff = zdelta * qnumber(ai1)
                target = wt.shift(alpha, i, i + 1)
            else:
                coeff = zdelta_inv * qnumber(ai)
                target = wt.shift(alpha, i + 1, i)
        elif kind == "Vstar":
            if gen == "e":
                coeff = -zdelta * qnumber(ai1 + 1) * RatFunc.monomial({"q": -ai + ai1 + 2})
                target = wt.shift(alpha, i + 1, i)
            else:
                coeff = -zdelta_inv * qnumber(ai + 1) * RatFunc.monomial({"q": ai - ai1})
                target = wt.shift(alpha, i, i + 1)
        else:  # Vvee
            if gen == "e":
                coeff = zdelta * qnumber(ai)
                target = wt.shift(alpha, i + 1, i)
            else:
                coeff = zdelta_inv * qnumber(ai1)
                target = wt.shift(alpha, i, i + 1)
        if coeff.is_zero() or not wt.is_valid(target):
            continue
        entries[(alpha,)] = {(target,): coeff}
    return OperatorTable.build((space,), (space,), entries)


def act_coideal(kind: str, n: int, l: int, variant: str, i: int,
                spectral: RatFunc) -> OperatorTable:
    """Action of the coideal generator.

    variant "b":      -e_i + q^2 k_i f_i + q/(1-q) k_i       (coefficients in q)
    variant "bprime":  e_i + q k_i f_i + p/(1-q) k_i          at q = -p^2,
    the whole table carried in the variable p.
    """
    E = act_generator(kind, n, l, "e", i, spectral)
    F = act_generator(kind, n, l, "f", i, spectral)
    K = act_generator(kind, n, l, "k", i, spectral)
    if variant == "b":
        return E.scale(-1) + K.compose(F).scale(Q ** 2) + K.scale(Q / (1 - Q))
    if variant == "bprime":
        qp = -P ** 2
        sub = {"q": qp}
        E, F, K = E.substitute(sub), F.substitute(sub), K.substitute(sub)
        return E + K.compose(F).scale(qp) + K.scale(P / (1 - qp))
    raise ValueError(f"unknown coideal variant {variant!r}")


# -- tensor products ----------------------------------------------------------

def tensor_act(spaces: Sequence[Space], gen: str, i: int) -> OperatorTable:
    """Coproduct action on a two-factor tensor product:
    e -> 1 x e + e x k,  f -> f x 1 + k^-1 x f,  k^±1 -> k^±1 x k^±1."""
    if len(spaces) != 2:
        raise ValueError("tensor_act expects exactly two factors")
    s1, s2 = spaces

    def g(space: Space, name: str) -> OperatorTable:
        return act_generator(space.kind, space.n, space.l, name, i, space.spectral)

    if gen == "e":
        return (OperatorTable.identity((s1,)).tensor(g(s2, "e"))
                + g(s1, "e").tensor(g(s2, "k")))
    if gen == "f":
        return (g(s1, "f").tensor(OperatorTable.identity((s2,)))
                + g(s1, "kinv").tensor(g(s2, "f")))
    if gen in ("k", "kinv"):
        return g(s1, gen).tensor(g(s2, gen))
    raise ValueError(f"unknown generator {gen!r}")


def tensor_coideal(spaces: Sequence[Space], i: int) -> OperatorTable:
    """Coproduct of the coideal generator:
    b_i x k_i + 1 x (-e_i + q^2 k_i f_i)."""
    s1, s2 = spaces
    b1 = act_coideal(s1.kind, s1.n, s1.l, "b", i, s1.spectral)
    k2 = act_generator(s2.kind, s2.n, s2.l, "k", i, s2.spectral)
    e2 = act_generator(s2.kind, s2.n, s2.l, "e", i, s2.spectral)
    f2 = act_generator(s2.kind, s2.n, s2.l, "f", i, s2.spectral)
    tail = e2.scale(-1) + k2.compose(f2).scale(Q ** 2)
    return b1.tensor(k2) + OperatorTable.identity((s1,)).tensor(tail)


# -- duality and equivalence ---------------------------------------------------

def antipode_table(kind: str, n: int, l: int, gen: str, i: int,
                   spectral: RatFunc) -> OperatorTable:
    """Action of the antipode image: S(e) = -e k^-1, S(f) = -k f, S(k) = k^-1."""
    if gen == "e":
        e = act_generator(kind, n, l, "e", i, spectral)
        kinv = act_generator(kind, n, l, "kinv", i, spectral)
        return e.compose(kinv).scale(-1)
    if gen == "f":
        f = act_generator(kind, n, l, "f", i, spectral)
        k = act_generator(kind, n, l, "k", i, spectral)
        return k.compose(f).scale(-1)
    if gen == "k":
        return act_generator(kind, n, l, "kinv", i, spectral)
    if gen == "kinv":
        return act_generator(kind, n, l, "k", i, spectral)
    raise ValueError(f"unknown generator {gen!r}")


def dual_pairing_check(n: int, l: int, gen: str, i: int,
                       spectral: RatFunc = None) -> VerifyReport:
    """(dual action of g on v*_a, paired with v_b) must equal
    (v*_a paired with S(g) acting on v_b), for every a, b."""
    z = spectral if spectral is not None else RatFunc.var("z")
    star = act_generator("Vstar", n, l, gen, i, z)
    sdual = antipode_table("V", n, l, gen, i, z)
    report = VerifyReport("dual-pairing", {"n": n, "l": l, "gen": gen, "i": i})
    basis = wt.enumerate_B(n, l)
    for a in basis:
        for b in basis:
            lhs = star.coefficient((a,), (b,))
            rhs = sdual.coefficient((b,), (a,))
            report.checked += 1
            diff = lhs - rhs
            if not diff.is_zero():
                report.record((a, b), diff.canonical())
    return report


def vee_star_diagonal(n: int, l: int) -> dict:
    """Diagonal identification between the dual and the vee space:
    entry (-q)^{indexed_sum(alpha)} * prod_i (q^2; q^2)_{alpha_i}."""
    from .exactalg import pochhammer
    out = {}
    for alpha in wt.enumerate_B(n, l):
        c = RatFunc.monomial({"q": wt.indexed_sum(alpha)},
                             coeff=(-1) ** (wt.indexed_sum(alpha) % 2))
        for a in alpha:
            c = c * pochhammer(Q ** 2, Q ** 2, a)
        out[alpha] = c
    return out


def vee_star_iso_check(n: int, l: int) -> VerifyReport:
    """Conjugating the vee representation at spectral value (-q)^n z by the
    diagonal map reproduces the dual representation at z, generator by
    generator."""
    z = RatFunc.var("z")
    shifted = ((-Q) ** n) * z
    D = vee_star_diagonal(n, l)
    report = VerifyReport("vee-star-equivalence", {"n": n, "l": l})
    for gen in ("e", "f", "k"):
        for i in range(n):
            star = act_generator("Vstar", n, l, gen, i, z)
            vee = act_generator("Vvee", n, l, gen, i, shifted)
            for alpha in wt.enumerate_B(n, l):
                for beta in wt.enumerate_B(n, l):
                    lhs = star.coefficient((alpha,), (beta,)) * D[alpha]
                    rhs = vee.coefficient((alpha,), (beta,)) * D[beta]
                    report.checked += 1
                    if not (lhs - rhs).is_zero():
                        report.record((gen, i, alpha, beta), (lhs - rhs).canonical())
    return report


def vee_star_iso(n: int, l: int) -> dict:
    return vee_star_diagonal(n, l)


# -- defining relations ---------------------------------------------------------

def cartan(n: int, i: int, j: int) -> int:
    i, j = i % n, j % n
    a = 2 if i == j else 0
    if i == (j + 1) % n:
        a -= 1
    if i == (j - 1) % n:
        a -= 1
    return a


def check_defining_relations(kind: str, n: int, l: int,
                             spectral: RatFunc = None) -> VerifyReport:
    """Chevalley-Serre presentation holds on the representation: Cartan
    commutativity, k-conjugation weights, [e_i, f_j], and the Serre
    relations with divided powers."""
    z = spectral if spectral is not None else RatFunc.var("z")
    report = VerifyReport("defining-relations", {"kind": kind, "n": n, "l": l})

    def g(name, i):
        return act_generator(kind, n, l, name, i, z)

    space = (Space(kind, n, l, z),)
    ident = OperatorTable.identity(space)

    from .exactalg import qfactorial

    for i in range(n):
        ki, kiv = g("k", i), g("kinv", i)
        d = ki.compose(kiv) - ident
        report.checked += 1
        if not d.is_zero():
            report.record(("k k^-1", i), "nonzero")
        for j in range(n):
            a = cartan(n, i, j)
            ej, fj = g("e", j), g("f", j)
            d = ki.compose(ej) - ej.compose(ki).scale(RatFunc.monomial({"q": a}))
            report.checked += 1
            if not d.is_zero():
                report.record(("k e k^-1", i, j), "nonzero")
            d = ki.compose(fj) - fj.compose(ki).scale(RatFunc.monomial({"q": -a}))
            report.checked += 1
            if not d.is_zero():
                report.record(("k f k^-1", i, j), "nonzero")
            ei, fi = g("e", i), g("f", i)
            comm = ei.compose(fj) - fj.compose(ei)
            if i == j:
                target = (ki - kiv).scale(1 / (Q - RatFunc.monomial({"q": -1})))
            else:
                target = OperatorTable.build(space, space, {})
            report.checked += 1
            if not (comm - target).is_zero():
                report.record(("[e,f]", i, j), "nonzero")
            if i != j and n >= 2:
                # Serre relations with exact divided powers x^(v) = x^v/[v]!
                for base_name in ("e", "f"):
                    xi = g(base_name, i)
                    xj = g(base_name, j)
                    top = 1 - a
                    acc = None
                    for v in range(top + 1):
                        term = _power(xi, top - v, ident).compose(xj).compose(_power(xi, v, ident))
                        term = term.scale(((-1) ** v) / (qfactorial(top - v) * qfactorial(v)))
                        acc = term if acc is None else acc + term
                    report.checked += 1
                    if not acc.is_zero():
                        report.record(("serre", base_name, i, j), "nonzero")
    return report


def _power(table: OperatorTable, v: int, ident: OperatorTable) -> OperatorTable:
    out = ident
    for _ in range(v):
        out = table.compose(out)
    return out


def check_weight_conservation(kind: str, n: int, l: int) -> VerifyReport:
    """Every generator table moves the label by +-(e_i - e_{i+1}) or fixes it."""
    z = RatFunc.var("z")
    report = VerifyReport("weight-conservation", {"kind": kind, "n": n, "l": l})
    for gen in ("e", "f", "k", "kinv"):
        for i in range(n):
            table = act_generator(kind, n, l, gen, i, z)
            for (a,), out_label, _ in table.iter_entries():
                b = out_label[0]
                delta = wt.sub(b, a)
                ok = (not any(delta)) or _is_unit_move(delta, i, n)
                report.checked += 1
                if not ok:
                    report.record((gen, i, a, b), "moves by a non-root step")
    return report


def _is_unit_move(delta, i, n):
    plus = wt.sub(wt.unit(n, i), wt.unit(n, i + 1))
    return delta == plus or delta == tuple(-d for d in plus)
