"""Weight functions, their quadratic convolution kernel, and the five
R-matrix element families with special-point factorizations.

Matrix element conventions: R(z) maps the basis vector pair (alpha, beta)
to output pairs written (delta, gamma), i.e. the first output slot carries
the second family's label.  Plain and double-dualized kinds conserve the
componentwise sum alpha + beta; the single-dualized kinds conserve the
difference alpha - beta.  All elements are exact RatFuncs.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

from . import weights as wt
from .exactalg import ONE, Q, RatFunc, ZERO, pochhammer, qbinomial
from .reps import OperatorTable, Space

R_KINDS = ("plain", "star", "starstar", "vee", "veevee")


def phibar(gamma, beta, lam: RatFunc, mu: RatFunc, base: RatFunc) -> RatFunc:
    """Support-restricted product of a Pochhammer ratio with per-component
    base-binomials; zero unless 0 <= gamma <= beta componentwise."""
    gamma, beta = tuple(gamma), tuple(beta)
    if len(gamma) != len(beta):
        raise ValueError("phibar needs equal lengths")
    if any(g < 0 for g in gamma) or not wt.dominated_by(gamma, beta):
        return ZERO
    g, b = wt.total(gamma), wt.total(beta)
    out = pochhammer(lam, base, g) * pochhammer(mu / lam, base, b - g) / pochhammer(mu, base, b)
    for bi, gi in zip(beta, gamma):
        out = out * qbinomial(bi, gi, base)
    return out


def phi(gamma, beta, lam: RatFunc, mu: RatFunc, base: RatFunc) -> RatFunc:
    """phibar with the base^{cross(beta-gamma, gamma)} (mu/lam)^{|gamma|}
    prefactor."""
    bar = phibar(gamma, beta, lam, mu, base)
    if bar.is_zero():
        return ZERO
    e = wt.cross(wt.sub(beta, gamma), gamma)
    return base ** e * (mu / lam) ** wt.total(gamma) * bar


def a_elem(n: int, l: int, m: int, gamma, delta, alpha, beta,
           z: RatFunc) -> RatFunc:
    """Quadratic convolution of weight functions over truncated labels.

    gamma, alpha have degree l; delta, beta have degree m.  The sum runs over
    the finitely many splittings xi + eta = trunc(gamma) + trunc(delta) with
    xi >= trunc(delta) and eta <= trunc(beta).
    """
    base = Q ** 2
    gt, dt = wt.drop_last(gamma), wt.drop_last(delta)
    bt = wt.drop_last(beta)
    target = wt.add(gt, dt)
    lam1 = RatFunc.monomial({"q": m - l}) * z
    mu1 = RatFunc.monomial({"q": -l - m}) * z
    lam2 = RatFunc.monomial({"q": -l - m}) / z
    mu2 = RatFunc.monomial({"q": -2 * m})
    acc = ZERO
    for eta in wt.box([0] * len(target), [min(t, b) for t, b in zip(target, bt)]):
        xi = wt.sub(target, eta)
        if not wt.dominated_by(dt, xi):
            continue
        p1 = phi(wt.sub(xi, dt), xi, lam1, mu1, base)
        if p1.is_zero():
            continue
        p2 = phi(eta, bt, lam2, mu2, base)
        if p2.is_zero():
            continue
        acc = acc + p1 * p2
    if acc.is_zero():
        return ZERO
    e = wt.cross(alpha, beta) - wt.cross(delta, gamma)
    return RatFunc.monomial({"q": e}) * acc


def r_elem(kind: str, n: int, l: int, m: int, gamma, delta, alpha, beta,
           z: RatFunc) -> RatFunc:
    """Single matrix element of the chosen R family at spectral argument z."""
    if kind == "plain":
        if wt.add(gamma, delta) != wt.add(alpha, beta):
            return ZERO
        return a_elem(n, m, l, delta, gamma, beta, alpha, z)
    if kind == "star":
        if wt.sub(gamma, delta) != wt.sub(alpha, beta):
            return ZERO
        return a_elem(n, m, l, wt.reverse(delta), wt.reverse(alpha),
                      wt.reverse(beta), wt.reverse(gamma), 1 / z)
    if kind == "starstar":
        if wt.add(gamma, delta) != wt.add(alpha, beta):
            return ZERO
        return a_elem(n, l, m, wt.reverse(alpha), wt.reverse(beta),
                      wt.reverse(gamma), wt.reverse(delta), z)
    if kind == "vee":
        if wt.sub(gamma, delta) != wt.sub(alpha, beta):
            return ZERO
        arg = ((-Q) ** n) / z
        core = a_elem(n, m, l, beta, gamma, delta, alpha, arg)
        if core.is_zero():
            return ZERO
        e = wt.indexed_sum(wt.sub(beta, delta))
        pref = RatFunc.monomial({"q": e}, coeff=(-1) ** (e % 2))
        for bi, di in zip(beta, delta):
            pref = pref * pochhammer(Q ** 2, Q ** 2, bi) / pochhammer(Q ** 2, Q ** 2, di)
        return pref * core
    if kind == "veevee":
        if wt.add(gamma, delta) != wt.add(alpha, beta):
            return ZERO
        return a_elem(n, l, m, gamma, delta, alpha, beta, z)
    raise ValueError(f"unknown R kind {kind!r}")


_SPACE_MAP = {
    "plain": ("V", "V"),
    "star": ("Vstar", "V"),
    "starstar": ("Vstar", "Vstar"),
    "vee": ("Vvee", "V"),
    "veevee": ("Vvee", "Vvee"),
}


def r_spaces(kind: str, n: int, l: int, m: int, zl: RatFunc, zm: RatFunc):
    k1, k2 = _SPACE_MAP[kind]
    dom = (Space(k1, n, l, zl), Space(k2, n, m, zm))
    cod = (Space(k2, n, m, zm), Space(k1, n, l, zl))
    return dom, cod


@lru_cache(maxsize=None)
def _r_table_symbolic(kind: str, n: int, l: int, m: int) -> OperatorTable:
    z = RatFunc.var("z")
    dom, cod = r_spaces(kind, n, l, m, z, ONE)
    entries = {}
    conserve_sum = kind in ("plain", "starstar", "veevee")
    for alpha in wt.enumerate_B(n, l):
        for beta in wt.enumerate_B(n, m):
            col = {}
            for gamma in wt.enumerate_B(n, l):
                if conserve_sum:
                    delta = wt.sub(wt.add(alpha, beta), gamma)
                else:
                    delta = wt.sub(beta, wt.sub(alpha, gamma))
                if not wt.is_valid(delta):
                    continue
                val = r_elem(kind, n, l, m, gamma, delta, alpha, beta, z)
                if not val.is_zero():
                    col[(delta, gamma)] = val
            if col:
                entries[(alpha, beta)] = col
    return OperatorTable.build(dom, cod, entries)


def r_table(kind: str, n: int, l: int, m: int, z: RatFunc,
            zl: RatFunc = None, zm: RatFunc = None) -> OperatorTable:
    """Full sparse R table; built once per (kind, n, l, m) in the symbol z
    and specialized by substitution.

    zl, zm tag the two factor spaces (they only label the Space records; the
    matrix itself depends on the single ratio z).
    """
    base = _r_table_symbolic(kind, n, l, m)
    table = base if z == RatFunc.var("z") else base.substitute({"z": z})
    if zl is not None or zm is not None:
        dom, cod = r_spaces(kind, n, l, m,
                            zl if zl is not None else table.domain[0].spectral,
                            zm if zm is not None else table.domain[1].spectral)
        table = OperatorTable(dom, cod, table.entries)
    return table


def r_special(kind: str, n: int, l: int, m: int, gamma, delta, alpha, beta) -> RatFunc:
    """Factorized elements at the simplifying spectral points:
    plain at z = q^{m-l} (needs l >= m), star at z = q^{m+l},
    starstar at z = q^{l-m} (needs l <= m)."""
    if kind == "plain":
        if l < m:
            raise ValueError("plain special point needs l >= m")
        if wt.add(gamma, delta) != wt.add(alpha, beta) or not wt.dominated_by(delta, alpha):
            return ZERO
        ad = wt.sub(alpha, delta)
        e = wt.cross(beta, ad) + wt.cross(ad, delta)
        out = RatFunc.monomial({"q": e}) / qbinomial(l, m, Q ** 2)
        for ai, di in zip(alpha, delta):
            out = out * qbinomial(ai, di, Q ** 2)
        return out
    if kind == "star":
        if wt.sub(gamma, delta) != wt.sub(alpha, beta):
            return ZERO
        e = wt.cross(delta, alpha) + wt.cross(gamma, beta)
        out = RatFunc.monomial({"q": e}) / qbinomial(l + m, m, Q ** 2)
        for ai, di in zip(alpha, delta):
            out = out * qbinomial(ai + di, ai, Q ** 2)
        return out
    if kind == "starstar":
        if l > m:
            raise ValueError("starstar special point needs l <= m")
        if wt.add(gamma, delta) != wt.add(alpha, beta) or not wt.dominated_by(alpha, delta):
            return ZERO
        bg = wt.sub(beta, gamma)
        e = wt.cross(alpha, bg) + wt.cross(bg, gamma)
        out = RatFunc.monomial({"q": e}) / qbinomial(m, l, Q ** 2)
        for ai, di in zip(alpha, delta):
            out = out * qbinomial(di, ai, Q ** 2)
        return out
    raise ValueError(f"no special point implemented for kind {kind!r}")


def gauge_transform(kind: str, elem_fn, phi1, phi2, phi3, lam: RatFunc, mu: RatFunc):
    """Wrap an element function with the bilinear/linear exponent gauge.

    phi1 is bilinear in two integer vectors, phi2 and phi3 linear in one;
    the wrapped function multiplies each element by the corresponding
    q- and lam/mu-power.  Kinds: plain / star / starstar script families.
    """
    def wrapped(alpha, beta, gamma, delta):
        val = elem_fn(alpha, beta, gamma, delta)
        if val.is_zero():
            return val
        if kind == "plain":
            e1 = phi1(delta, gamma) - phi1(alpha, beta)
            return val * RatFunc.monomial({"q": e1}) * (lam / mu) ** phi2(wt.sub(gamma, alpha))
        if kind == "star":
            e1 = phi1(alpha, delta) - phi1(beta, gamma)
            return (val * RatFunc.monomial({"q": e1})
                    * lam ** phi3(wt.sub(gamma, alpha)) * mu ** phi2(wt.sub(delta, beta)))
        if kind == "starstar":
            e1 = phi1(beta, alpha) - phi1(gamma, delta)
            return val * RatFunc.monomial({"q": e1}) * (lam / mu) ** phi3(wt.sub(gamma, alpha))
        raise ValueError(f"unknown gauge kind {kind!r}")
    return wrapped


def vee_normalizer(n: int, l: int, m: int, z: RatFunc) -> RatFunc:
    """Reference element of the vee-kind table used to normalize its q->0
    limit: value at the pair (l e_1, m e_2) -> (l e_1, m e_2)."""
    mq = -Q
    out = ((mq ** (1 - n)) * z) ** m
    num = pochhammer(RatFunc.monomial({"q": l - m + n}) / z, Q ** 2, m)
    den = pochhammer(RatFunc.monomial({"q": l - m - n + 2}) * z, Q ** 2, m)
    return out * num / den
