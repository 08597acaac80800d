"""Exact scalar arithmetic: multivariate polynomials, rational functions,
truncated power series, and q-calculus helpers.

Every scalar in this package is a ratio of integer-coefficient polynomials
in the fixed variable set (q, p, z, x, y, lam, mu, nu, w).  Fractions are
kept in canonical reduced form at all times: gcd(num, den) = 1 and the
denominator's leading coefficient under the graded-lex monomial order is
positive.  No floating point appears anywhere.

The polynomial engine is sympy's sparse ring/field machinery over ZZ
(gmpy2-backed); this module owns the canonical order, the string form and
the operations the rest of the package relies on (substitution, rational
evaluation, leading-order extraction in one variable, q-Pochhammer /
q-binomial / q-integer construction, truncated series arithmetic).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence, Union

from sympy.polys.domains import ZZ
from sympy.polys.fields import field

VARS = ("q", "p", "z", "x", "y", "lam", "mu", "nu", "w")
_VAR_INDEX = {name: i for i, name in enumerate(VARS)}

_FIELD, *_FGENS = field(",".join(VARS), ZZ, order="grlex")
_RING = _FIELD.ring

Scalar = Union["RatFunc", int, Fraction]


def _coerce_fe(value):
    """Lift ints, Fractions and RatFuncs to a field element."""
    if isinstance(value, RatFunc):
        return value.fe
    if isinstance(value, int):
        return _FIELD.ground_new(ZZ(value))
    if isinstance(value, Fraction):
        num = _FIELD.ground_new(ZZ(value.numerator))
        return num / _FIELD.ground_new(ZZ(value.denominator))
    raise TypeError(f"cannot interpret {value!r} as an exact scalar")


def _term_sort_key(monom):
    # Ascending total degree; inside a degree level the variable earlier in
    # VARS comes first ("q + z", never "z + q").
    return (sum(monom), tuple(-e for e in monom))


def _poly_str(pe) -> str:
    if not pe:
        return "0"
    parts = []
    for monom, coeff in sorted(pe.terms(), key=lambda t: _term_sort_key(t[0])):
        c = int(coeff)
        factors = []
        for name, e in zip(VARS, monom):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        if not factors:
            body = str(abs(c))
        elif abs(c) == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(abs(c))] + factors)
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts)


class MultiPoly:
    """Sparse multivariate polynomial over the fixed variable set.

    Thin wrapper over a sympy ring element; stored terms never carry a zero
    coefficient and exponent vectors always have length len(VARS).
    """

    __slots__ = ("pe",)

    def __init__(self, pe):
        self.pe = pe

    @staticmethod
    def from_terms(terms: Mapping[tuple, int]) -> "MultiPoly":
        return MultiPoly(_RING.from_dict({m: ZZ(c) for m, c in terms.items() if c}))

    @staticmethod
    def from_int(value: int) -> "MultiPoly":
        return MultiPoly(_RING.ground_new(ZZ(value)))

    @staticmethod
    def var(name: str) -> "MultiPoly":
        return MultiPoly(_RING.gens[_VAR_INDEX[name]])

    @property
    def terms(self) -> dict:
        return {monom: int(c) for monom, c in self.pe.terms()}

    def is_zero(self) -> bool:
        return not self.pe

    def degree(self, name: str) -> int:
        d = self.pe.degree(_VAR_INDEX[name])
        # sympy reports the zero polynomial's degree as -inf
        return d if self.pe else 0

    def __add__(self, other):
        other = other.pe if isinstance(other, MultiPoly) else _RING.ground_new(ZZ(other))
        return MultiPoly(self.pe + other)

    def __sub__(self, other):
        other = other.pe if isinstance(other, MultiPoly) else _RING.ground_new(ZZ(other))
        return MultiPoly(self.pe - other)

    def __neg__(self):
        return MultiPoly(-self.pe)

    def __mul__(self, other):
        other = other.pe if isinstance(other, MultiPoly) else _RING.ground_new(ZZ(other))
        return MultiPoly(self.pe * other)

    __radd__ = __add__
    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("MultiPoly powers must be nonnegative")
        return MultiPoly(self.pe ** n)

    def gcd(self, other: "MultiPoly") -> "MultiPoly":
        return MultiPoly(self.pe.gcd(other.pe))

    def exact_div(self, other: "MultiPoly") -> "MultiPoly":
        q, r = self.pe.div(other.pe)
        if r:
            raise ValueError("exact_div: division is not exact")
        return MultiPoly(q)

    def __eq__(self, other):
        return isinstance(other, MultiPoly) and self.pe == other.pe

    def __hash__(self):
        return hash(self.pe)

    def __str__(self):
        return _poly_str(self.pe)

    def __repr__(self):
        return f"MultiPoly({_poly_str(self.pe)})"


class RatFunc:
    """Reduced ratio of two MultiPolys; the universal scalar type.

    Invariants: gcd(num, den) = 1, den != 0, and den's leading coefficient
    under the canonical (grlex) order is positive.  Values are immutable and
    hashable; all operations are pure.
    """

    __slots__ = ("fe",)

    def __init__(self, fe):
        self.fe = fe

    # -- constructors ------------------------------------------------------

    @staticmethod
    def from_int(value: int) -> "RatFunc":
        return RatFunc(_coerce_fe(value))

    @staticmethod
    def from_fraction(value: Fraction) -> "RatFunc":
        return RatFunc(_coerce_fe(value))

    @staticmethod
    def var(name: str) -> "RatFunc":
        return RatFunc(_FIELD.gens[_VAR_INDEX[name]])

    @staticmethod
    def monomial(powers: Mapping[str, int], coeff: int = 1) -> "RatFunc":
        """Monomial with integer (possibly negative) exponents."""
        num = {}
        den = {}
        for name, e in powers.items():
            i = _VAR_INDEX[name]
            if e > 0:
                num[i] = e
            elif e < 0:
                den[i] = -e
        def build(d, c):
            m = [0] * len(VARS)
            for i, e in d.items():
                m[i] = e
            return _RING.from_dict({tuple(m): ZZ(c)})
        return RatFunc(_FIELD.new(build(num, coeff), build(den, 1)))

    # -- structure ---------------------------------------------------------

    @property
    def num(self) -> MultiPoly:
        return MultiPoly(self.fe.numer)

    @property
    def den(self) -> MultiPoly:
        return MultiPoly(self.fe.denom)

    def is_zero(self) -> bool:
        return not self.fe.numer

    def is_one(self) -> bool:
        return self.fe == _FIELD.one

    def variables(self) -> set:
        used = set()
        for pe in (self.fe.numer, self.fe.denom):
            for monom, _ in pe.terms():
                for name, e in zip(VARS, monom):
                    if e:
                        used.add(name)
        return used

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        return RatFunc(self.fe + _coerce_fe(other))

    def __radd__(self, other):
        return RatFunc(_coerce_fe(other) + self.fe)

    def __sub__(self, other):
        return RatFunc(self.fe - _coerce_fe(other))

    def __rsub__(self, other):
        return RatFunc(_coerce_fe(other) - self.fe)

    def __mul__(self, other):
        return RatFunc(self.fe * _coerce_fe(other))

    def __rmul__(self, other):
        return RatFunc(_coerce_fe(other) * self.fe)

    def __truediv__(self, other):
        fe = _coerce_fe(other)
        if not fe.numer:
            raise ZeroDivisionError("division by the zero rational function")
        return RatFunc(self.fe / fe)

    def __rtruediv__(self, other):
        if not self.fe.numer:
            raise ZeroDivisionError("division by the zero rational function")
        return RatFunc(_coerce_fe(other) / self.fe)

    def __neg__(self):
        return RatFunc(-self.fe)

    def __pow__(self, n: int):
        if n >= 0:
            return RatFunc(self.fe ** n)
        if not self.fe.numer:
            raise ZeroDivisionError("negative power of zero")
        return RatFunc((_FIELD.one / self.fe) ** (-n))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = _coerce_fe(other)
            return self.fe == other
        return isinstance(other, RatFunc) and self.fe == other.fe

    def __hash__(self):
        return hash(self.fe)

    def __bool__(self):
        return bool(self.fe.numer)

    # -- operations --------------------------------------------------------

    def substitute(self, bindings: Mapping[str, "RatFunc"]) -> "RatFunc":
        """Exact composition f(..., v -> g_v, ...), reduced.

        Raises ZeroDivisionError when the composed denominator vanishes
        identically.
        """
        if not bindings:
            return self
        vals = {_VAR_INDEX[name]: _coerce_fe(val) for name, val in bindings.items()}
        num = _subst_poly(self.fe.numer, vals)
        den = _subst_poly(self.fe.denom, vals)
        if not den.numer:
            raise ZeroDivisionError("substitution makes the denominator vanish identically")
        return RatFunc(num / den)

    def eval_rational(self, bindings: Mapping[str, Fraction]) -> Fraction:
        """Evaluate at rational points; every variable occurring must be bound."""
        vals = {}
        for name, v in bindings.items():
            vals[_VAR_INDEX[name]] = Fraction(v)
        num = _eval_poly(self.fe.numer, vals)
        den = _eval_poly(self.fe.denom, vals)
        if den == 0:
            raise ZeroDivisionError("denominator vanishes at the sample point")
        return num / den

    def lowest_order(self, name: str):
        """Write f = var^k (c + O(var)) with c nonzero at var=0; return (k, c).

        k = ord_var(num) - ord_var(den); c is a RatFunc free of var.
        """
        if self.is_zero():
            raise ValueError("lowest_order of the zero function is undefined")
        i = _VAR_INDEX[name]
        onum, lnum = _poly_lowest(self.fe.numer, i)
        oden, lden = _poly_lowest(self.fe.denom, i)
        return onum - oden, RatFunc(_FIELD.new(lnum, lden))

    def as_monomial_in(self, name: str):
        """If f is +/- coeff * var^k with a pure integer coeff, return (k, coeff).

        Returns None otherwise.  Used by the q->0 limit extraction where a
        surviving element must be exactly a z power.
        """
        i = _VAR_INDEX[name]
        nt = self.fe.numer.terms()
        dt = self.fe.denom.terms()
        if len(nt) != 1 or len(dt) != 1:
            return None
        (mn, cn), (md, cd) = nt[0], dt[0]
        if any(e and j != i for j, e in enumerate(mn)):
            return None
        if any(e and j != i for j, e in enumerate(md)):
            return None
        if int(cd) not in (1, -1):
            return None
        return mn[i] - md[i], int(cn) * int(cd)

    # -- presentation ------------------------------------------------------

    def num_str(self) -> str:
        return _poly_str(self.fe.numer)

    def den_str(self) -> str:
        return _poly_str(self.fe.denom)

    def canonical(self) -> str:
        return f"num: {self.num_str()}; den: {self.den_str()}"

    def __str__(self):
        return self.canonical()

    def __repr__(self):
        return f"RatFunc({self.num_str()!r}, {self.den_str()!r})"


def _subst_poly(pe, vals):
    """Substitute field elements for variables in a ring element; returns a
    field element.  Horner over each substituted variable would be overkill
    for the moderate polynomials this is applied to."""
    pw = {}

    def power(i, e):
        key = (i, e)
        if key not in pw:
            pw[key] = vals[i] ** e
        return pw[key]

    out = _FIELD.zero
    for monom, coeff in pe.terms():
        keep = [0] * len(VARS)
        term = _FIELD.ground_new(coeff)
        for i, e in enumerate(monom):
            if not e:
                continue
            if i in vals:
                term = term * power(i, e)
            else:
                keep[i] = e
        if any(keep):
            term = term * _FIELD.new(_RING.from_dict({tuple(keep): ZZ(1)}), _RING.one)
        out = out + term
    return out


def _eval_poly(pe, vals) -> Fraction:
    out = Fraction(0)
    pw = {}

    def power(i, e):
        key = (i, e)
        if key not in pw:
            pw[key] = vals[i] ** e
        return pw[key]

    for monom, coeff in pe.terms():
        term = Fraction(int(coeff))
        for i, e in enumerate(monom):
            if not e:
                continue
            if i not in vals:
                raise ValueError(f"unbound variable {VARS[i]} in rational evaluation")
            term *= power(i, e)
        out += term
    return out


def _poly_lowest(pe, i):
    """(order, coefficient-poly) of the lowest power of variable i in pe."""
    order = min(m[i] for m, _ in pe.terms())
    low = {}
    for monom, coeff in pe.terms():
        if monom[i] == order:
            m = list(monom)
            m[i] = 0
            low[tuple(m)] = coeff
    return order, _RING.from_dict(low)


# -- common constants ------------------------------------------------------

ZERO = RatFunc.from_int(0)
ONE = RatFunc.from_int(1)
Q = RatFunc.var("q")
P = RatFunc.var("p")
ZVAR = RatFunc.var("z")
XVAR = RatFunc.var("x")
YVAR = RatFunc.var("y")
LAM = RatFunc.var("lam")
MU = RatFunc.var("mu")
NU = RatFunc.var("nu")
WVAR = RatFunc.var("w")


def qpow(k: int) -> RatFunc:
    """q^k for any integer k, cleared of negative powers."""
    return RatFunc.monomial({"q": k})


# -- q-calculus ------------------------------------------------------------

@lru_cache(maxsize=None)
def qnumber(u: int) -> RatFunc:
    """(q^u - q^-u)/(q - q^-1) as a reduced rational function."""
    return (qpow(u) - qpow(-u)) / (Q - qpow(-1))


@lru_cache(maxsize=None)
def qfactorial(m: int) -> RatFunc:
    if m < 0:
        raise ValueError("q-factorial of a negative integer")
    out = ONE
    for j in range(1, m + 1):
        out = out * qnumber(j)
    return out


def pochhammer(x: Scalar, base: Scalar, m: int) -> RatFunc:
    """(x; base)_m = prod_{k=1}^m (1 - x*base^(k-1)); base may be q, q^2, ..."""
    if m < 0:
        raise ValueError("Pochhammer order must be nonnegative")
    key = (x if isinstance(x, RatFunc) else RatFunc.from_int(x),
           base if isinstance(base, RatFunc) else RatFunc.from_int(base))
    return _poch_cached(key[0], key[1], m)


@lru_cache(maxsize=None)
def _poch_cached(x: RatFunc, base: RatFunc, m: int) -> RatFunc:
    if m == 0:
        return ONE
    return _poch_cached(x, base, m - 1) * (ONE - x * base ** (m - 1))


def qbinomial(l: int, m: int, base: Scalar = None) -> RatFunc:
    """Gaussian binomial coefficient in the given base (default q)."""
    if m < 0 or m > l:
        return ZERO
    b = Q if base is None else (base if isinstance(base, RatFunc) else RatFunc.from_int(base))
    return _qbinom_cached(l, m, b)


@lru_cache(maxsize=None)
def _qbinom_cached(l: int, m: int, b: RatFunc) -> RatFunc:
    num = pochhammer(b, b, l)
    return num / (pochhammer(b, b, l - m) * pochhammer(b, b, m))


def qcalc(kind: str, *args) -> RatFunc:
    """Dispatcher over the q-calculus helpers: qnumber / pochhammer / qbinomial."""
    if kind == "qnumber":
        return qnumber(*args)
    if kind == "pochhammer":
        return pochhammer(*args)
    if kind == "qbinomial":
        return qbinomial(*args)
    raise ValueError(f"unknown q-calculus kind {kind!r}")


# -- truncated power series -------------------------------------------------

class PowerSeries:
    """Truncated formal power series in one distinguished variable.

    Coefficients are RatFuncs in the remaining variables; the list always has
    truncation_order + 1 entries.
    """

    __slots__ = ("var", "coeffs")

    def __init__(self, var: str, coeffs: Sequence[RatFunc]):
        if var not in VARS:
            raise ValueError(f"unknown series variable {var!r}")
        self.var = var
        self.coeffs = list(coeffs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @staticmethod
    def constant(var: str, value: Scalar, order: int) -> "PowerSeries":
        c = value if isinstance(value, RatFunc) else RatFunc.from_int(value)
        return PowerSeries(var, [c] + [ZERO] * order)

    @staticmethod
    def expand(f: RatFunc, var: str, order: int) -> "PowerSeries":
        """Series expansion of a rational function regular at var=0."""
        i = _VAR_INDEX[var]
        num = _coeff_list(f.fe.numer, i, order)
        den = _coeff_list(f.fe.denom, i, order)
        if den[0].is_zero():
            raise ZeroDivisionError("expansion point var=0 is a pole")
        out = []
        for k in range(order + 1):
            acc = num[k]
            for j in range(1, k + 1):
                acc = acc - den[j] * out[k - j]
            out.append(acc / den[0])
        return PowerSeries(var, out)

    def __add__(self, other: "PowerSeries") -> "PowerSeries":
        if self.var != other.var:
            raise ValueError("series addition requires the same distinguished variable")
        n = min(self.order, other.order)
        return PowerSeries(self.var, [self.coeffs[k] + other.coeffs[k] for k in range(n + 1)])

    def __sub__(self, other: "PowerSeries") -> "PowerSeries":
        if self.var != other.var:
            raise ValueError("series subtraction requires the same distinguished variable")
        n = min(self.order, other.order)
        return PowerSeries(self.var, [self.coeffs[k] - other.coeffs[k] for k in range(n + 1)])

    def __mul__(self, other: "PowerSeries") -> "PowerSeries":
        if self.var != other.var:
            raise ValueError("series product requires the same distinguished variable")
        n = min(self.order, other.order)
        out = []
        for k in range(n + 1):
            acc = ZERO
            for j in range(k + 1):
                acc = acc + self.coeffs[j] * other.coeffs[k - j]
            out.append(acc)
        return PowerSeries(self.var, out)

    def scale(self, c: Scalar) -> "PowerSeries":
        c = c if isinstance(c, RatFunc) else RatFunc.from_int(c)
        return PowerSeries(self.var, [c * a for a in self.coeffs])

    def truncate(self, order: int) -> "PowerSeries":
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return PowerSeries(self.var, self.coeffs[: order + 1])

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def __eq__(self, other):
        return (isinstance(other, PowerSeries) and self.var == other.var
                and self.order == other.order
                and all(a == b for a, b in zip(self.coeffs, other.coeffs)))

    def __repr__(self):
        return f"PowerSeries({self.var!r}, order={self.order})"


def series_ops(a: PowerSeries, b: PowerSeries, op: str, order: int) -> PowerSeries:
    if op == "add":
        return (a + b).truncate(min(order, a.order, b.order))
    if op == "mul":
        return (a * b).truncate(min(order, a.order, b.order))
    raise ValueError(f"unknown series operation {op!r}")


def _coeff_list(pe, i, order):
    """Coefficients of var_i^0..var_i^order of a ring element, as RatFuncs."""
    buckets = [dict() for _ in range(order + 1)]
    for monom, coeff in pe.terms():
        e = monom[i]
        if e <= order:
            m = list(monom)
            m[i] = 0
            buckets[e][tuple(m)] = coeff
    return [RatFunc(_FIELD.new(_RING.from_dict(b), _RING.one)) for b in buckets]


def hyper_phi_series(a: Scalar, b: Scalar, c: Scalar, q_val: Scalar,
                     arg_coeff: Scalar, var: str, order: int) -> PowerSeries:
    """The 2-phi-1 basic hypergeometric series with argument arg_coeff*var,
    truncated at the given order.

    Coefficient recurrence: t_0 = 1 and
    t_{m+1} = t_m * (1 - a q^m)(1 - b q^m) / ((1 - q^{m+1})(1 - c q^m)) * arg_coeff.
    """
    conv = lambda v: v if isinstance(v, RatFunc) else (
        RatFunc.from_fraction(v) if isinstance(v, Fraction) else RatFunc.from_int(v))
    a, b, c, q_val, arg_coeff = map(conv, (a, b, c, q_val, arg_coeff))
    coeffs = [ONE]
    qm = ONE
    for m in range(order):
        ratio = ((ONE - a * qm) * (ONE - b * qm)) / ((ONE - q_val ** (m + 1)) * (ONE - c * qm))
        coeffs.append(coeffs[-1] * ratio * arg_coeff)
        qm = qm * q_val
    return PowerSeries(var, coeffs)
