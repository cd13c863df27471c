"""Exact sparse multivariate polynomials and rational functions over Q.

``MPoly`` is a dict from exponent tuples to ``Fraction`` coefficients over an
ordered tuple of variable names.  ``RatFn`` is a quotient ``num / prod(factors)``
whose denominator is kept as a multiset of factors, so geometric-series
denominators such as ``1 - p^2*t^3`` survive arithmetic intact.

Variables are ordered globally (p < t < q < X1 < X2 < ... < Y < y1 < ... < n)
so that printed forms are reproducible.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import reduce
from typing import Dict, Iterable, Mapping, Sequence, Tuple, Union

from sympy.polys.domains import QQ
from sympy.polys.rings import ring as _sympy_ring

__all__ = [
    "MPoly",
    "RatFn",
    "var_key",
    "sort_variables",
    "canonicalize",
    "substitute",
    "invert_variables",
    "series_coefficients",
    "parse_mpoly",
    "monomial",
]

Exponent = Tuple[int, ...]
Number = Union[int, Fraction]

_BASE_ORDER = {"p": 0, "t": 1, "q": 2, "X": 3, "Y": 4, "y": 5, "n": 6}
_NAME_RE = re.compile(r"^([A-Za-z]+?)_?(\d*)$")


def var_key(name: str):
    """Sort key implementing the global variable order."""
    m = _NAME_RE.match(name)
    if m is None:
        return (99, name, 0)
    base, idx = m.group(1), m.group(2)
    rank = _BASE_ORDER.get(base, 50)
    return (rank, base, int(idx) if idx else 0)


def sort_variables(names: Iterable[str]) -> Tuple[str, ...]:
    return tuple(sorted(set(names), key=var_key))


def _frac(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    # gmpy2.mpq / sympy rationals
    return Fraction(int(c.numerator), int(c.denominator))


class MPoly:
    """Sparse polynomial with exact rational coefficients.

    >>> q = MPoly.var("q")
    >>> str(q**2 - 1)
    'q^2 - 1'
    """

    __slots__ = ("variables", "terms", "_hash")

    def __init__(self, variables: Sequence[str] = (), terms: Mapping[Exponent, Number] | None = None):
        variables = tuple(variables)
        ordered = sort_variables(variables)
        if len(ordered) != len(variables):
            raise ValueError(f"duplicate variables in {variables}")
        clean: Dict[Exponent, Fraction] = {}
        if terms:
            perm = None
            if ordered != variables:
                perm = [variables.index(v) for v in ordered]
            n = len(variables)
            for exp, c in terms.items():
                exp = tuple(exp)
                if len(exp) != n:
                    raise ValueError(f"exponent {exp} does not match variables {variables}")
                if any(e < 0 for e in exp):
                    raise ValueError(f"negative exponent {exp}; use RatFn for Laurent terms")
                c = _frac(c)
                if c == 0:
                    continue
                if perm is not None:
                    exp = tuple(exp[i] for i in perm)
                clean[exp] = clean.get(exp, Fraction(0)) + c
                if clean[exp] == 0:
                    del clean[exp]
        self.variables: Tuple[str, ...] = ordered
        self.terms: Dict[Exponent, Fraction] = clean
        self._hash = None

    # -- constructors ---------------------------------------------------
    @classmethod
    def const(cls, c: Number, variables: Sequence[str] = ()) -> "MPoly":
        variables = sort_variables(variables)
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def var(cls, name: str, power: int = 1) -> "MPoly":
        return cls((name,), {(power,): 1})

    @classmethod
    def zero(cls, variables: Sequence[str] = ()) -> "MPoly":
        return cls(variables, {})

    # -- basic queries --------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * len(self.variables), Fraction(0))

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def used_variables(self) -> Tuple[str, ...]:
        used = set()
        for exp in self.terms:
            for v, e in zip(self.variables, exp):
                if e:
                    used.add(v)
        return sort_variables(used)

    def degree(self, var: str | None = None) -> int:
        if not self.terms:
            return -1
        if var is None:
            return max(sum(e) for e in self.terms)
        if var not in self.variables:
            return 0
        i = self.variables.index(var)
        return max(e[i] for e in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def sorted_terms(self, descending: bool = True):
        """Terms in graded-lex order over the global variable order."""
        return sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]), reverse=descending)

    def leading_coefficient(self) -> Fraction:
        return self.sorted_terms()[0][1] if self.terms else Fraction(0)

    def content_monomial(self) -> Exponent:
        """Componentwise minimum exponent over all terms."""
        if not self.terms:
            return (0,) * len(self.variables)
        return tuple(min(col) for col in zip(*self.terms))

    # -- variable bookkeeping --------------------------------------------
    def with_variables(self, variables: Sequence[str]) -> "MPoly":
        """Re-embed into a superset of variables (sorted globally)."""
        variables = sort_variables(variables)
        if variables == self.variables:
            return self
        idx = []
        for v in self.variables:
            if v not in variables:
                raise ValueError(f"variable {v} missing from {variables}")
        pos = {v: i for i, v in enumerate(self.variables)}
        idx = [pos.get(v) for v in variables]
        terms = {tuple(exp[i] if i is not None else 0 for i in idx): c for exp, c in self.terms.items()}
        out = MPoly.__new__(MPoly)
        out.variables, out.terms, out._hash = variables, terms, None
        return out

    def trimmed(self) -> "MPoly":
        return self.with_variables_exact(self.used_variables())

    def with_variables_exact(self, variables: Sequence[str]) -> "MPoly":
        variables = sort_variables(variables)
        keep = [self.variables.index(v) for v in variables]
        terms = {}
        for exp, c in self.terms.items():
            if any(e for i, e in enumerate(exp) if i not in keep):
                raise ValueError("cannot drop a variable that is in use")
            terms[tuple(exp[i] for i in keep)] = c
        return MPoly(variables, terms)

    @staticmethod
    def _unify(a: "MPoly", b: "MPoly"):
        if a.variables == b.variables:
            return a, b
        vs = sort_variables(a.variables + b.variables)
        return a.with_variables(vs), b.with_variables(vs)

    @staticmethod
    def coerce(x, variables: Sequence[str] = ()) -> "MPoly":
        if isinstance(x, MPoly):
            return x
        if isinstance(x, (int, Fraction)):
            return MPoly.const(x, variables)
        raise TypeError(f"cannot coerce {type(x).__name__} to MPoly")

    # -- arithmetic -----------------------------------------------------
    def _raw(self, variables, terms) -> "MPoly":
        out = MPoly.__new__(MPoly)
        out.variables, out.terms, out._hash = variables, terms, None
        return out

    def __add__(self, other):
        if isinstance(other, RatFn):
            return NotImplemented
        other = MPoly.coerce(other, self.variables)
        a, b = MPoly._unify(self, other)
        terms = dict(a.terms)
        for exp, c in b.terms.items():
            s = terms.get(exp, 0) + c
            if s:
                terms[exp] = s
            else:
                terms.pop(exp, None)
        return self._raw(a.variables, terms)

    __radd__ = __add__

    def __neg__(self):
        return self._raw(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, RatFn):
            return NotImplemented
        return self + (-MPoly.coerce(other, self.variables))

    def __rsub__(self, other):
        return MPoly.coerce(other, self.variables) - self

    def __mul__(self, other):
        if isinstance(other, RatFn):
            return NotImplemented
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return self._raw(self.variables, {})
            return self._raw(self.variables, {e: c * other for e, c in self.terms.items()})
        a, b = MPoly._unify(self, other)
        terms: Dict[Exponent, Fraction] = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                s = terms.get(e, 0) + c1 * c2
                if s:
                    terms[e] = s
                else:
                    terms.pop(e, None)
        return self._raw(a.variables, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("MPoly powers must be non-negative integers")
        result = MPoly.const(1, self.variables)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / other)
        return RatFn(self) / other

    def shift(self, exps: Mapping[str, int]) -> "MPoly":
        """Multiply by the monomial prod v^exps[v]; negative shifts must stay polynomial."""
        vs = sort_variables(self.variables + tuple(exps))
        a = self.with_variables(vs)
        delta = tuple(exps.get(v, 0) for v in vs)
        return MPoly(vs, {tuple(x + y for x, y in zip(e, delta)): c for e, c in a.terms.items()})

    # -- evaluation / differentiation ------------------------------------
    def diff(self, var: str) -> "MPoly":
        if var not in self.variables:
            return MPoly.zero(self.variables)
        i = self.variables.index(var)
        terms = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = e[:i] + (e[i] - 1,) + e[i + 1:]
                terms[ne] = c * e[i]
        return MPoly(self.variables, terms)

    def evaluate(self, values: Mapping[str, Number]) -> "MPoly":
        """Partially evaluate at exact numbers; returns an MPoly in the remaining variables."""
        keep = [v for v in self.variables if v not in values]
        keep_idx = [self.variables.index(v) for v in keep]
        sub_idx = [(i, _frac(values[v])) for i, v in enumerate(self.variables) if v in values]
        terms: Dict[Exponent, Fraction] = {}
        for e, c in self.terms.items():
            val = c
            for i, x in sub_idx:
                if e[i]:
                    val *= x ** e[i]
            if val:
                ne = tuple(e[i] for i in keep_idx)
                terms[ne] = terms.get(ne, 0) + val
        return MPoly(keep, terms)

    def __call__(self, *args: Number) -> Fraction:
        if len(args) != len(self.variables):
            raise ValueError("wrong number of arguments")
        r = self.evaluate(dict(zip(self.variables, args)))
        return r.constant_term()

    def eval_mod(self, point: Sequence[int], p: int) -> int:
        """Value mod p at an integer point (coefficients must be p-integral)."""
        total = 0
        for e, c in self.terms.items():
            v = c.numerator * pow(c.denominator, -1, p)
            for x, k in zip(point, e):
                if k:
                    v *= pow(x, k, p)
            total += v
        return total % p

    # -- comparison / hashing --------------------------------------------
    def _key(self):
        t = self.trimmed() if self.terms else MPoly()
        return (t.variables, frozenset(t.terms.items()))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MPoly.const(other)
        if not isinstance(other, MPoly):
            return NotImplemented
        a, b = MPoly._unify(self, other)
        return a.terms == b.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._key())
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # -- printing -------------------------------------------------------
    def _monomial_str(self, exp: Exponent) -> str:
        parts = []
        for v, e in zip(self.variables, exp):
            if e == 1:
                parts.append(v)
            elif e:
                parts.append(f"{v}^{e}")
        return "*".join(parts)

    def to_string(self, descending: bool = True) -> str:
        if not self.terms:
            return "0"
        out = []
        for i, (exp, c) in enumerate(self.sorted_terms(descending)):
            mono = self._monomial_str(exp)
            a = abs(c)
            if mono and a == 1:
                body = mono
            elif mono:
                body = f"{a}*{mono}"
            else:
                body = str(a)
            if i == 0:
                out.append(("-" if c < 0 else "") + body)
            else:
                out.append((" - " if c < 0 else " + ") + body)
        return "".join(out)

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"MPoly({self.to_string()!r})"


def monomial(exps: Mapping[str, int], coeff: Number = 1) -> MPoly:
    vs = sort_variables(exps)
    return MPoly(vs, {tuple(exps[v] for v in vs): coeff})


# ---------------------------------------------------------------------------
# sympy bridge: only gcd and exact division go through here.


_RINGS: Dict[Tuple[str, ...], object] = {}


def _ring(variables: Tuple[str, ...]):
    R = _RINGS.get(variables)
    if R is None:
        R = _sympy_ring(list(variables), QQ)[0] if variables else _sympy_ring(["_c"], QQ)[0]
        _RINGS[variables] = R
    return R


def _to_sympy(f: MPoly):
    R = _ring(f.variables)
    if not f.variables:
        return R.from_dict({(0,): QQ(c.numerator, c.denominator) for e, c in f.terms.items()})
    return R.from_dict({e: QQ(c.numerator, c.denominator) for e, c in f.terms.items()})


def _from_sympy(g, variables: Tuple[str, ...]) -> MPoly:
    if not variables:
        return MPoly((), {(): _frac(c) for e, c in g.items()})
    return MPoly(variables, {tuple(e): _frac(c) for e, c in g.items()})


def _gcd(a: MPoly, b: MPoly) -> MPoly:
    a, b = MPoly._unify(a, b)
    g = _to_sympy(a).gcd(_to_sympy(b))
    return _from_sympy(g, a.variables)


def _exquo(a: MPoly, b: MPoly) -> MPoly | None:
    """a / b if b divides a exactly, else None."""
    a, b = MPoly._unify(a, b)
    q, r = _to_sympy(a).div(_to_sympy(b))
    if r:
        return None
    return _from_sympy(q, a.variables)


# ---------------------------------------------------------------------------


def _normalize_factor(f: MPoly):
    """Split f = scale * mono * g with g normalized.

    g has constant term 1 when f minus its monomial content has a constant
    term, otherwise g is monic in graded-lex order.
    """
    f = f.trimmed()
    mono = f.content_monomial()
    if any(mono):
        f = MPoly(f.variables, {tuple(x - y for x, y in zip(e, mono)): c for e, c in f.terms.items()})
    mono_d = {v: e for v, e in zip(f.variables, mono) if e}
    c0 = f.constant_term()
    scale = c0 if c0 else f.leading_coefficient()
    if scale != 1:
        f = f * (Fraction(1) / scale)
    return scale, mono_d, f


def _factor_sort_key(f: MPoly):
    return (f.degree(), len(f.terms), f.to_string(descending=False))


class RatFn:
    """Quotient of an MPoly numerator by a multiset of MPoly factors.

    Construction always canonicalizes: monomial content is cancelled, common
    polynomial factors are removed through a gcd, each remaining factor is
    normalized (constant term 1 where possible) and the overall constant is
    carried by the numerator.
    """

    __slots__ = ("num", "den_mono", "factors")

    def __init__(self, num, den=None, factors: Iterable[Tuple[MPoly, int]] | None = None, *, reduce_gcd: bool = True):
        num = MPoly.coerce(num)
        flist = []
        if den is not None:
            den = MPoly.coerce(den)
            if den.is_zero():
                raise ZeroDivisionError("division by zero polynomial")
            flist.append((den, 1))
        if factors:
            for f, k in factors:
                f = MPoly.coerce(f)
                if f.is_zero():
                    raise ZeroDivisionError("division by zero polynomial")
                if k:
                    flist.append((f, k))
        self._build(num, flist, reduce_gcd)

    # -- canonicalization ------------------------------------------------
    def _build(self, num: MPoly, flist, reduce_gcd: bool):
        scale = Fraction(1)
        den_mono: Dict[str, int] = {}
        merged: Dict[MPoly, int] = {}
        for f, k in flist:
            if k < 0:
                raise ValueError("factor multiplicities must be positive")
            s, mono, g = _normalize_factor(f)
            scale *= s ** k
            for v, e in mono.items():
                den_mono[v] = den_mono.get(v, 0) + e * k
            if not g.is_constant():
                merged[g] = merged.get(g, 0) + k
        num = num * (Fraction(1) / scale)
        if num.is_zero():
            self.num, self.den_mono, self.factors = MPoly(), {}, ()
            return
        num = num.trimmed()
        # cancel monomial content
        content = dict(zip(num.variables, num.content_monomial()))
        cancel = {}
        for v, e in den_mono.items():
            c = min(e, content.get(v, 0))
            if c:
                cancel[v] = c
        if cancel:
            num = num.shift({v: -c for v, c in cancel.items()}).trimmed()
            for v, c in cancel.items():
                den_mono[v] -= c
        den_mono = {v: e for v, e in den_mono.items() if e}
        if reduce_gcd and merged and not num.is_constant():
            num, merged = _cancel_factors(num, merged)
        self.num = num
        self.den_mono = den_mono
        self.factors = tuple(sorted(merged.items(), key=lambda fk: _factor_sort_key(fk[0])))

    # -- constructors ----------------------------------------------------
    @classmethod
    def const(cls, c: Number) -> "RatFn":
        return cls(MPoly.const(c))

    @classmethod
    def var(cls, name: str) -> "RatFn":
        return cls(MPoly.var(name))

    @classmethod
    def laurent_monomial(cls, exps: Mapping[str, int], coeff: Number = 1) -> "RatFn":
        pos = {v: e for v, e in exps.items() if e > 0}
        neg = {v: -e for v, e in exps.items() if e < 0}
        num = monomial(pos, coeff) if pos else MPoly.const(coeff)
        return cls(num, monomial(neg) if neg else None)

    @classmethod
    def geometric(cls, exps: Mapping[str, int], coeff: Number = 1) -> "RatFn":
        """1 / (1 - coeff * monomial)."""
        return cls(MPoly.const(1), factors=[(1 - monomial(exps, coeff), 1)])

    @staticmethod
    def coerce(x) -> "RatFn":
        if isinstance(x, RatFn):
            return x
        return RatFn(MPoly.coerce(x))

    # -- queries -------------------------------------------------------------
    def variables(self) -> Tuple[str, ...]:
        vs = set(self.num.used_variables()) | set(self.den_mono)
        for f, _ in self.factors:
            vs |= set(f.used_variables())
        return sort_variables(vs)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return not self.den_mono and not self.factors

    def den_monomial_poly(self) -> MPoly:
        return monomial(self.den_mono) if self.den_mono else MPoly.const(1)

    def denominator(self) -> MPoly:
        """Expanded denominator."""
        d = self.den_monomial_poly()
        for f, k in self.factors:
            d = d * f ** k
        return d

    def numerator(self) -> MPoly:
        return self.num

    def _all_factors(self):
        out = list(self.factors)
        if self.den_mono:
            out.append((monomial(self.den_mono), 1))
        return out

    # -- arithmetic ------------------------------------------------------------
    def __add__(self, other):
        other = RatFn.coerce(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        fa, fb = dict(self.factors), dict(other.factors)
        common = {}
        for f in set(fa) | set(fb):
            common[f] = max(fa.get(f, 0), fb.get(f, 0))
        mono = {}
        for v in set(self.den_mono) | set(other.den_mono):
            mono[v] = max(self.den_mono.get(v, 0), other.den_mono.get(v, 0))

        def lift(x: "RatFn", fx):
            extra = {v: mono[v] - x.den_mono.get(v, 0) for v in mono}
            n = x.num.shift({v: e for v, e in extra.items() if e})
            for f, k in common.items():
                k2 = k - fx.get(f, 0)
                if k2:
                    n = n * f ** k2
            return n

        num = lift(self, fa) + lift(other, fb)
        flist = list(common.items())
        if mono:
            flist.append((monomial(mono), 1))
        return RatFn(num, factors=flist)

    __radd__ = __add__

    def __neg__(self):
        out = RatFn.__new__(RatFn)
        out.num, out.den_mono, out.factors = -self.num, dict(self.den_mono), self.factors
        return out

    def __sub__(self, other):
        return self + (-RatFn.coerce(other))

    def __rsub__(self, other):
        return RatFn.coerce(other) - self

    def __mul__(self, other):
        other = RatFn.coerce(other)
        if self.is_zero() or other.is_zero():
            return RatFn(MPoly())
        return RatFn(self.num * other.num, factors=self._all_factors() + other._all_factors())

    __rmul__ = __mul__

    def inverse(self) -> "RatFn":
        if self.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        num = self.den_monomial_poly()
        for f, k in self.factors:
            num = num * f ** k
        return RatFn(num, factors=[(self.num, 1)])

    def __truediv__(self, other):
        return self * RatFn.coerce(other).inverse()

    def __rtruediv__(self, other):
        return RatFn.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        num = self.num ** k
        return RatFn(num, factors=[(f, e * k) for f, e in self._all_factors()], reduce_gcd=False)

    # -- comparison -------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction, MPoly)):
            other = RatFn.coerce(other)
        if not isinstance(other, RatFn):
            return NotImplemented
        return self.num * other.denominator() == other.num * self.denominator()

    __hash__ = None  # equality is by cross-multiplication

    # -- evaluation ---------------------------------------------------------
    def evaluate(self, values: Mapping[str, Number]) -> "RatFn":
        num = self.num.evaluate(values)
        flist = []
        for f, k in self._all_factors():
            g = f.evaluate(values)
            if g.is_zero():
                raise ZeroDivisionError("substitution creates a zero denominator")
            flist.append((g, k))
        return RatFn(num, factors=flist)

    # -- printing -----------------------------------------------------------
    def den_string(self) -> str:
        parts = []
        if self.den_mono:
            parts.append(monomial(self.den_mono).to_string())
        for f, k in self.factors:
            s = f"({f.to_string(descending=False)})"
            parts.append(s if k == 1 else f"{s}^{k}")
        return "*".join(parts)

    def __str__(self):
        n = self.num.to_string()
        if self.is_polynomial():
            return n
        return f"({n}) / ({self.den_string()})"

    def __repr__(self):
        return f"RatFn({str(self)!r})"


def _cancel_factors(num: MPoly, merged: Dict[MPoly, int]):
    """Remove common factors of num and the factor multiset."""
    den = reduce(lambda a, b: a * b, (f ** k for f, k in merged.items()))
    g = _gcd(num, den)
    if g.is_constant():
        return num, merged
    num = _exquo(num, g)
    merged = dict(merged)
    # strip g from the factors, keeping the factor structure
    for f in sorted(list(merged), key=_factor_sort_key):
        while merged.get(f) and not g.is_constant():
            h = _gcd(g, f)
            if h.is_constant():
                break
            g = _exquo(g, h)
            k = merged.pop(f)
            if k > 1:
                merged[f] = k - 1
            rest = _exquo(f, h)
            if not rest.is_constant():
                s, mono, rest_n = _normalize_factor(rest)
                num = num * (Fraction(1) / s)
                assert not mono
                merged[rest_n] = merged.get(rest_n, 0) + 1
            else:
                num = num * (Fraction(1) / rest.constant_term())
        if g.is_constant():
            break
    if not g.is_constant():  # pragma: no cover - gcd divides the product
        raise ArithmeticError("gcd cancellation failed")
    num = num * g.constant_term()
    return num.trimmed(), merged


# ---------------------------------------------------------------------------
# module-level operations


def canonicalize(num, den=None, factors=None) -> RatFn:
    """Reduced, sign-normalized quotient ``num / den`` (or ``num / prod(factors)``)."""
    return RatFn(num, den, factors)


def _monomial_image(exp: Exponent, variables, targets):
    """Laurent exponent dict and coefficient of a monomial under monomial targets."""
    out: Dict[str, int] = {}
    coeff = Fraction(1)
    for v, e in zip(variables, exp):
        if not e:
            continue
        if v in targets:
            c, tex = targets[v]
            coeff *= c ** e
            for w, k in tex.items():
                out[w] = out.get(w, 0) + k * e
        else:
            out[v] = out.get(v, 0) + e
    return coeff, out


def _apply_monomial_map(f: MPoly, targets):
    """Image of f as (polynomial, shift) with f -> poly * prod v^shift[v]."""
    images = []
    allvars = set()
    for exp, c in f.terms.items():
        k, ex = _monomial_image(exp, f.variables, targets)
        images.append((c * k, ex))
        allvars |= set(ex)
    vs = sort_variables(allvars)
    shift = {v: min(ex.get(v, 0) for _, ex in images) for v in vs} if images else {}
    terms: Dict[Exponent, Fraction] = {}
    for c, ex in images:
        e = tuple(ex.get(v, 0) - shift[v] for v in vs)
        terms[e] = terms.get(e, 0) + c
    return MPoly(vs, terms), {v: s for v, s in shift.items() if s}


def _as_monomial_target(x):
    """(coeff, laurent exponents) if x is a Laurent monomial, else None."""
    if isinstance(x, (int, Fraction)):
        return (Fraction(x), {})
    if isinstance(x, MPoly):
        x = RatFn(x)
    if not isinstance(x, RatFn) or x.factors or len(x.num.terms) != 1:
        return None
    (exp, c), = x.num.terms.items()
    ex = {v: e for v, e in zip(x.num.variables, exp) if e}
    for v, e in x.den_mono.items():
        ex[v] = ex.get(v, 0) - e
    return (c, ex)


def _substitute_poly_general(f: MPoly, assignment: Mapping[str, RatFn]) -> RatFn:
    total = RatFn(MPoly())
    powers: Dict[Tuple[str, int], RatFn] = {}

    def pw(v, e):
        key = (v, e)
        if key not in powers:
            powers[key] = RatFn.coerce(assignment[v]) ** e
        return powers[key]

    for exp, c in f.terms.items():
        term = RatFn.const(c)
        rest = {}
        for v, e in zip(f.variables, exp):
            if not e:
                continue
            if v in assignment:
                term = term * pw(v, e)
            else:
                rest[v] = e
        if rest:
            term = term * RatFn(monomial(rest))
        total = total + term
    return total


def substitute(f, assignment: Mapping[str, object]) -> RatFn:
    """Compose f with ``v -> assignment[v]``; unassigned variables pass through."""
    f = RatFn.coerce(f)
    targets = {}
    general = False
    for v, x in assignment.items():
        t = _as_monomial_target(x)
        if t is None:
            general = True
            break
        targets[v] = t
    if not general:
        num, nshift = _apply_monomial_map(f.num, targets)
        flist = []
        total_shift = dict(nshift)
        for g, k in f._all_factors():
            gi, gshift = _apply_monomial_map(g, targets)
            if gi.is_zero():
                raise ZeroDivisionError("substitution creates a zero denominator")
            flist.append((gi, k))
            for v, s in gshift.items():
                total_shift[v] = total_shift.get(v, 0) - s * k
        pos = {v: s for v, s in total_shift.items() if s > 0}
        neg = {v: -s for v, s in total_shift.items() if s < 0}
        if pos:
            num = num * monomial(pos)
        if neg:
            flist.append((monomial(neg), 1))
        return RatFn(num, factors=flist)
    num = _substitute_poly_general(f.num, assignment)
    den = RatFn.const(1)
    for g, k in f._all_factors():
        gi = _substitute_poly_general(g, assignment)
        if gi.is_zero():
            raise ZeroDivisionError("substitution creates a zero denominator")
        den = den * gi ** k
    return num / den


def invert_variables(f, variables: Iterable[str]) -> RatFn:
    """Replace each listed variable v by 1/v."""
    return substitute(f, {v: RatFn.laurent_monomial({v: -1}) for v in variables})


def series_coefficients(f, p_value: int, order: int, *, var: str = "t", pvar: str = "p") -> list:
    """Taylor coefficients a_0..a_order of f(p_value, t) at t = 0, exactly."""
    f = RatFn.coerce(f)
    g = f.evaluate({pvar: p_value})
    extra = set(g.variables()) - {var}
    if extra:
        raise ValueError(f"series needs a function of {var} only; free variables {sorted(extra)}")
    num = [Fraction(0)] * (order + 1)
    for e, c in g.num.terms.items():
        k = e[0] if e else 0
        if k <= order:
            num[k] += c
    den_poly = g.denominator()
    den: Dict[int, Fraction] = {}
    for e, c in den_poly.terms.items():
        k = e[0] if e else 0
        den[k] = den.get(k, 0) + c
    d0 = den.get(0, 0)
    if d0 == 0:
        raise ValueError("not expandable at t = 0")
    out = []
    for k in range(order + 1):
        s = num[k]
        for j, c in den.items():
            if 0 < j <= k:
                s -= c * out[k - j]
        out.append(s / d0)
    return out


# ---------------------------------------------------------------------------
# textual input

def parse_mpoly(text: str) -> MPoly:
    """Parse ``'3*p^2*t - 1/2*y1 + 4'`` style input."""
    s = text.replace(" ", "").replace("**", "^")
    if not s:
        raise ValueError("empty polynomial")
    if s[0] not in "+-":
        s = "+" + s
    acc = MPoly()
    tokens = re.findall(r"([+-])([^+-]+)", s)
    if "".join(a + b for a, b in tokens) != s:
        raise ValueError(f"cannot parse polynomial {text!r}")
    for sign, body in tokens:
        coeff = Fraction(1)
        exps: Dict[str, int] = {}
        for factor in body.split("*"):
            if not factor:
                raise ValueError(f"cannot parse polynomial {text!r}")
            if re.fullmatch(r"\d+(/\d+)?", factor):
                coeff *= Fraction(factor)
                continue
            m = re.fullmatch(r"([A-Za-z][A-Za-z_]*\d*)(\^(\d+))?", factor)
            if m is None:
                raise ValueError(f"bad factor {factor!r} in {text!r}")
            v = m.group(1)
            exps[v] = exps.get(v, 0) + int(m.group(3) or 1)
        if sign == "-":
            coeff = -coeff
        acc = acc + (monomial(exps, coeff) if exps else MPoly.const(coeff))
    return acc
