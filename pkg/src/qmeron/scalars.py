"""Exact coefficient field: rational functions over the Gaussian rationals.

Scalars live in Q(i)(s, lc, eps, mu, ah, bh, gh) where ``s`` is the square
root of the deformation parameter (q = s**2) and the remaining names are real
commuting parameters.  The Gaussian unit is part of the coefficient domain,
so ``i*i == -1`` holds by construction.

Canonical form
--------------
A value is stored as ``numerator / denominator`` where

* the numerator is a Laurent polynomial (negative exponents allowed),
* the denominator is a product of monic irreducible polynomials over Q(i),
  none of them a monomial, kept as a sorted tuple of ``(factor, exponent)``,
* no denominator factor divides the numerator.

Monomials are units of the Laurent ring, so this representation is unique and
equality of canonical forms is the zero test used throughout the package.
Denominator factorisations are computed once per new divisor with sympy and
cached; everything else is plain dictionary arithmetic on packed exponent
keys with gmpy2 rationals.
"""
from __future__ import annotations

import functools
from fractions import Fraction
from typing import Iterable, Mapping

import sympy
from gmpy2 import mpq

__all__ = [
    "PARAMETERS",
    "GaussQ",
    "ScalarExpr",
    "ScalarError",
    "DivisionByZero",
    "UnknownParameter",
    "PhysicalQError",
    "S",
    "Q",
    "I",
    "ONE",
    "ZERO",
    "numerator_factors",
    "from_sympy",
    "symbol",
    "param",
    "const",
    "as_scalar",
    "parse_rational",
    "substitute_q",
]

#: Declared variables, in monomial-order significance.  ``s`` is q**(1/2).
PARAMETERS: tuple[str, ...] = ("s", "lc", "eps", "mu", "ah", "bh", "gh")

_NV = len(PARAMETERS)
_BITS = 16
_MASK = (1 << _BITS) - 1
_BIAS = 1 << (_BITS - 1)
_SHIFTS = tuple(_BITS * (_NV - 1 - f) for f in range(_NV))
_ZK = sum(_BIAS << sh for sh in _SHIFTS)  # key of the monomial 1
_INDEX = {name: f for f, name in enumerate(PARAMETERS)}


class ScalarError(ValueError):
    """Base class for scalar-field errors."""


class DivisionByZero(ScalarError, ZeroDivisionError):
    pass


class UnknownParameter(ScalarError):
    pass


class PhysicalQError(ScalarError):
    pass


# --------------------------------------------------------------------------
# Gaussian rationals with nonzero imaginary part (real ones are plain mpq)
# --------------------------------------------------------------------------


def _g(re, im):
    if im:
        return GaussQ(re, im)
    return re


class GaussQ:
    """re + i*im with rational parts; only used when ``im != 0``."""

    __slots__ = ("re", "im")

    def __init__(self, re, im):
        self.re = mpq(re)
        self.im = mpq(im)

    def __add__(self, o):
        if isinstance(o, GaussQ):
            return _g(self.re + o.re, self.im + o.im)
        return GaussQ(self.re + o, self.im)

    __radd__ = __add__

    def __sub__(self, o):
        if isinstance(o, GaussQ):
            return _g(self.re - o.re, self.im - o.im)
        return GaussQ(self.re - o, self.im)

    def __rsub__(self, o):
        return GaussQ(o - self.re, -self.im)

    def __neg__(self):
        return GaussQ(-self.re, -self.im)

    def __mul__(self, o):
        if isinstance(o, GaussQ):
            return _g(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)
        if not o:
            return mpq(0)
        return GaussQ(self.re * o, self.im * o)

    __rmul__ = __mul__

    def inverse(self):
        n = self.re * self.re + self.im * self.im
        return GaussQ(self.re / n, -self.im / n)

    def conjugate(self):
        return GaussQ(self.re, -self.im)

    def __bool__(self):
        return True

    def __eq__(self, o):
        return isinstance(o, GaussQ) and self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussQ({self.re}, {self.im})"


def _cinv(c):
    return c.inverse() if isinstance(c, GaussQ) else 1 / c


def _cconj(c):
    return c.conjugate() if isinstance(c, GaussQ) else c


# --------------------------------------------------------------------------
# Laurent polynomials: dict packed-key -> coefficient
# --------------------------------------------------------------------------


def _pack(exps: Iterable[int]) -> int:
    return sum((e + _BIAS) << sh for e, sh in zip(exps, _SHIFTS))


def _unpack(k: int) -> tuple[int, ...]:
    return tuple(((k >> sh) & _MASK) - _BIAS for sh in _SHIFTS)


def _padd(p, q):
    if not p:
        return dict(q)
    r = dict(p)
    for k, c in q.items():
        v = r.get(k)
        if v is None:
            r[k] = c
        else:
            v = v + c
            if v:
                r[k] = v
            else:
                del r[k]
    return r


def _pscale(p, c):
    if not c:
        return {}
    return {k: v * c for k, v in p.items()}


def _pmul(p, q):
    if len(p) < len(q):
        p, q = q, p
    r = {}
    zk = _ZK
    for k2, c2 in q.items():
        off = k2 - zk
        for k1, c1 in p.items():
            k = k1 + off
            v = r.get(k)
            if v is None:
                r[k] = c1 * c2
            else:
                v = v + c1 * c2
                if v:
                    r[k] = v
                else:
                    del r[k]
    return r


def _pshift(p, off):
    return {k + off: c for k, c in p.items()}


def _min_exps(p):
    ex = [_unpack(k) for k in p]
    return tuple(min(e[f] for e in ex) for f in range(_NV))


def _divides_mono(a, b):
    """True when monomial key ``a`` divides ``b`` (nonnegative exponents)."""
    ea, eb = _unpack(a), _unpack(b)
    return all(x <= y for x, y in zip(ea, eb))


def _exact_div(p, f):
    """Return p/f if f divides p in the Laurent ring, else None.

    ``f`` must be a polynomial with no monomial factor.
    """
    if not p:
        return {}
    # clear negative exponents so polynomial division terminates
    mins = _min_exps(p)
    off = _pack([-m if m < 0 else 0 for m in mins]) - _ZK
    r = _pshift(p, off) if off else dict(p)
    lf = max(f)
    lcf_inv = _cinv(f[lf])
    quot = {}
    while r:
        lr = max(r)
        if not _divides_mono(lf, lr):
            return None
        mk = lr - lf + _ZK
        c = r[lr] * lcf_inv
        quot[mk] = c
        r = _padd(r, {k + mk - _ZK: -v * c for k, v in f.items()})
    return _pshift(quot, -off) if off else quot


def _pexpand(factors):
    out = {_ZK: mpq(1)}
    for f, e in factors:
        for _ in range(e):
            out = _pmul(out, f)
    return out


def _freeze(p):
    return tuple(sorted(p.items()))


def _ckey(c):
    return (c.re, c.im) if isinstance(c, GaussQ) else (c, 0)


def _fkey(item):
    f, e = item
    return tuple((k, _ckey(c)) for k, c in f), e


def _den_sorted(d):
    return tuple(sorted(((f, e) for f, e in d.items() if e > 0), key=_fkey))


# --------------------------------------------------------------------------
# sympy bridge (factorisation of new divisors; conversion for tests/oracles)
# --------------------------------------------------------------------------

_SYMS = sympy.symbols(PARAMETERS)


def _coef_to_sympy(c):
    if isinstance(c, GaussQ):
        return sympy.Rational(int(c.re.numerator), int(c.re.denominator)) + sympy.I * sympy.Rational(
            int(c.im.numerator), int(c.im.denominator)
        )
    return sympy.Rational(int(c.numerator), int(c.denominator))


def _coef_from_sympy(c):
    re, im = sympy.re(c), sympy.im(c)
    re = mpq(int(sympy.fraction(re)[0]), int(sympy.fraction(re)[1]))
    im = mpq(int(sympy.fraction(im)[0]), int(sympy.fraction(im)[1]))
    return _g(re, im)


def _poly_to_sympy(p):
    terms = []
    for k, c in p.items():
        mono = sympy.Integer(1)
        for sym, e in zip(_SYMS, _unpack(k)):
            if e:
                mono *= sym**e
        terms.append(_coef_to_sympy(c) * mono)
    return sympy.Add(*terms)


def _poly_from_sympy(expr):
    poly = sympy.Poly(sympy.expand(expr), *_SYMS, domain="QQ_I")
    out = {}
    for monom, c in poly.terms():
        if c:
            out[_pack(monom)] = _coef_from_sympy(c)
    return out


def _monic(p):
    return _pscale(p, _cinv(p[max(p)]))


@functools.lru_cache(maxsize=None)
def _factor_frozen(frozen):
    """Factor a polynomial over Q(i): (unit polynomial, ((factor, exp), ...)).

    The unit part is a single-term Laurent polynomial (constant * monomial);
    factors are monic, irreducible, free of monomial content.
    """
    p = dict(frozen)
    mins = _min_exps(p)
    moff = _pack(mins) - _ZK
    base = _pshift(p, -moff)
    unit = {_ZK + moff: mpq(1)}
    if len(base) == 1:
        ((k, c),) = base.items()
        return _freeze({k + moff: c}), ()
    const, flist = sympy.factor_list(_poly_to_sympy(base), *_SYMS, gaussian=True)
    unit = _pscale(unit, _coef_from_sympy(const))
    factors = {}
    for fexpr, e in flist:
        fp = _poly_from_sympy(fexpr)
        fm = _min_exps(fp)
        if any(fm):
            # a pure monomial factor (variable); fold into the unit
            for _ in range(e):
                unit = _pmul(unit, fp)
            continue
        lc = fp[max(fp)]
        unit = _pscale(unit, lc**e if not isinstance(lc, GaussQ) else _cpow(lc, e))
        key = _freeze(_monic(fp))
        factors[key] = factors.get(key, 0) + e
    return _freeze(unit), _den_sorted(factors)


def _cpow(c, e):
    out = mpq(1)
    for _ in range(e):
        out = out * c
    return out


@functools.lru_cache(maxsize=None)
def _expand_factor(frozen_factor, e):
    return _pexpand([(dict(frozen_factor), e)])


# --------------------------------------------------------------------------
# ScalarExpr
# --------------------------------------------------------------------------


class ScalarExpr:
    """Immutable exact rational function; see module docstring."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=()):
        # internal constructor: arguments must already be canonical
        self.num = num
        self.den = den
        self._hash = None

    # -- construction -----------------------------------------------------
    @classmethod
    def _make(cls, num, den_map):
        """Build from a Laurent numerator and a {factor: exp} denominator,
        cancelling common factors."""
        if not num:
            return ZERO
        den = []
        for f, e in _den_sorted(den_map):
            if e <= 0:
                continue
            fd = dict(f)
            while e:
                qt = _exact_div(num, fd)
                if qt is None:
                    break
                num = qt
                e -= 1
            if e:
                den.append((f, e))
        return cls(num, tuple(den))

    # -- helpers ------------------------------------------------------------
    def _den_map(self):
        return dict(self.den)

    def _den_poly(self):
        out = {_ZK: mpq(1)}
        for f, e in self.den:
            out = _pmul(out, _expand_factor(f, e))
        return out

    @property
    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self):
        return bool(self.num)

    @property
    def is_polynomial(self) -> bool:
        return not self.den

    @property
    def is_constant(self) -> bool:
        return not self.den and all(k == _ZK for k in self.num)

    def constant_value(self):
        """The coefficient when constant (mpq or GaussQ); raises otherwise."""
        if not self.num:
            return mpq(0)
        if not self.is_constant:
            raise ScalarError(f"{self} is not a constant")
        return self.num[_ZK]

    @property
    def is_real(self) -> bool:
        return self == self.conjugate()

    def free_parameters(self) -> set[str]:
        names = set()
        keys = list(self.num)
        for f, _ in self.den:
            keys.extend(k for k, _ in f)
        for k in keys:
            for name, e in zip(PARAMETERS, _unpack(k)):
                if e:
                    names.add(name)
        return names

    # -- arithmetic -----------------------------------------------------------
    def __add__(self, other):
        o = as_scalar(other)
        if not o.num:
            return self
        if not self.num:
            return o
        if self.den == o.den:
            num = _padd(self.num, o.num)
            if not self.den:
                return ScalarExpr(num) if num else ZERO
            return ScalarExpr._make(num, self._den_map())
        da, db = self._den_map(), o._den_map()
        lcm = dict(da)
        for f, e in db.items():
            if lcm.get(f, 0) < e:
                lcm[f] = e
        na = self.num
        for f, e in lcm.items():
            d = e - da.get(f, 0)
            if d:
                na = _pmul(na, _expand_factor(f, d))
        nb = o.num
        for f, e in lcm.items():
            d = e - db.get(f, 0)
            if d:
                nb = _pmul(nb, _expand_factor(f, d))
        return ScalarExpr._make(_padd(na, nb), lcm)

    __radd__ = __add__

    def __neg__(self):
        if not self.num:
            return self
        return ScalarExpr({k: -c for k, c in self.num.items()}, self.den)

    def __sub__(self, other):
        return self + (-as_scalar(other))

    def __rsub__(self, other):
        return as_scalar(other) + (-self)

    def __mul__(self, other):
        o = as_scalar(other)
        if not o.num or not self.num:
            return ZERO
        num = _pmul(self.num, o.num)
        if not self.den and not o.den:
            return ScalarExpr(num)
        den = self._den_map()
        for f, e in o.den:
            den[f] = den.get(f, 0) + e
        return ScalarExpr._make(num, den)

    __rmul__ = __mul__

    def inverse(self) -> "ScalarExpr":
        if not self.num:
            raise DivisionByZero("division by zero scalar")
        unit, factors = _factor_frozen(_freeze(self.num))
        unit = dict(unit)
        ((uk, uc),) = unit.items()
        inv_unit = {2 * _ZK - uk: _cinv(uc)}
        num = _pmul(inv_unit, self._den_poly())
        return ScalarExpr._make(num, dict(factors))

    def __truediv__(self, other):
        o = as_scalar(other)
        if len(o.num) == 1 and not o.den:
            if not self.num:
                return ZERO
            ((uk, uc),) = o.num.items()
            num = _pmul(self.num, {2 * _ZK - uk: _cinv(uc)})
            return ScalarExpr(num, self.den)
        return self * o.inverse()

    def __rtruediv__(self, other):
        return as_scalar(other) / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise TypeError("only integer powers are supported")
        if n < 0:
            return self.inverse() ** (-n)
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- comparison -------------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, ScalarExpr):
            try:
                other = as_scalar(other)
            except TypeError:
                return NotImplemented
        return self.den == other.den and self.num == other.num

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((frozenset(self.num.items()), self.den))
        return self._hash

    # -- involution and specialisation -------------------------------------------
    def conjugate(self) -> "ScalarExpr":
        """Complex conjugation: i -> -i; s and all parameters are real."""
        if not any(isinstance(c, GaussQ) for c in self.num.values()) and not any(
            isinstance(c, GaussQ) for f, _ in self.den for _, c in f
        ):
            return self
        num = {k: _cconj(c) for k, c in self.num.items()}
        den = {}
        for f, e in self.den:
            fc = _freeze({k: _cconj(c) for k, c in f})
            den[fc] = den.get(fc, 0) + e
        return ScalarExpr(num, _den_sorted(den))

    def substitute(self, bindings: Mapping[str, object], *, physical_q: bool = False) -> "ScalarExpr":
        """Replace named parameters by scalar values.

        With ``physical_q`` a binding for ``s`` must be a positive rational with
        0 < s**2 < 1.
        """
        vals = {}
        for name, v in bindings.items():
            if name not in _INDEX:
                raise UnknownParameter(f"unknown parameter {name!r}")
            v = as_scalar(v)
            if physical_q and name == "s":
                if not v.is_constant or isinstance(v.constant_value(), GaussQ):
                    raise PhysicalQError("s must be a rational number")
                sv = v.constant_value()
                if not (sv > 0 and 0 < sv * sv < 1):
                    raise PhysicalQError(f"q = s^2 = {sv * sv} is outside (0, 1)")
            vals[_INDEX[name]] = v
        if not vals:
            return self
        num = _eval_poly(self.num, vals)
        den = _eval_poly(self._den_poly(), vals)
        if den.is_zero:
            raise DivisionByZero(f"denominator of {self} vanishes under {dict(bindings)}")
        return num / den

    # -- rendering ---------------------------------------------------------------
    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"ScalarExpr({self.render()})"

    def render(self) -> str:
        if not self.num:
            return "0"
        n = _render_poly(self.num)
        if not self.den:
            return n
        d = _render_poly(self._den_poly())
        if len(self.num) > 1:
            n = f"({n})"
        return f"{n}/({d})"

    def to_sympy(self):
        return _poly_to_sympy(self.num) / _poly_to_sympy(self._den_poly())


def _eval_poly(p, vals):
    """Evaluate a Laurent polynomial with some variables replaced."""
    total = ZERO
    cache = {}
    for k, c in p.items():
        exps = _unpack(k)
        rest = [0 if f in vals else e for f, e in enumerate(exps)]
        term = ScalarExpr({_pack(rest): c})
        for f, e in enumerate(exps):
            if e and f in vals:
                key = (f, e)
                pw = cache.get(key)
                if pw is None:
                    pw = vals[f] ** e
                    cache[key] = pw
                term = term * pw
        total = total + term
    return total


def _render_coef(c):
    if isinstance(c, GaussQ):
        re, im = c.re, c.im
        ims = "i" if im == 1 else "-i" if im == -1 else f"{im}*i"
        if not re:
            return ims
        return f"({re}{'+' if im > 0 else ''}{ims})"
    return str(c)


def _render_poly(p):
    parts = []
    for k in sorted(p, reverse=True):
        c = p[k]
        mono = "*".join(
            (name if e == 1 else f"{name}^{e}") for name, e in zip(PARAMETERS, _unpack(k)) if e
        )
        if not mono:
            parts.append(_render_coef(c))
            continue
        if c == 1:
            parts.append(mono)
        elif c == -1:
            parts.append("-" + mono)
        else:
            parts.append(f"{_render_coef(c)}*{mono}")
    out = parts[0]
    for t in parts[1:]:
        out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
    return out


# --------------------------------------------------------------------------
# constructors
# --------------------------------------------------------------------------


def const(value, den=1) -> ScalarExpr:
    """Rational (or Gaussian, via complex parts) constant."""
    if isinstance(value, GaussQ):
        return ScalarExpr({_ZK: value}) if den == 1 else ScalarExpr({_ZK: value}) / const(den)
    v = mpq(value) / mpq(den) if not isinstance(value, str) else mpq(parse_rational(value))
    if not v:
        return ZERO
    return ScalarExpr({_ZK: v})


def param(name: str) -> ScalarExpr:
    if name not in _INDEX:
        raise UnknownParameter(f"unknown parameter {name!r}")
    exps = [0] * _NV
    exps[_INDEX[name]] = 1
    return ScalarExpr({_pack(exps): mpq(1)})


def parse_rational(text: str) -> Fraction:
    """Parse the CLI syntax ``p/r`` (or an integer) into a Fraction."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ScalarError(f"not an exact rational: {text!r}") from exc


def as_scalar(x) -> ScalarExpr:
    if isinstance(x, ScalarExpr):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(x, (int, Fraction)) or type(x).__name__ == "mpq":
        return const(x)
    if isinstance(x, str):
        return const(parse_rational(x))
    if isinstance(x, GaussQ):
        return ScalarExpr({_ZK: x})
    raise TypeError(f"cannot interpret {x!r} as a scalar")


def substitute_q(x: ScalarExpr, q) -> ScalarExpr:
    """Specialise q = s**2 to an exact rational in (0, 1).

    Works whenever ``x`` only involves even powers of s, or when q is the
    square of a rational.
    """
    qv = parse_rational(q) if isinstance(q, str) else Fraction(q)
    if not 0 < qv < 1:
        raise PhysicalQError(f"q = {qv} is outside (0, 1)")
    num_r, den_r = _fraction_sqrt(qv)
    if num_r is not None:
        return x.substitute({"s": Fraction(num_r, den_r)}, physical_q=True)
    if not _only_even_s(x):
        raise PhysicalQError(f"q = {qv} has no rational square root and the expression has odd powers of s")
    num = _halve_s(x.num)
    den = _halve_s(x._den_poly())
    n = ScalarExpr(num) if num else ZERO
    d = ScalarExpr(den)
    n, d = n.substitute({"s": qv}), d.substitute({"s": qv})
    if d.is_zero:
        raise DivisionByZero(f"denominator vanishes at q = {qv}")
    return n / d


def _fraction_sqrt(f: Fraction):
    import math

    a, b = math.isqrt(f.numerator), math.isqrt(f.denominator)
    if a * a == f.numerator and b * b == f.denominator:
        return a, b
    return None, None


def _only_even_s(x: ScalarExpr) -> bool:
    keys = list(x.num) + list(x._den_poly())
    return all(_unpack(k)[0] % 2 == 0 for k in keys)


def _halve_s(p):
    out = {}
    for k, c in p.items():
        e = list(_unpack(k))
        e[0] //= 2
        out[_pack(e)] = c
    return out


ZERO = ScalarExpr({})
ONE = ScalarExpr({_ZK: mpq(1)})
I = ScalarExpr({_ZK: GaussQ(0, 1)})
S = param("s")
Q = S * S


def numerator_factors(x: ScalarExpr) -> list[tuple[ScalarExpr, int]]:
    """Monic irreducible factors of the numerator (monomial content dropped)."""
    if not x.num:
        return []
    _unit, factors = _factor_frozen(_freeze(x.num))
    return [(ScalarExpr(dict(f)), e) for f, e in factors]


def from_sympy(expr) -> ScalarExpr:
    """Convert a sympy rational expression in the parameter symbols."""
    num, den = sympy.fraction(sympy.together(sympy.sympify(expr)))
    return ScalarExpr._make(_poly_from_sympy(num), {}) / ScalarExpr._make(_poly_from_sympy(den), {})


def symbol(name: str):
    """The sympy symbol used for parameter ``name``."""
    return _SYMS[_INDEX[name]]
