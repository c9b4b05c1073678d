"""Hopf structures: A(SU_q(2)), A(GL_q(1,H)), U_q(su(2)), pairing and actions."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Mapping

from .ncalg import (
    AlgebraElement,
    AlgebraError,
    Presentation,
    PresentationMismatch,
    Word,
    _acc,
)
from .scalars import ONE, ZERO, S, ScalarExpr, as_scalar

Mono = tuple[int, int, int]  # F^a K^b E^c


class HopfError(AlgebraError):
    pass


# ---------------------------------------------------------------------------
# U_q(su(2))
# ---------------------------------------------------------------------------


@dataclass(eq=False)
class UqElement:
    """Linear combination of PBW monomials F^a K^b E^c (a, c >= 0, b in Z)."""

    terms: dict = field(default_factory=dict)

    @staticmethod
    def mono(a: int = 0, b: int = 0, c: int = 0, coef=ONE) -> "UqElement":
        coef = as_scalar(coef)
        return UqElement({(a, b, c): coef} if coef else {})

    @staticmethod
    def scalar(c) -> "UqElement":
        return UqElement.mono(0, 0, 0, c)

    def __add__(self, other):
        other = other if isinstance(other, UqElement) else UqElement.scalar(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            _acc(out, m, c)
        return UqElement(out)

    __radd__ = __add__

    def __neg__(self):
        return UqElement({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = other if isinstance(other, UqElement) else UqElement.scalar(other)
        return self + (-other)

    def __rsub__(self, other):
        return UqElement.scalar(other) - self

    def scale(self, c) -> "UqElement":
        c = as_scalar(c)
        if not c:
            return UqElement()
        return UqElement({m: v * c for m, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, UqElement):
            return self.scale(other)
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                c = c1 * c2
                for m, c3 in _mono_mul(m1, m2).items():
                    _acc(out, m, c * c3)
        return UqElement(out)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n: int):
        out = UqElement.scalar(ONE)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, UqElement):
            other = UqElement.scalar(other)
        return self.terms == other.terms

    __hash__ = None

    @property
    def is_zero(self):
        return not self.terms

    def star(self) -> "UqElement":
        # (F^a K^b E^c)* = F^c K^b E^a, already PBW ordered
        return UqElement({(c, b, a): v.conjugate() for (a, b, c), v in self.terms.items()})

    def counit(self) -> ScalarExpr:
        out = ZERO
        for (a, _b, c), v in self.terms.items():
            if a == 0 and c == 0:
                out = out + v
        return out

    def coproduct(self) -> "UqTensor":
        out = UqTensor()
        for (a, b, c), v in self.terms.items():
            t = UqTensor({((0, 0, 0), (0, 0, 0)): v})
            for _ in range(a):
                t = t * _DELTA["F"]
            t = t * (_DELTA["K"] if b >= 0 else _DELTA["k"]).power(abs(b))
            for _ in range(c):
                t = t * _DELTA["E"]
            out = out + t
        return out

    def substitute(self, bindings, **kw):
        out = {}
        for m, c in self.terms.items():
            v = c.substitute(bindings, **kw)
            if v:
                out[m] = v
        return UqElement(out)

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (a, b, c) in sorted(self.terms):
            letters = []
            if a:
                letters.append("F" if a == 1 else f"F^{a}")
            if b:
                letters.append("K" if b == 1 else f"K^{b}")
            if c:
                letters.append("E" if c == 1 else f"E^{c}")
            parts.append(f"({self.terms[(a, b, c)]})" + ("·" + "".join(letters) if letters else ""))
        return " + ".join(parts)

    __str__ = render

    def __repr__(self):
        return f"<Uq: {self.render()}>"


_Q = S * S
_QI = ONE / _Q


@lru_cache(maxsize=None)
def _rmul_letter(m: Mono, letter: str) -> tuple:
    """(F^a K^b E^c) * letter as a tuple of (mono, coef); letter in F, K, k, E."""
    a, b, c = m
    if letter == "E":
        return (((a, b, c + 1), ONE),)
    if letter == "K":  # E^c K = q^-c K E^c
        return (((a, b + 1, c), _Q ** (-c)),)
    if letter == "k":
        return (((a, b - 1, c), _Q ** c),)
    if letter == "F":
        if c == 0:  # K^b F = q^-b F K^b
            return (((a + 1, b, 0), _Q ** (-b)),)
        # ... E^c F = (... E^(c-1)) (F E + (K^2 - K^-2)/(q - q^-1))
        out: dict = {}
        base = (a, b, c - 1)
        for m1, c1 in _rmul_letter(base, "F"):
            for m2, c2 in _rmul_letter(m1, "E"):
                _acc(out, m2, c1 * c2)
        h = ONE / (_Q - _QI)
        for seq, sign in ((("K", "K"), h), (("k", "k"), -h)):
            cur = {base: sign}
            for L in seq:
                nxt: dict = {}
                for mm, cc in cur.items():
                    for m2, c2 in _rmul_letter(mm, L):
                        _acc(nxt, m2, cc * c2)
                cur = nxt
            for mm, cc in cur.items():
                _acc(out, mm, cc)
        return tuple(out.items())
    raise HopfError(f"unknown U_q(su(2)) letter {letter!r}")


def _letters(m: Mono) -> list[str]:
    a, b, c = m
    return ["F"] * a + (["K"] * b if b >= 0 else ["k"] * (-b)) + ["E"] * c


@lru_cache(maxsize=None)
def _mono_mul_cached(m1: Mono, m2: Mono) -> tuple:
    cur = {m1: ONE}
    for L in _letters(m2):
        nxt: dict = {}
        for mm, cc in cur.items():
            for m, c in _rmul_letter(mm, L):
                _acc(nxt, m, cc * c)
        cur = nxt
    return tuple(cur.items())


def _mono_mul(m1: Mono, m2: Mono) -> dict:
    return dict(_mono_mul_cached(m1, m2))


@dataclass(eq=False)
class UqTensor:
    """Element of U⊗U as a map (mono, mono) -> scalar."""

    terms: dict = field(default_factory=dict)

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            _acc(out, k, c)
        return UqTensor(out)

    def __mul__(self, other):
        out: dict = {}
        for (x1, y1), c1 in self.terms.items():
            for (x2, y2), c2 in other.terms.items():
                c = c1 * c2
                for mx, cx in _mono_mul(x1, x2).items():
                    for my, cy in _mono_mul(y1, y2).items():
                        _acc(out, (mx, my), c * cx * cy)
        return UqTensor(out)

    def power(self, n: int) -> "UqTensor":
        out = UqTensor({((0, 0, 0), (0, 0, 0)): ONE})
        for _ in range(n):
            out = out * self
        return out

    def legs(self):
        """Yield (coef, UqElement, UqElement)."""
        for (x, y), c in self.terms.items():
            yield c, UqElement({x: ONE}), UqElement({y: ONE})

    def __eq__(self, other):
        return isinstance(other, UqTensor) and self.terms == other.terms

    __hash__ = None


_DELTA = {
    "K": UqTensor({((0, 1, 0), (0, 1, 0)): ONE}),
    "k": UqTensor({((0, -1, 0), (0, -1, 0)): ONE}),
    "E": UqTensor({((0, 0, 1), (0, 1, 0)): ONE, ((0, -1, 0), (0, 0, 1)): ONE}),
    "F": UqTensor({((1, 0, 0), (0, 1, 0)): ONE, ((0, -1, 0), (1, 0, 0)): ONE}),
}

UQ_ONE = UqElement.mono(0, 0, 0)
K = UqElement.mono(0, 1, 0)
K_INV = UqElement.mono(0, -1, 0)
E = UqElement.mono(0, 0, 1)
F = UqElement.mono(1, 0, 0)


def uq_relation_residuals() -> dict[str, UqElement]:
    """Residuals of the defining relations, computed in the PBW product."""
    return {
        "K K^-1 - 1": K * K_INV - UQ_ONE,
        "K E - q E K": K * E - (E * K).scale(_Q),
        "K F - q^-1 F K": K * F - (F * K).scale(_QI),
        "[E,F] - (K^2-K^-2)/(q-q^-1)": E * F - F * E - (K * K - K_INV * K_INV).scale(ONE / (_Q - _QI)),
    }


# ---------------------------------------------------------------------------
# pairing with A(SU_q(2)) through the spin-1/2 matrices <X, u_ij>
# ---------------------------------------------------------------------------

# u = [[a, -q c*], [c, a*]]; each generator as (coefficient, (i, j)) with indices 0/1
_GEN_ENTRY = {"a": (ONE, (0, 0)), "a*": (ONE, (1, 1)), "c": (ONE, (1, 0)), "c*": (-_QI, (0, 1))}
_ENTRY_GEN = {(0, 0): (ONE, "a"), (1, 1): (ONE, "a*"), (1, 0): (ONE, "c"), (0, 1): (-_Q, "c*")}
_KDIAG = (ONE / S, S)  # <K, u_11> = q^-1/2, <K, u_22> = q^1/2


def _apply_letter(letter: str, vec: dict, transpose: bool) -> dict:
    """Apply rho_n(letter) to a sparse column vector (row vector if transpose)."""
    out: dict = {}
    for t, v in vec.items():
        n = len(t)
        if letter in ("K", "k"):
            c = v
            for i in t:
                c = c * (_KDIAG[i] if letter == "K" else ONE / _KDIAG[i])
            _acc(out, t, c)
            continue
        # rho(E) = E21 sends e_1 -> e_2; rho(F) = E12 sends e_2 -> e_1
        src, dst = (0, 1) if letter == "E" else (1, 0)
        if transpose:
            src, dst = dst, src
        for k in range(n):
            if t[k] != src:
                continue
            c = v
            for j in range(k):
                c = c / _KDIAG[t[j]]
            for j in range(k + 1, n):
                c = c * _KDIAG[t[j]]
            _acc(out, t[:k] + (dst,) + t[k + 1 :], c)
    return out


@lru_cache(maxsize=None)
def _column(m: Mono, J: tuple) -> tuple:
    """rho_n(F^a K^b E^c) e_J as sparse items."""
    vec = {J: ONE}
    for L in reversed(_letters(m)):
        vec = _apply_letter(L, vec, False)
    return tuple(vec.items())


@lru_cache(maxsize=None)
def _row(m: Mono, I_: tuple) -> tuple:
    """e_I^T rho_n(F^a K^b E^c) as sparse items."""
    vec = {I_: ONE}
    for L in _letters(m):
        vec = _apply_letter(L, vec, True)
    return tuple(vec.items())


def _word_indices(word: Word):
    coef = ONE
    I_, J = [], []
    for g in word:
        if g not in _GEN_ENTRY:
            raise PresentationMismatch(f"{g!r} is not a generator of A(SU_q(2))")
        c, (i, j) = _GEN_ENTRY[g]
        coef = coef * c
        I_.append(i)
        J.append(j)
    return coef, tuple(I_), tuple(J)


def _check_su(x: AlgebraElement):
    if set(x.presentation.generators) != set(_GEN_ENTRY):
        raise PresentationMismatch(f"pairing expects A(SU_q(2)), got {x.presentation.name}")


def pair_word(h: UqElement, word: Word) -> ScalarExpr:
    """<h, w> for an arbitrary (not necessarily normal) word."""
    coef, I_, J = _word_indices(tuple(word))
    out = ZERO
    for m, c in h.terms.items():
        v = dict(_column(m, J)).get(I_)
        if v is not None:
            out = out + c * v
    return out * coef


def pair(h: UqElement, x: AlgebraElement) -> ScalarExpr:
    """Hopf pairing <h, x> between U_q(su(2)) and A(SU_q(2))."""
    _check_su(x)
    out = ZERO
    for w, c in x.terms.items():
        out = out + c * pair_word(h, w)
    return out


def _entries_element(p: Presentation, idx_row: tuple, idx_col: tuple) -> AlgebraElement:
    coef = ONE
    word = []
    for i, j in zip(idx_row, idx_col):
        c, g = _ENTRY_GEN[(i, j)]
        coef = coef * c
        word.append(g)
    return p.normal_form(word).scale(coef)


def act_left(h: UqElement, x: AlgebraElement) -> AlgebraElement:
    """h ▷ x = x_(1) <h, x_(2)>."""
    _check_su(x)
    p = x.presentation
    out = p.zero()
    for w, c in x.terms.items():
        coef, I_, J = _word_indices(w)
        col: dict = {}
        for m, hc in h.terms.items():
            for K_, v in _column(m, J):
                _acc(col, K_, hc * v)
        for K_, v in col.items():
            out = out + _entries_element(p, I_, K_).scale(c * coef * v)
    return out


def act_right(x: AlgebraElement, h: UqElement) -> AlgebraElement:
    """x ◁ h = <h, x_(1)> x_(2)."""
    _check_su(x)
    p = x.presentation
    out = p.zero()
    for w, c in x.terms.items():
        coef, I_, J = _word_indices(w)
        row: dict = {}
        for m, hc in h.terms.items():
            for K_, v in _row(m, I_):
                _acc(row, K_, hc * v)
        for K_, v in row.items():
            out = out + _entries_element(p, K_, J).scale(c * coef * v)
    return out


def spin_half(h: UqElement) -> list[list[ScalarExpr]]:
    """The 2x2 matrix rho(h)_ij = <h, u_ij>."""
    out = [[ZERO, ZERO], [ZERO, ZERO]]
    for m, c in h.terms.items():
        for j in (0, 1):
            for (i,), v in _column(m, (j,)):
                out[i][j] = out[i][j] + c * v
    return out


# ---------------------------------------------------------------------------
# tangent space
# ---------------------------------------------------------------------------

TANGENT_LABELS = ("-", "+", "z")


@dataclass
class TangentSpace:
    """X_-, X_+, X_z, the sigma-commutator table f_ab^c and lambda = 1 + q^2."""

    X: dict
    f: dict
    lam: ScalarExpr

    def f_value(self, a: str, b: str, c: str) -> ScalarExpr:
        return self.f.get((a, b, c), ZERO)


# paper braiding on basis pairs: sigma(w_i ⊗ w_j) = sum coef w_k ⊗ w_l
def braid_table() -> dict[tuple[str, str], dict[tuple[str, str], ScalarExpr]]:
    q = _Q
    one_m = ONE - q * q
    t = {(a, a): {(a, a): ONE} for a in TANGENT_LABELS}
    t[("-", "+")] = {("-", "+"): one_m, ("+", "-"): q ** -2}
    t[("+", "-")] = {("-", "+"): q ** 4}
    t[("-", "z")] = {("-", "z"): one_m, ("z", "-"): q ** -4}
    t[("z", "-")] = {("-", "z"): q ** 6}
    t[("z", "+")] = {("z", "+"): one_m, ("+", "z"): q ** -4}
    t[("+", "z")] = {("z", "+"): q ** 6}
    return t


def tangent_vectors() -> dict[str, UqElement]:
    return {
        "-": (F * K).scale(ONE / S),
        "+": (E * K).scale(S),
        "z": (UQ_ONE - K ** 4).scale(ONE / (ONE - _QI * _QI)),
    }


def sigma_commutator(Xa: str, Xb: str, X: Mapping[str, UqElement] | None = None, braid=None) -> UqElement:
    """[X_a, X_b]_σ = X_a X_b - Σ_cd <coefficient of ω_a⊗ω_b in σ(ω_c⊗ω_d)> X_c X_d."""
    X = tangent_vectors() if X is None else X
    braid = braid_table() if braid is None else braid
    out = X[Xa] * X[Xb]
    for (c, d), img in braid.items():
        coef = img.get((Xa, Xb))
        if coef:
            out = out - (X[c] * X[d]).scale(coef)
    return out


def expand_in_tangent(h: UqElement, X: Mapping[str, UqElement] | None = None) -> dict[str, ScalarExpr] | None:
    """Coefficients h = Σ k_c X_c, or None if h is not in the span."""
    X = tangent_vectors() if X is None else X
    # X_- = q^-1/2 F K, X_+ = q^1/2 q^-1 K E, X_z = (1 - K^4)/(1 - q^-2) are read off monomials
    rest = UqElement(dict(h.terms))
    coeffs = {}
    for label, key in (("-", (1, 1, 0)), ("+", (0, 1, 1)), ("z", (0, 4, 0))):
        lead = X[label].terms[key]
        k = rest.terms.get(key, ZERO) / lead
        coeffs[label] = k
        rest = rest - X[label].scale(k)
    return coeffs if rest.is_zero else None


def tangent_space() -> TangentSpace:
    X = tangent_vectors()
    f = {}
    for a in TANGENT_LABELS:
        for b in TANGENT_LABELS:
            br = sigma_commutator(a, b, X)
            coeffs = expand_in_tangent(br, X)
            if coeffs is None:
                raise HopfError(f"[X_{a}, X_{b}]_σ is not in the tangent space: {br}")
            for c, v in coeffs.items():
                if v:
                    f[(a, b, c)] = v
    return TangentSpace(X, f, ONE + _Q * _Q)


# ---------------------------------------------------------------------------
# Hopf data on the coordinate algebras
# ---------------------------------------------------------------------------


@dataclass(eq=False)
class AlgTensor:
    """Element of A^{⊗n} as a map (word_1, ..., word_n) -> scalar."""

    presentation: Presentation
    terms: dict = field(default_factory=dict)

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            _acc(out, k, c)
        return AlgTensor(self.presentation, out)

    def __sub__(self, other):
        return self + other.scale(-ONE)

    def scale(self, c):
        c = as_scalar(c)
        return AlgTensor(self.presentation, {k: v * c for k, v in self.terms.items()} if c else {})

    def __mul__(self, other):
        p = self.presentation
        out: dict = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                parts = [p.normal_form(a + b).terms for a, b in zip(k1, k2)]
                acc = {(): c1 * c2}
                for part in parts:
                    nxt: dict = {}
                    for key, v in acc.items():
                        for w, cw in part.items():
                            _acc(nxt, key + (w,), v * cw)
                    acc = nxt
                for key, v in acc.items():
                    _acc(out, key, v)
        return AlgTensor(p, out)

    @staticmethod
    def from_element(x: AlgebraElement) -> "AlgTensor":
        return AlgTensor(x.presentation, {(w,): c for w, c in x.terms.items()})

    @staticmethod
    def pure(*xs: AlgebraElement) -> "AlgTensor":
        out = AlgTensor(xs[0].presentation, {(): ONE})
        for x in xs:
            out = AlgTensor(x.presentation, {k + (w,): c * cw for k, c in out.terms.items() for w, cw in x.terms.items()})
        return out

    def map_leg(self, i: int, fn: Callable[[AlgebraElement], "AlgTensor"]) -> "AlgTensor":
        p = self.presentation
        out = AlgTensor(p, {})
        for key, c in self.terms.items():
            img = fn(AlgebraElement(p, {key[i]: ONE}))
            for k2, c2 in img.terms.items():
                _acc(out.terms, key[:i] + k2 + key[i + 1 :], c * c2)
        return out

    def multiply(self) -> AlgebraElement:
        p = self.presentation
        out = p.zero()
        for key, c in self.terms.items():
            w = tuple(g for part in key for g in part)
            out = out + p.normal_form(w).scale(c)
        return out

    @property
    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, AlgTensor) and self.terms == other.terms

    __hash__ = None


class HopfData:
    """Coproduct, counit and antipode given on generators and extended."""

    def __init__(
        self,
        presentation: Presentation,
        coproduct: Mapping[str, AlgTensor],
        counit: Mapping[str, ScalarExpr],
        antipode: Mapping[str, AlgebraElement],
        name: str = "",
    ):
        self.presentation = presentation
        self.name = name or presentation.name
        self.delta_gen = dict(coproduct)
        self.eps_gen = {g: as_scalar(v) for g, v in counit.items()}
        self.S_gen = dict(antipode)

    def coproduct(self, x: AlgebraElement) -> AlgTensor:
        p = self.presentation
        out = AlgTensor(p, {})
        for w, c in x.terms.items():
            t = AlgTensor(p, {((), ()): c})
            for g in w:
                t = t * self.delta_gen[g]
            out = out + t
        return out

    def counit(self, x: AlgebraElement) -> ScalarExpr:
        out = ZERO
        for w, c in x.terms.items():
            v = c
            for g in w:
                v = v * self.eps_gen[g]
            out = out + v
        return out

    def antipode(self, x: AlgebraElement) -> AlgebraElement:
        p = self.presentation
        out = p.zero()
        for w, c in x.terms.items():
            t = p.scalar(c)
            for g in w:
                t = self.S_gen[g] * t
            out = out + t
        return out

    def _eps_leg(self, x: AlgebraElement) -> AlgTensor:
        return AlgTensor(self.presentation, {(): self.counit(x)} if self.counit(x) else {})

    def axiom_residuals(self) -> dict[str, object]:
        """All Hopf axioms on generators plus compatibility with the relations."""
        p = self.presentation
        res: dict[str, object] = {}
        for g in p.generators:
            x = p.gen(g)
            d = self.coproduct(x)
            res[f"coassociativity({g})"] = d.map_leg(0, self.coproduct) - d.map_leg(1, self.coproduct)
            res[f"left counit({g})"] = d.map_leg(0, self._eps_leg) - AlgTensor.from_element(x)
            res[f"right counit({g})"] = d.map_leg(1, self._eps_leg) - AlgTensor.from_element(x)
            unit = p.scalar(self.counit(x))
            res[f"left antipode({g})"] = d.map_leg(0, lambda y: AlgTensor.from_element(self.antipode(y))).multiply() - unit
            res[f"right antipode({g})"] = d.map_leg(1, lambda y: AlgTensor.from_element(self.antipode(y))).multiply() - unit
        for pat, rhs in p.rules.items():
            name = "·".join(pat)
            raw = AlgTensor(p, {((), ()): ONE})
            for g in pat:
                raw = raw * self.delta_gen[g]
            for c, w in rhs:
                raw = raw - self.coproduct(p.normal_form(w)).scale(c)
            res[f"Δ respects {name}"] = raw
            e = ONE
            for g in pat:
                e = e * self.eps_gen[g]
            res[f"ε respects {name}"] = e - sum((c * self.counit(p.normal_form(w)) for c, w in rhs), ZERO)
            s_lhs = p.one()
            for g in pat:
                s_lhs = self.S_gen[g] * s_lhs
            s_rhs = p.zero()
            for c, w in rhs:
                t = p.scalar(c)
                for g in w:
                    t = self.S_gen[g] * t
                s_rhs = s_rhs + t
            res[f"S respects {name}"] = s_lhs - s_rhs
        return res

    def failing_axioms(self) -> list[str]:
        out = []
        for k, v in self.axiom_residuals().items():
            zero = v.is_zero if hasattr(v, "is_zero") else not v
            if not zero:
                out.append(k)
        return out


def _matrix_hopf(p: Presentation, M, entry_of: Mapping[str, tuple[ScalarExpr, tuple[int, int]]]):
    """Coproduct ΔM_ij = Σ M_ik ⊗ M_kj and ε(M_ij) = δ_ij, read back per generator."""
    delta, eps = {}, {}
    for g, (coef, (i, j)) in entry_of.items():
        t = AlgTensor(p, {})
        for k in range(len(M)):
            t = t + AlgTensor.pure(M[i][k], M[k][j])
        delta[g] = t.scale(ONE / coef)
        eps[g] = (ONE if i == j else ZERO) / coef
    return delta, eps


def suq2_hopf(p: Presentation, q: ScalarExpr | None = None) -> HopfData:
    """Δu = u⊗u, ε(u) = 1, S(u) = u*."""
    q = _Q if q is None else as_scalar(q)
    u = [[p["a"], p["c*"].scale(-q)], [p["c"], p["a*"]]]
    entries = {"a": (ONE, (0, 0)), "a*": (ONE, (1, 1)), "c": (ONE, (1, 0)), "c*": (-q, (0, 1))}
    delta, eps = _matrix_hopf(p, u, entries)
    antipode = {g: u[j][i].star().scale(ONE / coef) for g, (coef, (i, j)) in entries.items()}
    return HopfData(p, delta, eps, antipode, name=p.name)


def q_matrix(r4: Presentation, q: ScalarExpr | None = None):
    """Q = [[x1, -q x3], [x2, q x4]], so that i(u) = r^-1 Q."""
    q = _Q if q is None else as_scalar(q)
    return [[r4["x1"], r4["x3"].scale(-q)], [r4["x2"], r4["x4"].scale(q)]]


def glq_hopf(r4: Presentation, q: ScalarExpr | None = None) -> HopfData:
    """A(GL_q(1,H)): ΔQ = Q⊗Q, Δr = r⊗r, ε = 1, S(Q) = r^-2 Q*, S(r) = r^-1."""
    q = _Q if q is None else as_scalar(q)
    Q = q_matrix(r4, q)
    entries = {"x1": (ONE, (0, 0)), "x3": (-q, (0, 1)), "x2": (ONE, (1, 0)), "x4": (q, (1, 1))}
    delta, eps = _matrix_hopf(r4, Q, entries)
    delta["r"] = AlgTensor.pure(r4["r"], r4["r"])
    delta["rinv"] = AlgTensor.pure(r4["rinv"], r4["rinv"])
    eps["r"] = ONE
    eps["rinv"] = ONE
    rinv2 = r4["rinv"] * r4["rinv"]
    antipode = {g: (rinv2 * Q[j][i].star()).scale(ONE / coef) for g, (coef, (i, j)) in entries.items()}
    antipode["r"] = r4["rinv"]
    antipode["rinv"] = r4["r"]
    return HopfData(r4, delta, eps, antipode, name="A(GL_q(1,H))")


def glq_paper_antipode_residual(r4: Presentation, q: ScalarExpr | None = None) -> AlgebraElement:
    """m(S⊗id)ΔQ_11 - 1 with S(Q) = Q* taken literally; nonzero (equals r^2 - 1)."""
    q = _Q if q is None else as_scalar(q)
    Q = q_matrix(r4, q)
    out = r4.zero()
    for k in range(2):
        out = out + Q[k][0].star() * Q[k][0]
    return out - r4.one()
