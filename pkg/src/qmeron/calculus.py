"""Differential calculi as data, forms with left coefficients, d and wedge.

Forms are stored as ``{basis word: AlgebraElement}`` with every coefficient
on the left of its basis word.  A calculus declares which algebra generators
commute with which basis 1-forms; moving any other coefficient across a form
raises :class:`UnsupportedBimoduleMove`.
"""
from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Callable, Mapping, Sequence

from . import hopf
from .ncalg import (
    AlgebraElement,
    Presentation,
    Word,
    _acc,
    build_chart,
    build_radial,
    build_suq2,
    build_tensor,
)
from .scalars import I, ONE, ZERO, S, ScalarExpr, as_scalar, const

Label = str
FormWord = tuple[str, ...]


class CalculusError(ValueError):
    pass


class UnsupportedBimoduleMove(CalculusError):
    """A coefficient would have to cross a form it is not known to commute with."""


class CalculusSpec:
    """A finite-rank differential calculus over a presented *-algebra.

    ``wedge_rules`` maps a pair of basis labels (out of order, or equal) to a
    list of ``(scalar, pair)``; an empty list means the product vanishes.
    ``d_basis`` maps each label to ``{word: coefficient}`` data in degree 2.
    ``d_algebra`` computes d on algebra elements.  ``commutes(g, label)``
    says whether generator ``g`` may be moved across basis form ``label``.
    """

    def __init__(
        self,
        name: str,
        algebra: Presentation,
        basis: Sequence[Label],
        wedge_rules: Mapping[tuple[Label, Label], Sequence[tuple[object, tuple[Label, Label]]]],
        d_basis: Mapping[Label, Mapping[FormWord, object]],
        d_algebra: Callable[[AlgebraElement], "FormElement"],
        involution: Mapping[Label, Sequence[tuple[object, Label]]],
        commutes: Callable[[str, Label], bool],
        *,
        top_degree: int | None = None,
        braiding: Mapping | None = None,
        factors: tuple["CalculusSpec", "CalculusSpec"] | None = None,
        notes: Sequence[str] = (),
    ):
        self.name = name
        self.algebra = algebra
        self.basis = tuple(basis)
        self.index = {b: i for i, b in enumerate(self.basis)}
        self.n = len(self.basis) if top_degree is None else top_degree
        self.wedge_rules = {k: [(as_scalar(c), tuple(w)) for c, w in v] for k, v in wedge_rules.items()}
        self._d_basis_raw = dict(d_basis)
        self._d_algebra = d_algebra
        self.involution = {k: [(as_scalar(c), l) for c, l in v] for k, v in involution.items()}
        self._commutes = commutes
        self.braiding = braiding
        self.factors = factors
        self.notes = tuple(notes)
        self._d_basis: dict[Label, FormElement] = {}
        self._dword: dict[Word, FormElement] = {}
        self.check_wedge_rules()

    def __repr__(self):
        return f"CalculusSpec({self.name})"

    # -- basis words --------------------------------------------------------
    def word_nf(self, word: FormWord) -> dict[FormWord, ScalarExpr]:
        return dict(_word_nf_cached(self, tuple(word)))

    def basis_words(self, k: int) -> list[FormWord]:
        """Normal basis words of degree k (increasing label order)."""
        out = []
        for w in itertools.combinations(self.basis, k):
            nf = self.word_nf(w)
            if list(nf) == [w]:
                out.append(w)
        return out

    def volume_word(self) -> FormWord:
        return tuple(self.basis)

    def check_wedge_rules(self) -> None:
        """Termination holds by construction; uniqueness is checked on all words up to length 3."""
        for pat, rhs in self.wedge_rules.items():
            for _, w in rhs:
                if not [self.index[x] for x in w] < [self.index[x] for x in pat]:
                    raise CalculusError(f"wedge rule {pat} -> {w} does not decrease the order")
        for n in (2, 3):
            for w in itertools.product(self.basis, repeat=n):
                if _word_nf_strategy(self, w, False) != _word_nf_strategy(self, w, True):
                    raise CalculusError(f"wedge normal form of {w} is not unique")

    # -- coefficient moves --------------------------------------------------------
    def can_move(self, x: AlgebraElement, word: FormWord) -> bool:
        gens = x.generators_used()
        return all(self._commutes(g, l) for g in gens for l in word)

    def move_left(self, x: AlgebraElement, word: FormWord) -> AlgebraElement:
        """Return x' with (form word)·x = x'·(form word); only trivial moves are supported."""
        if not word or x.is_scalar() or self.can_move(x, word):
            return x
        raise UnsupportedBimoduleMove(
            f"cannot move {x.render()} to the left of {'∧'.join(word)} in {self.name}: "
            "bimodule relations are not part of the calculus data"
        )

    # -- constructors ---------------------------------------------------------------
    def zero(self) -> "FormElement":
        return FormElement(self, {})

    def one(self) -> "FormElement":
        return FormElement(self, {(): self.algebra.one()})

    def function(self, x: AlgebraElement) -> "FormElement":
        if x.presentation is not self.algebra:
            raise CalculusError(f"{x.presentation.name} is not the algebra of {self.name}")
        return FormElement(self, {(): x} if x else {})

    def scalar(self, c) -> "FormElement":
        return self.function(self.algebra.scalar(c))

    def form(self, *labels: Label, coef=None) -> "FormElement":
        for l in labels:
            if l not in self.index:
                raise CalculusError(f"{l!r} is not a basis form of {self.name}")
        if coef is None:
            coef = self.algebra.one()
        elif not isinstance(coef, AlgebraElement):
            coef = self.algebra.scalar(coef)
        out: dict = {}
        for w, c in self.word_nf(labels).items():
            v = coef.scale(c)
            if v:
                out[w] = v
        return FormElement(self, out)

    def __getitem__(self, label: Label) -> "FormElement":
        return self.form(label)

    def from_data(self, data: Mapping[FormWord, object]) -> "FormElement":
        out = self.zero()
        for w, c in data.items():
            coef = c if isinstance(c, AlgebraElement) else self.algebra.scalar(c)
            out = out + self.form(*w, coef=coef)
        return out

    # -- d ------------------------------------------------------------------------
    def d_basis(self, label: Label) -> "FormElement":
        hit = self._d_basis.get(label)
        if hit is None:
            hit = self.from_data(self._d_basis_raw.get(label, {}))
            self._d_basis[label] = hit
        return hit

    def d_algebra(self, x: AlgebraElement) -> "FormElement":
        out = self.zero()
        for w, c in x.terms.items():
            dw = self._dword.get(w)
            if dw is None:
                dw = self._d_algebra(AlgebraElement(self.algebra, {w: ONE}))
                self._dword[w] = dw
            out = out + dw.scale(c)
        return out

    def d_word(self, word: FormWord) -> "FormElement":
        """d of a basis word: Σ_j (-1)^j ω_1..dω_j..ω_k."""
        out = self.zero()
        for j, l in enumerate(word):
            term = self.form(*word[:j]).wedge(self.d_basis(l)).wedge(self.form(*word[j + 1 :]))
            out = out + (term if j % 2 == 0 else -term)
        return out

    # -- involution -------------------------------------------------------------------
    def star_word(self, word: FormWord) -> "FormElement":
        """(ω_1∧..∧ω_k)* = (-1)^{k(k-1)/2} ω_k*∧..∧ω_1*."""
        out = self.one()
        for l in reversed(word):
            img = self.zero()
            for c, l2 in self.involution[l]:
                img = img + self.form(l2).scale(c)
            out = out.wedge(img)
        k = len(word)
        return out if (k * (k - 1) // 2) % 2 == 0 else -out

    # -- braiding ---------------------------------------------------------------------
    def braid(self, pairs: Mapping[tuple[Label, Label], object]) -> dict[tuple[Label, Label], ScalarExpr]:
        if self.braiding is None:
            raise CalculusError(f"{self.name} has no braiding")
        out: dict = {}
        for key, c in pairs.items():
            c = as_scalar(c)
            for k2, c2 in self.braiding[key].items():
                _acc(out, k2, c * c2)
        return out

    def wedge_relation_vectors(self) -> dict[tuple[Label, Label], dict]:
        """For each rule y∧x -> -k x∧y the vector y⊗x + k x⊗y."""
        out = {}
        for (y, x), rhs in self.wedge_rules.items():
            if x == y or not rhs:
                continue
            (c, w), = rhs
            out[(y, x)] = {(y, x): ONE, w: -c}
        return out

    def braid_fixed_point_residuals(self) -> dict:
        out = {}
        for key, vec in self.wedge_relation_vectors().items():
            res = self.braid(vec)
            for k, v in vec.items():
                _acc(res, k, -v)
            out[key] = res
        return out

    def braid_equation_residual(self) -> dict:
        """(σ⊗1)(1⊗σ)(σ⊗1) - (1⊗σ)(σ⊗1)(1⊗σ) on all basis triples (not asserted)."""

        def s12(vec):
            out: dict = {}
            for (a, b, c), v in vec.items():
                for (x, y), w in self.braiding[(a, b)].items():
                    _acc(out, (x, y, c), v * w)
            return out

        def s23(vec):
            out: dict = {}
            for (a, b, c), v in vec.items():
                for (x, y), w in self.braiding[(b, c)].items():
                    _acc(out, (a, x, y), v * w)
            return out

        res = {}
        for t in itertools.product(self.basis, repeat=3):
            lhs = s12(s23(s12({t: ONE})))
            rhs = s23(s12(s23({t: ONE})))
            for k, v in rhs.items():
                _acc(lhs, k, -v)
            if lhs:
                res[t] = lhs
        return res


def _word_nf_strategy(calc: CalculusSpec, word: FormWord, rightmost: bool) -> dict:
    out: dict = {}
    stack = [(word, ONE)]
    while stack:
        w, c = stack.pop()
        n = len(w)
        positions = range(n - 2, -1, -1) if rightmost else range(n - 1)
        for i in positions:
            rhs = calc.wedge_rules.get((w[i], w[i + 1]))
            if rhs is not None:
                for c2, w2 in rhs:
                    stack.append((w[:i] + w2 + w[i + 2 :], c * c2))
                break
        else:
            _acc(out, w, c)
    return out


@lru_cache(maxsize=None)
def _word_nf_cached(calc: CalculusSpec, word: FormWord) -> tuple:
    return tuple(_word_nf_strategy(calc, word, False).items())


class FormElement:
    """Σ coefficient·(basis word), coefficients on the left, words in normal form."""

    __slots__ = ("calculus", "terms")

    def __init__(self, calculus: CalculusSpec, terms: dict):
        self.calculus = calculus
        self.terms = terms

    def _same(self, other: "FormElement"):
        if other.calculus is not self.calculus:
            raise CalculusError(f"forms of {self.calculus.name} and {other.calculus.name} cannot be combined")

    def __add__(self, other):
        if not isinstance(other, FormElement):
            other = self.calculus.scalar(other)
        self._same(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            v = out.get(w)
            v = c if v is None else v + c
            if v:
                out[w] = v
            else:
                out.pop(w, None)
        return FormElement(self.calculus, out)

    __radd__ = __add__

    def __neg__(self):
        return FormElement(self.calculus, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, FormElement):
            other = self.calculus.scalar(other)
        return self + (-other)

    def scale(self, c) -> "FormElement":
        c = as_scalar(c)
        if not c:
            return self.calculus.zero()
        return FormElement(self.calculus, {w: v.scale(c) for w, v in self.terms.items()})

    def lmul(self, x: AlgebraElement) -> "FormElement":
        """x·ξ (left multiplication by a function)."""
        out = {}
        for w, c in self.terms.items():
            v = x * c
            if v:
                out[w] = v
        return FormElement(self.calculus, out)

    def rmul(self, x: AlgebraElement) -> "FormElement":
        """ξ·x, only when x may be moved across the forms."""
        out: dict = {}
        for w, c in self.terms.items():
            v = c * self.calculus.move_left(x, w)
            if v:
                out[w] = v
        return FormElement(self.calculus, out)

    def __mul__(self, other):
        if isinstance(other, FormElement):
            return self.wedge(other)
        if isinstance(other, AlgebraElement):
            return self.rmul(other)
        return self.scale(other)

    def __rmul__(self, other):
        if isinstance(other, AlgebraElement):
            return self.lmul(other)
        return self.scale(other)

    def wedge(self, other: "FormElement") -> "FormElement":
        self._same(other)
        calc = self.calculus
        out: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                coef = c1 * calc.move_left(c2, w1)
                if not coef:
                    continue
                for w, s in calc.word_nf(w1 + w2).items():
                    v = coef.scale(s)
                    prev = out.get(w)
                    v = v if prev is None else prev + v
                    if v:
                        out[w] = v
                    else:
                        out.pop(w, None)
        return FormElement(calc, out)

    __xor__ = wedge

    def d(self) -> "FormElement":
        calc = self.calculus
        out = calc.zero()
        for w, c in self.terms.items():
            out = out + calc.d_algebra(c).wedge(calc.form(*w))
            if w:
                out = out + calc.d_word(w).lmul(c)
        return out

    def star(self) -> "FormElement":
        calc = self.calculus
        out = calc.zero()
        for w, c in self.terms.items():
            sw = calc.star_word(w)
            out = out + sw.rmul(c.star())
        return out

    # -- inspection ----------------------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, FormElement):
            return other.calculus is self.calculus and (self - other).is_zero
        return NotImplemented

    __hash__ = None

    def degrees(self) -> set[int]:
        return {len(w) for w in self.terms}

    def degree(self) -> int:
        ds = self.degrees()
        if len(ds) > 1:
            raise CalculusError("form is not homogeneous")
        return ds.pop() if ds else 0

    def part(self, k: int) -> "FormElement":
        return FormElement(self.calculus, {w: c for w, c in self.terms.items() if len(w) == k})

    def coefficient(self, *word: Label) -> AlgebraElement:
        return self.terms.get(tuple(word), self.calculus.algebra.zero())

    def has_scalar_coefficients(self) -> bool:
        return all(c.is_scalar() for c in self.terms.values())

    def map_coefficients(self, fn: Callable[[AlgebraElement], AlgebraElement]) -> "FormElement":
        out = {}
        for w, c in self.terms.items():
            v = fn(c)
            if v:
                out[w] = v
        return FormElement(self.calculus, out)

    def substitute(self, bindings, **kw) -> "FormElement":
        return self.map_coefficients(lambda c: c.substitute(bindings, **kw))

    def render(self) -> str:
        if not self.terms:
            return "0"
        calc = self.calculus
        parts = []
        for w in sorted(self.terms, key=lambda w: (len(w), [calc.index[l] for l in w])):
            c = self.terms[w].render()
            ws = "∧".join(w)
            if not w:
                parts.append(f"({c})")
            elif c == "1":
                parts.append(ws)
            else:
                parts.append(f"({c})·{ws}")
        return " + ".join(parts)

    __str__ = render

    def __repr__(self):
        return f"<{self.calculus.name}: {self.render()}>"


# ---------------------------------------------------------------------------
# built-in calculi
# ---------------------------------------------------------------------------

QUANTUM_BASIS = ("ω-", "ω+", "ωz")
_QLABEL = {"-": "ω-", "+": "ω+", "z": "ωz"}
CLASSICAL_BASIS = ("ω1", "ω2", "ω3")


def levi_civita(a: int, b: int, c: int) -> int:
    if len({a, b, c}) < 3:
        return 0
    return 1 if (a, b, c) in ((1, 2, 3), (2, 3, 1), (3, 1, 2)) else -1


def _anticommuting_rules(basis: Sequence[Label]) -> dict:
    rules = {}
    for i, x in enumerate(basis):
        rules[(x, x)] = []
        for y in basis[:i]:
            rules[(x, y)] = [(-ONE, (y, x))]
    return rules


def quantum_wedge_rules(e_minus: int = 4, e_plus: int = -4) -> dict:
    """ω_a∧ω_a = 0, ω+∧ω- = -q^2 ω-∧ω+, ωz∧ω- = -q^e_minus ω-∧ωz, ωz∧ω+ = -q^e_plus ω+∧ωz."""
    q = S * S
    rules = {(l, l): [] for l in QUANTUM_BASIS}
    rules[("ω+", "ω-")] = [(-(q ** 2), ("ω-", "ω+"))]
    rules[("ωz", "ω-")] = [(-(q ** e_minus), ("ω-", "ωz"))]
    rules[("ωz", "ω+")] = [(-(q ** e_plus), ("ω+", "ωz"))]
    return rules


WEDGE_SIGN_CANDIDATES = [(4, 4), (4, -4), (-4, 4), (-4, -4)]


def _quantum_d_alg(tangent):
    def d_alg(x: AlgebraElement) -> "FormElement":
        calc = d_alg.calc
        out = calc.zero()
        for a, Xa in tangent.X.items():
            y = hopf.act_left(Xa, x)
            if y:
                out = out + calc.form(_QLABEL[a], coef=y)
        return out

    return d_alg


def quantum_calculus(algebra: Presentation | None = None, signs: tuple[int, int] = (4, -4)) -> CalculusSpec:
    """Woronowicz's 3D calculus on A(SU_q(2)) in the basis ω-, ω+, ωz."""
    algebra = build_suq2() if algebra is None else algebra
    ts = hopf.tangent_space()
    lam = ts.lam
    d_basis: dict = {}
    for a in hopf.TANGENT_LABELS:
        data: dict = {}
        for b in hopf.TANGENT_LABELS:
            for c in hopf.TANGENT_LABELS:
                f = ts.f_value(b, c, a)
                if f:
                    data[(_QLABEL[b], _QLABEL[c])] = data.get((_QLABEL[b], _QLABEL[c]), ZERO) - f / lam
        d_basis[_QLABEL[a]] = data
    braid = {
        (_QLABEL[x], _QLABEL[y]): {(_QLABEL[u], _QLABEL[v]): c for (u, v), c in img.items()}
        for (x, y), img in hopf.braid_table().items()
    }
    d_alg = _quantum_d_alg(ts)
    calc = CalculusSpec(
        "Woronowicz 3D on " + algebra.name,
        algebra,
        QUANTUM_BASIS,
        quantum_wedge_rules(*signs),
        d_basis,
        d_alg,
        {"ω-": [(-1, "ω+")], "ω+": [(-1, "ω-")], "ωz": [(-1, "ωz")]},
        lambda g, l: False,
        braiding=braid,
        notes=(f"wedge signs ωz∧ω- = -q^{signs[0]} ω-∧ωz, ωz∧ω+ = -q^{signs[1]} ω+∧ωz",),
    )
    d_alg.calc = calc
    calc.tangent = ts
    calc.signs = signs
    return calc


# classical su(2) generators T_a in the fundamental representation
def classical_T() -> dict[int, list[list[ScalarExpr]]]:
    h = const(1, 2)
    return {
        1: [[ZERO, I * h], [I * h, ZERO]],
        2: [[ZERO, -h], [h, ZERO]],
        3: [[I * h, ZERO], [ZERO, -I * h]],
    }


def _classical_d_alg(calc_box, algebra: Presentation):
    # T▷u_ij = Σ_k u_ik T_kj with u = [[a, -c*], [c, a*]]; d is a derivation
    u = [[algebra["a"], -algebra["c*"]], [algebra["c"], algebra["a*"]]]
    entry = {"a": (ONE, 0, 0), "c*": (-ONE, 0, 1), "c": (ONE, 1, 0), "a*": (ONE, 1, 1)}
    T = classical_T()
    gen_d: dict = {}

    def d_gen(g):
        hit = gen_d.get(g)
        if hit is None:
            calc = calc_box[0]
            sgn, i, j = entry[g]
            hit = calc.zero()
            for a in (1, 2, 3):
                y = algebra.zero()
                for k in (0, 1):
                    if T[a][k][j]:
                        y = y + u[i][k].scale(T[a][k][j])
                hit = hit + calc.form(f"ω{a}", coef=y.scale(sgn))
            gen_d[g] = hit
        return hit

    def d_alg(x):
        return _leibniz(calc_box[0], x, d_gen)

    return d_alg


def _leibniz(calc: CalculusSpec, x: AlgebraElement, d_gen) -> "FormElement":
    """d on words by the Leibniz rule (coefficients must commute with the forms)."""
    p = calc.algebra
    out = calc.zero()
    for w, c in x.terms.items():
        for i, g in enumerate(w):
            left = p.normal_form(w[:i])
            right = p.normal_form(w[i + 1 :])
            out = out + d_gen(g).rmul(right).lmul(left).scale(c)
    return out


def classical_calculus(algebra: Presentation | None = None) -> CalculusSpec:
    """su(2)-invariant calculus on S^3 = SU(2): dω_a = -½ ε_abc ω_b∧ω_c."""
    algebra = build_suq2(ONE, "A(SU(2))") if algebra is None else algebra
    half = const(1, 2)
    d_basis = {}
    for a in (1, 2, 3):
        data = {}
        for b in (1, 2, 3):
            for c in (1, 2, 3):
                e = levi_civita(a, b, c)
                if e:
                    data[(f"ω{b}", f"ω{c}")] = -half * e
        d_basis[f"ω{a}"] = data
    box: list = []
    calc = CalculusSpec(
        "su(2) calculus on " + algebra.name,
        algebra,
        CLASSICAL_BASIS,
        _anticommuting_rules(CLASSICAL_BASIS),
        d_basis,
        _classical_d_alg(box, algebra),
        {l: [(1, l)] for l in CLASSICAL_BASIS},
        lambda g, l: True,
    )
    box.append(calc)
    return calc


def radial_calculus(algebra: Presentation | None = None) -> CalculusSpec:
    """One-dimensional calculus on the radial algebra: d r = dr, d r^-1 = -r^-2 dr."""
    algebra = build_radial() if algebra is None else algebra
    box: list = []

    def d_gen(g):
        calc = box[0]
        if g == "r":
            return calc.form("dr")
        return calc.form("dr", coef=-(algebra["rinv"] * algebra["rinv"]))

    calc = CalculusSpec(
        "radial calculus",
        algebra,
        ("dr",),
        _anticommuting_rules(("dr",)),
        {"dr": {}},
        lambda x: _leibniz(box[0], x, d_gen),
        {"dr": [(1, "dr")]},
        lambda g, l: True,
    )
    box.append(calc)
    return calc


CHART_COORDS = ("x0", "x1", "x2", "x3")


def chart_partial(x: AlgebraElement, mu: int) -> AlgebraElement:
    """∂_μ on the chart algebra: ∂_μ x_ν = δ_μν, ∂_μ sc = -2 x_μ sc^2."""
    p = x.presentation
    out = p.zero()
    xm = CHART_COORDS[mu]
    for w, c in x.terms.items():
        for i, g in enumerate(w):
            rest = w[:i] + w[i + 1 :]
            if g == xm:
                out = out + p.normal_form(rest).scale(c)
            elif g == "sc":
                out = out + p.normal_form(rest + (xm, "sc", "sc")).scale(-2 * c)
    return out


def chart_calculus(algebra: Presentation | None = None) -> CalculusSpec:
    """Commutative calculus on R^4 minus 0 in the chart basis dx0..dx3."""
    algebra = build_chart() if algebra is None else algebra
    basis = tuple(f"d{x}" for x in CHART_COORDS)
    box: list = []

    def d_alg(x):
        calc = box[0]
        out = calc.zero()
        for mu in range(4):
            y = chart_partial(x, mu)
            if y:
                out = out + calc.form(basis[mu], coef=y)
        return out

    calc = CalculusSpec(
        "chart calculus on R^4",
        algebra,
        basis,
        _anticommuting_rules(basis),
        {b: {} for b in basis},
        d_alg,
        {b: [(1, b)] for b in basis},
        lambda g, l: True,
    )
    box.append(calc)
    return calc


def lift(x: AlgebraElement, target: Presentation) -> AlgebraElement:
    """Embed a factor element into a tensor product presentation (same generator names)."""
    out = target.zero()
    for w, c in x.terms.items():
        out = out + target.normal_form(w).scale(c)
    return out


def lift_form(xi: FormElement, target: CalculusSpec) -> FormElement:
    out = target.zero()
    for w, c in xi.terms.items():
        out = out + target.form(*w, coef=lift(c, target.algebra))
    return out


def restrict(x: AlgebraElement, factor: Presentation) -> AlgebraElement:
    return AlgebraElement(factor, dict(x.terms))


def product_calculus(c1: CalculusSpec, c2: CalculusSpec, name: str | None = None) -> CalculusSpec:
    """Tensor product calculus Λ^m = ⊕ Λ1^(m-k) ⊗ Λ2^k with the graded sign rule."""
    A = build_tensor(c1.algebra, c2.algebra)
    g1, g2 = set(c1.algebra.generators), set(c2.algebra.generators)
    b1, b2 = set(c1.basis), set(c2.basis)
    rules = dict(c1.wedge_rules)
    rules.update(c2.wedge_rules)
    for y in c2.basis:
        for x in c1.basis:
            rules[(y, x)] = [(-ONE, (x, y))]

    def commutes(g, l):
        if (g in g1 and l in b2) or (g in g2 and l in b1):
            return True
        return c1._commutes(g, l) if g in g1 else c2._commutes(g, l)

    box: list = []

    def d_alg(x: AlgebraElement) -> FormElement:
        calc = box[0]
        out = calc.zero()
        for w, c in x.terms.items():
            k = 0
            while k < len(w) and w[k] in g1:
                k += 1
            w1, w2 = w[:k], w[k:]
            x1 = c1.algebra.normal_form(w1)
            x2 = c2.algebra.normal_form(w2)
            part1 = lift_form(c1.d_algebra(x1), calc).rmul(lift(x2, A))
            part2 = lift_form(c2.d_algebra(x2), calc).lmul(lift(x1, A))
            out = out + (part1 + part2).scale(c)
        return out

    d_basis = {}
    for c in (c1, c2):
        for l in c.basis:
            d_basis[l] = {w: lift(v, A) for w, v in c.d_basis(l).terms.items()}
    calc = CalculusSpec(
        name or f"{c1.name} ⊗ {c2.name}",
        A,
        c1.basis + c2.basis,
        rules,
        d_basis,
        d_alg,
        {**c1.involution, **c2.involution},
        commutes,
        factors=(c1, c2),
    )
    box.append(calc)
    return calc


# ---------------------------------------------------------------------------
# consistency helpers
# ---------------------------------------------------------------------------


def dd_residuals(calc: CalculusSpec) -> dict[str, FormElement]:
    """d∘d on every generator and every basis 1-form."""
    out = {}
    for g in calc.algebra.generators:
        out[g] = calc.d_algebra(calc.algebra.gen(g)).d()
    for l in calc.basis:
        out[l] = calc.form(l).d().d()
    return out


def reconstruct_invariant_forms(calc: CalculusSpec) -> dict[str, FormElement]:
    """ωz = a*da + c*dc, ω- = c*da* - q a*dc*, ω+ = a dc - q c da, computed via d."""
    p = calc.algebra
    q = S * S
    d = lambda g: calc.d_algebra(p[g])
    return {
        "ωz": d("a").lmul(p["a*"]) + d("c").lmul(p["c*"]),
        "ω-": d("a*").lmul(p["c*"]) - d("c*").lmul(p["a*"]).scale(q),
        "ω+": d("c").lmul(p["a"]) - d("a").lmul(p["c"]).scale(q),
    }


_MC_TERMS = {
    "ωz": ((ONE, "a*", "a"), (ONE, "c*", "c")),
    "ω-": ((ONE, "c*", "a*"), (None, "a*", "c*")),
    "ω+": ((ONE, "a", "c"), (None, "c", "a")),
}


def right_multiply_invariant(calc: CalculusSpec, label: str, y: AlgebraElement) -> "FormElement":
    """ω_label · y in left-coefficient form on A(SU_q(2)).

    Each ω is Σ x_i dy_i, and Leibniz gives (x dz)·y = x (d(zy) - z dy).
    """
    p = calc.algebra
    mq = -(S * S)
    dy = calc.d_algebra(y)
    out = calc.zero()
    for c, x, z in _MC_TERMS[label]:
        c = mq if c is None else c
        zg = p[z]
        term = (calc.d_algebra(zg * y) - dy.lmul(zg)).lmul(p[x])
        out = out + term.scale(c)
    return out


def right_multiply_one_form(calc: CalculusSpec, xi: "FormElement", y: AlgebraElement) -> "FormElement":
    out = calc.zero()
    for w, c in xi.terms.items():
        if len(w) != 1:
            raise CalculusError("right multiplication is implemented on 1-forms")
        out = out + right_multiply_invariant(calc, w[0], y).lmul(c)
    return out


def star_one_form(calc: CalculusSpec, xi: "FormElement") -> "FormElement":
    """(Σ c_l ω_l)* = Σ ω_l* c_l*, brought back to left coefficients."""
    out = calc.zero()
    for w, c in xi.terms.items():
        out = out + right_multiply_one_form(calc, calc.star_word(w), c.star())
    return out


def chart_meron_fields(lam=None):
    """A_μ and F_μν of λ·π*(g^-1 dg) on the chart, as 2x2 matrices over the chart algebra.

    A_μ = λ(sc·M†∂_μM + ½(∂_μ sc)·M†M) with M = x0 + i σ_a x_a.
    Returns (A, F, algebra) with F keyed by (μ, ν), μ < ν.
    """
    from .scalars import param

    lam = param("lc") if lam is None else as_scalar(lam)
    p = _chart_algebra()
    M, Md = chart_matrices(p)
    A = []
    half = const(1, 2)
    for mu in range(4):
        dM = [[chart_partial(e, mu) for e in row] for row in M]
        first = _mat_mul(Md, dM)
        MdM = _mat_mul(Md, M)
        dsc = chart_partial(p["sc"], mu)
        A.append(
            [
                [(p["sc"] * first[i][j] + dsc * MdM[i][j] * half).scale(lam) for j in range(2)]
                for i in range(2)
            ]
        )
    F = {}
    for mu in range(4):
        for nu in range(mu + 1, 4):
            F[(mu, nu)] = chart_curvature_component(A, mu, nu)
    return A, F, p


@lru_cache(maxsize=None)
def _chart_algebra() -> Presentation:
    return build_chart()


def pauli() -> list:
    T = classical_T()
    return [None] + [[[e * (-2 * I) for e in row] for row in T[a]] for a in (1, 2, 3)]


def chart_matrices(p: Presentation):
    """M = x0·1 + i Σ σ_a x_a and M† = x0·1 - i Σ σ_a x_a."""
    sig = pauli()
    M = [[p.zero(), p.zero()], [p.zero(), p.zero()]]
    Md = [[p.zero(), p.zero()], [p.zero(), p.zero()]]
    for i in range(2):
        M[i][i] = M[i][i] + p["x0"]
        Md[i][i] = Md[i][i] + p["x0"]
    for a in (1, 2, 3):
        for i in range(2):
            for j in range(2):
                if sig[a][i][j]:
                    M[i][j] = M[i][j] + p[f"x{a}"].scale(I * sig[a][i][j])
                    Md[i][j] = Md[i][j] - p[f"x{a}"].scale(I * sig[a][i][j])
    return M, Md


def _mat_mul(X, Y):
    n = len(X)
    return [[sum((X[i][k] * Y[k][j] for k in range(1, n)), X[i][0] * Y[0][j]) for j in range(n)] for i in range(n)]


def _mat_add(X, Y, c=ONE):
    return [[X[i][j] + Y[i][j].scale(c) for j in range(len(X))] for i in range(len(X))]


def chart_curvature_component(A, mu, nu):
    dA = [[chart_partial(A[nu][i][j], mu) - chart_partial(A[mu][i][j], nu) for j in range(2)] for i in range(2)]
    comm = _mat_add(_mat_mul(A[mu], A[nu]), _mat_mul(A[nu], A[mu]), -ONE)
    return _mat_add(dA, comm)


def chart_sigma_matrices(p: Presentation):
    """Σ_μν = τ*_μ τ_ν - δ_μν with τ_0 = 1, τ_j = i σ_j."""
    sig = pauli()
    one = [[ONE, ZERO], [ZERO, ONE]]
    tau = [one] + [[[I * e for e in row] for row in sig[j]] for j in (1, 2, 3)]
    taus = [[[tau[m][j][i].conjugate() for j in range(2)] for i in range(2)] for m in range(4)]
    out = {}
    for m in range(4):
        for n in range(4):
            mat = [[sum((taus[m][i][k] * tau[n][k][j] for k in range(2)), ZERO) for j in range(2)] for i in range(2)]
            if m == n:
                mat = [[mat[i][j] - (ONE if i == j else ZERO) for j in range(2)] for i in range(2)]
            out[(m, n)] = mat
    return out


def chart_curvature_formula(p: Presentation, lam, mu: int, nu: int):
    """λ(λ-1) sc^2 [Σ_μα x_α, Σ_νβ x_β]."""
    lam = as_scalar(lam)
    Sg = chart_sigma_matrices(p)

    def contract(m):
        out = [[p.zero(), p.zero()], [p.zero(), p.zero()]]
        for a in range(4):
            for i in range(2):
                for j in range(2):
                    if Sg[(m, a)][i][j]:
                        out[i][j] = out[i][j] + p[f"x{a}"].scale(Sg[(m, a)][i][j])
        return out

    X, Y = contract(mu), contract(nu)
    comm = _mat_add(_mat_mul(X, Y), _mat_mul(Y, X), -ONE)
    sc2 = p["sc"] * p["sc"]
    return [[(sc2 * comm[i][j]).scale(lam * (lam - 1)) for j in range(2)] for i in range(2)]


def chart_ym_residual(A, F, nu: int):
    """Σ_μ (∂_μ F_μν + [A_μ, F_μν]) with F_μν = -F_νμ and F_νν = 0."""
    p = A[0][0][0].presentation

    def Fmn(m, n):
        if m == n:
            return [[p.zero(), p.zero()], [p.zero(), p.zero()]]
        if m < n:
            return F[(m, n)]
        return [[-e for e in row] for row in F[(n, m)]]

    out = [[p.zero(), p.zero()], [p.zero(), p.zero()]]
    for m in range(4):
        Fm = Fmn(m, nu)
        d = [[chart_partial(Fm[i][j], m) for j in range(2)] for i in range(2)]
        comm = _mat_add(_mat_mul(A[m], Fm), _mat_mul(Fm, A[m]), -ONE)
        out = _mat_add(out, _mat_add(d, comm))
    return out
