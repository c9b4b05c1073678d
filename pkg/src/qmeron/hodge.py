"""Hermitian structures on free form modules and Hodge star operators.

The star is always solved from its defining equation

    τ (∗α, β) = α* ∧ β

per degree: with W_il the coefficient of e_i*∧f_l against τ and G the Gram
matrix of the complementary degree, the star matrix is S = (W G^-1)*.
Gram entries are scalars or central invertible elements (powers of r).
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import sympy

from .calculus import (
    QUANTUM_BASIS,
    WEDGE_SIGN_CANDIDATES,
    CalculusSpec,
    FormElement,
    UnsupportedBimoduleMove,
    dd_residuals,
    lift,
    lift_form,
    quantum_calculus,
)
from .ncalg import AlgebraElement
from .scalars import (
    ONE,
    ZERO,
    S,
    ScalarExpr,
    as_scalar,
    const,
    from_sympy,
    numerator_factors,
    param,
    symbol,
)

Word = tuple[str, ...]


class HodgeError(ValueError):
    pass


class SingularGram(HodgeError):
    pass


class InconsistentConstraints(HodgeError):
    pass


HERMITIAN_PARAMETERS = ("ah", "bh", "gh")


def _q():
    return S * S


def _lam():
    q = _q()
    return ONE + q * q


# ---------------------------------------------------------------------------
# matrices over central elements
# ---------------------------------------------------------------------------


def unit_inverse(x: AlgebraElement) -> AlgebraElement:
    """Inverse of c·r^k (c a nonzero scalar); raises SingularGram otherwise."""
    p = x.presentation
    if len(x.terms) != 1:
        raise SingularGram(f"{x} is not a unit")
    ((w, c),) = x.terms.items()
    if not c:
        raise SingularGram("zero pivot")
    if not w:
        return p.scalar(ONE / c)
    if set(w) == {"r"}:
        return p.normal_form(("rinv",) * len(w)).scale(ONE / c)
    if set(w) == {"rinv"}:
        return p.normal_form(("r",) * len(w)).scale(ONE / c)
    raise SingularGram(f"{x} is not a unit")


def mat_inverse(M: list[list[AlgebraElement]]) -> list[list[AlgebraElement]]:
    """Gauss-Jordan over central entries, pivoting on units only."""
    n = len(M)
    if n == 0:
        return []
    p = M[0][0].presentation
    A = [list(row) + [p.one() if i == j else p.zero() for j in range(n)] for i, row in enumerate(M)]
    for col in range(n):
        piv = None
        for r in range(col, n):
            if A[r][col]:
                try:
                    inv = unit_inverse(A[r][col])
                except SingularGram:
                    continue
                piv = r
                break
        if piv is None:
            raise SingularGram(f"Gram matrix is not invertible (column {col})")
        A[col], A[piv] = A[piv], A[col]
        A[col] = [inv * e for e in A[col]]
        for r in range(n):
            if r != col and A[r][col]:
                f = A[r][col]
                A[r] = [A[r][j] - f * A[col][j] for j in range(2 * n)]
    return [row[n:] for row in A]


def mat_mul(X, Y):
    n, m, k = len(X), len(Y), len(Y[0]) if Y else 0
    out = []
    for i in range(n):
        row = []
        for j in range(k):
            acc = X[i][0] * Y[0][j]
            for l in range(1, m):
                acc = acc + X[i][l] * Y[l][j]
            row.append(acc)
        out.append(row)
    return out


# ---------------------------------------------------------------------------
# Hermitian structures
# ---------------------------------------------------------------------------


class HermitianStructure:
    """Per-degree Gram matrices on the normal basis words, plus a volume form."""

    def __init__(
        self,
        name: str,
        calculus: CalculusSpec,
        gram: Mapping[int, Sequence[Sequence[object]]],
        volume: FormElement,
    ):
        self.name = name
        self.calculus = calculus
        self.words = {k: calculus.basis_words(k) for k in range(calculus.n + 1)}
        p = calculus.algebra
        self.gram: dict[int, list[list[AlgebraElement]]] = {}
        for k, rows in gram.items():
            n = len(self.words[k])
            if len(rows) != n or any(len(r) != n for r in rows):
                raise HodgeError(f"Gram matrix of degree {k} must be {n}x{n}")
            self.gram[k] = [[e if isinstance(e, AlgebraElement) else p.scalar(e) for e in r] for r in rows]
        vw = calculus.volume_word()
        if set(volume.terms) != {vw}:
            raise HodgeError("volume form must be a multiple of the top basis word")
        self.volume = volume
        self.rho = volume.terms[vw]
        self.rho_inv = unit_inverse(self.rho)

    def entry(self, a: Word, b: Word) -> AlgebraElement:
        k = len(a)
        if len(b) != k:
            return self.calculus.algebra.zero()
        ws = self.words[k]
        return self.gram[k][ws.index(tuple(a))][ws.index(tuple(b))]

    def inner(self, x: FormElement, y: FormElement) -> AlgebraElement:
        """(x, y) for forms with central coefficients: Σ x_i* G_ij y_j."""
        p = self.calculus.algebra
        out = p.zero()
        for w1, c1 in x.terms.items():
            for w2, c2 in y.terms.items():
                if len(w1) == len(w2):
                    out = out + c1.star() * self.entry(w1, w2) * c2
        return out

    def hermitian_residuals(self) -> list[tuple[int, Word, Word, AlgebraElement]]:
        out = []
        for k, G in self.gram.items():
            ws = self.words[k]
            for i, j in itertools.product(range(len(ws)), repeat=2):
                r = G[j][i] - G[i][j].star()
                if r:
                    out.append((k, ws[i], ws[j], r))
        return out

    def normalization_residuals(self) -> dict[str, AlgebraElement]:
        p = self.calculus.algebra
        n = self.calculus.n
        return {
            "(1,1)_0 - 1": self.gram[0][0][0] - p.one(),
            "(τ,τ)_n - 1": self.rho.star() * self.gram[n][0][0] * self.rho - p.one(),
        }

    def is_nondegenerate(self) -> bool:
        try:
            for G in self.gram.values():
                mat_inverse(G)
        except SingularGram:
            return False
        return True

    def substitute(self, bindings) -> "HermitianStructure":
        g = {k: [[e.substitute(bindings) for e in r] for r in G] for k, G in self.gram.items()}
        return HermitianStructure(self.name, self.calculus, g, self.volume.substitute(bindings))

    def render(self) -> dict[str, list[list[str]]]:
        return {str(k): [[e.render() for e in r] for r in G] for k, G in sorted(self.gram.items())}


@dataclass(eq=False)
class HodgeStar:
    calculus: CalculusSpec
    table: dict
    hermitian: HermitianStructure | None = None

    def __call__(self, x: FormElement) -> FormElement:
        return self.apply(x)

    def apply(self, x: FormElement) -> FormElement:
        calc = self.calculus
        out = calc.zero()
        for w, c in x.terms.items():
            if not (c.is_scalar() or calc.can_move(c, calc.basis)):
                raise UnsupportedBimoduleMove(f"∗_H is only left-linear over central coefficients, got {c}")
            out = out + self.table[w].lmul(c)
        return out

    def square_diagonal(self, k: int) -> tuple[list[AlgebraElement], list]:
        """Diagonal of ∗∗ on degree k, and any off-diagonal entries."""
        diag, off = [], []
        for w in self.calculus.basis_words(k):
            img = self.apply(self.apply(self.calculus.form(*w)))
            for w2, c in img.terms.items():
                if w2 != w:
                    off.append((w, w2, c))
            diag.append(img.coefficient(*w))
        return diag, off

    def render(self) -> dict[str, str]:
        return {"∧".join(w) or "1": v.render() for w, v in self.table.items()}


def _volume_coefficients(h: HermitianStructure, k: int) -> list[list[AlgebraElement]]:
    """W_il = ρ^-1 · coefficient of the top word in e_i* ∧ f_l."""
    calc = h.calculus
    vw = calc.volume_word()
    out = []
    for a in h.words[k]:
        sa = calc.star_word(a)
        row = []
        for b in h.words[calc.n - k]:
            top = sa.wedge(calc.form(*b))
            row.append(h.rho_inv * top.coefficient(*vw))
        out.append(row)
    return out


def solve_hodge(h: HermitianStructure) -> HodgeStar:
    """The unique ∗_H with τ(∗α, β) = α*∧β on all basis pairs."""
    calc = h.calculus
    table = {}
    for k in range(calc.n + 1):
        W = _volume_coefficients(h, k)
        Ginv = mat_inverse(h.gram[calc.n - k])
        Sstar = mat_mul(W, Ginv)
        for i, a in enumerate(h.words[k]):
            img = calc.zero()
            for j, b in enumerate(h.words[calc.n - k]):
                c = Sstar[i][j].star()
                if c:
                    img = img + calc.form(*b, coef=c)
            table[a] = img
    return HodgeStar(calc, table, h)


def defining_equation_residuals(star: HodgeStar, h: HermitianStructure | None = None) -> dict:
    """τ(∗α, β) - α*∧β for every pair of basis words in complementary degrees."""
    h = star.hermitian if h is None else h
    calc = star.calculus
    out = {}
    for k in range(calc.n + 1):
        for a in h.words[k]:
            sa = star.table[a]
            for b in h.words[calc.n - k]:
                val = h.inner(sa, calc.form(*b))
                lhs = h.volume.rmul(val)
                rhs = calc.star_word(a).wedge(calc.form(*b))
                out[(a, b)] = lhs - rhs
    return out


def derive_gram(
    calc: CalculusSpec, star_table: Mapping[Word, FormElement], k: int, volume: FormElement
) -> list[list[AlgebraElement]]:
    """Gram of degree n-k making the defining equation return ``star_table`` on degree k.

    From S* G = W: G = (S*)^-1 W.
    """
    dummy = {d: [[calc.algebra.one() if i == j else calc.algebra.zero() for j in range(len(calc.basis_words(d)))]
                 for i in range(len(calc.basis_words(d)))] for d in range(calc.n + 1)}
    h = HermitianStructure("scratch", calc, dummy, volume)
    W = _volume_coefficients(h, k)
    words_k = calc.basis_words(k)
    words_c = calc.basis_words(calc.n - k)
    missing = [w for w in words_k if w not in star_table]
    if missing:
        raise HodgeError(f"star table does not define ∗ on {missing}")
    Sstar = [[star_table[a].coefficient(*b).star() for b in words_c] for a in words_k]
    return mat_mul(_general_inverse(Sstar), W)


def _general_inverse(M):
    """Inverse of a matrix with scalar entries (adjugate via sympy-free elimination)."""
    n = len(M)
    p = M[0][0].presentation
    A = [[e.scalar_value() for e in row] + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(M)]
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col]), None)
        if piv is None:
            raise SingularGram("star matrix is singular")
        A[col], A[piv] = A[piv], A[col]
        inv = ONE / A[col][col]
        A[col] = [e * inv for e in A[col]]
        for r in range(n):
            if r != col and A[r][col]:
                f = A[r][col]
                A[r] = [A[r][j] - f * A[col][j] for j in range(2 * n)]
    return [[p.scalar(e) for e in row[n:]] for row in A]


# ---------------------------------------------------------------------------
# built-in structures
# ---------------------------------------------------------------------------


def clhs_gram(calc: CalculusSpec, g: Sequence[Sequence[object]], k: int) -> list[list[ScalarExpr]]:
    """(e_a1..e_ak, e_b1..e_bk)_k = 1/k! Σ_π Σ_π' Π_i g[π(a)_i][π'(b)_i]."""
    idx = {l: i for i, l in enumerate(calc.basis)}
    words = calc.basis_words(k)
    out = []
    for a in words:
        row = []
        for b in words:
            tot = ZERO
            for pa in itertools.permutations(a):
                for pb in itertools.permutations(b):
                    term = ONE
                    for x, y in zip(pa, pb):
                        term = term * as_scalar(g[idx[x]][idx[y]])
                    tot = tot + term
            row.append(tot / math.factorial(k))
        out.append(row)
    return out


def classical_round_hermitian(calc: CalculusSpec) -> HermitianStructure:
    n = len(calc.basis)
    g = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    gram = {k: clhs_gram(calc, g, k) for k in range(n + 1)}
    return HermitianStructure("round", calc, gram, calc.form(*calc.volume_word()))


def radial_hermitian(calc: CalculusSpec) -> HermitianStructure:
    return HermitianStructure("radial", calc, {0: [[1]], 1: [[1]]}, calc.form("dr"))


def quantum_gram1(alpha=None, beta=None, gamma=None):
    """(ω+,ω+) = α, (ω-,ω-) = β, (ωz,ωz) = γ in the basis order ω-, ω+, ωz."""
    alpha = param("ah") if alpha is None else as_scalar(alpha)
    beta = param("bh") if beta is None else as_scalar(beta)
    gamma = param("gh") if gamma is None else as_scalar(gamma)
    return [[beta, ZERO, ZERO], [ZERO, alpha, ZERO], [ZERO, ZERO, gamma]]


def paper_star_tables(calc: CalculusSpec, alpha=None, beta=None, gamma=None) -> dict[Word, FormElement]:
    """The explicit degree-1 and degree-2 tables (third degree-1 line read as ∗(ωz))."""
    alpha = param("ah") if alpha is None else as_scalar(alpha)
    beta = param("bh") if beta is None else as_scalar(beta)
    gamma = param("gh") if gamma is None else as_scalar(gamma)
    q, lam = _q(), _lam()
    two = const(2)
    f = calc.form
    return {
        ("ω-",): f("ω-", "ωz").scale(lam * q ** 4 / (two * beta * gamma)),
        ("ω+",): f("ω+", "ωz").scale(-lam * q ** -6 / (two * alpha * gamma)),
        ("ωz",): f("ω-", "ω+").scale(-lam / (two * alpha * beta)),
        ("ω-", "ωz"): f("ω-").scale(q * q / beta),
        ("ω+", "ωz"): f("ω+").scale(-ONE / alpha),
        ("ω-", "ω+"): f("ωz").scale(-ONE / gamma),
    }


def quantum_hermitian(calc: CalculusSpec | None = None, alpha=None, beta=None, gamma=None) -> HermitianStructure:
    """Degree 1 from (α, β, γ); degree 2 derived from the explicit degree-1 star table."""
    calc = quantum_calculus() if calc is None else calc
    vol = calc.form(*QUANTUM_BASIS)
    tables = paper_star_tables(calc, alpha, beta, gamma)
    g2 = derive_gram(calc, tables, 1, vol)
    gram = {0: [[1]], 1: quantum_gram1(alpha, beta, gamma), 2: g2, 3: [[1]]}
    return HermitianStructure("quantum (α, β, γ)", calc, gram, vol)


def exc_solution(alpha=None) -> dict[str, ScalarExpr]:
    """β = q^6 α, γ = α/(1 + q^-2)."""
    alpha = param("ah") if alpha is None else as_scalar(alpha)
    q = _q()
    return {"bh": q ** 6 * alpha, "gh": alpha / (ONE + q ** -2)}


# ---------------------------------------------------------------------------
# constraints
# ---------------------------------------------------------------------------


def _param_factors(x: ScalarExpr) -> list[ScalarExpr]:
    return [f for f, _ in numerator_factors(x) if f.free_parameters() & set(HERMITIAN_PARAMETERS)]


def _dedupe(factors: Sequence[ScalarExpr]) -> list[ScalarExpr]:
    out: list[ScalarExpr] = []
    for f in factors:
        if not any(same_constraint(f, g) for g in out):
            out.append(f)
    return out


def same_constraint(a: ScalarExpr, b: ScalarExpr) -> bool:
    """a = 0 and b = 0 agree: a/b is a nonzero function of q alone."""
    if not a or not b:
        return not a and not b
    r = a / b
    return not (r.free_parameters() - {"s"})


def _solve(constraints: Sequence[ScalarExpr], unknowns=("bh", "gh")) -> dict[str, ScalarExpr]:
    if not constraints:
        return {}
    syms = [symbol(u) for u in unknowns]
    exprs = [c.to_sympy() for c in constraints]
    sols = sympy.solve(exprs, syms, dict=True)
    if len(sols) != 1:
        raise InconsistentConstraints(f"constraints {[str(c) for c in constraints]} have {len(sols)} solutions")
    return {str(k): from_sympy(v) for k, v in sols[0].items()}


@dataclass
class ConstraintReport:
    constraints: list[ScalarExpr]
    solution: dict[str, ScalarExpr]
    implied: list[ScalarExpr] = field(default_factory=list)
    mu: ScalarExpr | None = None
    details: dict = field(default_factory=dict)

    def contains(self, expected: ScalarExpr) -> bool:
        return any(same_constraint(expected, c) for c in self.constraints)

    def equivalent_to(self, expected: Sequence[ScalarExpr]) -> bool:
        """Same solution set: every expected constraint vanishes on the solution and vice versa."""
        try:
            sol = _solve(list(expected))
        except InconsistentConstraints:
            return False
        for e in expected:
            if e.substitute(self.solution):
                return False
        for c in self.constraints:
            if c.substitute(sol):
                return False
        return set(sol) == set(self.solution)

    def render(self) -> dict:
        out = {
            "constraints": [f"{c} = 0" for c in self.constraints],
            "solution": {k: str(v) for k, v in self.solution.items()},
            "implied": [f"{c} = 0" for c in self.implied],
        }
        if self.mu is not None:
            out["mu"] = str(self.mu)
        return out


def check_reality_symmetry(star: HodgeStar) -> ConstraintReport:
    """Constraints for ∗(ξ*) = (∗ξ)* on basis forms and (∗)^2 scalar per degree."""
    calc = star.calculus
    reality: list[ScalarExpr] = []
    for k in range(1, calc.n):
        for w in calc.basis_words(k):
            xi = calc.form(*w)
            res = star.apply(xi.star()) - star.apply(xi).star()
            for c in res.terms.values():
                reality.extend(_param_factors(c.scalar_value()))
    reality = _dedupe(reality)
    raw: list[ScalarExpr] = []
    for k in range(calc.n + 1):
        diag, off = star.square_diagonal(k)
        raw.extend(c.scalar_value() for _, _, c in off)
        raw.extend(d.scalar_value() - diag[0].scalar_value() for d in diag[1:])
    raw = [x for x in raw if x.free_parameters() & set(HERMITIAN_PARAMETERS)]
    square = _dedupe([f for x in raw for f in _param_factors(x)])
    sol = _solve(reality, ("bh",)) if reality else {}
    implied = [x for x in raw if not x.substitute(sol)]
    extra = _dedupe([f for x in raw if x.substitute(sol) for f in _param_factors(x)])
    constraints = reality + extra
    if extra:
        sol = _solve(constraints)
    return ConstraintReport(constraints, sol, implied, details={"reality": reality, "square": square})


def cartan_killing_constraint(star: HodgeStar) -> ConstraintReport:
    """Solve ∗ω_a = μ dω_a with one μ for a = -, +, z."""
    calc = star.calculus
    mus = {}
    for l in calc.basis:
        s_img = star.apply(calc.form(l))
        d_img = calc.form(l).d()
        if set(s_img.terms) != set(d_img.terms) or len(d_img.terms) != 1:
            raise InconsistentConstraints(f"∗{l} is not proportional to d{l}")
        (w,) = d_img.terms
        mus[l] = s_img.coefficient(*w).scalar_value() / d_img.coefficient(*w).scalar_value()
    labels = list(calc.basis)
    cons = []
    for a, b in zip(labels, labels[1:]):
        cons.extend(_param_factors(mus[a] - mus[b]))
    cons = _dedupe(cons)
    sol = _solve(cons)
    vals = {l: m.substitute(sol) for l, m in mus.items()}
    if len({v for v in vals.values()}) != 1:
        raise InconsistentConstraints(f"no single μ: {[(l, str(v)) for l, v in vals.items()]}")
    return ConstraintReport(cons, sol, mu=vals[labels[0]], details={"mu_a": mus})


def exc_constraints() -> list[ScalarExpr]:
    """(1+q^-2)γ - α and α - q^-6 β."""
    q = _q()
    a, b, g = param("ah"), param("bh"), param("gh")
    return [(ONE + q ** -2) * g - a, a - q ** -6 * b]


def coh_constraint() -> ScalarExpr:
    q = _q()
    return param("ah") - q ** -6 * param("bh")


def mu_normalized_alpha() -> ScalarExpr:
    """α_h for which (∗)^2 on degree 1 equals μ^2 under the Cartan-Killing constraints."""
    return _q() ** -2 * _q() ** -2 / 2


# ---------------------------------------------------------------------------
# sign resolution for the mixed wedge relations
# ---------------------------------------------------------------------------


def resolve_wedge_signs() -> dict:
    """Test the four printed sign candidates against d∘d = 0 and a single μ under the exc constraints."""
    rows = []
    for signs in WEDGE_SIGN_CANDIDATES:
        calc = quantum_calculus(signs=signs)
        dd_ok = all(v.is_zero for v in dd_residuals(calc).values())
        mu_ok = False
        try:
            h = quantum_hermitian(calc)
            star = solve_hodge(h)
            sol = exc_solution()
            mus = []
            for l in calc.basis:
                s_img = star.apply(calc.form(l))
                d_img = calc.form(l).d()
                if set(s_img.terms) != set(d_img.terms) or len(d_img.terms) != 1:
                    raise InconsistentConstraints(l)
                (w,) = d_img.terms
                mus.append(
                    (s_img.coefficient(*w).scalar_value() / d_img.coefficient(*w).scalar_value()).substitute(sol)
                )
            mu_ok = len(set(mus)) == 1
        except (InconsistentConstraints, SingularGram, ZeroDivisionError):
            mu_ok = False
        rows.append({"signs": signs, "dd_zero": dd_ok, "single_mu_under_exc": mu_ok})
    chosen = [r["signs"] for r in rows if r["dd_zero"] and r["single_mu_under_exc"]]
    return {"candidates": rows, "selected": chosen}


# ---------------------------------------------------------------------------
# warped products
# ---------------------------------------------------------------------------


def _split(word: Word, c1: CalculusSpec) -> tuple[Word, Word]:
    k = 0
    while k < len(word) and word[k] in c1.index:
        k += 1
    return word[:k], word[k:]


def warped_hermitian(
    h1: HermitianStructure,
    h2: HermitianStructure,
    rho: Mapping[int, AlgebraElement],
    product: CalculusSpec,
) -> HermitianStructure:
    """(ξ1⊗ξ2, η1⊗η2)_m = ρ_k^-2 (ξ1,η1)(ξ2,η2), bidegrees orthogonal, τ = τ1 ρ_n2 ⊗ τ2."""
    c1, c2 = product.factors
    A = product.algebra
    n2 = c2.n
    rho_l = {}
    rho_inv = {}
    for k in range(n2 + 1):
        if k not in rho:
            raise HodgeError(f"missing warping factor ρ_{k}")
        rho_l[k] = lift(rho[k], A)
        rho_inv[k] = unit_inverse(rho_l[k])
    gram = {}
    for m in range(product.n + 1):
        words = product.basis_words(m)
        rows = []
        for a in words:
            a1, a2 = _split(a, c1)
            row = []
            for b in words:
                b1, b2 = _split(b, c1)
                if len(a2) != len(b2):
                    row.append(A.zero())
                    continue
                k = len(a2)
                v = rho_inv[k] * rho_inv[k] * lift(h1.entry(a1, b1), A) * lift(h2.entry(a2, b2), A)
                row.append(v)
            rows.append(row)
        gram[m] = rows
    tau1 = lift(h1.rho, A)
    tau2 = lift(h2.rho, A)
    volume = product.form(*product.volume_word(), coef=tau1 * rho_l[n2] * tau2)
    return HermitianStructure(f"warped({h1.name}, {h2.name})", product, gram, volume)


def product_hodge_rhs(
    product: CalculusSpec,
    star1: HodgeStar,
    star2: HodgeStar,
    rho: Mapping[int, AlgebraElement],
    word: Word,
) -> FormElement:
    """(-1)^{k(n1-m+k)} ∗1(ξ1) ρ_n2^-1 ρ_(n2-k)^2 ⊗ ∗2(ξ2)."""
    c1, c2 = product.factors
    A = product.algebra
    n1, n2 = c1.n, c2.n
    w1, w2 = _split(word, c1)
    m, k = len(word), len(w2)
    weight = unit_inverse(lift(rho[n2], A)) * lift(rho[n2 - k], A) * lift(rho[n2 - k], A)
    left = lift_form(star1.table[w1], product).rmul(weight)
    right = lift_form(star2.table[w2], product)
    out = left.wedge(right)
    return out if (k * (n1 - m + k)) % 2 == 0 else -out


def product_hodge_check(
    star: HodgeStar, star1: HodgeStar, star2: HodgeStar, rho: Mapping[int, AlgebraElement]
) -> dict[Word, FormElement]:
    product = star.calculus
    out = {}
    for m in range(product.n + 1):
        for w in product.basis_words(m):
            out[w] = star.table[w] - product_hodge_rhs(product, star1, star2, rho, w)
    return out


def radial_powers(calc_radial: CalculusSpec, n2: int) -> dict[int, AlgebraElement]:
    """ρ_k = r^k."""
    p = calc_radial.algebra
    return {k: p.normal_form(("r",) * k) for k in range(n2 + 1)}


# ---------------------------------------------------------------------------
# sampled positivity
# ---------------------------------------------------------------------------


def _det(M: list[list[ScalarExpr]]) -> ScalarExpr:
    n = len(M)
    if n == 1:
        return M[0][0]
    out = ZERO
    for j in range(n):
        if M[0][j]:
            minor = [row[:j] + row[j + 1 :] for row in M[1:]]
            term = M[0][j] * _det(minor)
            out = out + (term if j % 2 == 0 else -term)
    return out


def sampled_positivity(
    h: HermitianStructure, samples: Sequence[tuple[str, str]] = (("1/4", "1"), ("1/2", "1/3"), ("3/4", "2"))
) -> list[dict]:
    """Leading principal minors of each Gram matrix at rational (q, α_h), under exc."""
    from .scalars import substitute_q

    rows = []
    for qv, av in samples:
        sol = exc_solution(const(Fraction(av)))
        for k, G in sorted(h.gram.items()):
            M = []
            for row in G:
                vals = []
                for e in row:
                    v = e.scalar_value().substitute(sol).substitute({"ah": Fraction(av)})
                    vals.append(substitute_q(v, qv))
                M.append(vals)
            minors = [_det([r[:i] for r in M[:i]]) for i in range(1, len(M) + 1)]
            ok = all(mn.is_constant and mn.is_real and mn.constant_value() > 0 for mn in minors)
            rows.append({"q": qv, "alpha": av, "degree": k, "minors": [str(x) for x in minors], "positive": ok})
    return rows
