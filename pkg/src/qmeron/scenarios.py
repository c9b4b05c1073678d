"""The closed catalog of verification scenarios.

Every check is an exact zero test on a residual.  Parameters left unbound
stay symbolic; a bound q is applied as an exact rational specialisation of
the computed residuals.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

import sympy

from . import hopf
from .calculus import (
    CalculusSpec,
    FormElement,
    UnsupportedBimoduleMove,
    chart_calculus,
    chart_curvature_formula,
    chart_meron_fields,
    chart_ym_residual,
    classical_T,
    classical_calculus,
    dd_residuals,
    levi_civita,
    product_calculus,
    quantum_calculus,
    radial_calculus,
    reconstruct_invariant_forms,
    right_multiply_invariant,
    right_multiply_one_form,
    star_one_form,
)
from .gauge import (
    MatrixForm,
    RepresentationData,
    anti_hermitian_residual,
    classical_meron,
    covariant_derivative,
    curvature,
    maurer_cartan,
    pullback_meron,
    quantum_meron,
    warped_transport,
)
from .hodge import (
    HodgeStar,
    cartan_killing_constraint,
    check_reality_symmetry,
    classical_round_hermitian,
    coh_constraint,
    defining_equation_residuals,
    exc_constraints,
    exc_solution,
    mu_normalized_alpha,
    paper_star_tables,
    product_hodge_check,
    quantum_hermitian,
    radial_hermitian,
    radial_powers,
    resolve_wedge_signs,
    sampled_positivity,
    solve_hodge,
    warped_hermitian,
)
from .ncalg import (
    AlgebraElement,
    MorphismError,
    Presentation,
    build_i,
    build_identification,
    build_pi,
    build_r4q,
    build_suq2,
    matmul,
    star_matrix,
    suq2_matrix,
)
from .scalars import ONE, ScalarExpr, as_scalar, param, substitute_q

SAMPLE_Q = (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4))


class ScenarioError(ValueError):
    """Unknown scenario or parameter, or a value outside its admissible range."""


@dataclass(frozen=True)
class ParamSpec:
    name: str
    description: str
    default: Fraction | None = None
    nonzero: bool = False

    def admissible(self) -> str:
        return "nonzero rational" if self.nonzero else "rational"


@dataclass
class Check:
    name: str
    paper_anchor: str
    passed: bool
    residual: str

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"


@dataclass
class Outcome:
    checks: list[Check] = field(default_factory=list)
    artifacts: dict[str, str] = field(default_factory=dict)
    assumptions: list[str] = field(default_factory=list)
    is_solution: bool | None = None


@dataclass(frozen=True)
class Scenario:
    id: str
    description: str
    anchors: tuple[str, ...]
    params: tuple[ParamSpec, ...]
    expected: str
    runner: Callable[["Context", Outcome], None]

    def param(self, name: str) -> ParamSpec:
        for p in self.params:
            if p.name == name:
                return p
        raise ScenarioError(f"scenario {self.id} has no parameter {name!r}")


# ---------------------------------------------------------------------------
# evaluation context
# ---------------------------------------------------------------------------


class Context:
    def __init__(self, bindings: dict[str, Fraction], q: Fraction | None):
        self.bindings = dict(bindings)
        self.q = q

    def scalar(self, x: ScalarExpr) -> ScalarExpr:
        b = {k: v for k, v in self.bindings.items() if k in x.free_parameters()}
        if b:
            x = x.substitute(b)
        if self.q is not None:
            x = substitute_q(x, self.q)
        return x

    def spec(self, obj):
        if isinstance(obj, ScalarExpr):
            return self.scalar(obj)
        if isinstance(obj, AlgebraElement):
            return obj.map_coefficients(self.scalar)
        if isinstance(obj, FormElement):
            return obj.map_coefficients(lambda a: a.map_coefficients(self.scalar))
        if isinstance(obj, MatrixForm):
            return obj.map(self.spec)
        if isinstance(obj, (list, tuple)):
            return [self.spec(o) for o in obj]
        if isinstance(obj, dict):
            return {k: self.spec(v) for k, v in obj.items()}
        if isinstance(obj, hopf.UqElement):
            return obj.substitute(self.bindings) if self.q is None else _uq_q(obj, self.q)
        return obj

    def qs(self) -> tuple[Fraction, ...]:
        return (self.q,) if self.q is not None else SAMPLE_Q


def _uq_q(x: "hopf.UqElement", q: Fraction):
    return hopf.UqElement({m: substitute_q(c, q) for m, c in x.terms.items() if substitute_q(c, q)})


def is_zero(obj) -> bool:
    if isinstance(obj, (list, tuple)):
        return all(is_zero(o) for o in obj)
    if isinstance(obj, dict):
        return all(is_zero(o) for o in obj.values())
    if isinstance(obj, (ScalarExpr,)):
        return not obj
    if hasattr(obj, "is_zero"):
        z = obj.is_zero
        return z() if callable(z) else z
    return not obj


def render(obj) -> str:
    if isinstance(obj, MatrixForm):
        return "[" + ", ".join("[" + ", ".join(r) + "]" for r in obj.render()) + "]"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(render(o) for o in obj) + "]"
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{_key(k)}: {render(v)}" for k, v in obj.items()) + "}"
    if hasattr(obj, "render"):
        return obj.render()
    return str(obj)


def _key(k) -> str:
    if isinstance(k, tuple):
        return "(" + ", ".join(str(x) for x in k) + ")"
    return str(k)


def nonzero_only(obj):
    """Drop zero entries from dict residuals so failure renderings stay short."""
    if isinstance(obj, dict):
        return {k: v for k, v in obj.items() if not is_zero(v)}
    return obj


def factored(x: ScalarExpr) -> str:
    return str(sympy.factor(x.to_sympy()))


def add_check(ctx: Context, out: Outcome, name: str, anchor: str, residual) -> bool:
    r = nonzero_only(ctx.spec(residual))
    ok = is_zero(r)
    out.checks.append(Check(name, anchor, ok, "0" if ok else render(r)))
    return ok


def add_bool(out: Outcome, name: str, anchor: str, ok: bool, residual: str) -> bool:
    out.checks.append(Check(name, anchor, bool(ok), residual))
    return ok


def zero_set_check(
    ctx: Context,
    out: Outcome,
    name: str,
    anchor: str,
    residual,
    pname: str,
    zeros: Sequence[Fraction],
    nonzero: Sequence[Fraction],
):
    """The residual vanishes at each value in ``zeros`` and not at ``nonzero`` (per sampled q)."""
    failures = []
    for qv in ctx.qs():
        sub = Context({k: v for k, v in ctx.bindings.items() if k != pname}, qv if _has_q(residual) else None)
        for z in zeros:
            if not is_zero(sub.spec(_bind(residual, pname, z))):
                failures.append(f"nonzero at {pname}={z}, q={qv}")
        for z in nonzero:
            if is_zero(sub.spec(_bind(residual, pname, z))):
                failures.append(f"zero at {pname}={z}, q={qv}")
        if not _has_q(residual):
            break
    add_bool(out, name, anchor, not failures, "0" if not failures else "; ".join(failures))


def _has_q(obj) -> bool:
    return "s" in _params_of(obj)


def _params_of(obj) -> set[str]:
    if isinstance(obj, ScalarExpr):
        return obj.free_parameters()
    if isinstance(obj, AlgebraElement):
        return set().union(*(c.free_parameters() for c in obj.terms.values())) if obj.terms else set()
    if isinstance(obj, FormElement):
        return set().union(*(_params_of(c) for c in obj.terms.values())) if obj.terms else set()
    if isinstance(obj, MatrixForm):
        return set().union(*(_params_of(e) for r in obj.entries for e in r))
    return set()


def _bind(obj, name: str, value):
    b = {name: value}
    if isinstance(obj, ScalarExpr):
        return obj.substitute(b) if name in obj.free_parameters() else obj
    return obj.substitute(b)


def is_solution(ctx: Context, residual) -> bool:
    return is_zero(ctx.spec(residual))


# ---------------------------------------------------------------------------
# shared constructions
# ---------------------------------------------------------------------------


def _eps_T_matrix(calc: CalculusSpec) -> MatrixForm:
    """Σ_abc ε_abc ω_a∧ω_b ⊗ T_c."""
    T = classical_T()
    terms = []
    for a in (1, 2, 3):
        for b in (1, 2, 3):
            for c in (1, 2, 3):
                e = levi_civita(a, b, c)
                if e:
                    terms.append((T[c], calc.form(f"ω{a}", f"ω{b}").scale(e)))
    return MatrixForm.from_terms(calc, terms)


def _dT_matrix(calc: CalculusSpec) -> MatrixForm:
    T = classical_T()
    return MatrixForm.from_terms(calc, [(T[a], calc.form(f"ω{a}").d()) for a in (1, 2, 3)])


def exc_hermitian(calc: CalculusSpec):
    sol = exc_solution()
    return quantum_hermitian(calc, alpha=param("ah"), beta=sol["bh"], gamma=sol["gh"])


def quantum_normalizations(star: HodgeStar) -> tuple[ScalarExpr, ScalarExpr]:
    """(μ, κ): the Cartan-Killing constant and (∗)^2 on degree 1."""
    mu = cartan_killing_constraint(star).mu
    diag, _ = star.square_diagonal(1)
    return mu, diag[0].scalar_value()


def _assumptions(*presentations: Presentation) -> list[str]:
    out: list[str] = []
    for p in presentations:
        for a in p.assumptions:
            if a not in out:
                out.append(a)
    return out


ANTIPODE_NOTE = "A(GL_q(1,H)) antipode S(Q) = r^-2 Q*; the literal S(Q) = Q* leaves m(S⊗id)ΔQ_11 - 1 = "
MU_NOTE = (
    "∗F = (1-ε)(κ/μ)A in general, with κ = ∗∗ on degree 1; κ/μ = μ exactly at α_h = q^-4/2, "
    "where the μ-normalized identities are checked"
)


@lru_cache(maxsize=None)
def sign_resolutions() -> tuple[str, ...]:
    res = resolve_wedge_signs()
    out = []
    for row in res["candidates"]:
        em, ep = row["signs"]
        chosen = row["signs"] in res["selected"]
        out.append(
            f"ωz∧ω- = -q^{em} ω-∧ωz, ωz∧ω+ = -q^{ep} ω+∧ωz: "
            f"d∘d=0 {'yes' if row['dd_zero'] else 'no'}, "
            f"single μ under exc {'yes' if row['single_mu_under_exc'] else 'no'}"
            + (" (selected)" if chosen else "")
        )
    return tuple(out)


# ---------------------------------------------------------------------------
# classical S^3
# ---------------------------------------------------------------------------


def run_classical_s3(ctx: Context, out: Outcome) -> None:
    c = classical_calculus()
    star = solve_hodge(classical_round_hermitian(c))
    lam = param("lc")
    A = classical_meron(c)
    F = curvature(A)
    add_check(ctx, out, "curvature F = λ(1-λ) dω_a⊗T_a", "ccu", F - _dT_matrix(c).scale(lam * (ONE - lam)))
    sF = F.hodge(star)
    add_check(ctx, out, "∗F = (λ-1)α", "eqi", sF - A.scale(lam - ONE))
    R = covariant_derivative(A, sF)
    E = _eps_T_matrix(c)
    closed = lam * (lam - ONE) * (lam - ONE / 2)
    add_check(ctx, out, "D(∗F) = λ(λ-1)(λ-½) ε_abc ω_a∧ω_b⊗T_c", "yms", R - E.scale(closed))
    add_check(ctx, out, "Bianchi D(F) = 0", "Bi", covariant_derivative(A, F))
    add_check(ctx, out, "α† + α = 0", "herc", anti_hermitian_residual(A))
    p = c.algebra
    u = [[p["a"], -p["c*"]], [p["c"], p["a*"]]]
    add_check(ctx, out, "α at λ=1 equals g^-1 dg", "calpha", maurer_cartan(c, u) - A.substitute({"lc": 1}))
    add_check(ctx, out, "F = 0 at λ ∈ {0, 1}", "ccu", [F.substitute({"lc": 0}), F.substitute({"lc": 1})])
    zero_set_check(
        ctx, out, "residual zero exactly at λ ∈ {0, ½, 1}", "yms", R, "lc",
        [Fraction(0), Fraction(1, 2), Fraction(1)], [Fraction(1, 4)],
    )
    out.is_solution = is_solution(ctx, R)
    out.artifacts["curvature"] = f"{factored(ctx.scalar(lam * (ONE - lam)))} · Σ_a dω_a⊗T_a"
    out.artifacts["ym_residual"] = f"{factored(ctx.scalar(closed))} · {render(E)}"


# ---------------------------------------------------------------------------
# classical R^4 chart
# ---------------------------------------------------------------------------


def run_classical_chart(ctx: Context, out: Outcome) -> None:
    lam = param("lc")
    A, F, p = chart_meron_fields()
    formula = {k: chart_curvature_formula(p, lam, *k) for k in F}
    diff = {k: [[F[k][i][j] - formula[k][i][j] for j in range(2)] for i in range(2)] for k in F}
    add_check(ctx, out, "F_μν = λ(λ-1)||x||^-4 [Σ_μα x_α, Σ_νβ x_β]", "cu4", diff)
    add_check(ctx, out, "F_μν = 0 at λ = 1", "ccu", {k: [[e.substitute({"lc": 1}) for e in r] for r in v] for k, v in F.items()})
    ym = {nu: chart_ym_residual(A, F, nu) for nu in range(4)}
    flat = [e for nu in range(4) for r in ym[nu] for e in r]
    zero_set_check(
        ctx, out, "Euclidean YM residual zero exactly at λ ∈ {0, ½, 1}", "sec:YMS3",
        _AlgList(flat), "lc", [Fraction(0), Fraction(1, 2), Fraction(1)], [Fraction(1, 4)],
    )
    calc = chart_calculus(p)
    Af = MatrixForm(
        calc,
        [[sum((calc.form(f"dx{m}", coef=A[m][i][j]) for m in range(1, 4)), calc.form("dx0", coef=A[0][i][j]))
          for j in range(2)] for i in range(2)],
    )
    Ff = curvature(Af)
    Fexp = MatrixForm(
        calc,
        [[sum((calc.form(f"dx{m}", f"dx{n}", coef=F[(m, n)][i][j]) for (m, n) in sorted(F)), calc.zero())
          for j in range(2)] for i in range(2)],
    )
    add_check(ctx, out, "dA + A∧A = Σ F_μν dx_μ∧dx_ν", "ccu", Ff - Fexp)
    add_check(ctx, out, "Bianchi D(F) = 0", "Bi", covariant_derivative(Af, Ff))
    out.is_solution = is_solution(ctx, _AlgList(flat))
    out.artifacts["ym_residual_factor"] = _common_factor(ctx, flat)


class _AlgList(list):
    """A list of algebra elements that supports parameter substitution."""

    def substitute(self, bindings):
        return _AlgList(e.substitute(bindings) for e in self)


def _common_factor(ctx: Context, elems) -> str:
    g = None
    for e in elems:
        for c in ctx.spec(e).terms.values():
            x = c.to_sympy()
            g = x if g is None else sympy.gcd(g, x)
    return "0" if g is None else str(sympy.factor(g))


# ---------------------------------------------------------------------------
# quantum SU_q(2)
# ---------------------------------------------------------------------------


def run_quantum_s3(ctx: Context, out: Outcome) -> None:
    c = quantum_calculus()
    su = c.algebra
    u = suq2_matrix(su)
    us = star_matrix(u)
    ident = [[su.one(), su.zero()], [su.zero(), su.one()]]
    diff = lambda X: [[X[i][j] - ident[i][j] for j in range(2)] for i in range(2)]
    add_check(ctx, out, "u u* = u* u = 1", "Us", [diff(matmul(u, us)), diff(matmul(us, u))])
    rec = reconstruct_invariant_forms(c)
    add_check(ctx, out, "ω_a reconstructed from dx = Σ (X_a▷x) ω_a", "q3dom", {l: rec[l] - c.form(l) for l in rec})
    eps = param("eps")
    A = quantum_meron(c)
    A1 = A.substitute({"eps": 1})
    add_check(ctx, out, "A at ε=1 equals u* du", "poym", maurer_cartan(c, u) - A1)
    add_check(ctx, out, "dA = -A∧A at ε=1", "qua", A1.d() + A1.wedge(A1))
    add_check(ctx, out, "A† + A = 0", "herc", anti_hermitian_residual(A))
    F = curvature(A)
    dA = A.d()
    add_check(ctx, out, "F = (1-ε) dA", "cuym", F - dA.scale(ONE - eps))
    add_check(ctx, out, "F = 0 at ε ∈ {0, 1}", "cuym", [F.substitute({"eps": 0}), F.substitute({"eps": 1})])
    add_check(ctx, out, "Bianchi D(F) = 0", "Bi", covariant_derivative(A, F))
    star = solve_hodge(exc_hermitian(c))
    mu, kappa = quantum_normalizations(star)
    sF = F.hodge(star)
    R = covariant_derivative(A, sF)
    ratio = kappa / mu
    add_check(ctx, out, "∗F = (1-ε)(κ/μ) A", "defi", sF - A.scale((ONE - eps) * ratio))
    add_check(ctx, out, "D(∗F) = (κ/μ)(1-ε)(1-2ε) dA", "meq", R - dA.scale(ratio * (ONE - eps) * (ONE - 2 * eps)))
    norm = {"ah": mu_normalized_alpha()}
    add_check(ctx, out, "∗F = (1-ε)μ A at α_h = q^-4/2", "defi", (sF - A.scale((ONE - eps) * mu)).substitute(norm))
    add_check(
        ctx, out, "D(∗F) = μ(1-ε)(1-2ε) dA at α_h = q^-4/2", "meq",
        (R - dA.scale(mu * (ONE - eps) * (ONE - 2 * eps))).substitute(norm),
    )
    zero_set_check(
        ctx, out, "residual zero exactly at ε ∈ {0, ½, 1}", "meq", R.substitute(norm), "eps",
        [Fraction(0), Fraction(1, 2), Fraction(1)], [Fraction(1, 4)],
    )
    out.is_solution = is_solution(ctx, R)
    out.assumptions.extend(_assumptions(su))
    out.assumptions.append(MU_NOTE)
    out.artifacts["mu"] = factored(ctx.scalar(mu))
    out.artifacts["kappa_over_mu"] = factored(ctx.scalar(ratio))
    out.artifacts["ym_residual"] = f"{factored(ctx.scalar(ratio * (ONE - eps) * (ONE - 2 * eps)))} · dA"


# ---------------------------------------------------------------------------
# R^4_q minus 0
# ---------------------------------------------------------------------------


def _morphism_check(ctx, out, name, anchor, build):
    try:
        m = build()
        m.validate()
    except MorphismError as exc:
        return add_bool(out, name, anchor, False, str(exc)), None
    return add_bool(out, name, anchor, True, "0"), m


def run_quantum_r4q(ctx: Context, out: Outcome) -> None:
    r4 = build_r4q()
    su = build_suq2()
    _, pi = _morphism_check(ctx, out, "π is a *-morphism onto A(SU_q(2))", "egq", lambda: build_pi(r4, su))
    _, i_map = _morphism_check(ctx, out, "i is a *-morphism into A(R^4_q minus 0)", "egq", lambda: build_i(su, r4))
    if pi is not None and i_map is not None:
        comp = pi.compose(i_map)
        add_check(ctx, out, "π∘i = id on generators", "egq", {g: comp(su.gen(g)) - su.gen(g) for g in su.generators})
    rc = radial_calculus()
    qc = quantum_calculus(su)
    P = product_calculus(rc, qc)
    _, iota = _morphism_check(
        ctx, out, "relations cr4 and r2 hold under x -> r u", "cr4, r2", lambda: build_identification(r4, P.algebra)
    )
    glq = hopf.glq_hopf(r4)
    add_bool(out, "Hopf axioms of A(GL_q(1,H))", "r2", not glq.failing_axioms(),
             ", ".join(glq.failing_axioms()) or "0")
    lit = hopf.glq_paper_antipode_residual(r4)
    star2 = solve_hodge(exc_hermitian(qc))
    hr = radial_hermitian(rc)
    rho = radial_powers(rc, 3)
    hw = warped_hermitian(hr, star2.hermitian, rho, P)
    star = solve_hodge(hw)
    eps = param("eps")
    wt = warped_transport(quantum_meron(qc), P, star, star2, rho)
    add_check(ctx, out, "[∇, ∗F] = -τ1 ρ3^-1 ρ1^2 ⊗ [∇2, ∗2 F2]", "ss:ym", wt.comparison)
    add_check(ctx, out, "curvature of 1⊗A2 is 1⊗F2", "ss:ym", wt.curvature_factorization)
    add_check(ctx, out, "Bianchi D(F) = 0", "Bi", covariant_derivative(wt.A, wt.F))
    add_bool(
        out, "F and ∗F have disjoint bidegrees", "ss:ym",
        wt.disjoint_supports and not is_zero(wt.F),
        "0" if wt.disjoint_supports else f"F {sorted(wt.F_bidegrees)}, ∗F {sorted(wt.star_F_bidegrees)}",
    )
    zero_set_check(
        ctx, out, "transported residual zero exactly at ε ∈ {0, ½, 1}", "meq", wt.residual, "eps",
        [Fraction(0), Fraction(1, 2), Fraction(1)], [Fraction(1, 4)],
    )
    pb = pullback_meron(P, eps)
    add_check(ctx, out, "i*(A) equals the displayed matrix", "egq", pb.computed - pb.displayed)
    add_check(ctx, out, "i*(A) equals 1⊗A", "egq", pb.computed - pb.tensor)
    out.is_solution = is_solution(ctx, wt.residual)
    out.assumptions.extend(_assumptions(r4, su))
    out.assumptions.append(ANTIPODE_NOTE + lit.render())
    out.artifacts["volume"] = hw.volume.render()
    out.artifacts["pullback_11"] = render(ctx.spec(pb.computed.entries[0][0]))


# ---------------------------------------------------------------------------
# Hodge audit
# ---------------------------------------------------------------------------


def _classical_table(c: CalculusSpec) -> dict:
    out = {(): c.form("ω1", "ω2", "ω3"), ("ω1", "ω2", "ω3"): c.one()}
    for a in (1, 2, 3):
        img = c.zero()
        for b in (1, 2, 3):
            for d in (1, 2, 3):
                e = levi_civita(a, b, d)
                if e:
                    img = img + c.form(f"ω{b}", f"ω{d}").scale(as_scalar(e) / 2)
        out[(f"ω{a}",)] = img
    for a in (1, 2, 3):
        for b in range(a + 1, 4):
            img = c.zero()
            for d in (1, 2, 3):
                e = levi_civita(a, b, d)
                if e:
                    img = img + c.form(f"ω{d}").scale(e)
            out[(f"ω{a}", f"ω{b}")] = img
    return out


def run_hodge_audit(ctx: Context, out: Outcome) -> None:
    c = classical_calculus()
    hc = classical_round_hermitian(c)
    sc = solve_hodge(hc)
    table = _classical_table(c)
    add_check(ctx, out, "classical ∗ solved from τ(∗α, β) = α*∧β equals the round table", "Hcl",
              {w: sc.table[w] - table[w] for w in table})
    qc = quantum_calculus()
    hq = quantum_hermitian(qc)
    sq = solve_hodge(hq)
    add_check(ctx, out, "defining equation holds on all quantum basis pairs", "defh", defining_equation_residuals(sq))
    explicit = paper_star_tables(qc)
    deg1 = {w: sq.table[w] - v for w, v in explicit.items() if len(w) == 1}
    deg2 = {w: sq.table[w] - v for w, v in explicit.items() if len(w) == 2}
    add_check(ctx, out, "degree-1 star table (third line read as ∗(ωz))", "hsf2", deg1)
    add_check(ctx, out, "degree-2 star solved from (α, β, γ) equals the table", "hsf1", deg2)
    add_check(ctx, out, "Hermitian Gram matrices", "sth1", {f"{k}:{a}:{b}": r for k, a, b, r in hq.hermitian_residuals()})
    add_check(ctx, out, "normalisation (1,1) = 1 and (τ,τ) = 1", "defh", hq.normalization_residuals())
    g2 = hq.gram[2]
    off = [g2[i][j] for i in range(3) for j in range(3) if i != j]
    add_check(ctx, out, "degree-2 Gram is diagonal", "hsf2", off)
    rep = check_reality_symmetry(sq)
    add_bool(out, "reality and symmetry give α = q^-6 β", "coH",
             len(rep.constraints) == 1 and rep.contains(coh_constraint()),
             "0" if rep.contains(coh_constraint()) else "; ".join(rep.render()["constraints"]))
    ck = cartan_killing_constraint(sq)
    add_bool(out, "Cartan-Killing condition yields (1+q^-2)γ = α = q^-6 β", "ckq, exc",
             ck.equivalent_to(exc_constraints()), "0" if ck.equivalent_to(exc_constraints()) else "; ".join(ck.render()["constraints"]))
    sol = exc_solution()
    mus = {l: m.substitute(sol) for l, m in ck.details["mu_a"].items()}
    add_check(ctx, out, "single μ for ω-, ω+, ωz under exc", "ckq", [mus[l] - mus["ωz"] for l in mus])
    add_check(ctx, out, "μ = (1+q^2)/(2 q^6 α^2)", "ckq",
              ck.mu - (ONE + param("s") ** 4) / (2 * param("s") ** 12 * param("ah") ** 2))
    add_check(ctx, out, "reality constraint implied by exc", "coH", coh_constraint().substitute(sol))
    pos = sampled_positivity(hq)
    bad = [f"q={r['q']} α={r['alpha']} degree {r['degree']}" for r in pos if not r["positive"]]
    add_bool(out, "Gram matrices positive at sampled (q, α_h) under exc", "exc", not bad, "; ".join(bad) or "0")
    # uniqueness: perturbing one image breaks the defining equation
    w = ("ω-",)
    bumped = HodgeStar(qc, {**sq.table, w: sq.table[w] + qc.form("ω-", "ωz")}, hq)
    add_bool(out, "defining equation pins ∗ down (perturbed table fails)", "defh",
             not is_zero(defining_equation_residuals(bumped)), "0")
    signs = resolve_wedge_signs()
    add_bool(out, "exactly one printed wedge-sign candidate survives", "commc3",
             signs["selected"] == [(4, -4)], str(signs["selected"]))
    out.assumptions.extend(_assumptions(qc.algebra))
    out.assumptions.append("third degree-1 star line read as ∗(ωz); literal ∗(ω-) twice leaves ∗(ωz) undefined")
    out.assumptions.append("α_h, β_h, γ_h are real parameters; conjugation acts only on i")
    out.artifacts["gram_2"] = render([[e for e in r] for r in hq.gram[2]])
    out.artifacts["mu"] = factored(ck.mu)
    out.artifacts["constraints_reality"] = "; ".join(rep.render()["constraints"])
    out.artifacts["constraints_cartan_killing"] = "; ".join(ck.render()["constraints"])


# ---------------------------------------------------------------------------
# calculus audit
# ---------------------------------------------------------------------------

LEIBNIZ_PAIRS = 50


def _random_algebra_element(rng: random.Random, p: Presentation, max_len: int = 3) -> AlgebraElement:
    gens = [g for g in p.generators]
    out = p.zero()
    for _ in range(rng.randint(1, 2)):
        w = tuple(rng.choice(gens) for _ in range(rng.randint(0, max_len)))
        out = out + p.normal_form(w).scale(rng.choice((1, -1, 2, 3)))
    return out


def _random_form(rng: random.Random, calc: CalculusSpec, scalar: bool) -> FormElement:
    k = rng.randint(0, min(2, calc.n))
    words = calc.basis_words(k)
    w = rng.choice(words)
    if scalar:
        return calc.form(*w).scale(rng.choice((1, -1, 2)))
    return calc.form(*w, coef=_random_algebra_element(rng, calc.algebra, 2))


def leibniz_residuals(calc: CalculusSpec, pairs: int = LEIBNIZ_PAIRS, seed: int = 7) -> list[FormElement]:
    """d(ξ∧η) - dξ∧η - (-1)^k ξ∧dη on seeded random pairs.

    Calculi with non-commuting coefficients use the fragment where no
    coefficient has to cross a form: a function times a scalar-coefficient form,
    or two scalar-coefficient forms.  On A(SU_q(2)) every third pair is two
    functions, with dx·y taken from the right action on invariant forms.
    """
    rng = random.Random(f"{calc.name}:{seed}")
    commutative = calc.algebra.commutative or all(calc.can_move(calc.algebra.gen(g), calc.basis) for g in calc.algebra.generators)
    out = []
    for i in range(pairs):
        if commutative:
            x = _random_form(rng, calc, False)
            y = _random_form(rng, calc, False)
        elif i % 3 == 2 and getattr(calc, "tangent", None) is not None:
            f = _random_algebra_element(rng, calc.algebra)
            g = _random_algebra_element(rng, calc.algebra)
            dfg = right_multiply_one_form(calc, calc.d_algebra(f), g) + calc.d_algebra(g).lmul(f)
            out.append(calc.d_algebra(f * g) - dfg)
            continue
        elif i % 2:
            x = calc.function(_random_algebra_element(rng, calc.algebra))
            y = _random_form(rng, calc, True)
        else:
            x = _random_form(rng, calc, True)
            y = _random_form(rng, calc, True)
        k = x.degree()
        lhs = x.wedge(y).d()
        rhs = x.d().wedge(y) + (x.wedge(y.d()) if k % 2 == 0 else -x.wedge(y.d()))
        out.append(lhs - rhs)
    return out


def reality_residuals(calc: CalculusSpec, n: int = 10, seed: int = 5) -> dict:
    """d(x*) - (dx)* on generators and random elements, and d(ξ*) - (dξ)* on basis forms.

    On A(SU_q(2)) the involution of a 1-form with algebra coefficients goes
    through the right action of functions on the invariant forms.
    """
    rng = random.Random(f"{calc.name}:{seed}")
    p = calc.algebra
    elems = [(g, p.gen(g)) for g in p.generators]
    for i in range(n):
        elems.append((f"random {i}", _random_algebra_element(rng, p)))
    out = {}
    for name, x in elems:
        try:
            out[name] = calc.d_algebra(x.star()) - calc.d_algebra(x).star()
        except UnsupportedBimoduleMove:
            if getattr(calc, "tangent", None) is None:
                continue
            out[name] = calc.d_algebra(x.star()) - star_one_form(calc, calc.d_algebra(x))
    for w in calc.basis_words(1) + calc.basis_words(2):
        xi = calc.form(*w)
        out["∧".join(w)] = xi.star().d() - xi.d().star()
    return out


def right_action_residuals(calc: CalculusSpec, n: int = 6, seed: int = 3) -> dict:
    """(ω·y)·z - ω·(yz) for the right action of A(SU_q(2)) on invariant forms."""
    rng = random.Random(f"{calc.name}:{seed}")
    p = calc.algebra
    out = {}
    for i in range(n):
        y = _random_algebra_element(rng, p, 2)
        z = _random_algebra_element(rng, p, 2)
        for l in calc.basis:
            lhs = right_multiply_one_form(calc, right_multiply_invariant(calc, l, y), z)
            out[f"{l} {i}"] = lhs - right_multiply_invariant(calc, l, y * z)
    return out


def random_connection(calc: CalculusSpec, seed: int = 13) -> MatrixForm:
    """A 2x2 connection with symbolic scale ε: algebra coefficients when they commute with forms."""
    rng = random.Random(f"{calc.name}:{seed}")
    movable = all(calc.can_move(calc.algebra.gen(g), calc.basis) for g in calc.algebra.generators)
    rows = []
    for _ in range(2):
        row = []
        for _ in range(2):
            e = calc.zero()
            for _ in range(2):
                (w,) = [rng.choice(calc.basis_words(1))]
                coef = _random_algebra_element(rng, calc.algebra, 2) if movable else calc.algebra.one()
                e = e + calc.form(*w, coef=coef).scale(rng.choice((1, -1, 2)))
            row.append(e.scale(param("eps")))
        rows.append(row)
    return MatrixForm(calc, rows)


def confluence_residuals(p: Presentation, n: int = 40, seed: int = 11) -> dict:
    """Leftmost vs rightmost reduction and idempotence on seeded random words."""
    rng = random.Random(f"{p.name}:{seed}")
    out = {}
    gens = list(p.generators)
    words = list(p.overlap_words(3))[:n] if not p.commutative else []
    while len(words) < n:
        words.append(tuple(rng.choice(gens) for _ in range(rng.randint(2, 5))))
    for w in words:
        left = p.normal_form(w)
        right = p.normal_form(w, rightmost=True)
        again = p.zero()
        for ww, c in left.terms.items():
            again = again + p.normal_form(ww).scale(c)
        out["·".join(w)] = [left - right, again - left]
    return out


def calculus_catalog() -> list[CalculusSpec]:
    qc = quantum_calculus()
    cc = classical_calculus()
    rc = radial_calculus()
    ch = chart_calculus()
    return [qc, cc, rc, ch, product_calculus(rc, qc), product_calculus(radial_calculus(), classical_calculus())]


def run_calculus_audit(ctx: Context, out: Outcome) -> None:
    calcs = calculus_catalog()
    for calc in calcs:
        tag = calc.name
        add_check(ctx, out, f"d∘d = 0 [{tag}]", "eq:diff", dd_residuals(calc))
        add_check(ctx, out, f"graded Leibniz on {LEIBNIZ_PAIRS} random pairs [{tag}]", "eq:diff", leibniz_residuals(calc))
        add_check(ctx, out, f"d(ξ*) = (dξ)* [{tag}]", "eq:diff", reality_residuals(calc))
        if calc.braiding:
            add_check(ctx, out, f"wedge relations are braiding fixed points [{tag}]", "commc3",
                      calc.braid_fixed_point_residuals())
        if getattr(calc, "tangent", None) is not None:
            add_check(ctx, out, f"right action of functions on invariant forms is associative [{tag}]", "q3dom",
                      right_action_residuals(calc))
        A = random_connection(calc)
        add_check(ctx, out, f"Bianchi D(F) = 0 for a random connection [{tag}]", "Bi", covariant_derivative(A, curvature(A)))
    for p in _presentations(calcs):
        add_check(ctx, out, f"rewrite idempotence and confluence [{p.name}]", "cr4, relsu", confluence_residuals(p))
    qrep = RepresentationData.quantum_spin_half()
    add_check(ctx, out, "f table antisymmetric at q = 1", "qcv", _q1(qrep.antisymmetry_residuals()))
    add_check(ctx, out, "spin-½ matrices represent the q = 1 bracket", "repr", qrep.specialize_q(1).bracket_residuals())
    add_check(ctx, out, "T_a represent [X_a, X_b] = ε_abc X_c", "geg", RepresentationData.classical_fundamental().bracket_residuals())
    add_check(ctx, out, "U_q(su(2)) relations", "qcv", hopf.uq_relation_residuals())
    hd = hopf.suq2_hopf(calcs[0].algebra)
    add_bool(out, "Hopf axioms of A(SU_q(2))", "Us", not hd.failing_axioms(), ", ".join(hd.failing_axioms()) or "0")
    ts = hopf.tangent_space()
    table = {}
    for a in hopf.TANGENT_LABELS:
        for b in hopf.TANGENT_LABELS:
            for c in hopf.TANGENT_LABELS:
                v = ts.f_value(a, b, c)
                if v:
                    table[f"f_{a}{b}^{c}"] = v
    out.artifacts["f_table"] = render(table)
    braid_eq = calcs[0].braid_equation_residual()
    out.artifacts["braid_equation"] = "satisfied" if is_zero(braid_eq) else "violated"
    out.assumptions.extend(_assumptions(calcs[0].algebra))
    out.assumptions.append(
        "quantum Leibniz checks use the fragment where no coefficient crosses a form; "
        "the involution of 1-forms on A(SU_q(2)) uses the right action derived from Leibniz"
    )


def _q1(res: dict) -> dict:
    return {k: v.substitute({"s": 1}) for k, v in res.items()}


def _presentations(calcs) -> list[Presentation]:
    out: list[Presentation] = []
    for c in calcs:
        if c.algebra not in out:
            out.append(c.algebra)
    r4 = build_r4q()
    out.append(r4)
    return out


# ---------------------------------------------------------------------------
# warped products
# ---------------------------------------------------------------------------


def run_warped_audit(ctx: Context, out: Outcome) -> None:
    rc = radial_calculus()
    hr = radial_hermitian(rc)
    sr = solve_hodge(hr)
    rho = radial_powers(rc, 3)
    for label, c2, h2 in (
        ("radial×Woronowicz", quantum_calculus(), None),
        ("radial×classical S^3", classical_calculus(), None),
    ):
        h2 = exc_hermitian(c2) if c2.braiding else classical_round_hermitian(c2)
        s2 = solve_hodge(h2)
        P = product_calculus(rc, c2)
        hw = warped_hermitian(hr, h2, rho, P)
        sw = solve_hodge(hw)
        add_check(ctx, out, f"product Hodge formula on every bidegree basis element [{label}]", "eq:prodHodge",
                  product_hodge_check(sw, sr, s2, rho))
        add_check(ctx, out, f"defining equation on the product [{label}]", "defh", defining_equation_residuals(sw))
        add_check(ctx, out, f"(τ, τ) = 1 with τ = r^3 dr∧τ2 [{label}]", "ss:wp", hw.normalization_residuals())
        P_alg = P.algebra
        rinv = P_alg["rinv"]
        weights = {}
        for w in P.basis_words(1):
            if w[0] in c2.index:
                from .calculus import lift

                weights[w[0]] = hw.entry(w, w) - rinv * rinv * lift(h2.entry(w, w), P_alg)
        add_check(ctx, out, f"degree-(0,1) Gram carries r^-2 [{label}]", "ss:wp", weights)
        meron = quantum_meron(c2, Fraction(1, 2)) if c2.braiding else classical_meron(c2, Fraction(1, 2))
        wt = warped_transport(meron, P, sw, s2, rho)
        add_check(ctx, out, f"transported meron solves YM [{label}]", "ss:ym", wt.residual)
        add_check(ctx, out, f"factorized comparison [{label}]", "ss:ym", wt.comparison)
        add_bool(out, f"F and ∗F in disjoint bidegrees [{label}]", "ss:ym",
                 wt.disjoint_supports and not is_zero(wt.F),
                 f"F {sorted(wt.F_bidegrees)}, ∗F {sorted(wt.star_F_bidegrees)}")
        out.artifacts[f"volume [{label}]"] = hw.volume.render()
        out.artifacts[f"bidegrees [{label}]"] = f"F {sorted(wt.F_bidegrees)}, ∗F {sorted(wt.star_F_bidegrees)}"


# ---------------------------------------------------------------------------
# catalog
# ---------------------------------------------------------------------------

LC = ParamSpec("lc", "classical meron scale λ")
EPS = ParamSpec("eps", "quantum meron scale ε")
EPS_HALF = ParamSpec("eps", "quantum meron scale ε", Fraction(1, 2))
AH = ParamSpec("ah", "Hermitian parameter α_h (β_h, γ_h fixed by the Cartan-Killing constraints)", nonzero=True)

CATALOG: tuple[Scenario, ...] = (
    Scenario(
        "classical-s3",
        "su(2) meron on S^3: curvature, Hodge dual and Yang-Mills residual chain",
        ("ccu", "eqi", "yms"),
        (LC,),
        "λ(λ-1)(λ-½) · ε_abc ω_a∧ω_b⊗T_c",
        run_classical_s3,
    ),
    Scenario(
        "classical-r4-chart",
        "meron on R^4 minus 0 in coordinates: F_μν formula and Euclidean YM residual",
        ("cu4", "ccu"),
        (LC,),
        "residual ∝ λ(λ-1)(2λ-1)",
        run_classical_chart,
    ),
    Scenario(
        "quantum-s3-meron",
        "quantum meron on SU_q(2) with the Woronowicz 3D calculus",
        ("poym", "cuym", "defi", "meq"),
        (EPS, AH),
        "μ(1-ε)(1-2ε) · dA",
        run_quantum_s3,
    ),
    Scenario(
        "quantum-r4q-meron",
        "quantum meron transported to R^4_q minus 0 and its pullback through i",
        ("cr4", "r2", "egq"),
        (EPS_HALF, AH),
        "symbolic zero at ε = ½",
        run_quantum_r4q,
    ),
    Scenario(
        "hodge-audit",
        "Hodge stars solved from the defining equation against the explicit tables and constraints",
        ("Hcl", "hsf1", "hsf2", "coH", "exc"),
        (),
        "all residuals zero",
        run_hodge_audit,
    ),
    Scenario(
        "calculus-audit",
        "property suites on every calculus: d∘d, Leibniz, involution, braiding, rewriting",
        ("eq:diff", "commc3", "qcv"),
        (),
        "all residuals zero",
        run_calculus_audit,
    ),
    Scenario(
        "warped-product-audit",
        "warped Hermitian structures, product Hodge formula and transported merons",
        ("eq:prodHodge", "ss:ym"),
        (),
        "all residuals zero",
        run_warped_audit,
    ),
)


def list_scenarios() -> tuple[Scenario, ...]:
    return CATALOG


def get_scenario(sid: str) -> Scenario:
    for s in CATALOG:
        if s.id == sid:
            return s
    raise ScenarioError(f"unknown scenario {sid!r}")


def resolve_parameters(scenario: Scenario, params: dict[str, Fraction]) -> dict[str, Fraction | None]:
    out: dict[str, Fraction | None] = {}
    for name in params:
        scenario.param(name)
    for p in scenario.params:
        v = params.get(p.name, p.default)
        if v is not None and p.nonzero and v == 0:
            raise ScenarioError(f"parameter {p.name} must be nonzero")
        out[p.name] = v
    return out
