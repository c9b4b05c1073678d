"""Acceptance criteria 1-7, each checked by exact canonical-form equality.

Every test prints one ``AC<n> PASS|FAIL: <title>`` line, visible even under
captured output.
"""
from fractions import Fraction

import pytest

from qmeron.calculus import (
    chart_curvature_formula, chart_meron_fields, chart_ym_residual, classical_T, classical_calculus,
    levi_civita, product_calculus, quantum_calculus, radial_calculus, reconstruct_invariant_forms,
)
from qmeron.gauge import (
    MatrixForm, classical_meron, covariant_derivative, curvature, maurer_cartan, pullback_meron,
    quantum_meron, warped_transport,
)
from qmeron.hodge import (
    cartan_killing_constraint, check_reality_symmetry, classical_round_hermitian, coh_constraint,
    defining_equation_residuals, exc_constraints, exc_solution, mu_normalized_alpha, paper_star_tables,
    product_hodge_check, quantum_hermitian, radial_hermitian, radial_powers, solve_hodge,
    warped_hermitian,
)
from qmeron.ncalg import (
    build_i, build_identification, build_pi, build_r4q, build_suq2, matmul, star_matrix, suq2_matrix,
)
from qmeron.report import run_scenario
from qmeron.scalars import Q, const, param
from qmeron.scenarios import get_scenario

HALF, QUARTER = const(1, 2), const(1, 4)


@pytest.fixture
def verdict(capsys):
    """Collect named sub-checks, print one line, then assert."""
    results = []

    def check(name, ok):
        results.append((name, bool(ok)))

    def finish(tag, title):
        failed = [n for n, ok in results if not ok]
        with capsys.disabled():
            line = f"{tag} {'PASS' if not failed else 'FAIL'}: {title}"
            if failed:
                line += " (failed: " + "; ".join(failed) + ")"
            print("\n" + line)
        assert not failed, failed

    check.finish = finish
    return check


def _zero_all(res):
    return all(v.is_zero for v in res.values())


def _dT(calc):
    T = classical_T()
    return MatrixForm.from_terms(calc, [(T[a], calc.form(f"ω{a}").d()) for a in (1, 2, 3)])


def _epsT(calc):
    T = classical_T()
    return MatrixForm.from_terms(calc, [
        (T[c], calc.form(f"ω{a}", f"ω{b}").scale(levi_civita(a, b, c)))
        for a in (1, 2, 3) for b in (1, 2, 3) for c in (1, 2, 3) if levi_civita(a, b, c)
    ])


def test_ac1_classical_s3_chain(verdict):
    c = classical_calculus()
    star = solve_hodge(classical_round_hermitian(c))
    lam = param("lc")
    A = classical_meron(c)
    F = curvature(A)
    verdict("F = λ(1-λ) dω_a⊗T_a", F == _dT(c).scale(lam * (1 - lam)))
    sF = F.hodge(star)
    verdict("∗F = (λ-1)α", sF == A.scale(lam - 1))
    R = covariant_derivative(A, sF)
    verdict("D∗F = λ(λ-1)(λ-½) ε ω∧ω⊗T", R == _epsT(c).scale(lam * (lam - 1) * (lam - HALF)))
    for v in (0, Fraction(1, 2), 1):
        verdict(f"residual zero at λ = {v}", R.substitute({"lc": v}).is_zero)
    verdict("residual nonzero at λ = 1/4", not R.substitute({"lc": Fraction(1, 4)}).is_zero)
    verdict.finish("AC1", "classical S^3 residual chain")


def test_ac2_classical_chart(verdict):
    lam = param("lc")
    A, F, p = chart_meron_fields()
    for k, mat in F.items():
        formula = chart_curvature_formula(p, lam, *k)
        verdict(f"F_{k} closed form", all(mat[i][j] == formula[i][j] for i in range(2) for j in range(2)))
        verdict(f"F_{k} = 0 at λ = 1", all(e.substitute({"lc": 1}).is_zero for row in mat for e in row))
    Ah, Fh, _ = chart_meron_fields(HALF)
    for nu in range(4):
        res = chart_ym_residual(Ah, Fh, nu)
        verdict(f"YM residual ν={nu} at λ = 1/2", all(e.is_zero for row in res for e in row))
    verdict.finish("AC2", "classical R^4 chart curvature and Yang-Mills residual")


def test_ac3_quantum_suq2(verdict):
    c = quantum_calculus()
    su = c.algebra
    u = suq2_matrix(su)
    us = star_matrix(u)
    for name, prod in (("u u*", matmul(u, us)), ("u* u", matmul(us, u))):
        verdict(f"{name} = 1", all(prod[i][j] == (su.one() if i == j else su.zero())
                                   for i in range(2) for j in range(2)))
    rec = reconstruct_invariant_forms(c)
    verdict("invariant forms reconstructed", all(rec[l] == c.form(l) for l in c.basis))
    eps = param("eps")
    A = quantum_meron(c)
    A1 = A.substitute({"eps": 1})
    verdict("A|ε=1 = u* du", maurer_cartan(c, u) == A1)
    verdict("dA = -A∧A at ε = 1", A1.d() == -A1.wedge(A1))
    F = curvature(A)
    dA = A.d()
    verdict("F = (1-ε) dA", F == dA.scale(1 - eps))
    sol = exc_solution(mu_normalized_alpha())
    star = solve_hodge(quantum_hermitian(c, alpha=mu_normalized_alpha(), beta=sol["bh"], gamma=sol["gh"]))
    mu = cartan_killing_constraint(solve_hodge(quantum_hermitian(c))).mu.substitute({"ah": mu_normalized_alpha()})
    sF = F.hodge(star)
    verdict("∗F = (1-ε)μ A", sF == A.scale((1 - eps) * mu))
    R = covariant_derivative(A, sF)
    verdict("D∗F = μ(1-ε)(1-2ε) dA", R == dA.scale(mu * (1 - eps) * (1 - 2 * eps)))
    verdict("residual zero at ε = 1/2", R.substitute({"eps": HALF}).is_zero)
    verdict("residual nonzero at ε = 1/4", not R.substitute({"eps": QUARTER}).is_zero)
    verdict.finish("AC3", "quantum SU_q(2) meron chain (α_h = q^-4/2 fixes the μ normalisation)")


def test_ac4_hodge_audit(verdict):
    cc = classical_calculus()
    cs = solve_hodge(classical_round_hermitian(cc))
    f = cc.form
    table = {(): f("ω1", "ω2", "ω3"), ("ω1",): f("ω2", "ω3"), ("ω2",): -f("ω1", "ω3"),
             ("ω3",): f("ω1", "ω2"), ("ω1", "ω2"): f("ω3"), ("ω1", "ω3"): -f("ω2"),
             ("ω2", "ω3"): f("ω1"), ("ω1", "ω2", "ω3"): cc.one()}
    verdict("classical round table", all(cs.table[w] == v for w, v in table.items()))
    qc = quantum_calculus()
    qs = solve_hodge(quantum_hermitian(qc))
    verdict("defining equation on all quantum basis pairs", _zero_all(defining_equation_residuals(qs)))
    tables = paper_star_tables(qc)
    verdict("degree-1 and degree-2 quantum tables", all(qs.table[w] == v for w, v in tables.items()))
    rs = check_reality_symmetry(qs)
    verdict("reality and symmetry give α = q^-6 β", rs.contains(coh_constraint()) and len(rs.constraints) == 1)
    ck = cartan_killing_constraint(qs)
    verdict("Cartan-Killing constraint set equals exc", ck.equivalent_to(exc_constraints()))
    verdict("single μ", len({m.substitute(ck.solution) for m in ck.details["mu_a"].values()}) == 1)
    verdict("μ closed form", ck.mu == (1 + Q * Q) / (2 * Q**6 * param("ah") ** 2))
    verdict.finish("AC4", "Hodge audit")


def _warped(kind):
    rc = radial_calculus()
    if kind == "radial×Woronowicz":
        c2 = quantum_calculus(build_suq2(name="A(SU_q(2)) ac5"))
        sol = exc_solution()
        h2 = quantum_hermitian(c2, alpha=param("ah"), beta=sol["bh"], gamma=sol["gh"])
        A2 = quantum_meron(c2, HALF)
    else:
        c2 = classical_calculus()
        h2 = classical_round_hermitian(c2)
        A2 = classical_meron(c2, HALF)
    P = product_calculus(rc, c2)
    rho = radial_powers(rc, 3)
    star = solve_hodge(warped_hermitian(radial_hermitian(rc), h2, rho, P))
    star1, star2 = solve_hodge(radial_hermitian(rc)), solve_hodge(h2)
    return product_hodge_check(star, star1, star2, rho), warped_transport(A2, P, star, star2, rho)


def test_ac5_warped_product(verdict):
    for kind in ("radial×Woronowicz", "radial×classical"):
        res, wt = _warped(kind)
        verdict(f"product Hodge formula [{kind}]", res and _zero_all(res))
        verdict(f"transported meron YM residual 0 [{kind}]", wt.residual.is_zero)
        verdict(f"F, ∗F disjoint bidegrees [{kind}]",
                not wt.F.is_zero and wt.disjoint_supports and wt.F_bidegrees == {(0, 2)})
    verdict.finish("AC5", "warped product Hodge formula and transported merons")


def test_ac6_r4q_structure(verdict):
    r4, su = build_r4q(), build_suq2()
    P = product_calculus(radial_calculus(), quantum_calculus(build_suq2(name="A(SU_q(2)) ac6")))
    ok = {}
    for name, build in (("π", lambda: build_pi(r4, su)), ("i", lambda: build_i(su, r4)),
                        ("x -> r u", lambda: build_identification(r4, P.algebra))):
        try:
            ok[name] = build()
            verdict(f"{name} validates", True)
        except Exception as exc:
            verdict(f"{name} validates ({exc})", False)
    if "π" in ok and "i" in ok:
        comp = ok["π"].compose(ok["i"])
        verdict("π∘i = id", all(comp(su[g]) == su[g] for g in su.generators))
    d = (r4["x1"] * r4["x4"]).scale(Q) + (r4["x2"] * r4["x3"]).scale(Q * Q)
    verdict("(q x1x4 + q^2 x2x3) r^-2 = 1", d * r4["rinv"] * r4["rinv"] == r4.one())
    pb = pullback_meron(P)
    verdict("i*(A) equals the displayed matrix", pb.matches_display)
    verdict("i*(A) equals 1⊗A", pb.matches_tensor)
    verdict.finish("AC6", "R^4_q structure, morphisms and pullback")


def test_ac7_property_suites(verdict):
    rep = run_scenario(get_scenario("calculus-audit"))
    for c in rep.checks:
        verdict(c.name, c.passed)
    names = " ".join(c.name for c in rep.checks)
    for needle in ("d∘d = 0", "graded Leibniz on 50 random pairs", "d(ξ*) = (dξ)*",
                   "braiding fixed points", "Bianchi", "idempotence and confluence", "antisymmetric at q = 1"):
        verdict(f"suite present: {needle}", needle in names)
    verdict("status", rep.status == "pass")
    verdict.finish("AC7", "property suites on every calculus")

