import pytest
import sympy
from hypothesis import given, strategies as st

from qmeron.calculus import (
    CalculusError, UnsupportedBimoduleMove, WEDGE_SIGN_CANDIDATES, chart_calculus,
    chart_curvature_formula, chart_meron_fields, chart_partial, chart_ym_residual,
    classical_calculus, dd_residuals, product_calculus, quantum_calculus, radial_calculus,
    lift_form, reconstruct_invariant_forms, right_multiply_invariant, star_one_form,
)
from qmeron.ncalg import build_suq2, star_matrix, suq2_matrix
from qmeron.scalars import ONE, Q, ZERO, const, param
from qmeron.scenarios import (
    calculus_catalog, leibniz_residuals, reality_residuals, right_action_residuals,
)

QC = quantum_calculus()
CC = classical_calculus()
RC = radial_calculus()
CH = chart_calculus()
PQ = product_calculus(RC, quantum_calculus(build_suq2(name="A(SU_q(2)) factor")))
CATALOG = calculus_catalog()


def w(calc, *labels):
    return calc.form(*labels)


def test_quantum_wedge_relations():
    assert w(QC, "ω+").wedge(w(QC, "ω-")) == w(QC, "ω-", "ω+").scale(-Q * Q)
    assert w(QC, "ωz").wedge(w(QC, "ω-")) == w(QC, "ω-", "ωz").scale(-Q**4)
    assert w(QC, "ωz").wedge(w(QC, "ω+")) == w(QC, "ω+", "ωz").scale(-Q**-4)
    for l in QC.basis:
        assert w(QC, l).wedge(w(QC, l)).is_zero


def test_classical_wedge_and_maurer_cartan():
    assert w(CC, "ω1").wedge(w(CC, "ω1")).is_zero
    assert w(CC, "ω1").d() == -w(CC, "ω2", "ω3")
    assert w(CC, "ω2").wedge(w(CC, "ω1")) == -w(CC, "ω1", "ω2")


def test_quantum_differentials():
    p = QC.algebra
    assert w(QC, "ωz").d() == -w(QC, "ω-", "ω+")
    da = QC.d_algebra(p["a"])
    assert da == QC.form("ω+", coef=p["c*"].scale(-Q)) + QC.form("ωz", coef=p["a"])
    assert da.coefficient("ω-").is_zero


def test_wedge_degree_and_top_degree():
    x = w(QC, "ω-").wedge(w(QC, "ω+")).wedge(w(QC, "ωz"))
    assert x.degree() == 3
    assert x.wedge(w(QC, "ω-")).is_zero
    assert QC.basis_words(2) == [("ω-", "ω+"), ("ω-", "ωz"), ("ω+", "ωz")]


def test_braid_examples():
    assert QC.braid({("ω+", "ω-"): ONE}) == {("ω-", "ω+"): Q**4}
    for l in QC.basis:
        assert QC.braid({(l, l): ONE}) == {(l, l): ONE}
    vec = {("ω-", "ω+"): ONE, ("ω+", "ω-"): Q**-2}
    assert QC.braid(vec) == vec


def test_braid_requires_quantum_calculus():
    with pytest.raises(CalculusError):
        CC.braid({("ω1", "ω2"): ONE})


def test_wedge_relations_are_braid_fixed_points():
    assert all(not v for v in QC.braid_fixed_point_residuals().values())


def test_braid_equation_outcome_is_reported_not_asserted():
    # computed for the report; the current table happens to satisfy it
    assert QC.braid_equation_residual() == {}


def test_sign_candidates_other_than_selected_break_dd():
    assert QC.signs == (4, -4)
    for signs in WEDGE_SIGN_CANDIDATES:
        dd = dd_residuals(quantum_calculus(signs=signs))
        assert all(v.is_zero for v in dd.values()) == (signs == (4, -4))


def test_invariant_forms_reconstructed():
    rec = reconstruct_invariant_forms(QC)
    for l in QC.basis:
        assert rec[l] == w(QC, l)


def test_right_action_on_invariant_forms():
    a = QC.algebra["a"]
    assert right_multiply_invariant(QC, "ω+", a) == QC.form("ω+", coef=a.scale(1 / Q))
    assert right_multiply_invariant(QC, "ωz", a) == QC.form("ωz", coef=a.scale(Q**-2))


def test_quantum_involution_on_invariant_forms():
    assert QC.star_word(("ω-",)) == -w(QC, "ω+")
    assert QC.star_word(("ωz",)) == -w(QC, "ωz")
    da = QC.d_algebra(QC.algebra["a"])
    assert star_one_form(QC, da) == QC.d_algebra(QC.algebra["a*"])


def test_non_central_coefficient_cannot_cross_a_quantum_form():
    p = QC.algebra
    with pytest.raises(UnsupportedBimoduleMove):
        w(QC, "ω-").wedge(QC.form("ω+", coef=p["a"]))


@pytest.mark.parametrize("calc", CATALOG, ids=lambda c: c.name)
def test_dd_vanishes_on_generators_and_basis(calc):
    for k, v in dd_residuals(calc).items():
        assert v.is_zero, k


@pytest.mark.parametrize("calc", CATALOG, ids=lambda c: c.name)
def test_graded_leibniz_on_random_pairs(calc):
    res = leibniz_residuals(calc, pairs=50)
    assert len(res) == 50
    assert all(r.is_zero for r in res)


@pytest.mark.parametrize("calc", CATALOG, ids=lambda c: c.name)
def test_reality(calc):
    assert all(v.is_zero for v in reality_residuals(calc).values())


def test_right_action_is_associative():
    assert all(v.is_zero for v in right_action_residuals(QC).values())


coords = st.lists(st.sampled_from(("x0", "x1", "x2", "x3", "sc")), max_size=4).map(tuple)


@given(coords, coords)
def test_chart_partial_is_a_derivation(u, v):
    p = CH.algebra
    x, y = p.normal_form(u), p.normal_form(v)
    for mu in range(4):
        assert chart_partial(x * y, mu) == chart_partial(x, mu) * y + x * chart_partial(y, mu)


def test_chart_partial_of_inverse_norm():
    p = CH.algebra
    for mu in range(4):
        assert chart_partial(p["sc"], mu) == p[f"x{mu}"] * p["sc"] * p["sc"] * -2


def test_product_calculus_dimension_and_d():
    assert PQ.n == 4
    p = PQ.algebra
    d = PQ.d_algebra(p["r"] * p["a"])
    # d(r a) = dr a + r da, da = -q c* ω+ + a ωz
    assert d.coefficient("dr") == p["a"]
    assert d.coefficient("ωz") == p["r"] * p["a"]
    assert d.coefficient("ω+") == (p["r"] * p["c*"]).scale(-Q)
    assert d.coefficient("ω-").is_zero


def test_product_sign_rule():
    assert w(PQ, "dr").wedge(w(PQ, "ω-")) == -w(PQ, "ω-").wedge(w(PQ, "dr"))
    assert w(PQ, "ω-").wedge(w(PQ, "dr")) == -w(PQ, "dr", "ω-")


def test_product_invariant_forms():
    # φ = i(u*) r dQ = Q* dQ with Q = r u, expected r dr δ_ij + r^2 (u* du)_ij
    p = PQ.algebra
    r = p["r"]
    u = suq2_matrix(p)
    Qm = [[r * e for e in row] for row in u]
    dQ = [[PQ.d_algebra(e) for e in row] for row in Qm]
    us, Qs = star_matrix(u), star_matrix(Qm)
    uq = suq2_matrix(QC.algebra)
    du = [[QC.d_algebra(e) for e in row] for row in uq]
    ust = star_matrix(uq)
    for i in range(2):
        for j in range(2):
            phi1, phi2, mc = PQ.zero(), PQ.zero(), QC.zero()
            for k in range(2):
                phi1 = phi1 + dQ[k][j].lmul(us[i][k] * r)
                phi2 = phi2 + dQ[k][j].lmul(Qs[i][k])
                mc = mc + du[k][j].lmul(ust[i][k])
            expected = lift_form(mc, PQ).lmul(r * r)
            if i == j:
                expected = expected + PQ.form("dr", coef=r)
            assert phi1 == expected and phi2 == expected, (i, j)


# -- chart meron against an independent sympy computation ---------------------

X = sympy.symbols("x0:4", real=True)
LAM = sympy.Symbol("lc")
NORM2 = sum(x**2 for x in X)


def _oracle_A():
    """A_μ = λ g^-1 ∂_μ g with g = M/|x| in homogeneous coordinates
    u = x0 + i x3, v = x2 + i x1, and g^-1 = M†/|x|.

    Since M†M = |x|^2, this is λ (M†∂_μM - x_μ)/|x|^2."""
    u, v = X[0] + sympy.I * X[3], X[2] + sympy.I * X[1]
    M = sympy.Matrix([[u, -sympy.conjugate(v)], [v, sympy.conjugate(u)]])
    Md = M.H
    return [LAM * (Md * M.diff(X[mu]) - X[mu] * sympy.eye(2)) / NORM2 for mu in range(4)]


def _oracle_F(A):
    return {
        (m, n): (A[n].diff(X[m]) - A[m].diff(X[n]) + A[m] * A[n] - A[n] * A[m]).applyfunc(sympy.cancel)
        for m in range(4) for n in range(m + 1, 4)
    }


def _to_sympy(x):
    out = sympy.Integer(0)
    sub = {sympy.Symbol(f"x{i}"): X[i] for i in range(4)}
    for word, c in x.terms.items():
        m = c.to_sympy()
        for g in word:
            m *= 1 / NORM2 if g == "sc" else X[int(g[1])]
        out += m
    return out.subs(sub)


@pytest.fixture(scope="module")
def chart():
    A, F, p = chart_meron_fields()
    return A, F, p


def test_chart_connection_matches_oracle(chart):
    A, _F, _p = chart
    oracle = _oracle_A()
    for mu in range(4):
        for i in range(2):
            for j in range(2):
                assert sympy.cancel(_to_sympy(A[mu][i][j]) - oracle[mu][i, j]) == 0


def test_chart_curvature_matches_oracle(chart):
    _A, F, _p = chart
    oracle = _oracle_F(_oracle_A())
    for key, mat in F.items():
        for i in range(2):
            for j in range(2):
                assert sympy.cancel(_to_sympy(mat[i][j]) - oracle[key][i, j]) == 0, key


def test_chart_curvature_closed_formula(chart):
    _A, F, p = chart
    lam = param("lc")
    for (m, n), mat in F.items():
        formula = chart_curvature_formula(p, lam, m, n)
        assert all(mat[i][j] == formula[i][j] for i in range(2) for j in range(2))


def test_chart_flat_at_lambda_one():
    _A, F, _p = chart_meron_fields(ONE)
    assert all(e.is_zero for mat in F.values() for row in mat for e in row)


@pytest.mark.parametrize("lam,zero", [(const(1, 2), True), (ONE, True), (ZERO, True), (const(1, 4), False)])
def test_chart_ym_residual_zero_set(lam, zero):
    A, F, _p = chart_meron_fields(lam)
    res = [chart_ym_residual(A, F, nu) for nu in range(4)]
    assert all(e.is_zero for r in res for row in r for e in row) == zero
