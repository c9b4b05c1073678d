from fractions import Fraction

import pytest

from qmeron.calculus import (
    classical_T, classical_calculus, levi_civita, product_calculus, quantum_calculus, radial_calculus,
)
from qmeron.gauge import (
    GaugeError, MatrixForm, RepresentationData, anti_hermitian_residual, bidegree, classical_meron,
    connection, covariant_derivative, curvature, maurer_cartan, pullback_meron, quantum_meron,
    warped_transport, ym_residual,
)
from qmeron.hodge import (
    classical_round_hermitian, exc_solution, mu_normalized_alpha, quantum_hermitian, radial_hermitian,
    radial_powers, solve_hodge, warped_hermitian,
)
from qmeron.ncalg import build_suq2, suq2_matrix
from qmeron.scalars import ONE, Q, ZERO, const, param

LC, EPS, AH = param("lc"), param("eps"), param("ah")
CC = classical_calculus()
QC = quantum_calculus()


def dT(calc):
    T = classical_T()
    return MatrixForm.from_terms(calc, [(T[a], calc.form(f"ω{a}").d()) for a in (1, 2, 3)])


def epsT(calc):
    T = classical_T()
    terms = [(T[c], calc.form(f"ω{a}", f"ω{b}").scale(levi_civita(a, b, c)))
             for a in (1, 2, 3) for b in (1, 2, 3) for c in (1, 2, 3) if levi_civita(a, b, c)]
    return MatrixForm.from_terms(calc, terms)


@pytest.fixture(scope="module")
def cstar():
    return solve_hodge(classical_round_hermitian(CC))


@pytest.fixture(scope="module")
def qstar():
    sol = exc_solution()
    return solve_hodge(quantum_hermitian(QC, alpha=AH, beta=sol["bh"], gamma=sol["gh"]))


# -- matrix forms ------------------------------------------------------------------


def test_matrix_form_algebra():
    A = classical_meron(CC)
    Z = MatrixForm.zero(CC, 2)
    assert (A - A).is_zero and (A + Z) == A
    assert A.degree == 1 and (A.wedge(A)).degree == 2
    assert MatrixForm.identity(CC, 2).wedge(A) == A
    assert A.scale(2) == A + A


def test_connection_size_mismatch():
    rep = RepresentationData.classical_fundamental()
    with pytest.raises(GaugeError):
        connection(rep, ONE, radial_calculus())


# -- representations ----------------------------------------------------------------


def test_classical_representation_brackets():
    rep = RepresentationData.classical_fundamental()
    assert rep.bracket_residuals() == {}
    assert rep.antisymmetry_residuals() == {}


def test_quantum_spin_half_at_q_one():
    rep = RepresentationData.quantum_spin_half().specialize_q(1)
    assert rep.antisymmetry_residuals() == {}
    assert rep.bracket_residuals() == {}
    assert rep.matrices["z"] == [[ONE, ZERO], [ZERO, -ONE]]


def test_quantum_table_is_not_antisymmetric_for_generic_q():
    assert RepresentationData.quantum_spin_half().antisymmetry_residuals() != {}


# -- classical chain --------------------------------------------------------------------


def test_classical_curvature(cstar):
    A = classical_meron(CC)
    F = curvature(A)
    assert F == dT(CC).scale(LC * (1 - LC))
    assert F.hodge(cstar) == A.scale(LC - 1)


def test_classical_ym_residual(cstar):
    A = classical_meron(CC)
    R = ym_residual(A, cstar)
    assert R == epsT(CC).scale(LC * (LC - 1) * (LC - const(1, 2)))
    assert covariant_derivative(A, curvature(A)).is_zero
    assert anti_hermitian_residual(A).is_zero


@pytest.mark.parametrize("lam,zero", [(0, True), (Fraction(1, 2), True), (1, True), (Fraction(1, 4), False)])
def test_classical_residual_zero_set(cstar, lam, zero):
    R = ym_residual(classical_meron(CC, const(lam)), cstar)
    assert R.is_zero == zero


def test_classical_maurer_cartan():
    p = CC.algebra
    u = [[p["a"], -p["c*"]], [p["c"], p["a*"]]]
    assert maurer_cartan(CC, u) == classical_meron(CC, ONE)


# -- quantum chain ------------------------------------------------------------------------


def test_quantum_maurer_cartan_and_flatness():
    A1 = quantum_meron(QC, ONE)
    assert maurer_cartan(QC, suq2_matrix(QC.algebra)) == A1
    assert A1.d() == -A1.wedge(A1)


def test_quantum_curvature():
    A = quantum_meron(QC)
    F = curvature(A)
    assert F == A.d().scale(1 - EPS)
    assert anti_hermitian_residual(A).is_zero
    assert covariant_derivative(A, F).is_zero


def test_quantum_hodge_of_curvature(qstar):
    A = quantum_meron(QC)
    F = curvature(A)
    mu = (1 + Q * Q) / (2 * Q**6 * AH * AH)
    kappa_over_mu = (1 + Q**-2) / AH
    sF = F.hodge(qstar)
    assert sF == A.scale((1 - EPS) * kappa_over_mu)
    R = covariant_derivative(A, sF)
    assert R == A.d().scale(kappa_over_mu * (1 - EPS) * (1 - 2 * EPS))
    norm = {"ah": mu_normalized_alpha()}
    assert (sF - A.scale((1 - EPS) * mu)).substitute(norm).is_zero
    assert (R - A.d().scale(mu * (1 - EPS) * (1 - 2 * EPS))).substitute(norm).is_zero


def test_quantum_literal_normalisation_fails_for_generic_alpha(qstar):
    A = quantum_meron(QC)
    mu = (1 + Q * Q) / (2 * Q**6 * AH * AH)
    assert not (curvature(A).hodge(qstar) - A.scale((1 - EPS) * mu)).is_zero


@pytest.mark.parametrize("eps,zero", [(0, True), (Fraction(1, 2), True), (1, True), (Fraction(1, 4), False)])
def test_quantum_residual_zero_set(qstar, eps, zero):
    assert ym_residual(quantum_meron(QC, const(eps)), qstar).is_zero == zero


# -- warped transport ----------------------------------------------------------------------


def _warped(kind):
    rc = radial_calculus()
    if kind == "quantum":
        c2 = quantum_calculus(build_suq2(name="A(SU_q(2)) f"))
        sol = exc_solution()
        h2 = quantum_hermitian(c2, alpha=AH, beta=sol["bh"], gamma=sol["gh"])
        A2 = quantum_meron(c2, const(1, 2))
    else:
        c2 = classical_calculus()
        h2 = classical_round_hermitian(c2)
        A2 = classical_meron(c2, const(1, 2))
    P = product_calculus(rc, c2)
    rho = radial_powers(rc, 3)
    star = solve_hodge(warped_hermitian(radial_hermitian(rc), h2, rho, P))
    return warped_transport(A2, P, star, solve_hodge(h2), rho), P


@pytest.mark.parametrize("kind", ["quantum", "classical"])
def test_warped_transport(kind):
    wt, P = _warped(kind)
    assert wt.residual.is_zero
    assert wt.comparison.is_zero
    assert wt.curvature_factorization.is_zero
    assert not wt.F.is_zero
    assert wt.F_bidegrees == {(0, 2)}
    assert wt.star_F_bidegrees == {(1, 1)}
    assert wt.disjoint_supports
    assert bidegree(("dr", P.factors[1].basis[0]), P) == (1, 1)


# -- pullback to R^4_q --------------------------------------------------------------------------


def test_pullback_matches_display_and_tensor():
    P = product_calculus(radial_calculus(), quantum_calculus(build_suq2(name="A(SU_q(2)) g")))
    pb = pullback_meron(P)
    assert pb.matches_display
    assert pb.matches_tensor
    assert pb.computed.entries[0][0] == P.form("ωz").scale(const(1, 2))
