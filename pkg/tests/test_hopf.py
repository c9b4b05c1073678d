import pytest
import sympy
from hypothesis import given, strategies as st

from qmeron.hopf import (
    E, F, K, K_INV, UQ_ONE, HopfError, UqElement, act_left, act_right, braid_table, glq_hopf,
    glq_paper_antipode_residual, pair, spin_half, suq2_hopf, tangent_space, tangent_vectors,
    uq_relation_residuals,
)
from qmeron.ncalg import build_r4q, build_suq2, suq2_matrix
from qmeron.scalars import ONE, Q, S, ZERO, const, from_sympy

P = build_suq2()
X = tangent_vectors()
T = tangent_space()
GENS = ("a", "a*", "c", "c*")


def _oracle_rho(mono):
    """Spin-1/2 matrices built by hand: rho(K) = diag(s^-1, s), rho(E) = E21, rho(F) = E12.

    They come from <h, u_ij> on generators with u = [[a, -q c*], [c, a*]]."""
    s = sympy.Symbol("s")
    k = sympy.diag(1 / s, s)
    e = sympy.Matrix([[0, 0], [1, 0]])
    f = sympy.Matrix([[0, 1], [0, 0]])
    a, b, c = mono
    return f**a * k**b * e**c


monos = st.tuples(st.integers(0, 2), st.integers(-3, 3), st.integers(0, 2))


@given(monos)
def test_pairing_against_spin_half_oracle(m):
    h = UqElement.mono(*m)
    u = suq2_matrix(P)
    rho = _oracle_rho(m)
    for i in range(2):
        for j in range(2):
            assert pair(h, u[i][j]) == from_sympy(rho[i, j])


def test_pairing_examples():
    a = P["a"]
    assert pair(K, a) == ONE / S
    assert pair(E, a) == ZERO
    assert pair(K**4, a) == ONE / (Q * Q)
    assert pair(K, P["a*"]) == S
    assert pair(E, P["c"]) == ONE
    assert pair(F, P["c*"]) == -ONE / Q
    assert pair(K_INV, a) == S


def test_pairing_extends_to_products_via_coproduct():
    # <E, c a> = <E, c><K, a> + <K^-1, c><E, a> = q^(-1/2)
    assert pair(E, P["c"] * P["a"]) == ONE / S
    assert pair(UQ_ONE, P["a"] * P["a*"]) == ONE
    assert pair(K, P.one()) == ONE


def test_pairing_is_star_compatible_on_generators():
    # <h*, x> = conj <h, S(x)*>
    hopf = suq2_hopf(P)
    for h in (K, K_INV, E, F):
        for g in GENS:
            x = P[g]
            assert pair(h.star(), x) == pair(h, hopf.antipode(x).star()).conjugate()


def test_left_action_examples():
    a = P["a"]
    assert act_left(X["z"], a) == a
    assert act_left(X["+"], a) == P["c*"].scale(-Q)
    assert act_left(X["-"], a).is_zero
    assert act_left(UQ_ONE, a * P["c"]) == a * P["c"]


def test_right_action_examples():
    a = P["a"]
    assert act_right(a, UQ_ONE) == a
    # a ◁ X_z = <X_z, a> a - q <X_z, c*> c = a
    assert act_right(a, X["z"]) == a


def _module_law(action, h, x, y, left):
    out = P.zero()
    for c, h1, h2 in h.coproduct().legs():
        if left:
            out = out + (action(h1, x) * action(h2, y)).scale(c)
        else:
            out = out + (action(x, h1) * action(y, h2)).scale(c)
    return out


@given(st.sampled_from(GENS), st.sampled_from(GENS), monos)
def test_module_algebra_laws(g1, g2, m):
    h = UqElement.mono(*m)
    x, y = P[g1], P[g2]
    assert act_left(h, x * y) == _module_law(act_left, h, x, y, True)
    assert act_right(x * y, h) == _module_law(act_right, h, x, y, False)


@pytest.mark.parametrize("g", GENS)
@pytest.mark.parametrize("h1", ["-", "+", "z"])
@pytest.mark.parametrize("h2", ["-", "+", "z"])
def test_left_and_right_actions_commute(g, h1, h2):
    x = P[g]
    assert act_left(X[h1], act_right(x, X[h2])) == act_right(act_left(X[h1], x), X[h2])


def test_uq_relations():
    for name, res in uq_relation_residuals().items():
        assert res.is_zero, name


def test_uq_coproduct_and_star():
    assert E.star() == F
    assert K.star() == K
    assert E.counit() == ZERO and K.counit() == ONE


def test_f_table_values():
    assert T.f_value("-", "+", "z") == Q * Q
    assert T.f_value("+", "-", "z") == -ONE / (Q * Q)
    assert T.lam == 1 + Q * Q


def test_f_table_classical_limit_is_antisymmetric():
    expected = {("-", "+", "z"): 1, ("+", "-", "z"): -1, ("-", "z", "-"): -2,
                ("z", "-", "-"): 2, ("+", "z", "+"): 2, ("z", "+", "+"): -2}
    for (a, b, c), v in expected.items():
        assert T.f_value(a, b, c).substitute({"s": 1}) == const(v)
    for a in "-+z":
        for b in "-+z":
            for c in "-+z":
                s1 = T.f_value(a, b, c).substitute({"s": 1})
                assert s1 == -T.f_value(b, a, c).substitute({"s": 1})


def test_braid_table_examples():
    t = braid_table()
    assert t[("+", "-")] == {("-", "+"): Q**4}
    for a in "-+z":
        assert t[(a, a)] == {(a, a): ONE}


def test_braid_mixed_blocks_have_eigenvalues_one_and_minus_q2():
    q = sympy.Symbol("s") ** 2
    t = braid_table()
    for x, y in (("-", "+"), ("-", "z"), ("z", "+")):
        basis = [(x, y), (y, x)]
        m = sympy.Matrix(2, 2, lambda i, j: t[basis[j]].get(basis[i], ZERO).to_sympy())
        eig = {sympy.simplify(e) for e in m.eigenvals()}
        assert eig == {sympy.Integer(1), sympy.simplify(-q**2)}


def test_suq2_hopf_axioms():
    assert suq2_hopf(P).failing_axioms() == []


def test_glq_hopf_axioms_and_literal_antipode():
    r4 = build_r4q()
    assert glq_hopf(r4).failing_axioms() == []
    res = glq_paper_antipode_residual(r4)
    assert res == r4["r"] * r4["r"] - r4.one()


def test_spin_half_matches_oracle():
    for m in ((0, 1, 0), (1, 0, 0), (0, 0, 1), (1, 2, 1)):
        rho = _oracle_rho(m)
        got = spin_half(UqElement.mono(*m))
        assert all(got[i][j] == from_sympy(rho[i, j]) for i in range(2) for j in range(2))


def test_pair_rejects_foreign_algebra():
    with pytest.raises(Exception):
        pair(K, build_r4q()["x1"])
    assert issubclass(HopfError, Exception)
