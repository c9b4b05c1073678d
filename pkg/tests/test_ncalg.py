import pytest
from hypothesis import given, strategies as st

from qmeron.ncalg import (
    AlgebraError, Morphism, MorphismError, PresentationMismatch, UnknownGenerator,
    build_chart, build_i, build_identification, build_pi, build_radial, build_r4q, build_suq2,
    build_tensor, matmul, star_matrix, suq2_matrix,
)
from qmeron.scalars import ONE, Q, S, const

SUQ2 = build_suq2()
R4Q = build_r4q()
CHART = build_chart()
RADIAL = build_radial()
PROD = build_tensor(RADIAL, build_suq2(name="A(SU_q(2)) factor"))
ALL = [SUQ2, R4Q, CHART, RADIAL, PROD, build_suq2(q=ONE, name="A(SU(2))")]


def words(p, max_len):
    return st.lists(st.sampled_from(p.generators), max_size=max_len).map(tuple)


@pytest.mark.parametrize("p", ALL, ids=lambda p: p.name)
def test_rules_terminate_and_star_preserves_relations(p):
    p.check_termination()
    p.check_star()


@pytest.mark.parametrize("p", ALL, ids=lambda p: p.name)
def test_overlaps_resolve_identically_under_both_strategies(p):
    for w in p.overlap_words(3):
        assert p.normal_form(w) == p.normal_form(w, rightmost=True), w


@pytest.mark.parametrize("p", [SUQ2, R4Q, PROD], ids=lambda p: p.name)
@given(data=st.data())
def test_normal_form_idempotent_and_confluent(p, data):
    w = data.draw(words(p, 6))
    x = p.normal_form(w)
    again = p.zero()
    for word, c in x.terms.items():
        again = again + p.normal_form(word).scale(c)
    assert again == x
    w5 = w[:5]
    assert p.normal_form(w5) == p.normal_form(w5, rightmost=True)


@given(data=st.data())
def test_multiplication_is_associative(data):
    a, b, c = (SUQ2.normal_form(data.draw(words(SUQ2, 3))) for _ in range(3))
    assert (a * b) * c == a * (b * c)
    assert a * SUQ2.one() == a == SUQ2.one() * a


@given(data=st.data())
def test_star_is_antimultiplicative_and_involutive(data):
    for p in (SUQ2, R4Q):
        x = p.normal_form(data.draw(words(p, 3))).scale(const(2) + Q)
        y = p.normal_form(data.draw(words(p, 3)))
        assert (x * y).star() == y.star() * x.star()
        assert x.star().star() == x


def test_r4q_commutation_examples():
    x1, x2, x3, x4 = (R4Q[g] for g in ("x1", "x2", "x3", "x4"))
    assert R4Q.normal_form(("x2", "x1")) == (x1 * x2).scale(1 / Q)
    assert x4 * x1 == x1 * x4 - (x2 * x3).scale(1 / Q - Q)
    d = (x1 * x4).scale(Q) + (x2 * x3).scale(Q * Q)
    assert d * R4Q["rinv"] * R4Q["rinv"] == R4Q.one()


def test_r4q_central_elements():
    d = (R4Q["x1"] * R4Q["x4"]).scale(Q) + (R4Q["x2"] * R4Q["x3"]).scale(Q * Q)
    for g in R4Q.generators:
        x = R4Q[g]
        assert R4Q["r"] * x == x * R4Q["r"]
        assert d * x == x * d


def test_star_examples():
    assert R4Q["x1"].star() == R4Q["x4"].scale(Q)
    assert R4Q["x2"].star() == R4Q["x3"]
    x23 = R4Q["x2"] * R4Q["x3"]
    assert x23.star().star() == x23
    a, c = SUQ2["a"], SUQ2["c"]
    assert (a * c).star() == SUQ2["c*"] * SUQ2["a*"]


def test_u_is_unitary():
    u = suq2_matrix(SUQ2)
    for prod in (matmul(u, star_matrix(u)), matmul(star_matrix(u), u)):
        for i in range(2):
            for j in range(2):
                assert prod[i][j] == (SUQ2.one() if i == j else SUQ2.zero())
    c, cs = SUQ2["c"], SUQ2["c*"]
    assert (c * cs - cs * c).is_zero


def test_unit_is_trivial_and_unknown_generators_rejected():
    assert SUQ2["a"] * SUQ2.one() == SUQ2["a"]
    with pytest.raises(UnknownGenerator):
        SUQ2.normal_form(("a", "b"))
    with pytest.raises(PresentationMismatch):
        SUQ2["a"] * R4Q["x1"]


def test_chart_inverse_norm():
    x = [CHART[g] for g in ("x0", "x1", "x2", "x3")]
    norm = x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3]
    assert CHART["sc"] * norm == CHART.one()


def test_pi_and_i_generator_tables():
    pi, i = build_pi(R4Q, SUQ2), build_i(SUQ2, R4Q)
    assert pi(R4Q["x1"]) == SUQ2["a"] and pi(R4Q["r"]) == SUQ2.one()
    ri = R4Q["rinv"]
    assert i(SUQ2["a"]) == ri * R4Q["x1"]
    assert i(SUQ2["c"]) == ri * R4Q["x2"]
    assert i(SUQ2["c*"]) == ri * R4Q["x3"]
    assert i(SUQ2["a*"]) == (ri * R4Q["x4"]).scale(Q)
    both = pi.compose(i)
    for g in SUQ2.generators:
        assert both(SUQ2[g]) == SUQ2[g]


def test_identification_validates():
    iota = build_identification(R4Q, PROD)
    assert iota(R4Q["x1"]) == PROD["r"] * PROD["a"]


def test_morphism_validation_reports_violated_relation():
    # a -> c violates aa* + q^2 cc* = 1 under the star-compatible table
    images = {"a": SUQ2["c"], "a*": SUQ2["c*"], "c": SUQ2["a"], "c*": SUQ2["a*"]}
    with pytest.raises(MorphismError, match="violates relation"):
        Morphism("bad", SUQ2, SUQ2, images)


def test_classical_algebra_is_commutative():
    su = build_suq2(q=ONE, name="A(SU(2))")
    for g in su.generators:
        for h in su.generators:
            assert su[g] * su[h] == su[h] * su[g]


def test_tensor_rejects_clashing_names():
    with pytest.raises(AlgebraError):
        build_tensor(SUQ2, build_suq2(name="again"))


def test_rendering_is_deterministic():
    x = R4Q["x4"] * R4Q["x1"]
    assert x.render() == (R4Q["x4"] * R4Q["x1"]).render()
    assert "x1·x4" in x.render()
    assert S.render() == "s"
