"""Connections on free modules A^N as matrices of forms.

D(X) = dX + A∧X - (-1)^deg(X) X∧A, curvature F = dA + A∧A, and the
Yang-Mills residual D(∗F) with ∗ applied entrywise.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

from . import hopf
from .calculus import (
    QUANTUM_BASIS,
    CalculusSpec,
    FormElement,
    classical_T,
    levi_civita,
    lift_form,
)
from .hodge import HodgeStar, _split
from .ncalg import build_i, build_identification, build_r4q, star_matrix
from .scalars import ONE, ZERO, S, ScalarExpr, as_scalar, param


class GaugeError(ValueError):
    pass


class MatrixForm:
    """N×N matrix with FormElement entries over one calculus."""

    def __init__(self, calculus: CalculusSpec, entries: Sequence[Sequence[FormElement]]):
        n = len(entries)
        if any(len(r) != n for r in entries):
            raise GaugeError("matrix forms are square")
        for r in entries:
            for e in r:
                if e.calculus is not calculus:
                    raise GaugeError("entries must share one calculus")
        self.calculus = calculus
        self.entries = [list(r) for r in entries]

    @property
    def size(self) -> int:
        return len(self.entries)

    @classmethod
    def zero(cls, calc: CalculusSpec, n: int) -> "MatrixForm":
        return cls(calc, [[calc.zero() for _ in range(n)] for _ in range(n)])

    @classmethod
    def identity(cls, calc: CalculusSpec, n: int) -> "MatrixForm":
        return cls(calc, [[calc.one() if i == j else calc.zero() for j in range(n)] for i in range(n)])

    @classmethod
    def from_terms(cls, calc: CalculusSpec, terms: Sequence[tuple[Sequence[Sequence[object]], FormElement]]):
        """Σ M_k ⊗ ξ_k for scalar matrices M_k."""
        n = len(terms[0][0])
        out = [[calc.zero() for _ in range(n)] for _ in range(n)]
        for M, xi in terms:
            for i in range(n):
                for j in range(n):
                    c = as_scalar(M[i][j])
                    if c:
                        out[i][j] = out[i][j] + xi.scale(c)
        return cls(calc, out)

    def _zip(self, other: "MatrixForm", fn) -> "MatrixForm":
        if other.calculus is not self.calculus or other.size != self.size:
            raise GaugeError("matrix forms do not match")
        n = self.size
        return MatrixForm(self.calculus, [[fn(self.entries[i][j], other.entries[i][j]) for j in range(n)] for i in range(n)])

    def __add__(self, other):
        return self._zip(other, lambda x, y: x + y)

    def __sub__(self, other):
        return self._zip(other, lambda x, y: x - y)

    def __neg__(self):
        return self.map(lambda x: -x)

    def map(self, fn: Callable[[FormElement], FormElement], calculus: CalculusSpec | None = None) -> "MatrixForm":
        return MatrixForm(calculus or self.calculus, [[fn(e) for e in r] for r in self.entries])

    def scale(self, c) -> "MatrixForm":
        c = as_scalar(c)
        return self.map(lambda x: x.scale(c))

    def wedge(self, other: "MatrixForm") -> "MatrixForm":
        n = self.size
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = self.calculus.zero()
                for k in range(n):
                    acc = acc + self.entries[i][k].wedge(other.entries[k][j])
                row.append(acc)
            out.append(row)
        return MatrixForm(self.calculus, out)

    def d(self) -> "MatrixForm":
        return self.map(lambda x: x.d())

    def dagger(self) -> "MatrixForm":
        n = self.size
        return MatrixForm(self.calculus, [[self.entries[j][i].star() for j in range(n)] for i in range(n)])

    def hodge(self, star: HodgeStar) -> "MatrixForm":
        return self.map(star.apply)

    def substitute(self, bindings) -> "MatrixForm":
        return self.map(lambda x: x.substitute(bindings))

    def degrees(self) -> set[int]:
        out: set[int] = set()
        for r in self.entries:
            for e in r:
                out |= e.degrees()
        return out

    @property
    def degree(self) -> int:
        ds = self.degrees()
        if len(ds) > 1:
            raise GaugeError(f"mixed degrees {sorted(ds)}")
        return ds.pop() if ds else 0

    def support(self) -> set[tuple[str, ...]]:
        return {w for r in self.entries for e in r for w in e.terms}

    @property
    def is_zero(self) -> bool:
        return all(e.is_zero for r in self.entries for e in r)

    def __bool__(self):
        return not self.is_zero

    def __eq__(self, other):
        if not isinstance(other, MatrixForm):
            return NotImplemented
        return (self - other).is_zero

    def render(self) -> list[list[str]]:
        return [[e.render() for e in r] for r in self.entries]

    def __repr__(self):
        return f"MatrixForm({self.render()})"


@dataclass
class RepresentationData:
    name: str
    matrices: dict[str, list[list[ScalarExpr]]]
    structure: Callable[[str, str, str], ScalarExpr]

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(self.matrices)

    @classmethod
    def quantum_spin_half(cls) -> "RepresentationData":
        q = S * S
        ts = hopf.tangent_space()
        mats = {
            "-": [[ZERO, ONE], [ZERO, ZERO]],
            "+": [[ZERO, ZERO], [ONE, ZERO]],
            "z": [[ONE, ZERO], [ZERO, -q * q]],
        }
        return cls("spin-1/2 of the quantum tangent space", mats, ts.f_value)

    @classmethod
    def classical_fundamental(cls) -> "RepresentationData":
        T = classical_T()
        return cls(
            "fundamental of su(2)",
            {str(a): T[a] for a in (1, 2, 3)},
            lambda a, b, c: as_scalar(levi_civita(int(a), int(b), int(c))),
        )

    def specialize_q(self, value) -> "RepresentationData":
        bind = {"s": value}
        mats = {k: [[e.substitute(bind, physical_q=False) for e in r] for r in M] for k, M in self.matrices.items()}
        st = self.structure
        return RepresentationData(self.name, mats, lambda a, b, c: st(a, b, c).substitute(bind, physical_q=False))

    def bracket_residuals(self) -> dict[tuple[str, str], list[list[ScalarExpr]]]:
        """[X_a, X_b] - Σ_c (f_ab^c - f_ba^c)/2 X_c; zero when the table is antisymmetric and represented."""
        out = {}
        L = self.labels
        for a in L:
            for b in L:
                Xa, Xb = self.matrices[a], self.matrices[b]
                comm = [
                    [sum((Xa[i][k] * Xb[k][j] - Xb[i][k] * Xa[k][j] for k in range(2)), ZERO) for j in range(2)]
                    for i in range(2)
                ]
                for c in L:
                    f = (self.structure(a, b, c) - self.structure(b, a, c)) / 2
                    if f:
                        comm = [[comm[i][j] - f * self.matrices[c][i][j] for j in range(2)] for i in range(2)]
                if any(e for r in comm for e in r):
                    out[(a, b)] = comm
        return out

    def antisymmetry_residuals(self) -> dict:
        out = {}
        for a in self.labels:
            for b in self.labels:
                for c in self.labels:
                    r = self.structure(a, b, c) + self.structure(b, a, c)
                    if r:
                        out[(a, b, c)] = r
        return out


def connection(
    rep: RepresentationData,
    scale,
    calculus: CalculusSpec,
    labels: Mapping[str, str] | None = None,
) -> MatrixForm:
    """scale · Σ_j X_j ⊗ ω_j."""
    if labels is None:
        if len(rep.labels) != len(calculus.basis):
            raise GaugeError("representation and calculus basis sizes differ")
        labels = dict(zip(rep.labels, calculus.basis))
    c = as_scalar(scale)
    return MatrixForm.from_terms(calculus, [(rep.matrices[j], calculus.form(labels[j]).scale(c)) for j in rep.labels])


def quantum_meron(calc: CalculusSpec, eps=None) -> MatrixForm:
    eps = param("eps") if eps is None else eps
    return connection(RepresentationData.quantum_spin_half(), eps, calc, dict(zip(("-", "+", "z"), QUANTUM_BASIS)))


def classical_meron(calc: CalculusSpec, lam=None) -> MatrixForm:
    lam = param("lc") if lam is None else lam
    return connection(RepresentationData.classical_fundamental(), lam, calc)


def curvature(A: MatrixForm) -> MatrixForm:
    return A.d() + A.wedge(A)


def covariant_derivative(A: MatrixForm, X: MatrixForm) -> MatrixForm:
    k = X.degree
    right = X.wedge(A)
    return X.d() + A.wedge(X) + (right if k % 2 else -right)


def ym_residual(A: MatrixForm, star: HodgeStar) -> MatrixForm:
    return covariant_derivative(A, curvature(A).hodge(star))


def anti_hermitian_residual(A: MatrixForm) -> MatrixForm:
    return A.dagger() + A


def maurer_cartan(calc: CalculusSpec, u) -> MatrixForm:
    """u* du computed entrywise through d on the algebra."""
    us = star_matrix(u)
    n = len(u)
    du = [[calc.d_algebra(e) for e in r] for r in u]
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = calc.zero()
            for k in range(n):
                acc = acc + du[k][j].lmul(us[i][k])
            row.append(acc)
        out.append(row)
    return MatrixForm(calc, out)


def lift_matrix(X: MatrixForm, product: CalculusSpec) -> MatrixForm:
    return X.map(lambda e: lift_form(e, product), product)


def bidegree(word: tuple[str, ...], product: CalculusSpec) -> tuple[int, int]:
    w1, w2 = _split(word, product.factors[0])
    return len(w1), len(w2)


@dataclass
class WarpedTransport:
    A: MatrixForm
    F: MatrixForm
    star_F: MatrixForm
    residual: MatrixForm
    factorized: MatrixForm
    comparison: MatrixForm
    curvature_factorization: MatrixForm
    F_bidegrees: set
    star_F_bidegrees: set

    @property
    def disjoint_supports(self) -> bool:
        return not (self.F_bidegrees & self.star_F_bidegrees)


def warped_transport(
    A2: MatrixForm,
    product: CalculusSpec,
    star: HodgeStar,
    star2: HodgeStar,
    rho: Mapping[int, object],
    tau1: FormElement | None = None,
) -> WarpedTransport:
    """A = 1⊗A2 on the product; residual, and the comparison with
    (-1)^n1 τ1 ρ_n2^-1 ρ_(n2-2)^2 ⊗ [∇2, ∗2 F2]."""
    from .calculus import lift
    from .hodge import unit_inverse

    c1, c2 = product.factors
    n1, n2 = c1.n, c2.n
    A = lift_matrix(A2, product)
    F = curvature(A)
    sF = F.hodge(star)
    res = covariant_derivative(A, sF)
    F2 = curvature(A2)
    res2 = covariant_derivative(A2, F2.hodge(star2))
    P = product.algebra
    weight = unit_inverse(lift(rho[n2], P)) * lift(rho[n2 - 2], P) * lift(rho[n2 - 2], P)
    tau1 = c1.form(*c1.volume_word()) if tau1 is None else tau1
    tau1 = lift_form(tau1, product).rmul(weight)
    sign = -1 if n1 % 2 else 1
    fact = lift_matrix(res2, product).map(lambda e: tau1.wedge(e).scale(sign))
    return WarpedTransport(
        A,
        F,
        sF,
        res,
        fact,
        res - fact,
        F - lift_matrix(F2, product),
        {bidegree(w, product) for w in F.support()},
        {bidegree(w, product) for w in sF.support()},
    )


# ---------------------------------------------------------------------------
# pullback to R^4_q minus 0
# ---------------------------------------------------------------------------


@dataclass
class Pullback:
    computed: MatrixForm
    displayed: MatrixForm
    tensor: MatrixForm

    @property
    def matches_display(self) -> bool:
        return (self.computed - self.displayed).is_zero

    @property
    def matches_tensor(self) -> bool:
        return (self.computed - self.tensor).is_zero


def pullback_meron(product: CalculusSpec, eps=None) -> Pullback:
    """i*(A) = ½ Σ X_j ⊗ i*(ω_j) on the product radial ⊗ Woronowicz calculus.

    i*(ω_j) substitutes i-images (through the identification x -> r u) into
    ωz = a*da + c*dc, ω- = c*da* - q a*dc*, ω+ = a dc - q c da.
    """
    from .ncalg import build_suq2

    eps = as_scalar(ONE / 2 if eps is None else eps)
    q = S * S
    r4 = build_r4q()
    su = build_suq2()
    iota = build_identification(r4, product.algebra)
    i_map = build_i(su, r4)
    img = lambda g: iota(i_map(su[g]))
    d = product.d_algebra
    forms = {
        "ωz": d(img("a")).lmul(img("a*")) + d(img("c")).lmul(img("c*")),
        "ω-": d(img("a*")).lmul(img("c*")) - d(img("c*")).lmul(img("a*")).scale(q),
        "ω+": d(img("c")).lmul(img("a")) - d(img("a")).lmul(img("c")).scale(q),
    }
    rep = RepresentationData.quantum_spin_half()
    lab = dict(zip(("-", "+", "z"), QUANTUM_BASIS))
    computed = MatrixForm.from_terms(product, [(rep.matrices[j], forms[lab[j]].scale(eps)) for j in rep.labels])

    x = {g: iota(r4[g]) for g in ("x1", "x2", "x3", "x4", "rinv")}
    ri = x["rinv"]
    e11 = (d(ri * x["x1"]).lmul(x["x4"].scale(q)) + d(ri * x["x2"]).lmul(x["x3"])).lmul(ri).scale(eps)
    e12 = (d((ri * x["x4"]).scale(q)).lmul(x["x3"]) - d(ri * x["x3"]).lmul(x["x4"]).scale(q * q)).lmul(ri).scale(eps)
    e21 = (d(ri * x["x2"]).lmul(x["x1"]) - d(ri * x["x1"]).lmul(x["x2"]).scale(q)).lmul(ri).scale(eps)
    e22 = e11.scale(-q * q)
    displayed = MatrixForm(product, [[e11, e12], [e21, e22]])
    tensor = lift_matrix(quantum_meron(product.factors[1], eps), product)
    return Pullback(computed, displayed, tensor)
