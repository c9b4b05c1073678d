"""Presented *-algebras with normal-form rewriting.

A :class:`Presentation` is a finite list of generators with a word order and
rewrite rules ``pattern -> linear combination of smaller words``.  Elements
are dictionaries from normal words to :class:`~qmeron.scalars.ScalarExpr`.

Two modes are supported:

* noncommutative: words are tuples of generator names; a rule fires on a
  contiguous occurrence of its pattern;
* commutative: words are sorted tuples (monomials); a rule fires when its
  pattern divides the monomial.

The built-in presentations (SU_q(2), R^4_q minus the origin, the radial
algebra, the classical chart algebra) are constructed by the ``build_*``
functions at the bottom of the module and validated on construction.
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence

from .scalars import ONE, ZERO, S, ScalarExpr, as_scalar

Word = tuple[str, ...]


class AlgebraError(ValueError):
    pass


class UnknownGenerator(AlgebraError):
    pass


class PresentationMismatch(AlgebraError):
    pass


class MorphismError(AlgebraError):
    pass


def _acc(target: dict, word: Word, coef: ScalarExpr) -> None:
    v = target.get(word)
    v = coef if v is None else v + coef
    if v:
        target[word] = v
    else:
        target.pop(word, None)


class Presentation:
    """Generators, word order, rewrite rules and a star table.

    ``rules`` maps a pattern (tuple of generator names) to a list of
    ``(coefficient, word)`` pairs.  ``star`` maps each generator to such a
    list.  ``weights`` define the weighted degree used by the word order
    (ties broken lexicographically by generator position).
    """

    def __init__(
        self,
        name: str,
        generators: Sequence[str],
        rules: Mapping[Word, Sequence[tuple[object, Word]]],
        star: Mapping[str, Sequence[tuple[object, Word]]],
        *,
        weights: Mapping[str, int] | None = None,
        commutative: bool = False,
        central: Iterable[str] = (),
        assumptions: Sequence[str] = (),
        validate: bool = True,
    ):
        self.name = name
        self.generators = tuple(generators)
        self.index = {g: i for i, g in enumerate(self.generators)}
        self.weights = {g: 1 for g in self.generators} | dict(weights or {})
        self.commutative = commutative
        self.central = frozenset(self.generators if commutative else central)
        self.assumptions = tuple(assumptions)
        self.rules: dict[Word, list[tuple[ScalarExpr, Word]]] = {}
        for pat, rhs in rules.items():
            pat = self._check_word(pat)
            if commutative:
                pat = self._sort(pat)
            self.rules[pat] = [(as_scalar(c), self._prep(w)) for c, w in rhs]
        self.star_table = {g: [(as_scalar(c), tuple(w)) for c, w in img] for g, img in star.items()}
        missing = set(self.generators) - set(self.star_table)
        if missing:
            raise AlgebraError(f"star table of {name} misses {sorted(missing)}")
        self._memo: dict[bool, dict[Word, dict[Word, ScalarExpr]]] = {False: {}, True: {}}
        self._pairs = {p for p in self.rules if len(p) == 2}
        self._patterns = sorted({len(p) for p in self.rules})
        if validate:
            self.check_termination()
            self.check_star()

    # -- words --------------------------------------------------------------
    def _check_word(self, word) -> Word:
        word = tuple(word)
        for g in word:
            if g not in self.index:
                raise UnknownGenerator(f"{g!r} is not a generator of {self.name}")
        return word

    def _sort(self, word: Word) -> Word:
        return tuple(sorted(word, key=self.index.__getitem__))

    def _prep(self, word) -> Word:
        word = self._check_word(word)
        return self._sort(word) if self.commutative else word

    def word_key(self, word: Word):
        """Sort key of the word order (weighted degree, then lexicographic)."""
        return (sum(self.weights[g] for g in word), tuple(self.index[g] for g in word))

    # -- rewriting ----------------------------------------------------------
    def _find_redex(self, word: Word, rightmost: bool):
        if self.commutative:
            have = Counter(word)
            for pat in self.rules:
                need = Counter(pat)
                if all(have[g] >= n for g, n in need.items()):
                    return pat
            return None
        n = len(word)
        positions = range(n - 2, -1, -1) if rightmost else range(n - 1)
        for i in positions:
            for L in self._patterns:
                if i + L <= n and word[i : i + L] in self.rules:
                    return i, L
        return None

    def _rewrite(self, word: Word, rightmost: bool) -> dict[Word, ScalarExpr]:
        memo = self._memo[rightmost]
        hit = memo.get(word)
        if hit is not None:
            return hit
        redex = self._find_redex(word, rightmost)
        if redex is None:
            out = {word: ONE}
        else:
            out = {}
            if self.commutative:
                rest = list(word)
                for g in redex:
                    rest.remove(g)
                for c, w in self.rules[redex]:
                    for w2, c2 in self._rewrite(self._sort(tuple(rest) + w), rightmost).items():
                        _acc(out, w2, c * c2)
            else:
                i, L = redex
                pre, post = word[:i], word[i + L :]
                for c, w in self.rules[word[i : i + L]]:
                    for w2, c2 in self._rewrite(pre + w + post, rightmost).items():
                        _acc(out, w2, c * c2)
        memo[word] = out
        return out

    def normal_form(self, word: Iterable[str], *, rightmost: bool = False) -> "AlgebraElement":
        """Reduce ``word`` to normal form (leftmost-redex strategy by default)."""
        w = self._prep(word)
        return AlgebraElement(self, dict(self._rewrite(w, rightmost)))

    def is_normal(self, word: Word) -> bool:
        return self._find_redex(tuple(word), False) is None

    # -- constructors -----------------------------------------------------------
    def gen(self, name: str) -> "AlgebraElement":
        self._check_word((name,))
        return AlgebraElement(self, {(name,): ONE})

    def scalar(self, c) -> "AlgebraElement":
        c = as_scalar(c)
        return AlgebraElement(self, {(): c} if c else {})

    def one(self) -> "AlgebraElement":
        return self.scalar(ONE)

    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, {})

    def element(self, terms: Iterable[tuple[object, Iterable[str]]]) -> "AlgebraElement":
        out = self.zero()
        for c, w in terms:
            out = out + self.normal_form(w) * as_scalar(c)
        return out

    def __getitem__(self, name: str) -> "AlgebraElement":
        return self.gen(name)

    # -- validation -------------------------------------------------------------
    def check_termination(self) -> None:
        for pat, rhs in self.rules.items():
            k = self.word_key(pat)
            for _, w in rhs:
                if not self.word_key(w) < k:
                    raise AlgebraError(f"rule {pat} -> {w} of {self.name} does not decrease the word order")

    def relation_residuals(self, elem_map: Callable[[Word], "AlgebraElement"]):
        """Yield (pattern, residual) with residual = map(lhs) - map(rhs)."""
        for pat, rhs in self.rules.items():
            res = elem_map(pat)
            for c, w in rhs:
                res = res - elem_map(w) * c
            yield pat, res

    def check_star(self) -> None:
        def star_word(w):
            return self.normal_form(w).star()

        for pat, res in self.relation_residuals(star_word):
            if not res.is_zero:
                raise AlgebraError(f"star does not preserve relation {pat} of {self.name}: {res}")

    def overlap_words(self, max_len: int = 3) -> list[Word]:
        """Words in which two rule patterns overlap (length <= max_len)."""
        out = []
        for n in range(2, max_len + 1):
            for w in itertools.product(self.generators, repeat=n):
                if self.commutative:
                    w = self._sort(w)
                redexes = 0
                if self.commutative:
                    have = Counter(w)
                    redexes = sum(all(have[g] >= k for g, k in Counter(p).items()) for p in self.rules)
                else:
                    redexes = sum(
                        1 for i in range(n) for L in self._patterns if i + L <= n and w[i : i + L] in self.rules
                    )
                if redexes >= 2:
                    out.append(w)
        return sorted(set(out), key=self.word_key)

    def __repr__(self):
        return f"Presentation({self.name})"


@dataclass(eq=False)
class AlgebraElement:
    """Linear combination of normal words with scalar coefficients."""

    presentation: Presentation
    terms: dict = field(default_factory=dict)

    # -- arithmetic -----------------------------------------------------------
    def _same(self, other: "AlgebraElement"):
        if other.presentation is not self.presentation:
            raise PresentationMismatch(
                f"elements of {self.presentation.name} and {other.presentation.name} cannot be combined"
            )

    def _lift(self, other):
        if isinstance(other, AlgebraElement):
            self._same(other)
            return other
        return self.presentation.scalar(other)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            _acc(out, w, c)
        return AlgebraElement(self.presentation, out)

    __radd__ = __add__

    def __neg__(self):
        return AlgebraElement(self.presentation, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def scale(self, c) -> "AlgebraElement":
        c = as_scalar(c)
        if not c:
            return self.presentation.zero()
        return AlgebraElement(self.presentation, {w: v * c for w, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, AlgebraElement):
            return self.scale(other)
        self._same(other)
        p = self.presentation
        out: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                c = c1 * c2
                for w, c3 in p._rewrite(p._sort(w1 + w2) if p.commutative else w1 + w2, False).items():
                    _acc(out, w, c * c3)
        return AlgebraElement(p, out)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n: int):
        out = self.presentation.one()
        for _ in range(n):
            out = out * self
        return out

    # -- structure -------------------------------------------------------------
    def star(self) -> "AlgebraElement":
        """Antimultiplicative, conjugate-linear involution."""
        p = self.presentation
        out = p.zero()
        for w, c in self.terms.items():
            term = p.scalar(c.conjugate())
            for g in w:
                term = _star_gen(p, g) * term
            out = out + term
        return out

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, AlgebraElement):
            return other.presentation is self.presentation and self.terms == other.terms
        try:
            return (self - other).is_zero
        except TypeError:
            return NotImplemented

    __hash__ = None

    def is_scalar(self) -> bool:
        return all(w == () for w in self.terms)

    def scalar_value(self) -> ScalarExpr:
        if not self.is_scalar():
            raise AlgebraError(f"{self} is not a scalar")
        return self.terms.get((), ZERO)

    def map_coefficients(self, fn: Callable[[ScalarExpr], ScalarExpr]) -> "AlgebraElement":
        out = {}
        for w, c in self.terms.items():
            v = fn(c)
            if v:
                out[w] = v
        return AlgebraElement(self.presentation, out)

    def substitute(self, bindings, **kw) -> "AlgebraElement":
        return self.map_coefficients(lambda c: c.substitute(bindings, **kw))

    def generators_used(self) -> set[str]:
        return {g for w in self.terms for g in w}

    # -- rendering ---------------------------------------------------------------
    def render(self) -> str:
        if not self.terms:
            return "0"
        p = self.presentation
        parts = []
        for w in sorted(self.terms, key=p.word_key):
            c = self.terms[w]
            ws = "·".join(w)
            cs = c.render()
            if not w:
                parts.append(f"({cs})" if len(c.num) > 1 or c.den else cs)
            elif c == ONE:
                parts.append(ws)
            elif c == -ONE:
                parts.append(f"-{ws}")
            else:
                parts.append(f"({cs})·{ws}")
        return " + ".join(parts)

    __str__ = render

    def __repr__(self):
        return f"<{self.presentation.name}: {self.render()}>"


def _star_gen(p: Presentation, g: str) -> AlgebraElement:
    out = p.zero()
    for c, w in p.star_table[g]:
        out = out + p.normal_form(w).scale(c)
    return out


class Morphism:
    """Algebra map defined on generators, validated against all relations."""

    def __init__(
        self,
        name: str,
        source: Presentation,
        target: Presentation,
        images: Mapping[str, AlgebraElement],
        *,
        star_compatible: bool = True,
        validate: bool = True,
    ):
        self.name = name
        self.source = source
        self.target = target
        missing = set(source.generators) - set(images)
        if missing:
            raise MorphismError(f"{name}: no image for {sorted(missing)}")
        for g, img in images.items():
            if img.presentation is not target:
                raise MorphismError(f"{name}: image of {g} is not in {target.name}")
        self.images = dict(images)
        self.star_compatible = star_compatible
        self._word_memo: dict[Word, AlgebraElement] = {}
        if validate:
            self.validate()

    def _word(self, w: Word) -> AlgebraElement:
        hit = self._word_memo.get(w)
        if hit is None:
            hit = self.target.one()
            for g in w:
                hit = hit * self.images[g]
            self._word_memo[w] = hit
        return hit

    def __call__(self, x: AlgebraElement) -> AlgebraElement:
        if x.presentation is not self.source:
            raise PresentationMismatch(f"{self.name} expects an element of {self.source.name}")
        out = self.target.zero()
        for w, c in x.terms.items():
            out = out + self._word(w).scale(c)
        return out

    def validate(self) -> None:
        for pat, res in self.source.relation_residuals(self._word):
            if not res.is_zero:
                raise MorphismError(f"{self.name} violates relation {'·'.join(pat)}: residual {res}")
        if self.star_compatible:
            for g in self.source.generators:
                lhs = self(self.source.gen(g).star())
                rhs = self.images[g].star()
                if lhs != rhs:
                    raise MorphismError(f"{self.name} does not commute with star on {g}")

    def compose(self, other: "Morphism", name: str | None = None) -> "Morphism":
        """self ∘ other."""
        if other.target is not self.source:
            raise PresentationMismatch("morphisms are not composable")
        images = {g: self(img) for g, img in other.images.items()}
        return Morphism(name or f"{self.name}∘{other.name}", other.source, self.target, images, validate=False)


# ---------------------------------------------------------------------------
# built-in presentations
# ---------------------------------------------------------------------------

SUQ2_ASSUMPTION = (
    "A(SU_q(2)) relations adopted from the standard presentation: "
    "ac = q ca, ac* = q c*a, cc* = c*c, a*a + c*c = 1, aa* + q^2 cc* = 1"
)


def build_suq2(q: ScalarExpr | None = None, name: str = "A(SU_q(2))") -> Presentation:
    """A(SU_q(2)) with generators a < a* < c < c* (weights 2, 2, 1, 1).

    With ``q = 1`` this is the commutative coordinate algebra of SU(2).
    """
    q = S * S if q is None else as_scalar(q)
    qi = ONE / q
    rules = {
        ("c", "a"): [(qi, ("a", "c"))],
        ("c*", "a"): [(qi, ("a", "c*"))],
        ("c*", "c"): [(ONE, ("c", "c*"))],
        ("c", "a*"): [(q, ("a*", "c"))],
        ("c*", "a*"): [(q, ("a*", "c*"))],
        ("a*", "a"): [(ONE, ()), (-ONE, ("c", "c*"))],
        ("a", "a*"): [(ONE, ()), (-q * q, ("c", "c*"))],
    }
    star = {"a": [(1, ("a*",))], "a*": [(1, ("a",))], "c": [(1, ("c*",))], "c*": [(1, ("c",))]}
    return Presentation(
        name,
        ["a", "a*", "c", "c*"],
        rules,
        star,
        weights={"a": 2, "a*": 2, "c": 1, "c*": 1},
        assumptions=(SUQ2_ASSUMPTION,) if q != ONE else (),
    )


def build_r4q(q: ScalarExpr | None = None, name: str = "A(R^4_q\\{0})") -> Presentation:
    """A(R^4_q) localised at its central element, with r = sqrt(D) and r^-1.

    Generators ``r < rinv < x1 < x2 < x3 < x4``; ``x2 x3`` is eliminated through
    ``q x1 x4 + q^2 x2 x3 = r^2``.
    """
    q = S * S if q is None else as_scalar(q)
    qi = ONE / q
    xs = ["x1", "x2", "x3", "x4"]
    rules: dict = {}
    for i, j in [(1, 2), (1, 3), (2, 4), (3, 4)]:
        rules[(f"x{j}", f"x{i}")] = [(qi, (f"x{i}", f"x{j}"))]
    rules[("x3", "x2")] = [(ONE, ("x2", "x3"))]
    rules[("x4", "x1")] = [(ONE, ("x1", "x4")), (-(qi - q), ("x2", "x3"))]
    rules[("x2", "x3")] = [(qi * qi, ("r", "r")), (-qi, ("x1", "x4"))]
    for x in xs:
        rules[(x, "r")] = [(ONE, ("r", x))]
        rules[(x, "rinv")] = [(ONE, ("rinv", x))]
    rules[("r", "rinv")] = [(ONE, ())]
    rules[("rinv", "r")] = [(ONE, ())]
    star = {
        "x1": [(q, ("x4",))],
        "x2": [(1, ("x3",))],
        "x3": [(1, ("x2",))],
        "x4": [(qi, ("x1",))],
        "r": [(1, ("r",))],
        "rinv": [(1, ("rinv",))],
    }
    weights = {"r": 1, "rinv": 1} | {x: 2 for x in xs}
    return Presentation(name, ["r", "rinv"] + xs, rules, star, weights=weights, central=("r", "rinv"))


def build_radial(name: str = "A(R+)") -> Presentation:
    """Laurent polynomials in the radius: r, r^-1 with r r^-1 = 1."""
    rules = {("r", "rinv"): [(ONE, ())], ("rinv", "r"): [(ONE, ())]}
    star = {"r": [(1, ("r",))], "rinv": [(1, ("rinv",))]}
    return Presentation(name, ["r", "rinv"], rules, star, central=("r", "rinv"))


def build_chart(name: str = "A(R^4 chart)") -> Presentation:
    """Commutative Q(i)[x0..x3, sc] / (sc * |x|^2 - 1); sc is 1/|x|^2."""
    rules = {
        ("x0", "x0", "sc"): [
            (ONE, ()),
            (-ONE, ("x1", "x1", "sc")),
            (-ONE, ("x2", "x2", "sc")),
            (-ONE, ("x3", "x3", "sc")),
        ]
    }
    gens = ["x0", "x1", "x2", "x3", "sc"]
    star = {g: [(1, (g,))] for g in gens}
    return Presentation(name, gens, rules, star, commutative=True, weights={"x0": 2})


def build_tensor(p1: Presentation, p2: Presentation, name: str | None = None) -> Presentation:
    """A1 ⊗ A2: union of generators, factor rules, and cross rules g2 g1 -> g1 g2."""
    if p1.commutative or p2.commutative:
        raise AlgebraError("tensor products are built from noncommutative-mode presentations")
    clash = set(p1.generators) & set(p2.generators)
    if clash:
        raise AlgebraError(f"generator names clash: {sorted(clash)}")
    rules = {pat: list(rhs) for pat, rhs in p1.rules.items()}
    rules.update({pat: list(rhs) for pat, rhs in p2.rules.items()})
    for g2 in p2.generators:
        for g1 in p1.generators:
            rules[(g2, g1)] = [(ONE, (g1, g2))]
    star = {**p1.star_table, **p2.star_table}
    weights = dict(p1.weights)
    weights.update(p2.weights)
    return Presentation(
        name or f"{p1.name}⊗{p2.name}",
        list(p1.generators) + list(p2.generators),
        rules,
        star,
        weights=weights,
        central=set(p1.central) | set(p2.central),
        assumptions=p1.assumptions + p2.assumptions,
    )


def suq2_matrix(p: Presentation, q: ScalarExpr | None = None) -> list[list[AlgebraElement]]:
    """u = [[a, -q c*], [c, a*]]."""
    q = S * S if q is None else as_scalar(q)
    return [[p["a"], p["c*"].scale(-q)], [p["c"], p["a*"]]]


def matmul(x, y):
    n, m, k = len(x), len(y), len(y[0])
    out = []
    for i in range(n):
        row = []
        for j in range(k):
            acc = x[i][0] * y[0][j]
            for l in range(1, m):
                acc = acc + x[i][l] * y[l][j]
            row.append(acc)
        out.append(row)
    return out


def star_matrix(x):
    """Conjugate transpose with the algebra involution."""
    n, m = len(x), len(x[0])
    return [[x[j][i].star() for j in range(n)] for i in range(m)]


def build_pi(r4: Presentation, su: Presentation, q: ScalarExpr | None = None) -> Morphism:
    """π: A(R^4_q minus 0) -> A(SU_q(2)), π(Q) = u, π(r) = 1."""
    q = S * S if q is None else as_scalar(q)
    images = {
        "x1": su["a"],
        "x2": su["c"],
        "x3": su["c*"],
        "x4": su["a*"].scale(ONE / q),
        "r": su.one(),
        "rinv": su.one(),
    }
    return Morphism("π", r4, su, images)


def build_i(su: Presentation, r4: Presentation, q: ScalarExpr | None = None) -> Morphism:
    """i: A(SU_q(2)) -> A(R^4_q minus 0), i(u) = r^-1 Q."""
    q = S * S if q is None else as_scalar(q)
    ri = r4["rinv"]
    images = {
        "a": ri * r4["x1"],
        "c": ri * r4["x2"],
        "c*": ri * r4["x3"],
        "a*": (ri * r4["x4"]).scale(q),
    }
    return Morphism("i", su, r4, images)


def build_identification(r4: Presentation, prod: Presentation, q: ScalarExpr | None = None) -> Morphism:
    """A(R^4_q minus 0) -> A(R+) ⊗ A(SU_q(2)), Q -> r u, r -> r."""
    q = S * S if q is None else as_scalar(q)
    r = prod["r"]
    images = {
        "x1": r * prod["a"],
        "x2": r * prod["c"],
        "x3": r * prod["c*"],
        "x4": (r * prod["a*"]).scale(ONE / q),
        "r": r,
        "rinv": prod["rinv"],
    }
    return Morphism("ι", r4, prod, images)
