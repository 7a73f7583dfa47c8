"""Conjugated algebra pairs, cross symmetries and the Hermitian Wick
cross product.

The base algebra on T-generators and its dagger copy on X-generators are
exchanged by an antilinear anti-isomorphism (word reversal plus w -> w**2
on scalars).  A cross symmetry maps X-side (x) T-side to T-side (x) X-side
and extends from its values on generator pairs through two coherence laws:
peeling the last T-letter routes the remaining X-part further right,
peeling the last X-letter routes the T-part further left.  The extension
is well-defined only if all peeling routes agree, which
`check_coherence` decides exhaustively up to a degree bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, Optional, Tuple

from .algebra import Element, mul, split_sign, term_body
from .rewrite import EMPTY_WORD, ZERO, RewriteSystem, Word
from .scalar import ONE, ZERO_SCALAR, Scalar
from .tensor import dual_system


class ConjugatedPair:
    """The algebra on T1, T2 together with its dagger copy on X1, X2."""

    __slots__ = ("theta", "xi")

    def __init__(self, theta: Optional[RewriteSystem] = None,
                 xi: Optional[RewriteSystem] = None):
        theta = theta or RewriteSystem(2)
        xi = xi or dual_system()
        if theta.n != 2 or xi.n != 2:
            raise ValueError("the conjugated pair is built on two generators")
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "xi", xi)

    def __setattr__(self, name, value):
        raise AttributeError("ConjugatedPair is immutable")

    def __eq__(self, other):
        return (isinstance(other, ConjugatedPair)
                and self.theta == other.theta and self.xi == other.xi)

    def __hash__(self):
        return hash((self.theta, self.xi))

    def dagger(self, a: Element) -> Element:
        """Antilinear anti-isomorphism: reverse words, conjugate scalars.

        Maps T-side elements to the X-side and back; involutive, and an
        anti-homomorphism because word reversal maps the n=2 relation set
        to itself.
        """
        if a.system == self.theta:
            target = self.xi
        elif a.system == self.xi:
            target = self.theta
        else:
            raise ValueError("element does not belong to this pair")
        terms = {w.reverse(): s.conjugate() for w, s in a._terms.items()}
        return Element(target, terms)


class WickElement:
    """A weighted sum of pairs (T-word, X-word): an element of the
    cross-product carrier A (x) A-dagger."""

    __slots__ = ("pair", "_terms")

    def __init__(self, pair: ConjugatedPair, terms: Optional[dict] = None):
        clean: dict = {}
        for (u, v), s in (terms or {}).items():
            if not isinstance(s, Scalar):
                s = Scalar(s)
            if s.is_zero():
                continue
            nu = pair.theta.normal_form(u)
            nv = pair.xi.normal_form(v)
            if nu is ZERO or nv is ZERO:
                continue
            key = (nu, nv)
            clean[key] = clean.get(key, ZERO_SCALAR) + s
        object.__setattr__(self, "pair", pair)
        object.__setattr__(
            self, "_terms", {k: s for k, s in clean.items() if s})

    def __setattr__(self, name, value):
        raise AttributeError("WickElement is immutable")

    @classmethod
    def zero(cls, pair):
        return cls(pair, {})

    @classmethod
    def unit(cls, pair):
        return cls(pair, {(EMPTY_WORD, EMPTY_WORD): ONE})

    @classmethod
    def single(cls, pair, theta_word, xi_word, coeff=ONE):
        u = theta_word if isinstance(theta_word, Word) else Word(theta_word)
        v = xi_word if isinstance(xi_word, Word) else Word(xi_word)
        return cls(pair, {(u, v): coeff})

    @classmethod
    def from_theta(cls, pair, a: Element):
        if a.system != pair.theta:
            raise ValueError("expected a T-side element")
        return cls(pair, {(w, EMPTY_WORD): s for w, s in a._terms.items()})

    @classmethod
    def from_xi(cls, pair, a: Element):
        if a.system != pair.xi:
            raise ValueError("expected an X-side element")
        return cls(pair, {(EMPTY_WORD, w): s for w, s in a._terms.items()})

    def terms(self):
        return sorted(self._terms.items(),
                      key=lambda kv: (kv[0][0].sort_key(),
                                      kv[0][1].sort_key()))

    def coeff(self, u, v) -> Scalar:
        return self._terms.get((u, v), ZERO_SCALAR)

    def is_zero(self) -> bool:
        return not self._terms

    def __add__(self, other: "WickElement") -> "WickElement":
        if self.pair != other.pair:
            raise ValueError("operands from different conjugated pairs")
        terms = dict(self._terms)
        for k, s in other._terms.items():
            terms[k] = terms.get(k, ZERO_SCALAR) + s
        return WickElement(self.pair, terms)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return WickElement(self.pair,
                           {k: -s for k, s in self._terms.items()})

    def scale(self, s) -> "WickElement":
        if not isinstance(s, Scalar):
            s = Scalar(s)
        return WickElement(self.pair,
                           {k: s * c for k, c in self._terms.items()})

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return self.is_zero()
        return (isinstance(other, WickElement) and self.pair == other.pair
                and self._terms == other._terms)

    def __hash__(self):
        return hash((self.pair, frozenset(self._terms.items())))

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for (u, v), s in self.terms():
            neg, mag = split_sign(s)
            body = f"{term_body(mag, u, 'T')} (x) {v.to_text('X')}"
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    def __repr__(self):
        return f"<{self}>"


class IncompleteBaseError(ValueError):
    """The cross symmetry base misses a generator pair."""


class CrossSymmetry:
    """A cross symmetry given by its values on generator pairs.

    `base[(i, j)]` is the value on X_i (x) T_j.  `apply` extends to
    arbitrary word pairs by peeling rightmost letters first: the last
    T-letter through the first coherence law, then the last X-letter
    through the second.  Results are memoized; the instance stays
    observably pure.
    """

    def __init__(self, pair: ConjugatedPair,
                 base: Dict[Tuple[int, int], WickElement],
                 label: str = "custom"):
        for i in (1, 2):
            for j in (1, 2):
                if (i, j) not in base:
                    raise IncompleteBaseError(
                        f"missing base value for X{i} (x) T{j}")
        self.pair = pair
        self.base = dict(base)
        self.label = label
        self._cache: dict = {}

    @classmethod
    def flip(cls, pair: ConjugatedPair) -> "CrossSymmetry":
        """The trivial twist X_i (x) T_j -> T_j (x) X_i."""
        base = {(i, j): WickElement.single(pair, (j,), (i,))
                for i in (1, 2) for j in (1, 2)}
        return cls(pair, base, "flip")

    @classmethod
    def regular(cls, pair: ConjugatedPair,
                vacuum: str = "unit") -> "CrossSymmetry":
        """The regular cross symmetry on generator pairs.

        Off-diagonal pairs flip; the diagonal value is vac_i - T_i (x) X_i
        where vac_i is the Wick unit 1 (x) 1 for vacuum='unit' or the
        embedded idempotent T_i T_{3-i} (x) 1 for vacuum='idem'.
        """
        if vacuum not in ("unit", "idem"):
            raise ValueError("vacuum must be 'unit' or 'idem'")
        base = {}
        for i in (1, 2):
            for j in (1, 2):
                if i != j:
                    base[(i, j)] = WickElement.single(pair, (j,), (i,))
                else:
                    if vacuum == "unit":
                        vac = WickElement.unit(pair)
                    else:
                        vac = WickElement.single(pair, (i, 3 - i), ())
                    base[(i, j)] = vac - WickElement.single(pair, (i,), (i,))
        return cls(pair, base, f"regular[{vacuum}]")

    # -- extension -------------------------------------------------------

    def apply(self, xi_word, theta_word) -> WickElement:
        """Value on xi_word (x) theta_word as a normally ordered element."""
        xi = xi_word if isinstance(xi_word, Word) else Word(xi_word)
        theta = theta_word if isinstance(theta_word, Word) else Word(theta_word)
        key = (xi.letters, theta.letters)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        out = self._compute(xi, theta)
        self._cache[key] = out
        return out

    def _compute(self, xi: Word, theta: Word) -> WickElement:
        pair = self.pair
        if len(xi) == 0:
            return WickElement.single(pair, theta, ())
        if len(theta) == 0:
            return WickElement.single(pair, (), xi)
        if len(theta) > 1:
            # first law: psi(xi (x) u.t) routes psi(xi (x) u) into t
            return self._peel_theta(xi, Word(theta.letters[:-1]),
                                    Word(theta.letters[-1:]))
        if len(xi) > 1:
            # second law: psi(x.y (x) t) routes y into t first, then x
            return self._peel_xi(Word(xi.letters[:-1]),
                                 Word(xi.letters[-1:]), theta)
        return self.base[(xi[0], theta[0])]

    def _peel_theta(self, xi: Word, u: Word, v: Word) -> WickElement:
        """(m_A (x) id) . (id (x) psi) . (psi (x) id) on xi (x) u (x) v."""
        pair = self.pair
        acc: dict = {}
        for (p, q), s in self.apply(xi, u)._terms.items():
            for (r, w), t in self.apply(q, v)._terms.items():
                left = pair.theta.normal_form(p.letters + r.letters)
                if left is ZERO:
                    continue
                key = (left, w)
                acc[key] = acc.get(key, ZERO_SCALAR) + s * t
        return WickElement(pair, acc)

    def _peel_xi(self, x: Word, y: Word, theta: Word) -> WickElement:
        """(id (x) m_Ad) . (psi (x) id) . (id (x) psi) on x (x) y (x) theta."""
        pair = self.pair
        acc: dict = {}
        for (r, w), t in self.apply(y, theta)._terms.items():
            for (p, q), s in self.apply(x, r)._terms.items():
                right = pair.xi.normal_form(q.letters + w.letters)
                if right is ZERO:
                    continue
                key = (p, right)
                acc[key] = acc.get(key, ZERO_SCALAR) + s * t
        return WickElement(pair, acc)

    # evaluation with an explicit split, used by the coherence checker

    def _law1_value(self, xi: Word, u: Word, v: Word) -> WickElement:
        return self._peel_theta(xi, u, v)

    def _law2_value(self, x: Word, y: Word, theta: Word) -> WickElement:
        return self._peel_xi(x, y, theta)


@dataclass(frozen=True)
class CoherenceReport:
    """Outcome of the exhaustive law check.

    Instances split in two classes: *order* instances, where the split
    parts concatenate to a word already in normal form (these are the
    alternative peeling routes through normal forms), and *reduction*
    instances, where the concatenation rewrites, so the law constrains
    the extension against the algebra relations themselves.
    """

    label: str
    max_deg: int
    checked: int
    disagreements: tuple  # (kind, reduces, parts, got, want)

    @property
    def coherent(self) -> bool:
        return not self.disagreements

    @property
    def order_coherent(self) -> bool:
        return not any(reduces is False
                       for _, reduces, *_ in self.disagreements)

    def render(self, limit: int = 8) -> str:
        lines = [f"base={self.label} max_deg={self.max_deg} "
                 f"instances={self.checked} "
                 f"order_coherent={str(self.order_coherent).lower()} "
                 f"full_law_coherent={str(self.coherent).lower()}"]
        if self.disagreements:
            lines.append(f"  disagreements: {len(self.disagreements)} "
                         f"(showing up to {limit})")
        for kind, reduces, parts, got, want in self.disagreements[:limit]:
            cls = "reduction" if reduces else "order"
            lines.append(f"  {kind}[{cls}] at {parts}: {got} != {want}")
        return "\n".join(lines)


def check_coherence(psi: CrossSymmetry, max_deg: int) -> CoherenceReport:
    """Exhaustively test both coherence laws up to a degree bound.

    For every normal-form split the law value must agree with the direct
    value on the reduced product, including splits whose concatenation
    rewrites (these are the critical instances a fixed peeling order never
    exercises).  Unit laws are included.
    """
    pair = psi.pair
    xis = pair.xi.enumerate_normal_forms(max_deg)
    thetas = pair.theta.enumerate_normal_forms(max_deg)
    nonunit_thetas = [w for w in thetas if len(w)]
    nonunit_xis = [w for w in xis if len(w)]
    checked = 0
    bad = []

    for w in thetas:
        checked += 1
        if psi.apply(EMPTY_WORD, w) != WickElement.single(pair, w, ()):
            bad.append(("unit", False, f"1 (x) {w.to_text('T')}",
                        str(psi.apply(EMPTY_WORD, w)), w.to_text("T")))
    for w in xis:
        checked += 1
        if psi.apply(w, EMPTY_WORD) != WickElement.single(pair, (), w):
            bad.append(("unit", False, f"{w.to_text('X')} (x) 1",
                        str(psi.apply(w, EMPTY_WORD)), w.to_text("X")))

    for xi in xis:
        for u in nonunit_thetas:
            for v in nonunit_thetas:
                checked += 1
                law = psi._law1_value(xi, u, v)
                prod = pair.theta.normal_form(u.letters + v.letters)
                reduces = prod is ZERO or len(prod) != len(u) + len(v)
                direct = (WickElement.zero(pair) if prod is ZERO
                          else psi.apply(xi, prod))
                if law != direct:
                    bad.append((
                        "law1", reduces,
                        f"{xi.to_text('X')} (x) {u.to_text('T')}"
                        f".{v.to_text('T')}",
                        str(law), str(direct)))
    for x in nonunit_xis:
        for y in nonunit_xis:
            for theta in thetas:
                checked += 1
                law = psi._law2_value(x, y, theta)
                prod = pair.xi.normal_form(x.letters + y.letters)
                reduces = prod is ZERO or len(prod) != len(x) + len(y)
                direct = (WickElement.zero(pair) if prod is ZERO
                          else psi.apply(prod, theta))
                if law != direct:
                    bad.append((
                        "law2", reduces,
                        f"{x.to_text('X')}.{y.to_text('X')} (x) "
                        f"{theta.to_text('T')}",
                        str(law), str(direct)))
    return CoherenceReport(psi.label, max_deg, checked, tuple(bad))


# -- Wick multiplication --------------------------------------------------------


def wick_mul(x: WickElement, y: WickElement, psi: CrossSymmetry) -> WickElement:
    """(a (x) b)(c (x) d) routes b past c through the cross symmetry.

    Assumes psi is coherent at the degrees involved; run `check_coherence`
    first when in doubt.
    """
    pair = x.pair
    acc: dict = {}
    for (a, b), s in x._terms.items():
        for (c, d), t in y._terms.items():
            for (p, q), r in psi.apply(b, c)._terms.items():
                left = pair.theta.normal_form(a.letters + p.letters)
                if left is ZERO:
                    continue
                right = pair.xi.normal_form(q.letters + d.letters)
                if right is ZERO:
                    continue
                key = (left, right)
                acc[key] = acc.get(key, ZERO_SCALAR) + s * t * r
    return WickElement(pair, acc)


def wick_mul_regular(x: WickElement, y: WickElement, psi: CrossSymmetry,
                     e_theta: Callable[[Element], Element],
                     e_xi: Callable[[Element], Element]) -> WickElement:
    """Wick product with obstruction maps on the outer tensor legs.

    The obstruction maps may be affine, so they act on each elementary
    term; the whole product is then the bilinear extension over terms.
    With both maps the identity this is exactly `wick_mul`.
    """
    pair = x.pair
    out = WickElement.zero(pair)
    for (a, b), s in x._terms.items():
        ea = e_theta(Element.from_word(pair.theta, a))
        for (c, d), t in y._terms.items():
            ed = e_xi(Element.from_word(pair.xi, d))
            acc: dict = {}
            for (p, q), r in psi.apply(b, c)._terms.items():
                left = mul(ea, Element.from_word(pair.theta, p))
                right = mul(Element.from_word(pair.xi, q), ed)
                for lw, ls in left._terms.items():
                    for rw, rs in right._terms.items():
                        key = (lw, rw)
                        acc[key] = acc.get(key, ZERO_SCALAR) + r * ls * rs
            out = out + WickElement(pair, acc).scale(s * t)
    return out


def check_regular_cross_symmetry(psi: CrossSymmetry,
                                 e_theta: Callable[[Element], Element],
                                 e_xi: Callable[[Element], Element],
                                 max_deg: int):
    """(e_A (x) e_Ad) . psi = psi . (e_Ad (x) e_A) on word pairs.

    Both sides are evaluated termwise (the obstruction maps are affine)
    and compared exactly.  Returns (verdict, witnesses).
    """
    pair = psi.pair
    witnesses = []
    for xi in pair.xi.enumerate_normal_forms(max_deg):
        for theta in pair.theta.enumerate_normal_forms(max_deg):
            lhs = WickElement.zero(pair)
            for (p, q), s in psi.apply(xi, theta)._terms.items():
                ep = e_theta(Element.from_word(pair.theta, p))
                eq = e_xi(Element.from_word(pair.xi, q))
                part: dict = {}
                for pw, ps in ep._terms.items():
                    for qw, qs in eq._terms.items():
                        key = (pw, qw)
                        part[key] = part.get(key, ZERO_SCALAR) + ps * qs
                lhs = lhs + WickElement(pair, part).scale(s)
            rhs = WickElement.zero(pair)
            exi = e_xi(Element.from_word(pair.xi, xi))
            etheta = e_theta(Element.from_word(pair.theta, theta))
            for xw, xs in exi._terms.items():
                for tw, ts in etheta._terms.items():
                    rhs = rhs + psi.apply(xw, tw).scale(xs * ts)
            if lhs != rhs:
                witnesses.append((xi, theta))
    return not witnesses, tuple(witnesses)
