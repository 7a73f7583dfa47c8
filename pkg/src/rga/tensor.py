"""Tensor squares of the two-generator algebra, the word-reversal duality
pairing, the dual algebra on X-generators, and the checkers for the
coalgebra / almost-bialgebra / module conditions.

The tensor product sign rule is selectable: 'plain' multiplies legs
independently, 'koszul' inserts (-1)**(|b|*|c|) when b crosses c in
(a(x)b)(c(x)d).  Nothing in the source material pins the convention down,
so every verdict here is reported for both.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, Optional, Sequence, Tuple

from .algebra import Element, mul, obstruction, split_sign, term_body
from .linalg import Matrix
from .rewrite import EMPTY_WORD, ZERO, RewriteSystem, Word
from .scalar import ONE, ZERO_SCALAR, Scalar

SIGN_CONVENTIONS = ("plain", "koszul")


def dual_system(strategy: str = "leftmost") -> RewriteSystem:
    """The dual two-generator algebra on X1, X2.

    It satisfies the same square-zero and cyclic relations as the base
    algebra (the symmetric form X1 X2 X1 = X1; the variant X1 X2 X2 = X1
    would contradict X2**2 = 0 and is rejected as a typo).
    """
    return RewriteSystem(2, symbol="X", strategy=strategy)


class TensorElement:
    """A Q(w)-weighted sum of word pairs u (x) v over one algebra."""

    __slots__ = ("system", "signs", "_terms")

    def __init__(self, system: RewriteSystem, signs: str = "plain",
                 terms: Optional[dict] = None):
        if signs not in SIGN_CONVENTIONS:
            raise ValueError(f"unknown sign convention {signs!r}")
        clean: dict = {}
        for (u, v), s in (terms or {}).items():
            if not isinstance(s, Scalar):
                s = Scalar(s)
            if s.is_zero():
                continue
            nu = system.normal_form(u)
            nv = system.normal_form(v)
            if nu is ZERO or nv is ZERO:
                continue
            key = (nu, nv)
            clean[key] = clean.get(key, ZERO_SCALAR) + s
        object.__setattr__(self, "system", system)
        object.__setattr__(self, "signs", signs)
        object.__setattr__(
            self, "_terms", {k: s for k, s in clean.items() if s})

    def __setattr__(self, name, value):
        raise AttributeError("TensorElement is immutable")

    @classmethod
    def zero(cls, system, signs="plain"):
        return cls(system, signs, {})

    @classmethod
    def unit(cls, system, signs="plain"):
        return cls(system, signs, {(EMPTY_WORD, EMPTY_WORD): ONE})

    @classmethod
    def single(cls, system, u, v, coeff=ONE, signs="plain"):
        u = u if isinstance(u, Word) else Word(u)
        v = v if isinstance(v, Word) else Word(v)
        return cls(system, signs, {(u, v): coeff})

    def terms(self):
        return sorted(self._terms.items(),
                      key=lambda kv: (kv[0][0].sort_key(),
                                      kv[0][1].sort_key()))

    def coeff(self, u, v) -> Scalar:
        return self._terms.get((u, v), ZERO_SCALAR)

    def is_zero(self) -> bool:
        return not self._terms

    def with_signs(self, signs: str) -> "TensorElement":
        return TensorElement(self.system, signs, dict(self._terms))

    def _require_compatible(self, other: "TensorElement"):
        if self.system != other.system:
            raise ValueError("tensor operands live over different algebras")
        if self.signs != other.signs:
            raise ValueError(
                f"sign convention mismatch: {self.signs} vs {other.signs}")

    def __add__(self, other: "TensorElement") -> "TensorElement":
        self._require_compatible(other)
        terms = dict(self._terms)
        for k, s in other._terms.items():
            terms[k] = terms.get(k, ZERO_SCALAR) + s
        return TensorElement(self.system, self.signs, terms)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return TensorElement(self.system, self.signs,
                             {k: -s for k, s in self._terms.items()})

    def scale(self, s) -> "TensorElement":
        if not isinstance(s, Scalar):
            s = Scalar(s)
        return TensorElement(self.system, self.signs,
                             {k: s * c for k, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Scalar)):
            return self.scale(other)
        if not isinstance(other, TensorElement):
            return NotImplemented
        return tensor_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Scalar)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return self.is_zero()
        return (isinstance(other, TensorElement)
                and self.system == other.system and self.signs == other.signs
                and self._terms == other._terms)

    def __hash__(self):
        return hash((self.system, self.signs, frozenset(self._terms.items())))

    def __str__(self):
        if not self._terms:
            return "0"
        sym = self.system.symbol
        parts = []
        for (u, v), s in self.terms():
            neg, mag = split_sign(s)
            body = f"{term_body(mag, u, sym)} (x) {v.to_text(sym)}"
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    def __repr__(self):
        return f"<{self}>"


def tensor_mul(s: TensorElement, t: TensorElement) -> TensorElement:
    """(a(x)b)(c(x)d) = sign * (ac (x) bd), extended bilinearly.

    sign is 1 under 'plain' and (-1)**(parity(b)*parity(c)) under
    'koszul'; components are put back in normal form, annihilated terms
    drop out.
    """
    s._require_compatible(t)
    sys = s.system
    acc: dict = {}
    for (a, b), x in s._terms.items():
        for (c, d), y in t._terms.items():
            left = sys.normal_form(a.letters + c.letters)
            if left is ZERO:
                continue
            right = sys.normal_form(b.letters + d.letters)
            if right is ZERO:
                continue
            coeff = x * y
            if s.signs == "koszul" and b.parity * c.parity == 1:
                coeff = -coeff
            key = (left, right)
            acc[key] = acc.get(key, ZERO_SCALAR) + coeff
    return TensorElement(sys, s.signs, acc)


def element_tensor(a: Element, b: Element, signs: str = "plain") -> TensorElement:
    """Place two algebra elements side by side: a (x) b."""
    if a.system != b.system:
        raise ValueError("tensor legs must share one algebra")
    terms = {}
    for u, su in a.terms():
        for v, sv in b.terms():
            terms[(u, v)] = terms.get((u, v), ZERO_SCALAR) + su * sv
    return TensorElement(a.system, signs, terms)


# -- duality pairing ---------------------------------------------------------


def pair_words(xi: Word, theta: Word) -> Scalar:
    """<xi-word | theta-word> = 1 exactly when theta is the reversal."""
    return ONE if theta == xi.reverse() else ZERO_SCALAR


def pair(xi: Element, a: Element) -> Scalar:
    """Bilinear extension of the reversal pairing to elements."""
    acc = ZERO_SCALAR
    for w, s in xi._terms.items():
        t = a._terms.get(w.reverse())
        if t is not None:
            acc = acc + s * t
    return acc


def pair_tensor(xi: TensorElement, a: TensorElement,
                convention: str = "straight") -> Scalar:
    """Pair X-side and T-side tensors leg by leg.

    'straight' pairs first with first; 'flip' pairs first with second,
    matching (X(x)Y)^dual = Y^dual (x) X^dual.
    """
    if convention not in ("straight", "flip"):
        raise ValueError(f"unknown tensor pairing convention {convention!r}")
    acc = ZERO_SCALAR
    for (x, y), s in xi._terms.items():
        for (u, v), t in a._terms.items():
            if convention == "straight":
                p = pair_words(x, u) * pair_words(y, v)
            else:
                p = pair_words(x, v) * pair_words(y, u)
            if p:
                acc = acc + s * t * p
    return acc


def pairing_matrix(xi_sys: RewriteSystem, theta_sys: RewriteSystem,
                   max_deg: int = 2) -> Matrix:
    """Gram matrix of the pairing on the (length, lex) ordered bases."""
    xis = xi_sys.enumerate_normal_forms(max_deg)
    thetas = theta_sys.enumerate_normal_forms(max_deg)
    return Matrix([[pair_words(x, t) for t in thetas] for x in xis])


# -- dual comultiplication ----------------------------------------------------


def dual_comultiplication(theta_sys: RewriteSystem, xi_sys: RewriteSystem,
                          basis_deg: int = 2,
                          signs: str = "plain") -> Dict[Word, TensorElement]:
    """Transport the product through the pairing to a comultiplication.

    For each X-basis word w, Delta(w) sums <w, u*v> * (u-dual (x) v-dual)
    over all T-basis pairs, with u-dual the reversed word on the X side.
    """
    thetas = theta_sys.enumerate_normal_forms(basis_deg)
    xis = xi_sys.enumerate_normal_forms(basis_deg)
    table: Dict[Word, TensorElement] = {}
    for w in xis:
        terms: dict = {}
        for u in thetas:
            for v in thetas:
                prod = theta_sys.normal_form(u.letters + v.letters)
                if prod is ZERO or prod != w.reverse():
                    continue
                key = (u.reverse(), v.reverse())
                terms[key] = terms.get(key, ZERO_SCALAR) + ONE
        table[w] = TensorElement(xi_sys, signs, terms)
    return table


def apply_delta(table: Dict[Word, TensorElement], e: Element,
                signs: str = "plain") -> TensorElement:
    """Linear extension of a generator table to a full element."""
    sys = next(iter(table.values())).system if table else e.system
    out = TensorElement.zero(sys, signs)
    for w, s in e._terms.items():
        out = out + table[w].with_signs(signs).scale(s)
    return out


def check_dual_pairing_identity(table, theta_sys, xi_sys,
                                basis_deg: int = 2,
                                convention: str = "straight") -> bool:
    """Re-verify <Delta(w), u (x) v> = <w, u*v> on all basis triples."""
    thetas = theta_sys.enumerate_normal_forms(basis_deg)
    for w, delta_w in table.items():
        xi_w = Element.from_word(xi_sys, w)
        for u in thetas:
            for v in thetas:
                target = element_tensor(Element.from_word(theta_sys, u),
                                        Element.from_word(theta_sys, v))
                lhs = pair_tensor(delta_w, target, convention)
                rhs = pair(xi_w, mul(Element.from_word(theta_sys, u),
                                     Element.from_word(theta_sys, v)))
                if lhs != rhs:
                    return False
    return True


def check_coassociativity(table: Dict[Word, TensorElement]) -> bool:
    """(Delta (x) id) Delta = (id (x) Delta) Delta on the basis words."""
    for w, delta_w in table.items():
        left: dict = {}
        right: dict = {}
        for (u, v), s in delta_w._terms.items():
            for (p, q), t in table[u]._terms.items():
                key = (p, q, v)
                left[key] = left.get(key, ZERO_SCALAR) + s * t
            for (p, q), t in table[v]._terms.items():
                key = (u, p, q)
                right[key] = right.get(key, ZERO_SCALAR) + s * t
        left = {k: s for k, s in left.items() if s}
        right = {k: s for k, s in right.items() if s}
        if left != right:
            return False
    return True


def check_coalgebra_obstruction(table: Dict[Word, TensorElement],
                                xi_sys: RewriteSystem,
                                signs: str = "plain"):
    """Does Delta . e = (e (x) e) . Delta hold for the obstruction map?

    Returns (verdict, witnesses); the witnesses name the basis words where
    the two sides differ.  The obstruction map is affine, so e (x) e is
    applied term by term.
    """
    witnesses = []
    for w in sorted(table, key=Word.sort_key):
        lhs = apply_delta(table, obstruction(Element.from_word(xi_sys, w)),
                          signs)
        rhs = TensorElement.zero(xi_sys, signs)
        for (u, v), s in table[w]._terms.items():
            eu = obstruction(Element.from_word(xi_sys, u))
            ev = obstruction(Element.from_word(xi_sys, v))
            rhs = rhs + element_tensor(eu, ev, signs).scale(s)
        if lhs != rhs:
            witnesses.append(w)
    return not witnesses, tuple(witnesses)


# -- almost bialgebra ----------------------------------------------------------


@dataclass(frozen=True)
class BialgebraReport:
    """Pass/fail of the defining relations for one comultiplication
    candidate under one sign convention."""

    convention: str
    square_zero: Tuple[bool, bool]     # Delta(T1)**2 = 0, Delta(T2)**2 = 0
    cyclic: Tuple[bool, bool]          # D1 D2 D1 = D1, D2 D1 D2 = D2

    @property
    def ok(self) -> bool:
        return all(self.square_zero) and all(self.cyclic)


def check_almost_bialgebra(delta_gens: Dict[int, TensorElement],
                           convention: str) -> BialgebraReport:
    """Test whether a candidate Delta on the generators extends
    multiplicatively: its values must satisfy the defining relations."""
    d1 = delta_gens[1].with_signs(convention)
    d2 = delta_gens[2].with_signs(convention)
    sq1 = tensor_mul(d1, d1).is_zero()
    sq2 = tensor_mul(d2, d2).is_zero()
    c1 = tensor_mul(tensor_mul(d1, d2), d1) == d1
    c2 = tensor_mul(tensor_mul(d2, d1), d2) == d2
    return BialgebraReport(convention, (sq1, sq2), (c1, c2))


def bialgebra_candidates(system: RewriteSystem) -> Dict[str, Dict[int, TensorElement]]:
    """The four readings of Delta(T_i) = T_i (x) e_i + e_i (x) T_i.

    e_1 is either the unit or T1T2, e_2 either the unit or T2T1; the
    candidate name records the choice as unit/idem per generator.
    """
    unit = Element.unit(system)
    e12 = Element.from_word(system, Word((1, 2)))
    e21 = Element.from_word(system, Word((2, 1)))
    out = {}
    for name1, e1 in (("unit", unit), ("idem", e12)):
        for name2, e2 in (("unit", unit), ("idem", e21)):
            t1 = Element.generator(system, 1)
            t2 = Element.generator(system, 2)
            out[f"e1={name1},e2={name2}"] = {
                1: element_tensor(t1, e1) + element_tensor(e1, t1),
                2: element_tensor(t2, e2) + element_tensor(e2, t2),
            }
    return out


# -- regular module ------------------------------------------------------------


def check_regular_module(action: Dict[Word, Matrix],
                         basis: Sequence[Word],
                         module_dim: int,
                         e_algebra: Callable[[Element], Element],
                         e_module: Callable[[tuple], tuple],
                         system: RewriteSystem):
    """Check rho . (e_A (x) e_M) = e_M . rho on all basis pairs.

    `action[w]` is the matrix of the basis word w acting on the module;
    `e_module` maps module coefficient vectors to vectors (it may be
    affine, like the element obstruction map).  Returns (verdict,
    witnesses).
    """
    def act(element: Element, vec: tuple) -> tuple:
        out = [ZERO_SCALAR] * module_dim
        for w, s in element._terms.items():
            col = action[w].apply(vec)
            out = [o + s * c for o, c in zip(out, col)]
        return tuple(out)

    witnesses = []
    for w in basis:
        a = Element.from_word(system, w)
        for j in range(module_dim):
            m_vec = tuple(ONE if k == j else ZERO_SCALAR
                          for k in range(module_dim))
            lhs = act(e_algebra(a), e_module(m_vec))
            rhs = e_module(act(a, m_vec))
            if lhs != rhs:
                witnesses.append((w, j))
    return not witnesses, tuple(witnesses)
