"""Exact elements of the regular graded algebra RGA(n).

An element is a finite Q(w)-weighted sum of normal-form words.  For n=2
the whole algebra is five-dimensional with basis 1, T1, T2, T1T2, T2T1
and the closed-form operations (componentwise product, inverse with
denominator D, obstruction map, obstruction product, idempotent
obstructions) live here alongside the generic rewriting product they are
cross-checked against.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .linalg import Matrix
from .rewrite import EMPTY_WORD, ZERO, RewriteSystem, Word
from .scalar import ONE, OMEGA, OMEGA2, ZERO_SCALAR, Scalar


class AlgebraMismatchError(ValueError):
    """Operands belong to different rewrite systems."""


class SpanEscapeError(ValueError):
    """A multiplication left the span of the given basis."""

    def __init__(self, source: Word, escaped: Word):
        self.source = source
        self.escaped = escaped
        super().__init__(
            f"product of basis word {source!r} produced {escaped!r} "
            f"outside the codomain basis")


class NotInvertible(ValueError):
    """Inversion failed; `reason` is 'a0', 'D' or 'singular'."""

    def __init__(self, reason: str):
        self.reason = reason
        super().__init__(f"not invertible ({reason} = 0)"
                         if reason in ("a0", "D")
                         else f"not invertible ({reason})")


def _as_scalar(x) -> Scalar:
    return x if isinstance(x, Scalar) else Scalar(x)


class Element:
    """A finite sum of scalar-weighted normal-form words.

    Stored as a word -> nonzero scalar map; all words are normal forms of
    the owning system.  Elements are immutable; arithmetic returns new
    values.
    """

    __slots__ = ("system", "_terms")

    def __init__(self, system: RewriteSystem, terms: Optional[dict] = None):
        clean = {}
        for w, s in (terms or {}).items():
            s = _as_scalar(s)
            if s.is_zero():
                continue
            nf = system.normal_form(w)
            if nf is ZERO:
                continue
            clean[nf] = clean.get(nf, ZERO_SCALAR) + s
        object.__setattr__(self, "system", system)
        object.__setattr__(
            self, "_terms", {w: s for w, s in clean.items() if s})

    def __setattr__(self, name, value):
        raise AttributeError("Element is immutable")

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, system: RewriteSystem) -> "Element":
        return cls(system, {})

    @classmethod
    def unit(cls, system: RewriteSystem) -> "Element":
        return cls(system, {EMPTY_WORD: ONE})

    @classmethod
    def generator(cls, system: RewriteSystem, i: int) -> "Element":
        return cls(system, {Word((i,)): ONE})

    @classmethod
    def from_word(cls, system: RewriteSystem, word, coeff=ONE) -> "Element":
        w = word if isinstance(word, Word) else Word(word)
        return cls(system, {w: coeff})

    @classmethod
    def from_coeffs(cls, system: RewriteSystem, coeffs: Sequence) -> "Element":
        """Build an n=2 element from (a0, a1, a2, a12, a21)."""
        if system.n != 2:
            raise ValueError("coefficient form requires n=2")
        a0, a1, a2, a12, a21 = coeffs
        return cls(system, {EMPTY_WORD: a0, Word((1,)): a1, Word((2,)): a2,
                            Word((1, 2)): a12, Word((2, 1)): a21})

    # -- accessors ---------------------------------------------------------

    def terms(self) -> list:
        return sorted(self._terms.items(), key=lambda kv: kv[0].sort_key())

    def support(self) -> list:
        return sorted(self._terms, key=Word.sort_key)

    def coeff(self, word) -> Scalar:
        w = word if isinstance(word, Word) else Word(word)
        return self._terms.get(w, ZERO_SCALAR)

    def coeffs_n2(self) -> tuple:
        """The five components (a0, a1, a2, a12, a21) for n=2."""
        if self.system.n != 2:
            raise ValueError("component form requires n=2")
        return tuple(self.coeff(w) for w in N2_BASIS)

    def is_zero(self) -> bool:
        return not self._terms

    def parity(self) -> int:
        """Common grade of the support; raises if not homogeneous."""
        grades = {w.parity for w in self._terms}
        if len(grades) != 1:
            raise ValueError("element is not parity-homogeneous")
        return grades.pop()

    def is_homogeneous(self) -> bool:
        return len({w.parity for w in self._terms}) <= 1

    # -- arithmetic ----------------------------------------------------------

    def _require_same(self, other: "Element"):
        if self.system != other.system:
            raise AlgebraMismatchError(
                f"{self.system!r} vs {other.system!r}")

    def __add__(self, other):
        if isinstance(other, (int, Scalar)):
            other = Element(self.system, {EMPTY_WORD: other})
        if not isinstance(other, Element):
            return NotImplemented
        self._require_same(other)
        terms = dict(self._terms)
        for w, s in other._terms.items():
            terms[w] = terms.get(w, ZERO_SCALAR) + s
        return Element(self.system, terms)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other if isinstance(other, Element) else -_as_scalar(other))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return Element(self.system, {w: -s for w, s in self._terms.items()})

    def scale(self, s) -> "Element":
        s = _as_scalar(s)
        return Element(self.system, {w: s * c for w, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Scalar)):
            return self.scale(other)
        if not isinstance(other, Element):
            return NotImplemented
        return mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Scalar)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return self.is_zero()
        return (isinstance(other, Element) and self.system == other.system
                and self._terms == other._terms)

    def __hash__(self):
        return hash((self.system,
                     tuple(sorted(self._terms.items(),
                                  key=lambda kv: kv[0].sort_key()))))

    def __str__(self):
        if not self._terms:
            return "0"
        atoms = []
        for w, s in self.terms():
            # a two-part coefficient on the unit word prints as two terms,
            # since +/- always separate terms in the grammar
            if len(w) == 0 and s.a != 0 and s.b != 0:
                atoms.append((Scalar(s.a), w))
                atoms.append((Scalar(0, s.b), w))
            else:
                atoms.append((s, w))
        parts = []
        for s, w in atoms:
            parts.append(_format_term(s, w, self.system.symbol, not parts))
        return "".join(parts)

    def __repr__(self):
        return f"<{self} over {self.system!r}>"


N2_BASIS = (EMPTY_WORD, Word((1,)), Word((2,)), Word((1, 2)), Word((2, 1)))


def split_sign(s: Scalar):
    """(is_negative, magnitude); the sign is the one of the leading part."""
    neg = (s.a < 0) if s.a != 0 else (s.b < 0)
    return neg, (-s if neg else s)


def term_body(mag: Scalar, w: Word, symbol: str) -> str:
    """Canonical unsigned rendering of mag * w."""
    if len(w) == 0:
        if mag == ONE:
            return "1"
        if mag.a != 0 and mag.b != 0:
            return f"({mag})"
        return str(mag)
    if mag == ONE:
        return w.to_text(symbol)
    if mag.a != 0 and mag.b != 0:
        return f"({mag}) {w.to_text(symbol)}"
    return f"{mag} {w.to_text(symbol)}"


def _format_term(s: Scalar, w: Word, symbol: str, first: bool) -> str:
    """One canonical term; the leading sign folds into the separator."""
    neg, mag = split_sign(s)
    if len(w) == 0:
        body = str(mag)
    else:
        body = term_body(mag, w, symbol)
    if first:
        return ("-" if neg else "") + body
    return (" - " if neg else " + ") + body


# -- products ------------------------------------------------------------


def add(a: Element, b: Element) -> Element:
    return a + b


def scale(s, a: Element) -> Element:
    return a.scale(s)


def mul(a: Element, b: Element) -> Element:
    """Bilinear extension of word concatenation followed by normal form."""
    a._require_same(b)
    sys = a.system
    acc: dict = {}
    for u, su in a._terms.items():
        for v, sv in b._terms.items():
            w = sys.normal_form(u.letters + v.letters)
            if w is ZERO:
                continue
            acc[w] = acc.get(w, ZERO_SCALAR) + su * sv
    return Element(sys, acc)


def mul_closed_form(a: Element, b: Element) -> Element:
    """The five displayed n=2 component formulas, evaluated literally.

    Independent of the rewriting product; the two are used as mutual
    oracles.  The four regularity cross terms (absent in the
    anticommutative case) are a1*b21 + a12*b1 on T1, a2*b12 + a21*b2 on
    T2, a12*b12 on T1T2 and a21*b21 on T2T1.
    """
    a._require_same(b)
    if a.system.n != 2:
        raise ValueError("closed form requires n=2")
    a0, a1, a2, a12, a21 = a.coeffs_n2()
    b0, b1, b2, b12, b21 = b.coeffs_n2()
    return Element.from_coeffs(a.system, (
        a0 * b0,
        a0 * b1 + a1 * b0 + a1 * b21 + a12 * b1,
        a0 * b2 + a2 * b0 + a2 * b12 + a21 * b2,
        a0 * b12 + a1 * b2 + a12 * b0 + a12 * b12,
        a0 * b21 + a2 * b1 + a21 * b0 + a21 * b21,
    ))


# -- inversion -------------------------------------------------------------


def invert(a: Element) -> Element:
    """Closed-form n=2 inverse with denominator D.

    Requires a0 != 0 and D = (a0+a12)(a0+a21) - a1*a2 != 0; the result is
    always re-verified against the product before being returned.
    """
    if a.system.n != 2:
        raise ValueError("closed-form inverse requires n=2")
    a0, a1, a2, a12, a21 = a.coeffs_n2()
    if a0.is_zero():
        raise NotInvertible("a0")
    d = (a0 + a12) * (a0 + a21) - a1 * a2
    if d.is_zero():
        raise NotInvertible("D")
    dinv = d.inverse()
    a0inv = a0.inverse()
    inv = Element.from_coeffs(a.system, (
        a0inv,
        -(dinv * a1),
        -(dinv * a2),
        -(dinv * (a12 * (ONE + a21 * a0inv) - a1 * a2 * a0inv)),
        -(dinv * (a21 * (ONE + a12 * a0inv) - a1 * a2 * a0inv)),
    ))
    one = Element.unit(a.system)
    assert mul(a, inv) == one and mul(inv, a) == one, \
        "closed-form inverse failed self-check"
    return inv


def invert_by_solve(a: Element, basis: Optional[Sequence[Word]] = None) -> Element:
    """Inverse via an exact linear solve of a*x = 1 over a finite basis.

    Defaults to the five-word n=2 basis, where the answer is exact and
    two-sided.  On a supplied truncation basis for other n the result is
    only a truncated right-inverse candidate and is re-verified.
    """
    sys = a.system
    words = tuple(basis) if basis is not None else _default_basis(sys)
    cols = []
    index = {w: i for i, w in enumerate(words)}
    for w in words:
        img = mul(a, Element.from_word(sys, w))
        col = [ZERO_SCALAR] * len(words)
        for u, s in img._terms.items():
            if u not in index:
                raise SpanEscapeError(w, u)
            col[index[u]] = s
        cols.append(col)
    m = Matrix.from_columns(cols)
    rhs = [ONE if w == EMPTY_WORD else ZERO_SCALAR for w in words]
    try:
        x = m.solve(rhs)
    except ValueError:
        raise NotInvertible("singular") from None
    out = Element(sys, dict(zip(words, x)))
    one = Element.unit(sys)
    if mul(a, out) != one or mul(out, a) != one:
        raise NotInvertible("singular")
    return out


def _default_basis(sys: RewriteSystem) -> tuple:
    if sys.n != 2:
        raise ValueError("supply a truncation basis for n != 2")
    return N2_BASIS


# -- subspaces and multiplication operators ---------------------------------


@dataclass(frozen=True)
class Subspace:
    """An ordered basis of a finite-dimensional subspace.

    Basis entries are normal-form words for algebra-built spaces, or plain
    labels for spaces loaded from files.
    """

    label: str
    basis: tuple

    def __post_init__(self):
        if len(set(self.basis)) != len(self.basis):
            raise ValueError(f"duplicate basis entries in {self.label}")

    @property
    def dim(self) -> int:
        return len(self.basis)

    def basis_texts(self, symbol: str = "T") -> list:
        return [b.to_text(symbol) if isinstance(b, Word) else str(b)
                for b in self.basis]


def _mul_matrix(a: Element, domain: Subspace, codomain: Optional[Subspace],
                left: bool):
    sys = a.system
    images = []
    for w in domain.basis:
        e = Element.from_word(sys, w)
        images.append(mul(a, e) if left else mul(e, a))
    if codomain is None:
        seen = set()
        for img in images:
            seen.update(img._terms)
        if seen <= set(domain.basis):
            codomain = domain
        else:
            codomain = Subspace(domain.label + "'",
                                tuple(sorted(seen, key=Word.sort_key)))
    index = {w: i for i, w in enumerate(codomain.basis)}
    cols = []
    for w, img in zip(domain.basis, images):
        col = [ZERO_SCALAR] * codomain.dim
        for u, s in img._terms.items():
            if u not in index:
                raise SpanEscapeError(w, u)
            col[index[u]] = s
        cols.append(col)
    return codomain, Matrix.from_columns(cols) if cols else Matrix([])


def left_mul_matrix(a: Element, domain: Subspace,
                    codomain: Optional[Subspace] = None):
    """Matrix of x -> a*x on the domain basis.

    With no codomain given, reuses the domain when images stay inside it
    and otherwise collects the image words in canonical order.  Returns
    (codomain, matrix).
    """
    return _mul_matrix(a, domain, codomain, left=True)


def right_mul_matrix(a: Element, domain: Subspace,
                     codomain: Optional[Subspace] = None):
    """Matrix of x -> x*a on the domain basis; see left_mul_matrix."""
    return _mul_matrix(a, domain, codomain, left=False)


@dataclass(frozen=True)
class RepresentationReport:
    n: int
    max_deg: int
    words_checked: int
    failures: tuple

    @property
    def ok(self) -> bool:
        return not self.failures

    def render(self) -> str:
        head = (f"n={self.n} max_deg={self.max_deg} "
                f"words={self.words_checked} "
                f"left_right_operator_laws={'pass' if self.ok else 'FAIL'}")
        lines = [head]
        for kind, i, j, w in self.failures:
            lines.append(f"  {kind} failure at i={i} j={j} word={w}")
        return "\n".join(lines)


def check_representation(n: int, max_deg: int,
                         strategy: str = "leftmost") -> RepresentationReport:
    """Verify L_i L_j = L_{ij} and R_i R_j = R_{ji} on all normal forms.

    Both identities are instances of associativity of the rewriting
    product, so a failure here flags a non-confluent presentation.
    """
    sys = RewriteSystem(n, strategy=strategy)
    words = sys.enumerate_normal_forms(max_deg)
    gens = [Element.generator(sys, i) for i in range(1, n + 1)]
    failures = []
    for i, gi in enumerate(gens, start=1):
        for j, gj in enumerate(gens, start=1):
            gij = mul(gi, gj)
            gji = mul(gj, gi)
            for w in words:
                x = Element.from_word(sys, w)
                if mul(gi, mul(gj, x)) != mul(gij, x):
                    failures.append(("left", i, j, w))
                if mul(mul(x, gj), gi) != mul(x, gji):
                    failures.append(("right", i, j, w))
    return RepresentationReport(n, max_deg, len(words), tuple(failures))


# -- annihilators --------------------------------------------------------


def annihilator(a: Element, side: str = "right",
                basis: Optional[Sequence[Word]] = None) -> list:
    """Exact basis of {b : a*b = 0} (side='right') or {b : b*a = 0}.

    Computed as the nullspace of the left (resp. right) multiplication
    matrix over the given basis; each returned element has its leading
    coefficient normalized to 1.
    """
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    sys = a.system
    words = tuple(basis) if basis is not None else _default_basis(sys)
    space = Subspace("span", words)
    if side == "right":
        _, m = left_mul_matrix(a, space, space)
    else:
        _, m = right_mul_matrix(a, space, space)
    out = []
    for vec in m.nullspace():
        lead = next(s for s in vec if not s.is_zero())
        vec = [s * lead.inverse() for s in vec]
        out.append(Element(sys, dict(zip(words, vec))))
    return out


# -- obstruction machinery (n=2) -------------------------------------------


def obstruction(a: Element) -> Element:
    """The affine obstruction map on n=2 elements.

    Sends a = a0 + a1 T1 + a2 T2 + a12 T1T2 + a21 T2T1 to
    1 + a2 T1 + a1 T2 + a21 T1T2 + a12 T2T1: the constant term is fixed
    to 1 whatever a0 is, and the indices swap 1<->2, 12<->21.
    """
    if a.system.n != 2:
        raise ValueError("obstruction map requires n=2")
    a0, a1, a2, a12, a21 = a.coeffs_n2()
    return Element.from_coeffs(a.system, (ONE, a2, a1, a21, a12))


def obstructed_product(a: Element, b: Element) -> Element:
    """The product that the obstruction map intertwines.

    Componentwise this is (1+a')(1+b') with the constant parts pinned to
    one, so obstruction(a) * obstruction(b) = obstruction(a ⋆ b) holds
    exactly; the intertwining is asserted on every call.
    """
    a._require_same(b)
    if a.system.n != 2:
        raise ValueError("obstructed product requires n=2")
    _, a1, a2, a12, a21 = a.coeffs_n2()
    _, b1, b2, b12, b21 = b.coeffs_n2()
    c = Element.from_coeffs(a.system, (
        ONE,
        a1 + b1 + a1 * b21 + a12 * b1,
        a2 + b2 + a2 * b12 + a21 * b2,
        a12 + b12 + a1 * b2 + a12 * b12,
        a21 + b21 + a2 * b1 + a21 * b21,
    ))
    assert mul(obstruction(a), obstruction(b)) == obstruction(c), \
        "obstruction intertwining failed"
    return c


def find_idempotent_obstructions(system: RewriteSystem) -> list:
    """All idempotents of the form 1 + T1 + T2 + g T1T2 + d T2T1.

    Exact elimination on e*e = e over the affine family
    1 + x T1 + y T2 + g T1T2 + d T2T1 gives, for x = y = 1,
    d = -1 - g and g**2 + g + 1 = 0, whose two roots in Q(w) are w and
    w**2 (monic quadratics over a field have no further roots).  Each
    candidate is verified by multiplication before being returned.
    """
    if system.n != 2:
        raise ValueError("idempotent obstructions require n=2")
    out = []
    for g in (OMEGA, OMEGA2):
        assert (g * g + g + ONE).is_zero()
        d = -(ONE + g)
        e = Element.from_coeffs(system, (ONE, ONE, ONE, g, d))
        assert mul(e, e) == e, "candidate failed the idempotency check"
        out.append(e)
    return out


# -- decomposition and grading ----------------------------------------------


def decompose(system: RewriteSystem, max_deg: int) -> list:
    """Split the truncated span into the subspaces X_i.

    X_i collects the normal-form words of length <= max_deg whose first
    letter is i; together with the unit word these exhaust the truncated
    basis.
    """
    words = system.enumerate_normal_forms(max_deg)
    return [Subspace(f"X{i}",
                     tuple(w for w in words if len(w) and w[0] == i))
            for i in range(1, system.n + 1)]


@dataclass(frozen=True)
class GradingReport:
    parity_a: int
    parity_b: int
    product_zero: bool
    product_ok: bool
    violations: tuple
    triple_checked: bool
    triple_ok: bool

    @property
    def ok(self) -> bool:
        return self.product_ok and (self.triple_ok or not self.triple_checked)


def grading_check(a: Element, b: Element) -> GradingReport:
    """Check parity additivity of a*b, and odd*odd*odd closure via a*b*a.

    Inputs must be parity-homogeneous.  Violations list the offending
    product words with their actual grade.
    """
    a._require_same(b)
    pa, pb = a.parity(), b.parity()
    expected = (pa + pb) % 2
    prod = mul(a, b)
    violations = tuple((w, w.parity) for w in prod.support()
                       if w.parity != expected)
    triple_checked = pa == 1 and pb == 1
    triple_ok = True
    if triple_checked:
        triple = mul(prod, a)
        triple_ok = all(w.parity == 1 for w in triple.support())
    return GradingReport(pa, pb, prod.is_zero(), not violations,
                         violations, triple_checked, triple_ok)


def regularity_chain(system: RewriteSystem, i: int) -> bool:
    """Direct product check of g_i g_{i+1} ... g_n g_1 ... g_{i-1} g_i = g_i."""
    n = system.n
    order = list(range(i, n + 1)) + list(range(1, i)) + [i]
    acc = Element.unit(system)
    for j in order:
        acc = mul(acc, Element.generator(system, j))
    return acc == Element.generator(system, i)


