"""Parser for the canonical element syntax (the printers' exact inverse).

Grammar (whitespace separates juxtaposed factors):

    element := ["+"|"-"] term (("+"|"-") term)*
    term    := scalar ["*"] factor* | factor+
    factor  := GEN | "(" element ")"
    scalar  := rat ["*"] "w" | rat | "w"
    rat     := INT ["/" INT]
    GEN     := ("T"|"X") DIGIT+

Plus and minus always separate terms; a two-part coefficient like 1+2*w
therefore re-parses as two unit-word terms of equal total value, and the
printers parenthesize it whenever a word follows.  In tensor and Wick
contexts a term may carry one "(x)" splitting it into a left and a right
component, and parenthesized subexpressions denote tensor (resp. Wick)
elements multiplied by juxtaposition.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Tuple

from .algebra import Element, mul
from .rewrite import RewriteSystem, Word
from .scalar import ONE, OMEGA, Scalar
from .tensor import TensorElement, element_tensor, tensor_mul
from .wick import ConjugatedPair, CrossSymmetry, WickElement, wick_mul


class ParseError(ValueError):
    """Syntax error with a character position."""

    def __init__(self, message: str, pos: int, text: str = ""):
        self.pos = pos
        self.text = text
        super().__init__(f"{message} at position {pos}")


# -- tokenizer ------------------------------------------------------------

_PUNCT = {"+": "PLUS", "-": "MINUS", "*": "STAR", "/": "SLASH",
          "(": "LPAREN", ")": "RPAREN"}


def _tokenize(text: str) -> List[Tuple[str, object, int]]:
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if text.startswith("(x)", i):
            tokens.append(("TENSOR", "(x)", i))
            i += 3
            continue
        if ch in _PUNCT:
            tokens.append((_PUNCT[ch], ch, i))
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("NUM", int(text[i:j]), i))
            i = j
            continue
        if ch == "w":
            tokens.append(("W", "w", i))
            i += 1
            continue
        if ch in ("T", "X"):
            j = i + 1
            while j < n and text[j].isdigit():
                j += 1
            if j == i + 1:
                raise ParseError(f"generator letter {ch!r} needs an index",
                                 i, text)
            tokens.append(("GEN", (ch, int(text[i + 1:j])), i))
            i = j
            continue
        raise ParseError(f"unexpected character {ch!r}", i, text)
    tokens.append(("END", None, n))
    return tokens


class _Stream:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> str:
        return self.tokens[self.pos][0]

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str):
        tok = self.next()
        if tok[0] != kind:
            raise ParseError(f"expected {kind}, found {tok[1]!r}",
                             tok[2], self.text)
        return tok

    def error(self, message: str):
        tok = self.tokens[self.pos]
        raise ParseError(message, tok[2], self.text)


# -- scalar layer ---------------------------------------------------------


def _parse_rat(ts: _Stream) -> Fraction:
    num = ts.expect("NUM")[1]
    if ts.peek() == "SLASH":
        ts.next()
        den = ts.expect("NUM")[1]
        if den == 0:
            ts.error("zero denominator")
        return Fraction(num, den)
    return Fraction(num)


def _try_parse_scalar(ts: _Stream) -> Optional[Scalar]:
    """rat ["*"] "w" | rat | "w"; None when the stream starts elsewhere."""
    if ts.peek() == "W":
        ts.next()
        return OMEGA
    if ts.peek() != "NUM":
        return None
    r = _parse_rat(ts)
    if ts.peek() == "STAR":
        mark = ts.pos
        ts.next()
        if ts.peek() == "W":
            ts.next()
            return Scalar(0, r)
        ts.pos = mark  # the star belonged to something else; back off
        return Scalar(r)
    if ts.peek() == "W":
        ts.next()
        return Scalar(0, r)
    return Scalar(r)


def parse_scalar(text: str) -> Scalar:
    """A standalone scalar, including the two-part form p/q+r/s*w."""
    ts = _Stream(text)
    sign = 1
    if ts.peek() == "MINUS":
        ts.next()
        sign = -1
    first = _try_parse_scalar(ts)
    if first is None:
        ts.error("expected a scalar")
    value = first if sign > 0 else -first
    if ts.peek() in ("PLUS", "MINUS"):
        sign = 1 if ts.next()[0] == "PLUS" else -1
        second = _try_parse_scalar(ts)
        if second is None:
            ts.error("expected the w-part of a scalar")
        if not second.is_rational():
            value = value + (second if sign > 0 else -second)
        else:
            ts.error("second scalar part must involve w")
    ts.expect("END")
    return value


# -- element context ---------------------------------------------------------


def _gen_element(system: RewriteSystem, tok, text: str) -> Element:
    (symbol, index), pos = tok[1], tok[2]
    if symbol != system.symbol:
        raise ParseError(
            f"generator {symbol}{index} does not belong to this "
            f"{system.symbol}-side context", pos, text)
    if not 1 <= index <= system.n:
        raise ParseError(
            f"unknown generator index {index} (n={system.n})", pos, text)
    return Element.generator(system, index)


def _parse_term(ts: _Stream, system: RewriteSystem) -> Element:
    coeff = _try_parse_scalar(ts)
    if coeff is not None and ts.peek() == "STAR":
        ts.next()
    value = Element.unit(system).scale(coeff if coeff is not None else ONE)
    got_factor = False
    while ts.peek() in ("GEN", "LPAREN"):
        got_factor = True
        if ts.peek() == "GEN":
            value = mul(value, _gen_element(system, ts.next(), ts.text))
        else:
            ts.next()
            value = mul(value, _parse_element_body(ts, system))
            ts.expect("RPAREN")
    if coeff is None and not got_factor:
        ts.error("expected a term")
    return value


def _parse_element_body(ts: _Stream, system: RewriteSystem) -> Element:
    sign = 1
    if ts.peek() in ("PLUS", "MINUS"):
        sign = 1 if ts.next()[0] == "PLUS" else -1
    value = _parse_term(ts, system).scale(sign)
    while ts.peek() in ("PLUS", "MINUS"):
        sign = 1 if ts.next()[0] == "PLUS" else -1
        value = value + _parse_term(ts, system).scale(sign)
    return value


def parse_element(text: str, system: RewriteSystem) -> Element:
    ts = _Stream(text)
    value = _parse_element_body(ts, system)
    ts.expect("END")
    return value


def parse_word_letters(text: str, system: RewriteSystem) -> Word:
    """A raw word as whitespace- or comma-separated letters, e.g. "1 2 1"."""
    parts = text.replace(",", " ").split()
    if not all(p.isdigit() for p in parts):
        raise ParseError("word letters must be integers", 0, text)
    letters = tuple(int(p) for p in parts)
    for x in letters:
        if not 1 <= x <= system.n:
            raise ParseError(f"letter {x} outside 1..{system.n}", 0, text)
    return Word(letters)


# -- tensor / wick contexts -----------------------------------------------------


def _as_theta_side(value: WickElement):
    """The u -> coeff map when every term has a trivial dagger leg."""
    if any(len(v) for (_, v) in value._terms):
        return None
    return {u: s for (u, _), s in value._terms.items()}


def _as_xi_side(value: WickElement):
    """The v -> coeff map when every term has a trivial algebra leg."""
    if any(len(u) for (u, _) in value._terms):
        return None
    return {v: s for (_, v), s in value._terms.items()}


def _parse_wick_product(ts: _Stream, pair: ConjugatedPair,
                        psi: CrossSymmetry) -> WickElement:
    coeff = _try_parse_scalar(ts)
    if coeff is not None and ts.peek() == "STAR":
        ts.next()
    value = WickElement.unit(pair).scale(coeff if coeff is not None else ONE)
    got_factor = False
    while ts.peek() in ("GEN", "LPAREN"):
        got_factor = True
        if ts.peek() == "GEN":
            tok = ts.next()
            symbol, index = tok[1]
            if not 1 <= index <= 2:
                raise ParseError(f"unknown generator index {index} (n=2)",
                                 tok[2], ts.text)
            if symbol == "T":
                atom = WickElement.single(pair, (index,), ())
            else:
                atom = WickElement.single(pair, (), (index,))
        else:
            ts.next()
            atom = _parse_wick_body(ts, pair, psi)
            ts.expect("RPAREN")
        value = wick_mul(value, atom, psi)
    if coeff is None and not got_factor:
        ts.error("expected a term")
    return value


def _parse_wick_term(ts: _Stream, pair: ConjugatedPair,
                     psi: CrossSymmetry) -> WickElement:
    left = _parse_wick_product(ts, pair, psi)
    if ts.peek() != "TENSOR":
        return left
    tok = ts.next()
    right = _parse_wick_product(ts, pair, psi)
    lterms = _as_theta_side(left)
    rterms = _as_xi_side(right)
    if lterms is None or rterms is None:
        raise ParseError(
            "(x) needs a plain algebra element on the left and a plain "
            "dagger element on the right", tok[2], ts.text)
    terms = {}
    for u, s in lterms.items():
        for v, t in rterms.items():
            terms[(u, v)] = s * t
    return WickElement(pair, terms)


def _parse_wick_body(ts, pair, psi) -> WickElement:
    sign = 1
    if ts.peek() in ("PLUS", "MINUS"):
        sign = 1 if ts.next()[0] == "PLUS" else -1
    value = _parse_wick_term(ts, pair, psi).scale(sign)
    while ts.peek() in ("PLUS", "MINUS"):
        sign = 1 if ts.next()[0] == "PLUS" else -1
        value = value + _parse_wick_term(ts, pair, psi).scale(sign)
    return value


def parse_wick(text: str, pair: ConjugatedPair,
               psi: CrossSymmetry) -> WickElement:
    """A Wick expression; juxtaposition is the Wick product through psi."""
    ts = _Stream(text)
    value = _parse_wick_body(ts, pair, psi)
    ts.expect("END")
    return value


def _parse_tensor_product(ts: _Stream, system: RewriteSystem, signs: str):
    """Either a plain element (no parens with (x) inside) or a product of
    parenthesized tensor elements; returns ('elem', Element) or
    ('tensor', TensorElement)."""
    coeff = _try_parse_scalar(ts)
    if coeff is not None and ts.peek() == "STAR":
        ts.next()
    elem: Optional[Element] = Element.unit(system)
    tens: Optional[TensorElement] = None
    got_factor = False
    while ts.peek() in ("GEN", "LPAREN"):
        got_factor = True
        if ts.peek() == "GEN":
            atom = _gen_element(system, ts.next(), ts.text)
            if tens is not None:
                ts.error("cannot mix a bare generator into a tensor product")
            elem = mul(elem, atom)
        else:
            tok = ts.next()
            sub = _parse_tensor_body(ts, system, signs)
            ts.expect("RPAREN")
            if isinstance(sub, Element):
                if tens is not None:
                    ts.error("cannot mix a bare element into a tensor product")
                elem = mul(elem, sub)
            else:
                if elem is not None and elem != Element.unit(system):
                    raise ParseError(
                        "cannot mix a bare element into a tensor product",
                        tok[2], ts.text)
                tens = sub if tens is None else tensor_mul(tens, sub)
                elem = None
    if coeff is None and not got_factor:
        ts.error("expected a term")
    scale = coeff if coeff is not None else ONE
    if tens is not None:
        return "tensor", tens.scale(scale)
    return "elem", elem.scale(scale)


def _parse_tensor_term(ts: _Stream, system: RewriteSystem, signs: str):
    kind, left = _parse_tensor_product(ts, system, signs)
    if ts.peek() != "TENSOR":
        return kind, left
    tok = ts.next()
    rkind, right = _parse_tensor_product(ts, system, signs)
    if kind != "elem" or rkind != "elem":
        raise ParseError("(x) needs plain elements on both sides",
                         tok[2], ts.text)
    return "tensor", element_tensor(left, right, signs)


def _parse_tensor_body(ts, system, signs):
    sign = 1
    if ts.peek() in ("PLUS", "MINUS"):
        sign = 1 if ts.next()[0] == "PLUS" else -1
    kind, value = _parse_tensor_term(ts, system, signs)
    value = value.scale(sign)
    while ts.peek() in ("PLUS", "MINUS"):
        sign = 1 if ts.next()[0] == "PLUS" else -1
        nkind, nval = _parse_tensor_term(ts, system, signs)
        if nkind != kind:
            ts.error("cannot add a plain element to a tensor")
        value = value + nval.scale(sign)
    return value


def parse_tensor(text: str, system: RewriteSystem,
                 signs: str = "plain") -> TensorElement:
    """A tensor expression over one algebra; every summand needs a (x)."""
    ts = _Stream(text)
    value = _parse_tensor_body(ts, system, signs)
    if isinstance(value, Element):
        raise ParseError("a tensor expression needs at least one (x)",
                         ts.tokens[-1][2], text)
    ts.expect("END")
    return value
