"""Exact scalars a + b*w over the rationals, where w is a primitive cube
root of unity (w**2 + w + 1 = 0).

This is the smallest field containing the coefficients -1/2 +- i*sqrt(3)/2
that show up in the idempotent-obstruction computation: they are exactly
w and w**2.  Staying inside Q(w) keeps every check in the package an exact
equality; there is no floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction


def _rat(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected int or Fraction, got {type(x).__name__}")


class Scalar:
    """An element a + b*w of Q(w), stored as two exact rationals.

    Multiplication uses w**2 = -1 - w; conjugation sends w to w**2.
    """

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        object.__setattr__(self, "a", _rat(a))
        object.__setattr__(self, "b", _rat(b))

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    # -- predicates ---------------------------------------------------

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_rational(self) -> bool:
        return self.b == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- field operations ---------------------------------------------

    @staticmethod
    def _coerce(x):
        if isinstance(x, Scalar):
            return x
        if isinstance(x, (int, Fraction)):
            return Scalar(x)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Scalar(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Scalar(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return Scalar(-self.a, -self.b)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        # (a + bw)(c + dw) = ac + (ad + bc)w + bd(-1 - w)
        return Scalar(self.a * o.a - self.b * o.b,
                      self.a * o.b + self.b * o.a - self.b * o.b)

    __rmul__ = __mul__

    def conjugate(self) -> "Scalar":
        """Complex conjugation restricted to Q(w): w -> w**2 = -1 - w."""
        return Scalar(self.a - self.b, -self.b)

    def norm(self) -> Fraction:
        """Multiplicative norm a**2 - a*b + b**2 (zero only at zero)."""
        return self.a * self.a - self.a * self.b + self.b * self.b

    def inverse(self) -> "Scalar":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero scalar")
        c = self.conjugate()
        return Scalar(c.a / n, c.b / n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = ONE
        for _ in range(k):
            out = out * self
        return out

    # -- identity and display -------------------------------------------

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __repr__(self):
        return f"Scalar({self.a!r}, {self.b!r})"

    def __str__(self):
        """Canonical form: `p/q`, `p/q*w`, or `p/q+r/s*w` (signs folded)."""
        if self.b == 0:
            return str(self.a)
        w = "w" if abs(self.b) == 1 else f"{abs(self.b)}*w"
        if self.a == 0:
            return w if self.b > 0 else "-" + w
        sign = "+" if self.b > 0 else "-"
        return f"{self.a}{sign}{w}"


ZERO_SCALAR = Scalar(0)
ONE = Scalar(1)
OMEGA = Scalar(0, 1)
OMEGA2 = OMEGA.conjugate()
