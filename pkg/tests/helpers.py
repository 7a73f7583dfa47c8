"""Shared random generators for the test suite (seeded, deterministic)."""

from fractions import Fraction
from random import Random

from rga.algebra import Element
from rga.scalar import Scalar


def rand_scalar(rng: Random, span: int = 6) -> Scalar:
    return Scalar(Fraction(rng.randint(-span, span), rng.randint(1, 4)),
                  Fraction(rng.randint(-span, span), rng.randint(1, 4)))


def rand_element(rng: Random, system, max_len: int = 2,
                 density: float = 0.7) -> Element:
    words = system.enumerate_normal_forms(max_len)
    return Element(system, {w: rand_scalar(rng)
                            for w in words if rng.random() < density})


def rand_invertible(rng: Random, system) -> Element:
    from rga.algebra import NotInvertible, invert
    while True:
        a = rand_element(rng, system)
        try:
            invert(a)
            return a
        except NotInvertible:
            continue
