"""Concrete categories of based spaces and exact matrices: regular
n-cocycles, their obstructions, cocycle morphisms, obstructed functors,
natural transformations, tensor obstructions and duality.

Everything is presented matricially: a cyclic chain of spaces X_1 -> X_2
-> ... -> X_n -> X_1 whose round trip composites e_X (the obstructions)
are idempotent exactly when the chain satisfies the regularity identity
psi . psi_(n) . ... . psi = psi at every start point.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .algebra import Element, Subspace, decompose, left_mul_matrix, mul
from .linalg import Matrix
from .rewrite import RewriteSystem


class ChainTypeError(ValueError):
    """Cocycle chain does not type-check at some index."""


class DegeneratePairingError(ValueError):
    """A duality pairing matrix is singular."""


class NotAFunctorError(ValueError):
    """The supplied morphism map fails to respect composition."""


@dataclass(frozen=True)
class LinearMap:
    """An exact matrix between based spaces (rows = codomain dim)."""

    domain: Subspace
    codomain: Subspace
    matrix: Matrix

    def __post_init__(self):
        if self.matrix.nrows != self.codomain.dim \
                or self.matrix.ncols != self.domain.dim:
            raise ValueError(
                f"matrix is {self.matrix.nrows}x{self.matrix.ncols} but "
                f"{self.codomain.label}<-{self.domain.label} needs "
                f"{self.codomain.dim}x{self.domain.dim}")

    def compose(self, other: "LinearMap") -> "LinearMap":
        """self . other (apply `other` first)."""
        if other.codomain != self.domain:
            raise ChainTypeError(
                f"cannot compose {self.domain.label}->{self.codomain.label} "
                f"after {other.domain.label}->{other.codomain.label}")
        return LinearMap(other.domain, self.codomain,
                         self.matrix * other.matrix)

    @classmethod
    def identity(cls, space: Subspace) -> "LinearMap":
        return cls(space, space, Matrix.identity(space.dim))

    def is_identity(self) -> bool:
        return self.domain == self.codomain and self.matrix.is_identity()

    def __str__(self):
        return f"{self.domain.label}->{self.codomain.label}{self.matrix!r}"


class Cocycle:
    """A cyclic chain psi_i : X_i -> X_{i+1 mod n} of linear maps."""

    __slots__ = ("spaces", "maps")

    def __init__(self, spaces: Sequence[Subspace], maps: Sequence[LinearMap]):
        spaces = tuple(spaces)
        maps = tuple(maps)
        if len(spaces) != len(maps) or not spaces:
            raise ChainTypeError("need one map per space")
        for i, m in enumerate(maps):
            if m.domain != spaces[i]:
                raise ChainTypeError(f"map {i} does not start at space {i}")
            if m.codomain != spaces[(i + 1) % len(spaces)]:
                raise ChainTypeError(f"map {i} does not end at space {i + 1}")
        object.__setattr__(self, "spaces", spaces)
        object.__setattr__(self, "maps", maps)

    def __setattr__(self, name, value):
        raise AttributeError("Cocycle is immutable")

    @property
    def order(self) -> int:
        return len(self.maps)

    def cycle_composite(self, start: int) -> LinearMap:
        """The n-fold composite around the cycle beginning at `start`."""
        n = self.order
        comp = self.maps[start % n]
        for k in range(1, n):
            comp = self.maps[(start + k) % n].compose(comp)
        return comp

    def __repr__(self):
        return "Cocycle(" + " -> ".join(
            s.label for s in self.spaces + (self.spaces[0],)) + ")"


@dataclass(frozen=True)
class Obstruction:
    at: Subspace
    map: LinearMap

    def is_identity(self) -> bool:
        return self.map.is_identity()


@dataclass(frozen=True)
class CocycleVerdict:
    ok: bool
    failing_index: Optional[int] = None  # 1-based position of a bad psi

    def __bool__(self):
        return self.ok


def check_regular_cocycle(c: Cocycle) -> CocycleVerdict:
    """Verify psi_i . (cycle at i) = psi_i for every cyclic start."""
    for i in range(c.order):
        e_i = c.cycle_composite(i)
        psi = c.maps[i]
        if psi.compose(e_i) != psi:
            return CocycleVerdict(False, i + 1)
    return CocycleVerdict(True)


def obstruction_of(c: Cocycle, i: int) -> Obstruction:
    """The idempotent round trip at space index i (0-based); the cocycle
    must be regular, which makes idempotency a theorem (still asserted)."""
    verdict = check_regular_cocycle(c)
    if not verdict.ok:
        raise ChainTypeError(
            f"not a regular cocycle (fails at index {verdict.failing_index})")
    e = c.cycle_composite(i)
    assert e.compose(e) == e, "obstruction of a regular cocycle must be idempotent"
    return Obstruction(c.spaces[i % c.order], e)


def obstruction_order(cocycles: Sequence[Cocycle]) -> Optional[int]:
    """Smallest chain length whose obstruction differs from the identity.

    None when every obstruction of every supplied cocycle is an identity
    (the presentation is unobstructed).
    """
    orders = []
    for c in cocycles:
        if any(not obstruction_of(c, i).is_identity()
               for i in range(c.order)):
            orders.append(c.order)
    return min(orders) if orders else None


@dataclass(frozen=True)
class MorphismVerdict:
    ok: bool
    failing_square: Optional[int] = None
    intertwines_obstruction: bool = True

    def __bool__(self):
        return self.ok


def check_cocycle_morphism(alpha: Sequence[LinearMap], c: Cocycle,
                           d: Cocycle) -> MorphismVerdict:
    """Check alpha_{i+1} . psi_i = phi_i . alpha_i for all i (cyclically),
    plus the derived relation alpha_1 . e_X1 = e_Y1 . alpha_1."""
    n = c.order
    if d.order != n or len(alpha) != n:
        raise ChainTypeError("morphism length must match the cocycles")
    for i in range(n):
        lhs = alpha[(i + 1) % n].compose(c.maps[i])
        rhs = d.maps[i].compose(alpha[i])
        if lhs != rhs:
            return MorphismVerdict(False, i + 1)
    e_x = c.cycle_composite(0)
    e_y = d.cycle_composite(0)
    inter = alpha[0].compose(e_x) == e_y.compose(alpha[0])
    return MorphismVerdict(inter, None, inter)


# -- functors ---------------------------------------------------------------


class MatrixFunctor:
    """A functor given by an object map and a morphism map.

    `base_change(spaces, matrices)` builds the standard example: objects
    are fixed and every morphism is conjugated by the per-object
    invertible matrix.
    """

    def __init__(self, object_map: Callable[[Subspace], Subspace],
                 morphism_map: Callable[[LinearMap], LinearMap],
                 name: str = "functor"):
        self.object_map = object_map
        self.morphism_map = morphism_map
        self.name = name

    @classmethod
    def identity(cls) -> "MatrixFunctor":
        return cls(lambda s: s, lambda m: m, "identity")

    @classmethod
    def base_change(cls, change: dict) -> "MatrixFunctor":
        """`change` maps space label -> invertible Matrix."""
        for label, p in change.items():
            if not p.is_invertible():
                raise DegeneratePairingError(
                    f"base change at {label} is singular")

        def on_map(m: LinearMap) -> LinearMap:
            p_dom = change[m.domain.label]
            p_cod = change[m.codomain.label]
            return LinearMap(m.domain, m.codomain,
                             p_cod * m.matrix * p_dom.inverse())

        return cls(lambda s: s, on_map, "base_change")

    def __call__(self, m: LinearMap) -> LinearMap:
        return self.morphism_map(m)


@dataclass(frozen=True)
class FunctorVerdict:
    composition_ok: bool
    obstruction_preserved: bool
    images_regular: bool
    absorption_ok: bool  # F(psi_i) . e_{F(X_i)} = F(psi_i)

    @property
    def ok(self) -> bool:
        return (self.obstruction_preserved and self.images_regular
                and self.absorption_ok)

    def __bool__(self):
        return self.ok


def check_obstructed_functor(functor: MatrixFunctor,
                             source: Sequence[Cocycle]) -> FunctorVerdict:
    """Check the obstructed-functor laws against a corpus of cocycles.

    Composition preservation is a precondition: its failure raises
    NotAFunctorError.  The verdict then records whether obstructions map
    to obstructions, whether image chains are again regular cocycles, and
    the absorption identity used in proving that.
    """
    comp_ok = True
    for c in source:
        gens = list(c.maps) + [c.cycle_composite(i) for i in range(c.order)]
        for g in gens:
            for f in gens:
                if f.codomain != g.domain:
                    continue
                if functor(g.compose(f)) != functor(g).compose(functor(f)):
                    comp_ok = False
    if not comp_ok:
        raise NotAFunctorError("morphism map does not respect composition")

    preserved = True
    regular = True
    absorption = True
    for c in source:
        image = Cocycle([functor.object_map(s) for s in c.spaces],
                        [functor(m) for m in c.maps])
        if not check_regular_cocycle(image).ok:
            regular = False
        for i in range(c.order):
            e_src = c.cycle_composite(i)
            e_img = image.cycle_composite(i)
            if functor(e_src) != e_img:
                preserved = False
            if image.maps[i].compose(e_img) != image.maps[i]:
                absorption = False
    return FunctorVerdict(comp_ok, preserved, regular, absorption)


def check_natural_transformation(components: dict, f: MatrixFunctor,
                                 g: MatrixFunctor,
                                 test_morphisms: Sequence[LinearMap]) -> bool:
    """s_Y . F(psi) = G(psi) . s_X for every supplied morphism.

    `components` maps a space label to the LinearMap s_X : F(X) -> G(X).
    """
    for psi in test_morphisms:
        s_x = components[psi.domain.label]
        s_y = components[psi.codomain.label]
        if s_y.compose(f(psi)) != g(psi).compose(s_x):
            return False
    return True


def check_tensor_obstruction(e_x: Matrix, e_y: Matrix, e_xy: Matrix) -> bool:
    """e_{X(x)Y} must be the Kronecker product of e_X and e_Y."""
    if e_xy.nrows != e_x.nrows * e_y.nrows \
            or e_xy.ncols != e_x.ncols * e_y.ncols:
        raise ValueError("tensor obstruction has the wrong dimensions")
    return e_xy == e_x.kron(e_y)


# -- duality ----------------------------------------------------------------


def dual_cocycle(c: Cocycle, pairings: dict) -> Cocycle:
    """The dual chain under nondegenerate pairings, arrows reversed.

    `pairings` maps each space label to its invertible pairing matrix
    G[r][c] = <dual basis r | basis c>.  The dual of psi_i : X_i -> X_{i+1}
    is the pairing adjoint (G_{i+1} M_i G_i^{-1})^T going the other way,
    which makes <e_dual(x*), x> = <x*, e(x)> an identity.
    """
    n = c.order
    for s in c.spaces:
        g = pairings[s.label]
        if g.nrows != s.dim or g.ncols != s.dim:
            raise ValueError(f"pairing at {s.label} has wrong size")
        if not g.is_invertible():
            raise DegeneratePairingError(f"pairing at {s.label} is singular")

    duals = {s.label: Subspace(s.label + "^", s.basis) for s in c.spaces}

    def adjoint(i: int) -> LinearMap:
        m = c.maps[i]
        g_dom = pairings[m.domain.label]
        g_cod = pairings[m.codomain.label]
        mat = (g_cod * m.matrix * g_dom.inverse()).transpose()
        return LinearMap(duals[m.codomain.label], duals[m.domain.label], mat)

    # chain X_1^ -> X_n^ -> ... -> X_2^ -> X_1^
    spaces = [duals[c.spaces[0].label]] + [
        duals[c.spaces[n - k].label] for k in range(1, n)]
    maps = [adjoint((n - 1 - k) % n) for k in range(n)]
    return Cocycle(spaces, maps)


def check_duality_identity(c: Cocycle, dual: Cocycle, pairings: dict) -> bool:
    """<e_dual(x*), x> = <x*, e(x)> on all basis pairs, every object."""
    dual_pos = {s.label: i for i, s in enumerate(dual.spaces)}
    for i, s in enumerate(c.spaces):
        g = pairings[s.label]
        e = c.cycle_composite(i).matrix
        e_dual = dual.cycle_composite(dual_pos[s.label + "^"]).matrix
        if e_dual.transpose() * g != g * e:
            return False
    return True


# -- the cocycle carried by the algebra itself ------------------------------


@dataclass(frozen=True)
class TruncationReport:
    removed: tuple  # (space label, word, reason word) triples
    dims: tuple

    @property
    def clean(self) -> bool:
        return not self.removed


def cocycle_from_algebra(system: RewriteSystem, max_deg: int):
    """Present the algebra's own decomposition as a cyclic cocycle.

    Spaces are the X_i of `decompose`; the map into X_i is left
    multiplication by generator i acting on X_{i+1 mod n}.  Bases are
    pruned to the largest sub-bases closed under all the maps at this
    truncation degree; everything pruned is reported, never silently
    dropped.  Returns (cocycle, report).
    """
    n = system.n
    if n < 2:
        raise ValueError("the cyclic cocycle needs n >= 2")
    spaces = decompose(system, max_deg)
    bases = {i + 1: list(s.basis) for i, s in enumerate(spaces)}
    removed = []
    changed = True
    while changed:
        changed = False
        for i in range(1, n + 1):
            src = (i % n) + 1  # f_i acts on X_{i+1 mod n}
            gen = Element.generator(system, i)
            keep = []
            for w in bases[src]:
                img = mul(gen, Element.from_word(system, w))
                support = img.support()
                if all(u in bases[i] for u in support):
                    keep.append(w)
                else:
                    bad = next(u for u in support if u not in bases[i])
                    removed.append((f"X{src}", w, bad))
                    changed = True
            bases[src] = keep

    subspaces = {i: Subspace(f"X{i}", tuple(bases[i]))
                 for i in range(1, n + 1)}

    def f_map(i: int) -> LinearMap:
        src = (i % n) + 1
        _, mat = left_mul_matrix(Element.generator(system, i),
                                 subspaces[src], subspaces[i])
        return LinearMap(subspaces[src], subspaces[i], mat)

    # chain X_1 -> X_n -> X_{n-1} -> ... -> X_2 -> X_1
    order = [1] + list(range(n, 1, -1))
    chain_spaces = [subspaces[i] for i in order]
    chain_maps = [f_map(order[(k + 1) % n]) for k in range(n)]
    report = TruncationReport(tuple(removed),
                              tuple(subspaces[i].dim for i in range(1, n + 1)))
    return Cocycle(chain_spaces, chain_maps), report


# -- JSON interchange ---------------------------------------------------------


def _matrix_to_json(m: Matrix) -> list:
    return [[str(x) for x in row] for row in m.rows]


def _matrix_from_json(rows: list) -> Matrix:
    from .parser import parse_scalar
    return Matrix([[parse_scalar(x) for x in row] for row in rows])


def cocycle_to_json(c: Cocycle, pairings: Optional[dict] = None) -> dict:
    doc = {
        "spaces": [{"name": s.label, "basis": s.basis_texts()}
                   for s in c.spaces],
        "maps": [{"from": m.domain.label, "to": m.codomain.label,
                  "matrix": _matrix_to_json(m.matrix)} for m in c.maps],
    }
    if pairings is not None:
        doc["pairings"] = {label: _matrix_to_json(g)
                           for label, g in sorted(pairings.items())}
    return doc


def cocycle_from_json(doc: dict):
    """Rebuild (cocycle, pairings-or-None) from the document format."""
    spaces = {}
    order = []
    for sp in doc["spaces"]:
        spaces[sp["name"]] = Subspace(sp["name"], tuple(sp["basis"]))
        order.append(sp["name"])
    maps = {}
    for m in doc["maps"]:
        maps[m["from"]] = LinearMap(spaces[m["from"]], spaces[m["to"]],
                                    _matrix_from_json(m["matrix"]))
    chain = [spaces[name] for name in order]
    chain_maps = [maps[name] for name in order]
    pairings = None
    if "pairings" in doc:
        pairings = {label: _matrix_from_json(rows)
                    for label, rows in doc["pairings"].items()}
    return Cocycle(chain, chain_maps), pairings


def load_cocycle(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return cocycle_from_json(json.load(fh))
