import json
from random import Random

import pytest

from rga.algebra import Subspace
from rga.category import (ChainTypeError, Cocycle, DegeneratePairingError,
                          LinearMap, MatrixFunctor, NotAFunctorError,
                          check_cocycle_morphism, check_duality_identity,
                          check_natural_transformation,
                          check_obstructed_functor, check_regular_cocycle,
                          check_tensor_obstruction, cocycle_from_algebra,
                          cocycle_from_json, cocycle_to_json, dual_cocycle,
                          obstruction_of, obstruction_order)
from rga.linalg import Matrix
from rga.rewrite import RewriteSystem
from rga.scalar import Scalar

from helpers import rand_scalar

SWAP = Matrix([[0, 1], [1, 0]])


def algebra_cocycle():
    c, report = cocycle_from_algebra(RewriteSystem(2), 2)
    assert report.clean
    return c


def one_dim_cocycle(a, b):
    x1 = Subspace("X1", ("u",))
    x2 = Subspace("X2", ("v",))
    return Cocycle([x1, x2], [LinearMap(x1, x2, Matrix([[a]])),
                              LinearMap(x2, x1, Matrix([[b]]))])


def obstructed_example():
    y1 = Subspace("Y1", ("p",))
    y2 = Subspace("Y2", ("q", "r"))
    psi1 = LinearMap(y1, y2, Matrix([[1], [0]]))
    psi2 = LinearMap(y2, y1, Matrix([[1, 0]]))
    return Cocycle([y1, y2], [psi1, psi2])


def test_algebra_cocycle_is_swap_pair():
    c = algebra_cocycle()
    assert [m.matrix for m in c.maps] == [SWAP, SWAP]
    assert check_regular_cocycle(c).ok


def test_identity_cocycle_regular():
    assert check_regular_cocycle(one_dim_cocycle(1, 1)).ok


def test_zero_one_cocycle_fails_at_two():
    v = check_regular_cocycle(one_dim_cocycle(0, 1))
    assert not v.ok and v.failing_index == 2


def test_chain_type_error():
    x1 = Subspace("X1", ("u",))
    x2 = Subspace("X2", ("v", "w"))
    with pytest.raises(ChainTypeError):
        Cocycle([x1, x2], [LinearMap(x1, x1, Matrix([[1]])),
                           LinearMap(x2, x1, Matrix([[1, 0]]))])


def test_obstructions_identity_for_algebra_cocycle():
    c = algebra_cocycle()
    for i in range(2):
        assert obstruction_of(c, i).is_identity()
    assert obstruction_order([c]) is None


def test_obstruction_idempotent_and_order():
    c = obstructed_example()
    assert check_regular_cocycle(c).ok
    e = obstruction_of(c, 1)
    assert not e.is_identity()
    assert e.map.compose(e.map) == e.map
    assert e.map.matrix == Matrix([[1, 0], [0, 0]])
    assert obstruction_order([algebra_cocycle(), c]) == 2
    assert obstruction_order([]) is None


def test_obstruction_of_refuses_irregular():
    with pytest.raises(ChainTypeError):
        obstruction_of(one_dim_cocycle(0, 1), 0)


def test_cocycle_morphism_identity():
    c = algebra_cocycle()
    ident = [LinearMap.identity(s) for s in c.spaces]
    v = check_cocycle_morphism(ident, c, c)
    assert v.ok and v.intertwines_obstruction


def test_cocycle_morphism_violation():
    c = algebra_cocycle()
    bad = [LinearMap.identity(c.spaces[0]),
           LinearMap(c.spaces[1], c.spaces[1], Matrix([[2, 0], [0, 1]]))]
    v = check_cocycle_morphism(bad, c, c)
    assert not v.ok and v.failing_square in (1, 2)


def test_swap_conjugation_is_cocycle_morphism():
    # conjugating both spaces by the swap maps the chain to itself
    c = algebra_cocycle()
    alpha = [LinearMap(s, s, SWAP) for s in c.spaces]
    assert check_cocycle_morphism(alpha, c, c).ok


def test_identity_functor():
    assert check_obstructed_functor(MatrixFunctor.identity(),
                                    [algebra_cocycle(),
                                     obstructed_example()]).ok


def test_base_change_functor():
    rng = Random(21)

    def rand_invertible(dim):
        while True:
            m = Matrix([[rand_scalar(rng, 3) for _ in range(dim)]
                        for _ in range(dim)])
            if m.is_invertible():
                return m

    for source in (algebra_cocycle(), obstructed_example()):
        change = {s.label: rand_invertible(s.dim) for s in source.spaces}
        f = MatrixFunctor.base_change(change)
        v = check_obstructed_functor(f, [source])
        assert v.ok and v.images_regular and v.obstruction_preserved


def test_functor_image_is_regular_cocycle():
    # the lemma: images of regular cocycles are regular
    source = obstructed_example()
    change = {"Y1": Matrix([[2]]), "Y2": Matrix([[1, 1], [0, 1]])}
    f = MatrixFunctor.base_change(change)
    image = Cocycle([f.object_map(s) for s in source.spaces],
                    [f(m) for m in source.maps])
    assert check_regular_cocycle(image).ok


def test_non_functor_raises():
    c = algebra_cocycle()

    def warp(m: LinearMap) -> LinearMap:
        if m.matrix == SWAP:
            return LinearMap(m.domain, m.codomain, Matrix([[0, 1], [0, 0]]))
        return m

    with pytest.raises(NotAFunctorError):
        check_obstructed_functor(MatrixFunctor(lambda s: s, warp), [c])


def test_functor_breaking_obstruction_detected():
    # scaling morphisms is a functor on this free chain but sends the
    # obstruction to a non-obstruction
    c = obstructed_example()

    def double(m: LinearMap) -> LinearMap:
        return LinearMap(m.domain, m.codomain, m.matrix.scale(2))

    f = MatrixFunctor(lambda s: s, double)
    # composition fails (F(g.f) = 2 g f while F(g)F(f) = 4 g f)
    with pytest.raises(NotAFunctorError):
        check_obstructed_functor(f, [c])


def test_natural_transformation_identity_components():
    c = algebra_cocycle()
    f = MatrixFunctor.identity()
    comps = {s.label: LinearMap.identity(s) for s in c.spaces}
    assert check_natural_transformation(comps, f, f, list(c.maps))


def test_natural_transformation_obstruction_components():
    # s_X = e_X is natural from the identity functor to itself on a
    # regular cocycle
    c = obstructed_example()
    f = MatrixFunctor.identity()
    comps = {s.label: c.cycle_composite(i) for i, s in enumerate(c.spaces)}
    assert check_natural_transformation(comps, f, f, list(c.maps))


def test_natural_transformation_scaled_component_fails():
    c = obstructed_example()
    f = MatrixFunctor.identity()
    comps = {s.label: LinearMap.identity(s) for s in c.spaces}
    comps["Y2"] = LinearMap(c.spaces[1], c.spaces[1],
                            Matrix([[2, 0], [0, 2]]))
    assert not check_natural_transformation(comps, f, f, list(c.maps))


def test_tensor_obstruction():
    e_x = Matrix([[1, 0], [0, 0]])
    e_y = Matrix.identity(2)
    expected = Matrix([[1, 0, 0, 0], [0, 1, 0, 0],
                       [0, 0, 0, 0], [0, 0, 0, 0]])
    assert check_tensor_obstruction(e_x, e_y, expected)
    assert not check_tensor_obstruction(e_x, e_y, Matrix.identity(4))
    with pytest.raises(ValueError):
        check_tensor_obstruction(e_x, e_y, Matrix.identity(3))


def test_identity_tensor_obstruction():
    assert check_tensor_obstruction(Matrix.identity(2), Matrix.identity(3),
                                    Matrix.identity(6))


# -- duality ---------------------------------------------------------------------


def test_dual_of_algebra_cocycle_with_unit_pairings():
    c = algebra_cocycle()
    pairings = {s.label: Matrix.identity(s.dim) for s in c.spaces}
    d = dual_cocycle(c, pairings)
    assert [m.matrix for m in d.maps] == [SWAP, SWAP]
    assert check_regular_cocycle(d).ok
    assert check_duality_identity(c, d, pairings)


def test_dual_of_identity_cocycle():
    c = one_dim_cocycle(1, 1)
    pairings = {"X1": Matrix([[3]]), "X2": Matrix([[5]])}
    d = dual_cocycle(c, pairings)
    assert check_regular_cocycle(d).ok
    assert check_duality_identity(c, d, pairings)


def test_dual_random_pairings():
    rng = Random(23)

    def rand_invertible(dim):
        while True:
            m = Matrix([[rand_scalar(rng, 3) for _ in range(dim)]
                        for _ in range(dim)])
            if m.is_invertible():
                return m

    for source in (algebra_cocycle(), obstructed_example()):
        for _ in range(10):
            pairings = {s.label: rand_invertible(s.dim)
                        for s in source.spaces}
            d = dual_cocycle(source, pairings)
            assert check_regular_cocycle(d).ok
            assert check_duality_identity(source, d, pairings)


def test_degenerate_pairing_rejected():
    c = one_dim_cocycle(1, 1)
    with pytest.raises(DegeneratePairingError):
        dual_cocycle(c, {"X1": Matrix([[0]]), "X2": Matrix([[1]])})


# -- truncated construction and JSON ----------------------------------------------


def test_cocycle_from_algebra_n3():
    c, report = cocycle_from_algebra(RewriteSystem(3), 4)
    assert check_regular_cocycle(c).ok
    assert report.dims == (6, 6, 6)
    assert len(report.removed) > 0  # truncation is reported, not hidden


def test_cocycle_from_algebra_rejects_n1():
    with pytest.raises(ValueError):
        cocycle_from_algebra(RewriteSystem(1), 2)


def test_json_round_trip():
    c = algebra_cocycle()
    pairings = {s.label: Matrix.identity(s.dim) for s in c.spaces}
    doc = cocycle_to_json(c, pairings)
    text = json.dumps(doc)
    c2, p2 = cocycle_from_json(json.loads(text))
    assert [m.matrix for m in c2.maps] == [m.matrix for m in c.maps]
    assert [s.label for s in c2.spaces] == [s.label for s in c.spaces]
    assert p2 == pairings
    # and scalar entries keep exact values through the text form
    assert json.loads(text)["maps"][0]["matrix"][0] == ["0", "1"]


def test_json_scalar_entries_exact():
    x1 = Subspace("X1", ("u",))
    m = LinearMap(x1, x1, Matrix([[Scalar(1, -2)]]))
    c = Cocycle([x1], [m])
    doc = cocycle_to_json(c)
    c2, _ = cocycle_from_json(doc)
    assert c2.maps[0].matrix == m.matrix
    assert doc["maps"][0]["matrix"] == [["1-2*w"]]
