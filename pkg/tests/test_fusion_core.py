"""Tests for the canonical-basis fusion category engine."""

import random
from fractions import Fraction

import pytest

from tensoradj.catalog import (
    build_fibonacci,
    build_pointed,
    cyclic_table,
    golden_ratio,
    klein_table,
    s3_table,
    z2_nontrivial_cocycle,
    z4_nontrivial_cocycle,
)
from tensoradj.errors import RigidityError, ShapeError
from tensoradj.exact_scalar import ExactMatrix, ExactScalar, sc
from tensoradj.fusion_core import (
    Morphism,
    ObjectExpr,
    hom_basis,
    mor_to_vec,
    solve_morphism_equation,
    vec_to_mor,
)


from conftest import random_morphism


def test_object_expr_basics():
    x = ObjectExpr.simple(3, 1)
    y = ObjectExpr((1, 0, 2))
    assert (x + y).mult == (1, 1, 2)
    assert list(y.copies()) == [(0, 0), (2, 0), (2, 1)]


def test_morphism_compose_shapes():
    x = ObjectExpr((2, 1))
    f = Morphism.identity(x)
    assert (f @ f) == f
    with pytest.raises(ShapeError):
        Morphism.zero(x, x) @ Morphism.zero(ObjectExpr((1, 1)), ObjectExpr((1, 1)))


def test_hom_basis_roundtrip():
    src = ObjectExpr((2, 1))
    tgt = ObjectExpr((1, 2))
    basis = hom_basis(src, tgt)
    assert len(basis) == 2 * 1 + 1 * 2
    rng = random.Random(3)
    m = random_morphism(rng, src, tgt)
    assert vec_to_mor(src, tgt, mor_to_vec(m)) == m


def test_tensor_obj_fusion_rules(fib):
    one = fib.simple_obj(0)
    tau = fib.simple_obj(1)
    assert fib.tensor_obj(tau, tau).mult == (1, 1)
    t2 = fib.tensor_obj(fib.tensor_obj(tau, tau), tau)
    assert t2.mult == (1, 2)
    assert fib.tensor_obj(one, tau).mult == tau.mult


def test_tensor_mor_bifunctorial(fib, rng):
    tau = fib.simple_obj(1)
    x = fib.tensor_obj(tau, tau)
    f1 = random_morphism(rng, x, x)
    f2 = random_morphism(rng, x, x)
    g1 = random_morphism(rng, tau, tau)
    g2 = random_morphism(rng, tau, tau)
    lhs = fib.tensor_mor(f1 @ f2, g1 @ g2)
    rhs = fib.tensor_mor(f1, g1) @ fib.tensor_mor(f2, g2)
    assert lhs == rhs
    assert fib.tensor_mor(Morphism.identity(x), Morphism.identity(tau)).is_identity()


def test_associator_naturality(fib, rng):
    tau = fib.simple_obj(1)
    x = fib.tensor_obj(tau, tau)
    f = random_morphism(rng, tau, tau)
    g = random_morphism(rng, x, x)
    h = random_morphism(rng, tau, tau)
    a = fib.associator(tau, x, tau)
    lhs = fib.tensor_mor(f, fib.tensor_mor(g, h)) @ a
    rhs = a @ fib.tensor_mor(fib.tensor_mor(f, g), h)
    assert lhs == rhs


def test_associator_strict_unit(fib):
    tau = fib.simple_obj(1)
    one = fib.unit_obj()
    for trip in [(one, tau, tau), (tau, one, tau), (tau, tau, one)]:
        assert fib.associator(*trip).is_identity()


def test_validate_good_categories(vec_z2, vec_z2_tw, vec_s3, fib):
    for cat in (vec_z2, vec_z2_tw, vec_s3, fib):
        assert cat.validate() == []


def test_validate_all_catalog_categories():
    cats = [
        build_pointed("z3", cyclic_table(3)),
        build_pointed("z4", cyclic_table(4)),
        build_pointed("z4w", cyclic_table(4), z4_nontrivial_cocycle()),
        build_pointed("k4", klein_table()),
    ]
    for cat in cats:
        assert cat.validate() == []


def test_validate_catches_broken_pentagon(vec_z2):
    # perturb one F-entry of the twisted Z/2 category and expect a pentagon hit
    bad = build_pointed("bad", cyclic_table(2), z2_nontrivial_cocycle())
    bad.F[(1, 1, 1, 1)] = ExactMatrix(1, 1, [[sc(2)]])
    violations = bad.validate()
    assert any("pentagon" in v for v in violations)


def test_nontrivial_z2_associator_sign():
    tw = build_pointed("z2w", cyclic_table(2), z2_nontrivial_cocycle())
    g = tw.simple_obj(1)
    a = tw.associator(g, g, g)
    assert a.blocks[1][0, 0] == sc(-1)


def test_fibonacci_f_matrix_is_involution(fib):
    f = fib.f_block(1, 1, 1, 1)
    assert (f @ f).is_identity()


def test_rigidity_pointed(vec_s3):
    ev_r, ev_l = vec_s3.rigidity()
    assert all(x == sc(1) for x in ev_r)
    assert all(x == sc(1) for x in ev_l)


def test_rigidity_fibonacci_quantum_dimension(fib):
    fib.rigidity()
    tau = fib.simple_obj(1)
    # closed loop ev' . coev equals the golden ratio
    loop = fib.ev_left(tau) @ fib.coev_right(tau)
    assert loop.blocks[0][0, 0] == golden_ratio()


def test_rigidity_zigzags_composite(fib):
    # zig-zags hold blockwise for a composite object
    x = fib.tensor_obj(fib.simple_obj(1), fib.simple_obj(1))
    idx = Morphism.identity(x)
    xs = fib.dual_obj(x)
    idxs = Morphism.identity(xs)
    z1 = (
        fib.tensor_mor(idx, fib.ev_right(x))
        @ fib.associator(x, xs, x)
        @ fib.tensor_mor(fib.coev_right(x), idx)
    )
    assert z1 == idx
    z2 = (
        fib.tensor_mor(fib.ev_right(x), idxs)
        @ fib.associator_inv(xs, x, xs)
        @ fib.tensor_mor(idxs, fib.coev_right(x))
    )
    assert z2 == idxs


def test_reverse_category_valid(fib, vec_s3, vec_z2_tw):
    for cat in (fib, vec_s3, vec_z2_tw):
        rev = cat.reverse()
        assert rev.validate() == []


def test_reverse_of_nonabelian_swaps_fusion(vec_s3):
    rev = vec_s3.reverse()
    r, s = 1, 3
    rs = vec_s3.N[r][s]
    assert rev.N[s][r] == rs


def test_solve_morphism_equation_identity(fib, rng):
    tau = fib.simple_obj(1)
    x = fib.tensor_obj(tau, tau)
    target = random_morphism(rng, x, x)
    sol, unique = solve_morphism_equation(lambda u: u, target, x, x)
    assert unique and sol == target
