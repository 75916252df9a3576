"""Tests for module categories, internal Homs, and the canonical maps."""

from fractions import Fraction

import pytest

from tensoradj.errors import ShapeError
from tensoradj.exact_scalar import ExactMatrix, sc
from tensoradj.fusion_core import Morphism, ObjectExpr
from tensoradj.module_cat import ModuleCategory, regular_module

from conftest import random_morphism


@pytest.fixture(scope="module")
def regs(request):
    return None


def _reg(cat):
    return regular_module(cat)


def test_regular_modules_validate(vec_z2, vec_z2_tw, vec_s3, fib):
    for cat in (vec_z2, vec_z2_tw, vec_s3, fib):
        M = _reg(cat)
        assert M.validate() == []
        assert M.is_indecomposable()


def test_regular_action_matches_tensor(fib):
    M = _reg(fib)
    tau = fib.simple_obj(1)
    x = fib.tensor_obj(tau, tau)
    assert M.act_obj(x, ObjectExpr(tau.mult)).mult == fib.tensor_obj(x, tau).mult
    ma = M.module_assoc(x, tau, ObjectExpr(x.mult))
    aa = fib.associator(x, tau, x)
    assert ma.blocks == aa.blocks


def test_validate_catches_broken_mblock(vec_z2_tw):
    M = _reg(vec_z2_tw)
    bad = ModuleCategory(
        vec_z2_tw,
        M.msimples,
        M.A,
        dict(M.Mblocks),
        name="bad",
    )
    bad.Mblocks[(1, 1, 1, 1)] = ExactMatrix(1, 1, [[sc(7)]])
    assert any("mixed pentagon" in v for v in bad.validate())


def test_internal_hom_pointed(vec_s3):
    # Hom(g, h) = h g^{-1} for the regular module of a pointed category
    M = _reg(vec_s3)
    t = vec_s3
    for g in range(6):
        for h in range(6):
            H = M.ihom_obj(M.msimple_obj(g), M.msimple_obj(h))
            expect = t.N[h][t.dual[g]]  # h * g^{-1} by fusion with duals
            # the object is the simple h g^{-1}
            assert sum(H.mult) == 1
            a = H.mult.index(1)
            # a . g = h in the group
            assert t.N[a][g][h] == 1


def test_internal_hom_fibonacci(fib):
    M = _reg(fib)
    one = M.msimple_obj(0)
    tau = M.msimple_obj(1)
    assert M.ihom_obj(one, one).mult == (1, 0)
    assert M.ihom_obj(tau, tau).mult == (1, 1)
    assert M.ihom_obj(one, tau).mult == (0, 1)


def test_phi_psi_inverse(fib, rng):
    M = _reg(fib)
    tau = fib.simple_obj(1)
    X = fib.tensor_obj(tau, tau)
    P = ObjectExpr((1, 1))
    Q = ObjectExpr((0, 2))
    H = M.ihom_obj(P, Q)
    alpha = random_morphism(rng, X, H)
    assert M.psi(X, P, Q, M.phi(X, P, Q, alpha)) == alpha
    beta = random_morphism(rng, M.act_obj(X, P), Q)
    assert M.phi(X, P, Q, M.psi(X, P, Q, beta)) == beta


def test_phi_is_ev_after_action(fib, rng):
    # phi(alpha) = ev o (alpha . id)
    M = _reg(fib)
    tau = fib.simple_obj(1)
    X = fib.tensor_obj(tau, tau)
    P = ObjectExpr((1, 1))
    Q = ObjectExpr((1, 2))
    H = M.ihom_obj(P, Q)
    alpha = random_morphism(rng, X, H)
    lhs = M.phi(X, P, Q, alpha)
    rhs = M.ev_module(P, Q) @ M.act_mor(alpha, Morphism.identity(P))
    assert lhs == rhs


def test_ihom_mor_bifunctorial(fib, rng):
    M = _reg(fib)
    P = ObjectExpr((1, 1))
    Q = ObjectExpr((0, 2))
    f = random_morphism(rng, P, P)
    f2 = random_morphism(rng, P, P)
    g = random_morphism(rng, Q, Q)
    g2 = random_morphism(rng, Q, Q)
    assert M.ihom_mor(f @ f2, g2 @ g) == M.ihom_mor(f2, g2) @ M.ihom_mor(f, g)
    assert M.ihom_mor(Morphism.identity(P), Morphism.identity(Q)).is_identity()


def test_comp_module_unital_associative(vec_z2_tw, fib):
    for cat in (vec_z2_tw, fib):
        M = _reg(cat)
        for m in range(M.nm):
            P = M.msimple_obj(m)
            H = M.ihom_obj(P, P)
            comp = M.comp_module(P)
            unit = M.coev_module(cat.unit_obj(), P)
            idH = Morphism.identity(H)
            # left unit: comp o (unit (x) id) = id (sources align strictly)
            left = comp @ cat.tensor_mor(unit, idH)
            assert left == idH
            right = comp @ cat.tensor_mor(idH, unit)
            assert right == idH
            # associativity
            lhs = comp @ cat.tensor_mor(comp, idH)
            rhs = comp @ cat.tensor_mor(idH, comp) @ cat.associator(H, H, H)
            assert lhs == rhs


def test_frak_a_invertible_and_coherent(fib, vec_z2_tw):
    for cat in (fib, vec_z2_tw):
        M = _reg(cat)
        for m in range(M.nm):
            P = M.msimple_obj(m)
            for xi in range(cat.n):
                X = cat.simple_obj(xi)
                for ni in range(M.nm):
                    N = M.msimple_obj(ni)
                    a = M.frak_a(X, P, N)
                    assert a.is_invertible()


def test_frak_a_module_functor_axiom(fib):
    # Hom(P, -) with coherence frak_a satisfies the module functor axiom
    cat = fib
    M = _reg(cat)
    P = M.msimple_obj(1)
    for xi in range(cat.n):
        for yi in range(cat.n):
            for ni in range(M.nm):
                X, Y = cat.simple_obj(xi), cat.simple_obj(yi)
                N = M.msimple_obj(ni)
                YN = M.act_obj(Y, N)
                H = M.ihom_obj(P, N)
                lhs = (
                    cat.tensor_mor(Morphism.identity(X), M.frak_a(Y, P, N))
                    @ M.frak_a(X, P, YN)
                    @ M.ihom_mor(Morphism.identity(P), M.module_assoc(X, Y, N))
                )
                rhs = cat.associator(X, Y, H) @ M.frak_a(cat.tensor_obj(X, Y), P, N)
                assert lhs == rhs


def test_frak_b_equals_direct_transpose(fib, vec_z2_tw, vec_s3):
    # the rigidity chain for frak_b collapses to the adjunction transpose
    for cat in (fib, vec_z2_tw, vec_s3):
        M = _reg(cat)
        for xi in range(cat.n):
            X = cat.simple_obj(xi)
            for m in range(M.nm):
                P = M.msimple_obj(m)
                for q in range(M.nm):
                    Q = M.msimple_obj(q)
                    XP = M.act_obj(X, P)
                    Z = M.ihom_obj(XP, Q)
                    direct = M.psi(
                        cat.tensor_obj(Z, X),
                        P,
                        Q,
                        M.ev_module(XP, Q) @ M.module_assoc(Z, X, P),
                    )
                    assert M.frak_b(X, P, Q) == direct


def test_decomposable_module_detected(vec_z2):
    # direct sum of two copies of the trivial module over Vec_Z2: action
    # multiplicities block-diagonal, never mixing the two summands
    A = [
        # unit acts as identity
        [[1, 0], [0, 1]],
        # g acts as identity too (two copies of the Vec module)
        [[1, 0], [0, 1]],
    ]
    M = ModuleCategory(vec_z2, ["m0", "m1"], A, {}, name="decomp")
    assert M.validate() == []
    assert not M.is_indecomposable()
