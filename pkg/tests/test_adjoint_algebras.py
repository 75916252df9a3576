import random

import pytest

from tensoradj.errors import InvalidRescale, TheoremViolation
from tensoradj.exact_scalar import sc
from tensoradj.fusion_core import ObjectExpr
from tensoradj.module_cat import regular_module
from tensoradj.center_engine import validate_center_algebra
from tensoradj.functor_cat import ModuleFunctor, ChainCell
from tensoradj.adjoint_algebras import (
    ModuleEquivalence,
    TwoCatAdjoint,
    class_function_basis,
    compare_adjoints,
    dinatural_invariance,
    equivalent_modules_iso,
    functor_transport_universality,
    shimizu_adjoint,
    transported_end_universality,
    verify_dual_transpose,
)

_tc_cache = {}


def _twocat(C):
    key = id(C)
    if key not in _tc_cache:
        _tc_cache[key] = TwoCatAdjoint(regular_module(C))
    return _tc_cache[key]


def test_end_route_is_center_algebra(vec_z2, vec_z2_tw, fib):
    for C, mult in ((vec_z2, (2, 0)), (vec_z2_tw, (2, 0)), (fib, (2, 1))):
        sh = shimizu_adjoint(regular_module(C))
        assert sh.algebra.carrier.obj.mult == mult
        assert sh.algebra.carrier.validate() == []
        assert validate_center_algebra(sh.algebra) == []


def test_functor_route_is_center_algebra(vec_z2_tw, fib):
    for C in (vec_z2_tw, fib):
        tc = _twocat(C)
        assert tc.algebra.carrier.validate() == []
        assert validate_center_algebra(tc.algebra) == []


def test_braiding_cells_are_module_natural(fib):
    tc = _twocat(fib)
    for x in range(2):
        assert tc.sigma_bar[x].is_module_natural()
        for c in tc.sigma_bar[x].comps:
            assert c.is_invertible()
    assert tc.m2.is_module_natural()
    assert tc.u2.is_module_natural()


def test_comparison_iso(vec_z2, vec_z2_tw, fib):
    for C in (vec_z2, vec_z2_tw, fib):
        M = regular_module(C)
        report = compare_adjoints(M, twocat=_twocat(C))
        assert report.ok, report.certificates
        assert report.phi.is_invertible()


def test_comparison_detects_sign_perturbation(fib):
    M = regular_module(fib)
    report = compare_adjoints(M, twocat=_twocat(fib), perturb_sign=True)
    assert not report.ok
    assert not report.certificates["braiding-compat"]


def test_functor_dual_equals_transpose(vec_z2_tw, fib):
    for C, expected in ((vec_z2_tw, 2 * 2 * 2), (fib, 2 * 2 * 2)):
        M = regular_module(C)
        checked = verify_dual_transpose(M, twocat=_twocat(C))
        assert checked == expected


def test_rescaling_moves_algebra_by_central_iso(fib, vec_z2_tw):
    for C in (fib, vec_z2_tw):
        M = regular_module(C)
        report = dinatural_invariance(M, [2, -3])
        assert report.ok, report.certificates
    with pytest.raises(InvalidRescale):
        dinatural_invariance(regular_module(fib), [1, 0])
    with pytest.raises(InvalidRescale):
        dinatural_invariance(regular_module(fib), [1])


def test_identity_equivalence_induces_identity(vec_z2):
    M = regular_module(vec_z2)
    ident = ModuleFunctor.identity(M)
    eq = ModuleEquivalence(
        X=ident,
        Y=ident,
        alpha=ChainCell.identity(ident),
        beta=ChainCell.identity(ident),
    )
    tc = _twocat(vec_z2)
    report = equivalent_modules_iso(eq, tc_source=tc, tc_target=tc)
    assert report.ok, report.certificates
    assert report.f_cell.is_identity()
    assert report.f1.is_identity()


def test_transported_end_universality(fib, vec_z2):
    rng = random.Random(11)
    for C in (fib, vec_z2):
        M = regular_module(C)
        X = ObjectExpr(tuple(1 for _ in range(C.n)))
        report = transported_end_universality(M, X, rng, trials=5)
        assert report["ok"]


def test_functor_transport_universality(fib, vec_z2):
    rng = random.Random(13)
    for C in (fib, vec_z2):
        M = regular_module(C)
        report = functor_transport_universality(
            M, rng, trials=2, twocat=_twocat(C)
        )
        assert report["ok"]
        assert report["space_dim"] >= 1


def test_class_functions_of_regular(vec_z2, fib):
    for C, dim in ((vec_z2, 2), (fib, 2)):
        M = regular_module(C)
        basis = class_function_basis(M)
        assert len(basis) == dim
