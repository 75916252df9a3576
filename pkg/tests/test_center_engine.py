import random

import pytest
from conftest import random_morphism

from tensoradj.errors import TheoremViolation
from tensoradj.exact_scalar import sc
from tensoradj.fusion_core import Morphism, ObjectExpr
from tensoradj.module_cat import regular_module
from tensoradj.center_engine import (
    CenterAlgebra,
    CenterObject,
    EndData,
    center_hom,
    center_tensor,
    universality_trials,
    validate_center_algebra,
    verify_end_universal,
    verify_joint_injectivity,
)


def test_end_carrier_fib(fib):
    end = EndData(regular_module(fib))
    assert end.obj.mult == (2, 1)


def test_end_carrier_pointed(vec_z2, vec_s3):
    assert EndData(regular_module(vec_z2)).obj.mult == (2, 0)
    end = EndData(regular_module(vec_s3))
    assert end.obj.mult == (6, 0, 0, 0, 0, 0)


def test_pi_at_simple_matches_projection(fib):
    end = EndData(regular_module(fib))
    for m in range(2):
        assert end.pi_at(ObjectExpr.simple(2, m)) == end.projections[m]


def test_end_universal(fib, vec_z2_tw):
    rng = random.Random(7)
    for C in (fib, vec_z2_tw):
        end = EndData(regular_module(C))
        report = verify_end_universal(end, rng, trials=8)
        assert report["ok"]
        assert report["recovery_trials"] == 8


def test_deficient_family_fails_universality(fib):
    end = EndData(regular_module(fib))
    with pytest.raises(TheoremViolation):
        verify_joint_injectivity(fib, end.obj, end.projections[:1])


def test_overlapping_family_fails_uniqueness(fib):
    rng = random.Random(3)
    end = EndData(regular_module(fib))
    # repeating one projection leaves part of the carrier unseen
    fam = [end.projections[0], end.projections[0]]
    with pytest.raises(TheoremViolation):
        verify_joint_injectivity(fib, end.obj, fam)
    with pytest.raises(TheoremViolation):
        universality_trials(fib, end.obj, fam, rng, 4)


def _char_object(C, val):
    """V = the nontrivial simple of pointed Z2 with a scalar braiding."""
    V = ObjectExpr.simple(2, 1)
    sigma = []
    for a in range(2):
        aobj = ObjectExpr.simple(2, a)
        s = Morphism.identity(C.tensor_obj(V, aobj))
        if a == 1:
            s = s.scale(sc(val))
        sigma.append(s)
    return CenterObject(C, V, sigma)


def test_center_object_characters(vec_z2):
    plus = _char_object(vec_z2, 1)
    minus = _char_object(vec_z2, -1)
    assert plus.validate() == []
    assert minus.validate() == []
    bad = _char_object(vec_z2, 2)
    assert any(d[0] == "hexagon" for d in bad.validate())


def test_center_hom_separates_braidings(vec_z2):
    plus = _char_object(vec_z2, 1)
    minus = _char_object(vec_z2, -1)
    assert len(center_hom(plus, plus)) == 1
    assert len(center_hom(plus, minus)) == 0


def test_center_tensor_of_characters(vec_z2):
    minus = _char_object(vec_z2, -1)
    prod = center_tensor(minus, minus)
    assert prod.validate() == []
    assert prod.obj.mult == (1, 0)
    # (-1) * (-1) = +1 on the nontrivial simple
    assert prod.sigma[1].is_identity()


def test_sigma_at_extends_blockwise(vec_z2):
    minus = _char_object(vec_z2, -1)
    X = ObjectExpr((1, 2))
    s = minus.sigma_at(X)
    assert s.source.mult == vec_z2.tensor_obj(minus.obj, X).mult
    assert (s @ s.inverse()).is_identity()


def test_trivial_center_algebra(vec_z2):
    C = vec_z2
    V = C.unit_obj()
    sigma = [
        Morphism.identity(C.tensor_obj(V, C.simple_obj(a))) for a in range(2)
    ]
    carrier = CenterObject(C, V, sigma)
    alg = CenterAlgebra(
        carrier,
        Morphism.identity(V),
        Morphism.identity(V),
    )
    assert validate_center_algebra(alg) == []


def test_center_algebra_detects_bad_unit(vec_z2):
    C = vec_z2
    V = C.unit_obj()
    sigma = [
        Morphism.identity(C.tensor_obj(V, C.simple_obj(a))) for a in range(2)
    ]
    carrier = CenterObject(C, V, sigma)
    alg = CenterAlgebra(
        carrier,
        Morphism.identity(V),
        Morphism.identity(V).scale(sc(2)),
    )
    defects = validate_center_algebra(alg)
    assert ("left-unit",) in defects
