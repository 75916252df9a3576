"""Acceptance gate: one test per shipped guarantee of the engine.

Running `pytest -v tests/test_acceptance.py` yields exactly one pass or
fail line per criterion. The expensive shared objects (both adjoint
algebra routes for every catalog module) are built once per session and
reused across criteria, which keeps the whole gate well under a minute.
"""

import json
import random

import pytest

from tensoradj import catalog as cat
from tensoradj.adjoint_algebras import (
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
from tensoradj.center_engine import validate_center_algebra, verify_end_universal
from tensoradj.fusion_core import ObjectExpr
from tensoradj.module_cat import regular_module

SEED = 20260825


def catalog_pairs():
    return [
        (cid, mid)
        for cid in cat.category_ids()
        for mid in cat.module_ids(cid)
    ]


@pytest.fixture(scope="session")
def sh_all():
    return {
        (cid, mid): shimizu_adjoint(cat.get_module(cid, mid))
        for cid, mid in catalog_pairs()
    }


@pytest.fixture(scope="session")
def tc_all():
    return {
        (cid, mid): TwoCatAdjoint(cat.get_module(cid, mid))
        for cid, mid in catalog_pairs()
    }


def test_criterion_01_catalog_validation():
    for cid in cat.category_ids():
        C = cat.get_category(cid)
        assert C.validate() == [], f"category {cid} fails validation"
        C.rigidity()
    for cid, mid in catalog_pairs():
        M = cat.get_module(cid, mid)
        assert M.validate() == [], f"module {cid}/{mid} fails validation"

    # negative control: negating one root of unity in the associator table
    # must break the pentagon
    doc = cat.category_to_json(cat.get_category("vecz4w"))
    entry = doc["F"][0]["matrix"][0][0]
    entry["coords"] = ["-" + c if not c.startswith("-") else c[1:]
                      for c in entry["coords"]]
    bad = cat.category_from_json(doc, name="perturbed")
    assert any("pentagon" in p for p in bad.validate())

    # negative control: an involutive but wrong dual table must break the
    # duality pairing
    doc = cat.category_to_json(cat.get_category("vecz3"))
    doc["dual"] = [0, 1, 2]
    bad = cat.category_from_json(doc, name="selfdual")
    assert any("duality" in p for p in bad.validate())

    # negative control: doubling one action-associator entry must break the
    # mixed pentagon
    doc = cat.module_to_json(cat.get_module("vecz2w", "regular"), "vecz2w")
    entry = doc["Mblocks"][0]["matrix"][0][0]
    entry["coords"] = [str(2 * int(c)) for c in entry["coords"]]
    bad = cat.module_from_json(doc, cat.get_category("vecz2w"), name="perturbed")
    assert any("mixed pentagon" in p for p in bad.validate())


def test_criterion_02_carrier_identity(sh_all):
    for cid in cat.category_ids():
        C = cat.get_category(cid)
        expected = [
            sum(C.N[a][C.dual[a]][c] for a in range(C.n)) for c in range(C.n)
        ]
        got = list(sh_all[(cid, "regular")].algebra.carrier.obj.mult)
        assert got == expected, f"{cid}: carrier {got} != {expected}"
    # frozen values: pointed categories concentrate on the unit, the
    # golden-ratio category picks up one copy of the nontrivial simple
    assert list(sh_all[("vecz2", "regular")].algebra.carrier.obj.mult) == [2, 0]
    assert list(sh_all[("vecs3", "regular")].algebra.carrier.obj.mult) == [6] + [0] * 5
    assert list(sh_all[("fib", "regular")].algebra.carrier.obj.mult) == [2, 1]


def test_criterion_03_algebra_laws(sh_all):
    for key, sh in sh_all.items():
        problems = validate_center_algebra(sh.algebra)
        assert problems == [], f"{key}: {problems[:3]}"


def test_criterion_04_comparison_isomorphism(sh_all, tc_all):
    for cid, mid in catalog_pairs():
        M = cat.get_module(cid, mid)
        rep = compare_adjoints(M, shimizu=sh_all[(cid, mid)],
                               twocat=tc_all[(cid, mid)])
        assert rep.ok, f"{cid}/{mid}: {rep.certificates}"
        assert all(rep.certificates.values())
    # negative control: flipping the sign of one half-braiding block on the
    # end-route side must be detected
    for cid, mid in catalog_pairs():
        M = cat.get_module(cid, mid)
        rep = compare_adjoints(M, shimizu=sh_all[(cid, mid)],
                               twocat=tc_all[(cid, mid)], perturb_sign=True)
        assert not rep.ok, f"{cid}/{mid}: perturbation went undetected"


def test_criterion_05_dual_transpose(tc_all):
    for cid, mid in catalog_pairs():
        M = cat.get_module(cid, mid)
        count = verify_dual_transpose(M, twocat=tc_all[(cid, mid)])
        assert count > 0, f"{cid}/{mid}: no tuples checked"


def test_criterion_06_rescaling_invariance(sh_all):
    rng = random.Random(SEED)
    choices = [1, 2, 3, 5, -1, -2, -3]
    for cid, mid in catalog_pairs():
        M = cat.get_module(cid, mid)
        for _ in range(10):
            scales = [rng.choice(choices) for _ in range(M.nm)]
            rep = dinatural_invariance(M, scales, shimizu=sh_all[(cid, mid)])
            assert rep.ok, f"{cid}/{mid} scales {scales}: {rep.certificates}"


def test_criterion_07_equivalence_transport(tc_all):
    M = regular_module(cat.get_category("vecz2"))
    tc = tc_all[("vecz2", "regular")]

    eq = cat.relabel_equivalence(M, [1, 0])
    rep = equivalent_modules_iso(eq, tc_source=tc, tc_target=tc)
    assert rep.ok, f"relabeled: {rep.certificates}"

    _m2, eq = cat.gauge_equivalence(M, [[1, 1], [5, -2]])
    rep = equivalent_modules_iso(eq, tc_source=tc)
    assert rep.ok, f"gauge-transformed: {rep.certificates}"


def test_criterion_08_class_function_dimensions(sh_all):
    expected = {
        "vecz2": 2,
        "vecz2w": 2,
        "vecz3": 3,
        "vecz4": 4,
        "vecz2z2": 4,
        "vecs3": 3,
        "fib": 2,
    }
    computed = {}
    for cid in expected:
        sh = sh_all[(cid, "regular")]
        M = regular_module(cat.get_category(cid))
        computed[cid] = len(
            class_function_basis(M, shimizu=sh, regular_adjoint=sh)
        )
    assert computed == expected, (
        f"class function dimensions {computed} differ from expected {expected}"
    )


def test_criterion_09_end_universality(sh_all):
    rng = random.Random(SEED)
    for key, sh in sh_all.items():
        rep = verify_end_universal(sh.end, rng, trials=20)
        assert rep["ok"], f"{key}: {rep}"
        assert rep["recovery_trials"] >= 20


def test_criterion_10_transported_universality(tc_all):
    rng = random.Random(SEED)
    for cid in ("vecz2", "fib"):
        M = regular_module(cat.get_category(cid))
        X = ObjectExpr(tuple(1 for _ in range(M.base.n)))
        rep = transported_end_universality(M, X, rng, trials=10)
        assert rep["ok"], f"{cid} tensor transport: {rep}"
        rep = functor_transport_universality(
            M, rng, trials=3, twocat=tc_all[(cid, "regular")]
        )
        assert rep["ok"], f"{cid} functor transport: {rep}"
