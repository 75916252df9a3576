"""Shared fixtures: catalog categories and small helpers."""

import random
from fractions import Fraction

import pytest

from tensoradj.catalog import (
    build_fibonacci,
    build_pointed,
    cyclic_table,
    s3_table,
    z2_nontrivial_cocycle,
)
from tensoradj.exact_scalar import sc
from tensoradj.fusion_core import Morphism


def random_morphism(rng, source, target):
    """A morphism with small random integer entries."""
    m = Morphism.zero(source, target)
    for blk in m.blocks:
        for r in range(blk.rows):
            for c in range(blk.cols):
                blk[r, c] = sc(Fraction(rng.randint(-3, 3)))
    return m


@pytest.fixture(scope="session")
def vec_z2():
    return build_pointed("vec-z2", cyclic_table(2))


@pytest.fixture(scope="session")
def vec_z2_tw():
    return build_pointed("vec-z2-tw", cyclic_table(2), z2_nontrivial_cocycle())


@pytest.fixture(scope="session")
def vec_z3():
    return build_pointed("vec-z3", cyclic_table(3))


@pytest.fixture(scope="session")
def vec_s3():
    return build_pointed("vec-s3", s3_table())


@pytest.fixture(scope="session")
def fib():
    return build_fibonacci()


@pytest.fixture()
def rng():
    return random.Random(12345)
