import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from reeskit.fpmod import coker, direct_sum, free, present
from reeskit.polycore import QQ, AffineRing, PolyRing, as_affine


@pytest.fixture
def nil():
    """A = Q[x]/(x^2) with M = coker [x]."""
    R = PolyRing(QQ, ["x"])
    A = AffineRing(R, [R.var("x") ** 2])
    return A, coker(A, [[R.var("x")]])


@pytest.fixture
def plane():
    """A = Q[x,y] with M = the ideal (x, y) presented by its Koszul relation."""
    A = as_affine(PolyRing(QQ, ["x", "y"]))
    x, y = A.ambient.gens()
    return A, present([(x,), (y,)], A, 1)


@pytest.fixture
def line_torsion():
    """A = Q[x] with M = A + A/(x)."""
    A = as_affine(PolyRing(QQ, ["x"]))
    x = A.ambient.var("x")
    return A, direct_sum(free(A, 1), coker(A, [[x]]))
