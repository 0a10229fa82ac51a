import itertools

import pytest

import suite
from reeskit.groebner import (
    Ideal, buchberger, eliminate, ideal_quotient, intersect, is_groebner, normal_form,
    ring_map_kernel, saturate, saturate_iterated,
)
from reeskit.polycore import LEX, QQ, AffineRing, PolyRing, RingMap, as_affine

Rxy = PolyRing(QQ, ["x", "y"])
x, y = Rxy.gens()


def test_buchberger_examples():
    G = buchberger([x ** 2 - 1, x * y - 1], LEX)
    assert [str(g) for g in G] == ["x - y", "y^2 - 1"]
    assert buchberger([x]) == [x]
    RT = PolyRing(QQ, ["x", "T"])
    gens = [RT("x^2"), RT("x*T"), RT("T^2")]
    assert sorted(map(str, buchberger(gens))) == sorted(map(str, gens))
    assert buchberger([]) == []
    assert buchberger([x, Rxy.one + x]) == [Rxy.one]


def test_gb_is_groebner_and_canonical():
    gens = [x ** 3 - y, x * y ** 2 - 1, x + y ** 3]
    ref = buchberger(gens)
    assert is_groebner(ref)
    for perm in itertools.permutations(gens):
        assert buchberger(list(perm)) == ref
    assert all(g.lc == 1 for g in ref)
    keys = [Rxy.order.key(g.lm) for g in ref]
    assert keys == sorted(keys, reverse=True)


def test_normal_form_examples():
    assert normal_form(x ** 2, [x]).is_zero()
    RT = PolyRing(QQ, ["x", "T"])
    G = buchberger([RT("x*T"), RT("x^2")])
    assert normal_form(RT("T^2"), G) == RT("T^2")
    assert normal_form(y - x, [x - y]).is_zero()


def test_eliminate_examples():
    R = PolyRing(QQ, ["t", "x"])
    E = eliminate(Ideal(R, ["t^2", "x - t"]), ["t"])
    assert str(E) == "(x^2)"
    assert str(eliminate(Ideal(Rxy, [x - y]), [])) == "(x - y)"
    R3 = PolyRing(QQ, ["x", "Y", "T"])
    E = eliminate(Ideal(R3, ["Y*x - T", "x^2"]), ["Y"])
    assert str(E) == "(x^2, x*T, T^2)"


def test_quotient_examples():
    A = as_affine(Rxy).quotient([x * y])
    assert str(ideal_quotient(Ideal(A, []), Ideal(A, [x]))) == "(y)"
    I = Ideal(Rxy, [x ** 2 * y])
    assert ideal_quotient(I, Ideal(Rxy, [1])) == I
    assert str(ideal_quotient(I, Ideal(Rxy, [y]))) == "(x^2)"


def test_saturate_examples():
    A = AffineRing(PolyRing(QQ, ["x", "T"]), ["x^2"])
    I = Ideal(A, ["x*T", "T^2"])
    assert saturate(I, Ideal(A, ["T"])).is_unit()
    B = as_affine(Rxy).quotient([x * y])
    assert str(saturate(Ideal(B, []), Ideal(B, [x]))) == "(y)"
    assert saturate(I, Ideal(A, [1])) == I


@pytest.mark.parametrize("case", suite.CASES, ids=lambda c: c.name)
def test_saturation_paths_agree(case):
    I, J = case.ideal(), case.jideal()
    S = saturate(I, J)
    assert S == saturate_iterated(I, J)
    assert saturate(S, J) == S
    assert ideal_quotient(I, J).issubset(S)


def test_intersect_examples():
    X, Y = Ideal(Rxy, [x]), Ideal(Rxy, [y])
    assert str(intersect(X, Y)) == "(x*y)"
    assert intersect(X, X) == X
    assert intersect(X, Ideal(Rxy, [1])) == X


def test_kernel_examples():
    T = PolyRing(QQ, ["T"])
    A = AffineRing(PolyRing(QQ, ["x"]), ["x^2"])
    assert str(ring_map_kernel(RingMap(T, A, {"T": "x"}))) == "(T^2)"
    AT = A.extend(["T"])
    AY = A.extend(["Y"])
    K = ring_map_kernel(RingMap(AT, AY, {"x": "x", "T": "x*Y"}))
    assert str(K) == "(x*T, T^2)"
    assert ring_map_kernel(RingMap.identity(Rxy)).is_zero()


def test_kernel_is_sound():
    S = PolyRing(QQ, ["a", "b", "c"])
    phi = RingMap(S, Rxy, {"a": "x^2", "b": "x*y", "c": "y^2"})
    K = ring_map_kernel(phi)
    assert str(K) == "(b^2 - a*c)"
    assert all(phi(g).is_zero() for g in K.gb)


def test_zero_and_unit_ideals():
    assert Ideal(Rxy, []).is_zero() and str(Ideal(Rxy, [])) == "(0)"
    assert Ideal(Rxy, [3]).is_unit() and str(Ideal(Rxy, [3])) == "(1)"


@pytest.mark.parametrize("case", suite.CASES, ids=lambda c: c.name)
def test_engine_matches_oracle(case):
    assert suite.membership_agrees(case)
    assert suite.elimination_agrees(case)
    assert suite.quotient_agrees(case)
    assert suite.saturation_agrees(case)
