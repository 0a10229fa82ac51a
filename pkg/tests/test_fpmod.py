from math import comb

import pytest

import modules
from reeskit.fpmod import (
    FlatnessNotAsserted, ModuleMap, NonInjectiveBaseChange, UnitIdeal, annihilator,
    ass_membership, base_change, coker, double_dual_map, dual, dual_homs, exterior_power,
    fitting_ideal, free, hom_module, is_isomorphism_pair, minimize, present,
    same_generators_isomorphic, torsionless_quotient, torsionless_via_flat,
)
from reeskit.groebner import Ideal
from reeskit.polycore import QQ, AffineRing, PolyRing, RingMap, as_affine


def small(M):
    return str(minimize(M)[0])


def test_present_examples(nil, plane):
    A1, M1 = nil
    x = A1.ambient.var("x")
    assert present([(x,)], A1, 1) == M1
    A, M = plane
    assert str(M) == "coker [[y], [-x]]"
    assert present([(1, 0), (0, 1)], A, 2).relations == ()


def test_coker_rejects_ragged(plane):
    A, _ = plane
    with pytest.raises(ValueError):
        coker(A, [["x"], ["y", "x"]])


def test_hom_examples(nil, plane):
    A1, M1 = nil
    H = hom_module(M1, free(A1, 1))
    assert len(H.maps) == 1
    assert str(H.maps[0].matrix[0][0]) == "x"
    assert small(H.module) == "coker [[x]]"
    A, _ = plane
    assert str(dual(free(A, 2))) == "free 2"
    Ax = as_affine(PolyRing(QQ, ["x"]))
    assert dual(coker(Ax, [["x"]])).is_zero()


def test_hom_generators_well_defined(line_torsion, plane):
    for _, M in (line_torsion, plane):
        N = free(M.ring, 2)
        H = hom_module(M, N)
        for f in H.maps:
            ModuleMap(f.source, f.target, f.matrix)      # raises if not well defined
        # each relation among the generators combines them into a zero hom
        for r in H.module.relations:
            for i in range(M.ngens):
                col = [sum((c * f.matrix[a][i] for c, f in zip(r, H.maps)), M.ring.zero)
                       for a in range(N.ngens)]
                assert N.relation_module.contains(col)


def test_double_dual(nil, line_torsion, plane):
    A, _ = plane
    F = free(A, 3)
    m = double_dual_map(F)
    assert [[str(c) for c in row] for row in m.matrix] == [
        ["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]
    A1, M1 = nil
    m = double_dual_map(M1)
    assert m.is_injective() and m.is_surjective()
    Ax, Mt = line_torsion
    m = double_dual_map(Mt)
    assert [[str(c) for c in row] for row in m.matrix] == [["1", "0"]]
    assert small(m.target) == "free 1"


def test_torsionless_quotient_examples(nil, line_torsion, plane):
    A, _ = plane
    F = free(A, 2)
    T, _ = torsionless_quotient(F)
    assert same_generators_isomorphic(T, F)
    _, Mt = line_torsion
    assert small(torsionless_quotient(Mt)[0]) == "free 1"
    _, M1 = nil
    assert same_generators_isomorphic(torsionless_quotient(M1)[0], M1)


@pytest.mark.parametrize("which", ["nil", "line_torsion", "plane"])
def test_torsionless_is_idempotent(which, request):
    _, M = request.getfixturevalue(which)
    T, surj = torsionless_quotient(M)
    TT, _ = torsionless_quotient(T)
    assert same_generators_isomorphic(T, TT)
    assert surj.is_surjective()
    # M^tl embeds in A^s through the dual's generator homs
    V = [list(h) for h in dual_homs(M)]
    emb = ModuleMap(T, free(M.ring, len(V)), V)
    assert emb.is_injective()


def _localization(A, var):
    names = list(A.variables) + ["z"]
    L = AffineRing(PolyRing(QQ, names), [f"{var}*z - 1"])
    return RingMap.inclusion(A, L)


def test_torsionless_via_flat(plane, line_torsion):
    A, M = plane
    V = torsionless_via_flat(M, _localization(A, "x"))
    assert same_generators_isomorphic(V, M)
    F = free(A, 2)
    assert same_generators_isomorphic(torsionless_via_flat(F, _localization(A, "x")), F)
    Ax, Mt = line_torsion
    V = torsionless_via_flat(Mt, _localization(Ax, "x"))
    T, _ = torsionless_quotient(Mt)
    assert small(V) == "free 1"
    assert same_generators_isomorphic(V, T)


def test_torsionless_via_flat_hypotheses(plane):
    A, M = plane
    with pytest.raises(NonInjectiveBaseChange):
        torsionless_via_flat(M, RingMap.inclusion(A, A.quotient(["y"])))
    B = A.extend(["z"])
    with pytest.raises(FlatnessNotAsserted):
        torsionless_via_flat(M, RingMap.inclusion(A, B))
    assert same_generators_isomorphic(
        torsionless_via_flat(M, RingMap.inclusion(A, B), assume_flat=True), M)


def test_base_change_examples(nil, plane):
    A1, M1 = nil
    B = A1.extend(["S"], ["x*S"])
    N = base_change(M1, RingMap.inclusion(A1, B))
    assert str(N) == "coker [[x]]" and N.ring == B
    assert base_change(M1, RingMap.identity(A1)) == M1
    A, M = plane
    Bq = A.quotient(["y"])
    assert str(base_change(M, RingMap.inclusion(A, Bq))) == "coker [[0], [-x]]"


def test_base_change_composes(plane):
    A, M = plane
    B = A.extend(["z"], ["x*z - 1"])
    C = B.quotient(["y - z"])
    phi = RingMap.inclusion(A, B)
    psi = RingMap.inclusion(B, C)
    two_steps = base_change(base_change(M, phi), psi)
    one_step = base_change(M, psi.compose(phi))
    assert same_generators_isomorphic(two_steps, one_step)


def test_exterior_powers(line_torsion, plane):
    A, M = plane
    assert exterior_power(M, 1) == M
    for n in range(1, 5):
        for d in range(n + 1):
            E = exterior_power(free(A, n), d)
            assert E.ngens == comb(n, d) and not E.relations
    _, Mt = line_torsion
    assert small(exterior_power(Mt, 2)) == "coker [[-x]]"


def test_annihilators(nil, plane):
    A1, _ = nil
    assert annihilator(free(A1, 1)).is_zero()
    assert str(annihilator(coker(A1, [["x"]]))) == "(x)"
    assert annihilator(free(A1, 0)).is_unit()


def test_ass_membership(nil, plane):
    A1, _ = nil
    assert ass_membership(Ideal(A1, ["x"]), free(A1, 1))
    A, _ = plane
    assert not ass_membership(Ideal(A, ["x", "y"]), free(A, 1))
    Axy = A.quotient(["x*y"])
    assert ass_membership(Ideal(Axy, ["x"]), free(Axy, 1))
    assert ass_membership(Ideal(Axy, ["y"]), free(Axy, 1))
    with pytest.raises(UnitIdeal):
        ass_membership(Ideal(A, [1]), free(A, 1))


def test_isomorphism_proxies(nil):
    A1, M1 = nil
    D = dual(M1)
    target = coker(A1, [["x"]])
    # Fitting ideals and annihilator agree with A1/(x) ...
    assert fitting_ideal(D, 0) == fitting_ideal(target, 0)
    assert annihilator(D) == annihilator(target)
    # ... and mutual surjections certify the isomorphism
    assert D.ngens == 1
    one = [[A1.one]]
    assert is_isomorphism_pair(ModuleMap(D, target, one), ModuleMap(target, D, one))


def test_torsionless_quotient_matches_double_dual_kernel():
    for _, M in modules.suite_modules():
        T, _ = torsionless_quotient(M)
        assert T.relation_module == double_dual_map(M).kernel()
