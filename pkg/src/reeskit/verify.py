"""Built-in replay of the worked examples and propositions (``reeskit verify``)."""

from __future__ import annotations

from dataclasses import dataclass

from .fpmod import (
    coker, direct_sum, free, is_isomorphism_pair, ModuleMap, present,
    torsionless_quotient, torsionless_via_flat,
)
from .groebner import Ideal
from .polycore import QQ, AffineRing, PolyRing, RingMap, as_affine
from .projgeo import (
    assofrees_check, charts_empty, is_proj_empty, nash_transform, preimage_is_dense,
    proj_charts, schematically_dense,
)
from .rees import (
    check_injectivity_flat, compare_base_change, graded_piece, rees_presentation,
    sym_to_rees_quotient, view_over,
)


@dataclass(frozen=True)
class Check:
    name: str
    expected: str
    actual: str

    @property
    def ok(self) -> bool:
        return self.expected == self.actual


def _nilpotent_example():
    Rx = PolyRing(QQ, ["x"])
    x = Rx.var("x")
    A = AffineRing(Rx, [x ** 2])
    return A, coker(A, [[x]])


def _plane():
    A = as_affine(PolyRing(QQ, ["x", "y"]))
    x, y = A.ambient.gens()
    return A, present([(x,), (y,)], A, 1)


def _identity_pair(M, N):
    """Maps M -> N and N -> M sending generator i to generator i."""
    amb = M.ring.ambient
    eye = [[amb.one if i == j else amb.zero for j in range(M.ngens)] for i in range(M.ngens)]
    return ModuleMap(M, N, eye), ModuleMap(N, M, eye)


def _power_pair(M, N):
    """Graded piece of R(I) vs present(I^n): same generators, in the same order."""
    try:
        f, g = _identity_pair(M, N)
    except ValueError:
        return False
    return is_isomorphism_pair(f, g)


def builtin_checks() -> list[Check]:
    out = []
    A, M = _nilpotent_example()
    R = rees_presentation(M)
    out.append(Check("nilpotent example: Rees ideal", "(x*T, T^2)", str(R.ideal)))
    B = A.extend(["S"], ["x*S"])
    phi = RingMap.inclusion(A, B)
    rep = compare_base_change(M, phi)
    out.append(Check("nilpotent example: extended ideal", "(x*S, x*T, T^2)",
                     str(view_over(rep.left, A))))
    out.append(Check("nilpotent example: Rees ideal after base change", "(x*S, x*T)",
                     str(view_over(rep.right, A))))
    out.append(Check("nilpotent example: comparison", "no canonical map, witness T^2",
                     rep.summary()))
    x = A.ambient.var("x")
    agree = (is_proj_empty(R), charts_empty(R),
             assofrees_check(M, [Ideal(A, [x])]).holds)
    out.append(Check("nilpotent example: empty blow-up", "(True, True, True)", str(agree)))

    P, I = _plane()
    G = rees_presentation(I)
    out.append(Check("plane: Rees ideal of (x,y)", "(y*T1 - x*T2)", str(G.ideal)))
    out.append(Check("plane: charts", "['(x*u2 - y)', '(y*u1 - x)']",
                     str([str(c.ideal) for c in proj_charts(G)])))
    X, Y = P.ambient.gens()
    nash = nash_transform(I, 1, Ideal(P, [X, Y]))
    out.append(Check("plane: Nash transform equals the blow-up", "True",
                     str(nash.algebra.ideal == G.ideal)))
    out.append(Check("Sym modulo the versal kernel equals Rees", "True",
                     str(sym_to_rees_quotient(I).ideal == G.ideal
                         and sym_to_rees_quotient(M).ideal == R.ideal)))

    Bq = P.quotient([Y])
    rep = compare_base_change(I, RingMap.inclusion(P, Bq))
    out.append(Check("base change to A/(y)", "canonical surjection verified", rep.summary()))

    Ap = AffineRing(PolyRing(QQ, ["x", "y", "z"]), ["x*z - 1"])
    loc = RingMap.inclusion(P, Ap)
    out.append(Check("Rees map into the localization at x is injective", "True",
                     str(check_injectivity_flat(I, loc))))

    T, _ = torsionless_quotient(I)
    V = torsionless_via_flat(I, loc)
    out.append(Check("torsionless quotient via localization, ideal (x,y)", "True",
                     str(is_isomorphism_pair(*_identity_pair(T, V)))))
    Ax = as_affine(PolyRing(QQ, ["x"]))
    xx = Ax.ambient.var("x")
    Mt = direct_sum(free(Ax, 1), coker(Ax, [[xx]]))
    Axz = AffineRing(PolyRing(QQ, ["x", "z"]), ["x*z - 1"])
    T, _ = torsionless_quotient(Mt)
    V = torsionless_via_flat(Mt, RingMap.inclusion(Ax, Axz))
    out.append(Check("torsionless quotient via localization, A + A/(x)", "True",
                     str(is_isomorphism_pair(*_identity_pair(T, V)))))

    I_ideal = Ideal(P, [X, Y])
    pieces = []
    for n in (1, 2, 3):
        pieces.append(_power_pair(graded_piece(G, n),
                                  present([(g,) for g in _monomial_power(P, n)], P, 1)))
    out.append(Check("graded pieces of R((x,y)) are the powers", "[True, True, True]",
                     str(pieces)))

    Axy = P.quotient([X * Y])
    out.append(Check("density on xy = 0 away from x = 0", "not dense, witness y",
                     schematically_dense(Axy, Ideal(Axy, [X])).summary()))
    out.append(Check("density of the punctured plane", "dense",
                     schematically_dense(P, I_ideal).summary()))
    out.append(Check("density criterion vs direct closure (nilpotent example)", "True",
                     str(assofrees_check(M, [Ideal(A, [x])]).holds
                         == preimage_is_dense(R, Ideal(A, [x])))))
    return out


def _monomial_power(P, n):
    """x^n, x^(n-1) y, ..., y^n: the generators of (x,y)^n in the Rees monomial order."""
    X, Y = P.ambient.gens()
    return [X ** (n - k) * Y ** k for k in range(n + 1)]


def run() -> tuple[bool, list[Check]]:
    checks = builtin_checks()
    return all(c.ok for c in checks), checks
