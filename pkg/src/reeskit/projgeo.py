"""Proj of graded algebras A[T]/J: affine charts, emptiness, density, closures.

U ⊆ Spec A is always given by an ideal Jc cutting out its complement.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .fpmod import FPModule, ass_membership, dual_homs, exterior_power, free
from .groebner import Ideal, saturate, zero_ideal
from .polycore import AffineRing, Polynomial, PolyRing, RingMap, as_affine
from .rees import GradedAlgebra, rees_presentation


class NotAssociated(ValueError):
    pass


@dataclass(frozen=True)
class ProjChart:
    """Chart T_i != 0, with u_j = T_j / T_i for j != i."""
    index: int
    ideal: Ideal                    # in the free ring on base variables + u's
    origin: GradedAlgebra = field(compare=False, repr=False)
    unames: tuple = ()              # u-name for each T index (None at ``index``)

    @property
    def ring(self) -> AffineRing:
        return AffineRing(self.ideal.ring.ambient, self.ideal.gb)

    def is_empty(self) -> bool:
        return self.ideal.is_unit()

    def __str__(self):
        return f"chart {self.origin.tvars[self.index]}: {self.ideal.ring.ambient.variables} {self.ideal}"


def chart_names(G: GradedAlgebra, i: int) -> tuple:
    taken = set(G.base.variables)
    out = []
    for j in range(len(G.tvars)):
        if j == i:
            out.append(None)
            continue
        name = f"u{j + 1}"
        while name in taken:
            name += "'"
        taken.add(name)
        out.append(name)
    return tuple(out)


def proj_chart(G: GradedAlgebra, i: int) -> ProjChart:
    """Dehomogenize J at T_i = 1 (exact, J being T-homogeneous)."""
    base = G.base
    unames = chart_names(G, i)
    amb = PolyRing(base.field, base.variables + tuple(u for u in unames if u),
                   base.ambient.order)
    images = {x: amb.var(x) for x in base.variables}
    for j, t in enumerate(G.tvars):
        images[t] = amb.one if j == i else amb.var(unames[j])
    src = G.ring.ambient
    seq = [images[v] for v in src.variables]
    gens = [g.evaluate(seq, amb) for g in G.ideal.gb]
    return ProjChart(i, Ideal(amb.quotient(()), gens), G, unames)


def proj_charts(G: GradedAlgebra) -> list[ProjChart]:
    return [proj_chart(G, i) for i in range(len(G.tvars))]


def irrelevant_ideal(G: GradedAlgebra) -> Ideal:
    return Ideal(G.ring, [G.t(i) for i in range(len(G.tvars))])


def proj_ideal(G: GradedAlgebra) -> Ideal:
    """J : (T_1..T_n)^∞, which determines Proj(A[T]/J)."""
    if not G.tvars:
        return Ideal(G.ring, [G.ring.ambient.one])
    return saturate(G.ideal, irrelevant_ideal(G))


def is_proj_empty(G: GradedAlgebra) -> bool:
    """Every T_i nilpotent mod J, tested as J : T_i^∞ = (1) for each i."""
    for i in range(len(G.tvars)):
        if not saturate(G.ideal, Ideal(G.ring, [G.t(i)])).is_unit():
            return False
    return True


def charts_empty(G: GradedAlgebra) -> bool:
    """Independent emptiness test: every chart ideal is the unit ideal."""
    return all(c.is_empty() for c in proj_charts(G))


def same_proj(G: GradedAlgebra, H: GradedAlgebra) -> bool:
    return proj_ideal(G) == proj_ideal(H)


def charts_glue(G: GradedAlgebra, i: int, j: int) -> bool:
    """Chart i with u_j inverted is isomorphic to chart j with u'_i inverted.

    The identification is u'_k = u_k / u_j, u'_i = 1 / u_j; checked by
    building both ring maps (well-definedness is verified on construction)
    and testing that they are mutually inverse.
    """
    ci, cj = proj_chart(G, i), proj_chart(G, j)

    def localize(c: ProjChart, at: str):
        amb = c.ideal.ring.ambient
        w = amb.fresh_names("w", 1, avoid=amb.variables)[0]
        big = amb.extend([w])
        rels = [g.change_ring(big) for g in c.ideal.gb] + [big.var(w) * big.var(at) - 1]
        return AffineRing(big, rels), w

    Li, wi = localize(ci, ci.unames[j])
    Lj, wj = localize(cj, cj.unames[i])
    ai, aj = Li.ambient, Lj.ambient
    base = G.base.variables
    # chart j -> chart i
    to_i = {x: ai.var(x) for x in base}
    for k, u in enumerate(cj.unames):
        if u is None:
            continue
        to_i[u] = ai.var(wi) if k == i else ai.var(ci.unames[k]) * ai.var(wi)
    to_i[wj] = ai.var(ci.unames[j])
    # chart i -> chart j
    to_j = {x: aj.var(x) for x in base}
    for k, u in enumerate(ci.unames):
        if u is None:
            continue
        to_j[u] = aj.var(wj) if k == j else aj.var(cj.unames[k]) * aj.var(wj)
    to_j[wi] = aj.var(cj.unames[i])
    try:
        f = RingMap(Lj, Li, to_i)
        g = RingMap(Li, Lj, to_j)
    except ValueError:
        return False
    return f.compose(g) == RingMap.identity(Li) and g.compose(f) == RingMap.identity(Lj)


@dataclass(frozen=True)
class DensityReport:
    dense: bool
    witness: Polynomial | None = None

    def summary(self) -> str:
        return "dense" if self.dense else f"not dense, witness {self.witness}"


def schematically_dense(A, Jc: Ideal) -> DensityReport:
    """U = Spec A minus V(Jc) is schematically dense iff (0 : Jc^∞) = 0."""
    A = as_affine(A)
    S = saturate(zero_ideal(A), Jc)
    if S.is_zero():
        return DensityReport(True)
    return DensityReport(False, S.relative_gens()[0])


@dataclass(frozen=True)
class AssReport:
    per_prime: tuple            # (prime, holds) pairs
    holds: bool

    def summary(self) -> str:
        if self.holds:
            return "every dual hom lands in each prime: preimage of U is dense"
        bad = ", ".join(str(p) for p, ok in self.per_prime if not ok)
        return f"fails at {bad}: preimage of U is not dense"


def assofrees_check(M: FPModule, primes) -> AssReport:
    """Hom(M, A) = Hom(M, p) for each given associated prime p of A outside U.

    Each p is validated as an associated prime of A first.  The aggregate
    predicts whether the preimage of U is schematically dense in Proj R(M).
    """
    A = M.ring
    homs = dual_homs(M)
    out = []
    for p in primes:
        if not ass_membership(p, free(A, 1)):
            raise NotAssociated(f"{p} is not an associated prime of {A}")
        out.append((p, all(p.contains(f) for h in homs for f in h)))
    return AssReport(tuple(out), all(ok for _, ok in out))


def closure_of_preimage(G: GradedAlgebra, Jc: Ideal) -> GradedAlgebra:
    """A[T] / (J : (Jc A[T])^∞), the schematic closure of the preimage of U."""
    ext = Jc.extend_to(G.ring)
    return GradedAlgebra(G.base, G.tvars, saturate(G.ideal, ext))


def preimage_is_dense(G: GradedAlgebra, Jc: Ideal) -> bool:
    """Direct test: the closure of the preimage of U has the same Proj as G."""
    return same_proj(closure_of_preimage(G, Jc), G)


@dataclass(frozen=True)
class NashTransform:
    algebra: GradedAlgebra
    charts: tuple


def nash_transform(M: FPModule, d: int, Jc: Ideal) -> NashTransform:
    """Closure of the preimage of U in the total blow-up of ∧^d M.

    The caller asserts that M is locally free of rank d on U.
    """
    if d < 1:
        raise ValueError("the generic rank must be at least 1")
    G = closure_of_preimage(rees_presentation(exterior_power(M, d)), Jc)
    return NashTransform(G, tuple(proj_charts(G)))
