"""Symmetric and Rees algebras of modules, versal maps and base-change comparisons.

A graded algebra is ``A[T_1..T_n]/J`` with J homogeneous in the T-variables
(base variables have degree 0).  The T-variables are indexed by the module's
generators, so two presentations of the same algebra built from the same
module can be compared by ideal equality.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from typing import Sequence

from .fpmod import (
    FPModule, base_change, check_injective_flat, dual_homs,
)
from .groebner import Ideal, ring_map_kernel
from .modsyz import Submodule, matvec
from .polycore import AffineRing, Polynomial, RingMap, as_affine


@dataclass(frozen=True)
class GradedAlgebra:
    base: AffineRing
    tvars: tuple
    ideal: Ideal            # in base.extend(tvars); contains the base relations

    @property
    def ring(self) -> AffineRing:
        return self.ideal.ring

    @property
    def t_indices(self) -> list[int]:
        amb = self.ring.ambient
        return [amb.index(t) for t in self.tvars]

    def t(self, i: int) -> Polynomial:
        return self.ring.ambient.var(self.tvars[i])

    def quotient(self) -> AffineRing:
        """The algebra as an affine ring A[T]/J."""
        amb = self.ring.ambient
        return AffineRing(amb, self.ideal.gb)

    def t_degrees(self, f: Polynomial) -> set[int]:
        return f.degree_in(self.t_indices)

    def is_homogeneous(self) -> bool:
        return all(len(self.t_degrees(g)) <= 1 for g in self.ideal.gb)

    def same_ideal(self, other: GradedAlgebra) -> bool:
        return self.ideal == other.ideal

    def __str__(self):
        return f"{self.base}[{','.join(self.tvars)}] / {self.ideal}"


@dataclass(frozen=True)
class VersalMap:
    """M -> F = A^r, row k of ``matrix`` is the k-th coordinate hom M -> A."""
    module: FPModule
    matrix: tuple                    # r rows of length n
    provenance: str = field(default="dual generators", compare=False)

    @property
    def rank(self) -> int:
        return len(self.matrix)

    def column(self, i: int) -> tuple:
        return tuple(row[i] for row in self.matrix)


def _check_hom_row(M: FPModule, row) -> bool:
    if not M.relations:
        return True
    return not any(matvec([row], r, M.ring)[0] for r in M.relations)


def dual_is_generated_by(M: FPModule, rows: Sequence[Sequence]) -> bool:
    """Do the coordinate homs ``rows`` generate M* (i.e. is F* -> M* onto)?"""
    span = Submodule(M.ring, M.ngens, rows)
    return all(span.contains(h) for h in dual_homs(M))


def versal_map(M: FPModule, homs: Sequence[Sequence] | None = None) -> VersalMap:
    """Versal map from a surjection F' -> M*.

    By default the surjection sends the basis of F' to the generator homs of
    the dual; ``homs`` may list any other generating family (redundant
    entries allowed).  Both the hom property and surjectivity are verified.
    """
    ring = M.ring
    if homs is None:
        rows = [tuple(h) for h in dual_homs(M)]
        provenance = "dual generators"
    else:
        amb = ring.ambient
        rows = [tuple(ring.nf(amb(f)) for f in h) for h in homs]
        provenance = "caller surjection"
    for row in rows:
        if len(row) != M.ngens or not _check_hom_row(M, row):
            raise ValueError("row is not a homomorphism M -> A")
    if not dual_is_generated_by(M, rows):
        raise ValueError("the given homs do not generate the dual")
    return VersalMap(M, tuple(rows), provenance)


def padded_versal_map(M: FPModule) -> VersalMap:
    """Versal map through a deliberately redundant surjection onto M*."""
    rows = [tuple(h) for h in dual_homs(M)]
    if rows:
        amb = M.ring.ambient
        total = tuple(sum((r[i] for r in rows), amb.zero) for i in range(M.ngens))
        rows = rows + [total, tuple(f * 2 for f in rows[0]), tuple(amb.zero for _ in rows[0])]
    return versal_map(M, rows)


def t_names(base: AffineRing, n: int, avoid=()) -> tuple[str, ...]:
    return tuple(base.ambient.fresh_names("T", n, avoid))


def _graded(base: AffineRing, tvars, gens_fn) -> GradedAlgebra:
    ring = base.extend(tvars)
    return GradedAlgebra(base, tuple(tvars), Ideal(ring, gens_fn(ring)))


def sym_presentation(M: FPModule, tvars: Sequence[str] | None = None) -> GradedAlgebra:
    """Sym(M) = A[T]/(sum_i r_i T_i for each relation r)."""
    base = M.ring
    tvars = tuple(tvars) if tvars else t_names(base, M.ngens)

    def gens(ring):
        amb = ring.ambient
        T = [amb.var(t) for t in tvars]
        out = []
        for r in M.relations:
            acc = amb.zero
            for ri, ti in zip(r, T):
                acc = acc + ri.change_ring(amb) * ti
            out.append(acc)
        return out
    return _graded(base, tvars, gens)


def versal_algebra_map(M: FPModule, v: VersalMap, source: AffineRing,
                       tvars: Sequence[str]) -> RingMap:
    """Sym(M) (or any quotient of A[T] given as ``source``) -> Sym(F) = A[Y]."""
    base = M.ring
    ynames = base.ambient.fresh_names("Y", v.rank, avoid=tvars)
    target = base.extend(ynames)
    amb = target.ambient
    Y = [amb.var(y) for y in ynames]
    images = {x: amb.var(x) for x in base.variables}
    for i, t in enumerate(tvars):
        acc = amb.zero
        for k in range(v.rank):
            if v.matrix[k][i]:
                acc = acc + v.matrix[k][i].change_ring(amb) * Y[k]
        images[t] = acc
    return RingMap(source, target, images)


def rees_presentation(M: FPModule, v: VersalMap | None = None,
                      tvars: Sequence[str] | None = None) -> GradedAlgebra:
    """R(M) as the image of Sym(M) -> Sym(F) along a versal map M -> F.

    J is the kernel of A[T] -> A[Y], T_i -> sum_k v(g_i)_k Y_k.
    """
    base = M.ring
    if v is None:
        v = versal_map(M)
    tvars = tuple(tvars) if tvars else t_names(base, M.ngens)
    ring = base.extend(tvars)
    if M.ngens == 0:
        return GradedAlgebra(base, (), Ideal(ring, []))
    phi = versal_algebra_map(M, v, ring, tvars)
    K = ring_map_kernel(phi)
    return GradedAlgebra(base, tvars, K)


def graded_piece(G: GradedAlgebra, n: int) -> FPModule:
    """Degree-n part of A[T]/J as an A-module.

    Generators are the degree-n T-monomials (descending in the ring order);
    relations are the coordinates of T^b * g for the generators g of J.
    """
    if n < 0:
        raise ValueError("negative degree")
    base = G.base
    bamb = base.ambient
    amb = G.ring.ambient
    tidx = G.t_indices
    nt = len(tidx)
    monos = []
    for combo in combinations_with_replacement(range(nt), n):
        e = [0] * nt
        for c in combo:
            e[c] += 1
        monos.append(tuple(e))
    key = amb.order.key

    def full(e):
        m = [0] * amb.nvars
        for k, i in enumerate(tidx):
            m[i] = e[k]
        return tuple(m)
    monos.sort(key=lambda e: key(full(e)), reverse=True)
    index = {e: k for k, e in enumerate(monos)}
    base_idx = [amb.index(x) for x in bamb.variables]

    def coords(f: Polynomial):
        out = [dict() for _ in monos]
        for m, c in f.terms.items():
            te = tuple(m[i] for i in tidx)
            be = tuple(m[i] for i in base_idx)
            d = out[index[te]]
            d[be] = d.get(be, 0) + c
        return tuple(base.nf(Polynomial.from_terms(bamb, d)) for d in out)

    rels = []
    for g in G.ideal.relative_gens():
        degs = G.t_degrees(g)
        if len(degs) != 1:
            raise ValueError(f"ideal generator {g} is not T-homogeneous")
        d, = degs
        if d > n:
            continue
        for combo in combinations_with_replacement(range(nt), n - d):
            mult = amb.one
            for c in combo:
                mult = mult * amb.var(G.tvars[c])
            rels.append(coords(mult * g))
    return FPModule(base, len(monos), tuple(rels))


def algebra_image_quotient(B: AffineRing, psi: RingMap) -> AffineRing:
    """B / ker(psi): the image of B in psi's target."""
    if psi.source != as_affine(B):
        raise ValueError("map does not start at B")
    K = ring_map_kernel(psi)
    return AffineRing(psi.source.ambient, K.gb)


def sym_to_rees_quotient(M: FPModule, v: VersalMap | None = None) -> GradedAlgebra:
    """Sym(M) modulo the kernel of the versal-induced map, as a graded algebra."""
    v = v or versal_map(M)
    S = sym_presentation(M)
    B = S.quotient()
    psi = versal_algebra_map(M, v, B, S.tvars)
    Q = algebra_image_quotient(B, psi)
    return GradedAlgebra(M.ring, S.tvars, Ideal(S.ring, Q.ideal_gens))


def extend_graded_ideal(G: GradedAlgebra, phi: RingMap) -> Ideal:
    """J ⊗ B: apply phi to the base coefficients of J's generators, T fixed."""
    BT = phi.target.extend(G.tvars)
    amb = BT.ambient
    # G.ring's variables are the base variables followed by the T-variables
    images = [amb(f) for f in phi.images] + [amb.var(t) for t in G.tvars]
    return Ideal(BT, [g.evaluate(images, amb) for g in G.ideal.lifted_gens()])


@dataclass(frozen=True)
class BaseChangeReport:
    surjective: bool
    left: Ideal                  # R(M)'s ideal extended to B[T]
    right: Ideal                 # ideal of R(M ⊗ B)
    witness: Polynomial | None   # generator of left outside right
    hypotheses: dict = field(default_factory=dict, compare=False)

    def summary(self) -> str:
        if self.surjective:
            return "canonical surjection verified"
        return f"no canonical map, witness {self.witness}"


def view_over(I: Ideal, base: AffineRing) -> Ideal:
    """I as an ideal of base[remaining variables] (same ambient, fewer relations)."""
    extra = [v for v in I.ring.variables if v not in base.variables]
    ring = base.extend(extra)
    if ring.ambient != I.ring.ambient:
        raise ValueError("variable order differs from the base extension")
    return Ideal(ring, I.lifted_gens())


def compare_base_change(M: FPModule, phi: RingMap,
                        localization: RingMap | None = None) -> BaseChangeReport:
    """Is there a surjection R(M) ⊗ B -> R(M ⊗ B) identifying the T-variables?

    Holds iff the extension of R(M)'s ideal is contained in the ideal of
    R(M ⊗ B).  ``localization`` (B -> B') only feeds the recorded hypotheses.
    """
    if phi.source != M.ring:
        raise ValueError("map does not start at the module's ring")
    B = phi.target
    tvars = t_names(M.ring, M.ngens, avoid=B.variables)
    R = rees_presentation(M, tvars=tvars)
    left = extend_graded_ideal(R, phi)
    right = rees_presentation(base_change(M, phi), tvars=tvars).ideal
    witness = None
    for g in left.relative_gens():
        if not right.contains(g):
            witness = right.reduce(g)
            break
    hyp = {}
    if localization is not None:
        if localization.source != B:
            raise ValueError("localization must start at B")
        hyp["B -> B' injective"] = ring_map_kernel(localization).is_zero()
    return BaseChangeReport(witness is None, left, right, witness, hyp)


def induced_rees_map(M: FPModule, phi: RingMap) -> RingMap:
    """R(M) -> R(M ⊗ A'), base variables via phi and T_i -> T_i."""
    Ap = phi.target
    tvars = t_names(M.ring, M.ngens, avoid=Ap.variables)
    R = rees_presentation(M, tvars=tvars)
    Rp = rees_presentation(base_change(M, phi), tvars=tvars)
    src = R.quotient()
    tgt = Rp.quotient()
    amb = tgt.ambient
    images = {x: amb(f) for x, f in zip(phi.source.variables, phi.images)}
    images.update({t: amb.var(t) for t in tvars})
    return RingMap(src, tgt, images)


def check_injectivity_flat(M: FPModule, phi: RingMap, assume_flat: bool = False) -> bool:
    """Is R(M) -> R(M ⊗ A') injective?  Requires A -> A' injective (and flat)."""
    check_injective_flat(phi, assume_flat)
    return ring_map_kernel(induced_rees_map(M, phi)).is_zero()
