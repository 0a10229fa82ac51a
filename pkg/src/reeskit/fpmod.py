"""Finitely presented modules over affine rings.

A module is ``coker(A^m -> A^n)``: ``ngens`` generators and ``relations``, a
tuple of m columns of length n.  Maps between modules are row-major matrices
whose i-th column is the image of the i-th source generator.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Sequence

from .groebner import Ideal, intersect, ring_map_kernel, unit_ideal
from .modsyz import (
    Submodule, Vector, is_zero_vector, kernel_of_free_map, lift, matvec,
    normalize, preimage, syzygies, unit_vector,
)
from .polycore import AffineRing, Polynomial, RingMap, as_affine


class NonInjectiveBaseChange(ValueError):
    """The base-change map A -> A' has a nonzero kernel."""


class FlatnessNotAsserted(ValueError):
    """A base change needs flatness that is neither asserted nor recognizable."""


class UnitIdeal(ValueError):
    """A proper ideal was required."""


@dataclass(frozen=True)
class FPModule:
    ring: AffineRing
    ngens: int
    relations: tuple = ()
    # generator images in a free module, when the module came from ``present``
    embedding: tuple | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        rels = []
        for r in self.relations:
            r = normalize(self.ring, r)
            if len(r) != self.ngens:
                raise ValueError(f"relation of length {len(r)} for {self.ngens} generators")
            if not is_zero_vector(r):
                rels.append(r)
        object.__setattr__(self, "relations", tuple(rels))

    @cached_property
    def relation_module(self) -> Submodule:
        return Submodule(self.ring, self.ngens, self.relations)

    def matrix(self) -> list[list[Polynomial]]:
        """Presentation matrix, rows = generators, columns = relations."""
        return [[r[i] for r in self.relations] for i in range(self.ngens)]

    def is_zero(self) -> bool:
        return all(self.relation_module.contains(unit_vector(self.ring, self.ngens, i))
                   for i in range(self.ngens))

    def is_free_presentation(self) -> bool:
        return not self.relations

    def equal_elements(self, u, v) -> bool:
        diff = [a - b for a, b in zip(normalize(self.ring, u), normalize(self.ring, v))]
        return self.relation_module.contains(diff)

    def __str__(self):
        return format_module(self)


def format_matrix(rows) -> str:
    return "[" + ", ".join("[" + ", ".join(str(f) for f in row) + "]" for row in rows) + "]"


def format_module(M: FPModule) -> str:
    if not M.relations:
        return f"free {M.ngens}"
    return f"coker {format_matrix(M.matrix())}"


def free(ring, n: int) -> FPModule:
    return FPModule(as_affine(ring), n, ())


def coker(ring, rows: Sequence[Sequence]) -> FPModule:
    """Module presented by a matrix given as rows (columns are the relations)."""
    ring = as_affine(ring)
    rows = [list(r) for r in rows]
    if len({len(r) for r in rows}) > 1:
        raise ValueError("ragged presentation matrix")
    ncols = len(rows[0]) if rows else 0
    amb = ring.ambient
    cols = [tuple(amb(rows[i][j]) for i in range(len(rows))) for j in range(ncols)]
    return FPModule(ring, len(rows), tuple(cols))


def direct_sum(*mods: FPModule) -> FPModule:
    ring = mods[0].ring
    n = sum(M.ngens for M in mods)
    zero = ring.ambient.zero
    rels = []
    offset = 0
    for M in mods:
        for r in M.relations:
            col = [zero] * n
            col[offset:offset + M.ngens] = r
            rels.append(tuple(col))
        offset += M.ngens
    return FPModule(ring, n, tuple(rels))


class ModuleMap:
    """Homomorphism given on generators; well-definedness is checked on construction."""

    def __init__(self, source: FPModule, target: FPModule, matrix: Sequence[Sequence],
                 check: bool = True):
        self.source = source
        self.target = target
        ring = source.ring
        amb = ring.ambient
        rows = [tuple(ring.nf(amb(f)) for f in row) for row in matrix]
        if target.ngens == 0:
            rows = []
        if len(rows) != target.ngens or any(len(r) != source.ngens for r in rows):
            raise ValueError("matrix shape does not match the modules")
        self.matrix = tuple(rows)
        if check:
            for r in source.relations:
                if not target.relation_module.contains(self.apply(r)):
                    raise ValueError("map is not well defined on a source relation")

    def apply(self, vec) -> Vector:
        if not self.matrix:
            return ()
        return matvec(self.matrix, vec, self.source.ring)

    def column(self, i: int) -> Vector:
        return tuple(row[i] for row in self.matrix)

    def image(self) -> Submodule:
        """Image in the target's free cover, plus the target relations."""
        cols = [self.column(i) for i in range(self.source.ngens)]
        return Submodule(self.source.ring, self.target.ngens,
                         cols + list(self.target.relations))

    def is_surjective(self) -> bool:
        im = self.image()
        return all(im.contains(unit_vector(self.source.ring, self.target.ngens, j))
                   for j in range(self.target.ngens))

    def kernel(self) -> Submodule:
        """Generators (in the source's free cover) of the kernel, source relations included."""
        ring = self.source.ring
        n = self.source.ngens
        cols = [self.column(i) for i in range(n)] + list(self.target.relations)
        if self.target.ngens == 0:
            gens = [unit_vector(ring, n, i) for i in range(n)]
        else:
            gens = [s[:n] for s in syzygies(cols, ring, self.target.ngens)]
        return Submodule(ring, n, gens + list(self.source.relations))

    def is_injective(self) -> bool:
        K = self.kernel()
        return K.issubset(self.source.relation_module)

    def compose(self, other: ModuleMap) -> ModuleMap:
        """``self`` after ``other``."""
        cols = [self.apply(other.column(i)) for i in range(other.source.ngens)]
        rows = [[c[j] for c in cols] for j in range(self.target.ngens)]
        return ModuleMap(other.source, self.target, rows, check=False)

    def __repr__(self):
        return f"ModuleMap({format_matrix(self.matrix)})"


def identity_map(M: FPModule) -> ModuleMap:
    amb = M.ring.ambient
    rows = [[amb.one if i == j else amb.zero for j in range(M.ngens)] for i in range(M.ngens)]
    return ModuleMap(M, M, rows, check=False)


def is_isomorphism_pair(f: ModuleMap, g: ModuleMap) -> bool:
    """Mutual surjections M -> N -> M certify M ≅ N.

    A surjective endomorphism of a finitely generated module is bijective, so
    g∘f (hence f) is injective once both maps are onto.
    """
    return (f.source == g.target and f.target == g.source
            and f.is_surjective() and g.is_surjective())


def same_generators_isomorphic(M: FPModule, N: FPModule) -> bool:
    """True when the identity on generator indices is an isomorphism M -> N."""
    if M.ngens != N.ngens or M.ring != N.ring:
        return False
    return M.relation_module == N.relation_module


# ---------------------------------------------------------------------------
# presentations


def present(S, ring=None, rank: int | None = None) -> FPModule:
    """Presentation of the submodule spanned by the given vectors.

    ``S`` is a Submodule or an explicit list of vectors; in the latter case
    zero vectors are kept as generators (with a unit relation).
    """
    if isinstance(S, Submodule):
        ring, rank, gens = S.ring, S.rank, list(S.gens)
    else:
        ring = as_affine(ring)
        gens = [normalize(ring, g) for g in S]
        if rank is None:
            rank = len(gens[0]) if gens else 0
    rels = syzygies(gens, ring, rank) if gens else []
    return FPModule(ring, len(gens), tuple(rels), embedding=tuple(gens))


def ideal_module(I: Ideal) -> FPModule:
    """The ideal as a module, generators = its listed generators."""
    return present([(g,) for g in I.gens], I.ring, 1)


def minimize(M: FPModule) -> tuple[FPModule, ModuleMap]:
    """Drop generators killed by relations with a unit entry.

    Returns the smaller presentation and the isomorphism from ``M`` onto it.
    """
    ring = M.ring
    amb = ring.ambient
    keep = list(range(M.ngens))
    rels = [list(r) for r in M.relations]
    # images of the original generators, as vectors over the kept generators
    images = {i: {i: amb.one} for i in keep}
    changed = True
    while changed:
        changed = False
        for r in rels:
            for i in keep:
                c = r[i]
                if c and c.is_constant():
                    inv = 1 / c.constant_value()
                    # g_i = -(1/c) * sum_{k != i} r_k g_k
                    sub = {k: -(r[k] * inv) for k in keep if k != i and r[k]}
                    for img in images.values():
                        if i in img:
                            a = img.pop(i)
                            for k, v in sub.items():
                                img[k] = ring.nf(img.get(k, amb.zero) + a * v)
                    new_rels = []
                    for s in rels:
                        if s is r:
                            continue
                        if s[i]:
                            a = s[i] * inv
                            s = [ring.nf(s[k] - a * r[k]) for k in range(M.ngens)]
                        new_rels.append(s)
                    rels = new_rels
                    keep.remove(i)
                    changed = True
                    break
            if changed:
                break
    pos = {k: j for j, k in enumerate(keep)}
    small = FPModule(ring, len(keep), tuple(tuple(s[k] for k in keep) for s in rels))
    rows = [[amb.zero] * M.ngens for _ in keep]
    for i, img in images.items():
        for k, v in img.items():
            rows[pos[k]][i] = v
    return small, ModuleMap(M, small, rows)


# ---------------------------------------------------------------------------
# Hom and duals


@dataclass(frozen=True)
class HomData:
    module: FPModule
    maps: tuple          # generator homomorphisms source -> target
    lifts: tuple         # the same homs as flattened matrices in A^(p*n)


@lru_cache(maxsize=256)
def hom_module(M: FPModule, N: FPModule) -> HomData:
    """Hom_A(M, N) with explicit generator homomorphisms.

    A hom is a p x n matrix Phi with Phi*r in im(Q) for every relation r of M
    (Q = relations of N).  The admissible Phi are the projections of the
    kernel of (Phi, Psi) -> (Phi*r_j - Q*psi_j)_j; Hom is that module modulo
    the matrices whose columns lie in im(Q).
    """
    if M.ring != N.ring:
        raise ValueError("modules over different rings")
    ring = M.ring
    amb = ring.ambient
    zero = amb.zero
    n, p = M.ngens, N.ngens
    Q = list(N.relations)
    q = len(Q)
    m = len(M.relations)
    npn = p * n
    ncols = npn + q * m
    rows = []
    for j, r in enumerate(M.relations):
        for a in range(p):
            row = [zero] * ncols
            for i in range(n):
                row[i * p + a] = r[i]
            for b in range(q):
                row[npn + j * q + b] = -Q[b][a]
            rows.append(row)
    K = kernel_of_free_map(rows, ring, ncols)
    cand = [tuple(v[:npn]) for v in K.gens]
    # matrices with all columns in im(Q): the zero homs
    trivial = [tuple(Q[b][a] if i == col else zero for i in range(n) for a in range(p))
               for col in range(n) for b in range(q)]
    gens = _prune_mod(ring, npn, cand, trivial)
    if gens:
        rels = syzygies(gens + trivial, ring, npn)
        rels = [s[:len(gens)] for s in rels]
    else:
        rels = []
    H = FPModule(ring, len(gens), tuple(rels), embedding=tuple(gens))
    maps = tuple(ModuleMap(M, N, _unflatten(g, n, p), check=False) for g in gens)
    return HomData(H, maps, tuple(gens))


def _unflatten(vec, n: int, p: int) -> list[list[Polynomial]]:
    return [[vec[i * p + a] for i in range(n)] for a in range(p)]


def _prune_mod(ring, rank, cand, trivial) -> list[Vector]:
    """Drop candidates in the span of the others plus ``trivial``."""
    gens = [c for c in cand if not is_zero_vector(c)]
    base = Submodule(ring, rank, trivial)
    gens = [g for g in gens if not base.contains(g)]
    i = len(gens) - 1
    while i >= 0:
        others = gens[:i] + gens[i + 1:]
        if Submodule(ring, rank, others + list(trivial)).contains(gens[i]):
            gens.pop(i)
        i -= 1
    return gens


def dual_data(M: FPModule) -> HomData:
    return hom_module(M, free(M.ring, 1))


def dual(M: FPModule) -> FPModule:
    return dual_data(M).module


def dual_homs(M: FPModule) -> list[tuple]:
    """Generator homs M -> A as rows (value on each generator of M)."""
    return [tuple(f.matrix[0]) if f.matrix else () for f in dual_data(M).maps]


def evaluation_matrix(M: FPModule) -> list[list[Polynomial]]:
    """s x n matrix of phi_k(g_i) for the dual's generator homs phi_k."""
    return [list(h) for h in dual_homs(M)]


def double_dual_map(M: FPModule) -> ModuleMap:
    """Canonical M -> M**, generator g_i sent to evaluation at g_i."""
    ring = M.ring
    D = dual_data(M)
    s = len(D.maps)
    DD = hom_module(D.module, free(ring, 1))
    psi = [tuple(h) for h in DD.lifts]          # rows of length s
    V = evaluation_matrix(M)
    cols = []
    for i in range(M.ngens):
        ev = tuple(V[k][i] for k in range(s))
        c = lift(ev, psi, ring, s) if psi else ()
        if c is None:
            raise RuntimeError("evaluation map does not lie in the double dual")
        cols.append(c)
    rows = [[c[j] for c in cols] for j in range(len(psi))]
    return ModuleMap(M, DD.module, rows)


def torsionless_quotient(M: FPModule) -> tuple[FPModule, ModuleMap]:
    """M^tl = image of M -> M**, with the surjection from M.

    M** embeds in A^s through the dual's s generator homs, so the image is
    the span of the evaluation columns (phi_1(g_i), ..., phi_s(g_i)).
    """
    ring = M.ring
    V = evaluation_matrix(M)
    s = len(V)
    cols = [tuple(V[k][i] for k in range(s)) for i in range(M.ngens)]
    T = present(cols, ring, s)
    return T, identity_surjection(M, T)


def identity_surjection(M: FPModule, N: FPModule) -> ModuleMap:
    amb = M.ring.ambient
    rows = [[amb.one if i == j else amb.zero for j in range(M.ngens)] for i in range(N.ngens)]
    return ModuleMap(M, N, rows)


def is_principal_localization(phi: RingMap) -> bool:
    """Recognize the inclusion A -> A[z]/(I, f*z - 1)."""
    S, T = phi.source, phi.target
    extra = [v for v in T.variables if v not in S.variables]
    if len(extra) != 1 or len(T.variables) != len(S.variables) + 1:
        return False
    if phi != RingMap.inclusion(S, T):
        return False
    amb = T.ambient
    zi = amb.index(extra[0])
    for g in T.ideal_gens:
        const = g.constant_value()
        if not const or any(m[zi] > 1 or (m[zi] == 0 and any(m)) for m in g.terms):
            continue
        # g = c + f*z with f free of z
        f = Polynomial.from_terms(amb, {
            tuple(e if k != zi else 0 for k, e in enumerate(m)): c / -const
            for m, c in g.terms.items() if m[zi] == 1})
        expected = Ideal(amb.quotient(()), [h.change_ring(amb) for h in S.ideal_gens]
                         + [f * amb.var(extra[0]) - 1])
        actual = Ideal(amb.quotient(()), T.ideal_gens)
        if expected == actual:
            return True
    return False


def check_injective_flat(phi: RingMap, assume_flat: bool) -> None:
    if not ring_map_kernel(phi).is_zero():
        raise NonInjectiveBaseChange(f"{phi.source} -> {phi.target} is not injective")
    if not assume_flat and not is_principal_localization(phi):
        raise FlatnessNotAsserted(
            "flatness of the base change must be asserted by the caller")


def torsionless_via_flat(M: FPModule, phi: RingMap, assume_flat: bool = False) -> FPModule:
    """Image of M -> M ⊗ A' for an injective flat A -> A', presented over A.

    Generators are those of M; relations generate the preimage of the
    relations of M ⊗ A'.
    """
    check_injective_flat(phi, assume_flat)
    Mp = base_change(M, phi)
    if M.ngens == 0:
        return M
    rels = preimage(Mp.relation_module, phi)
    return FPModule(M.ring, M.ngens, rels.gens)


def base_change(M: FPModule, phi: RingMap) -> FPModule:
    """M ⊗_A B: apply phi to the presentation matrix."""
    if phi.source != M.ring:
        raise ValueError("map does not start at the module's ring")
    rels = tuple(tuple(phi(f) for f in r) for r in M.relations)
    return FPModule(phi.target, M.ngens, rels)


def exterior_power(M: FPModule, d: int) -> FPModule:
    """∧^d M = ∧^d A^n / (relations ∧ ∧^(d-1) A^n), generators in lex subset order."""
    if d < 0:
        raise ValueError("negative exterior power")
    ring = M.ring
    amb = ring.ambient
    n = M.ngens
    subsets = list(combinations(range(n), d))
    index = {s: k for k, s in enumerate(subsets)}
    rels = []
    if d >= 1:
        for r in M.relations:
            for S in combinations(range(n), d - 1):
                col = [amb.zero] * len(subsets)
                for i in range(n):
                    if not r[i] or i in S:
                        continue
                    # e_i ∧ e_S, sorted: sign = (-1)^(#elements of S below i)
                    sign = -1 if sum(1 for s in S if s < i) % 2 else 1
                    key = tuple(sorted((i,) + S))
                    col[index[key]] = col[index[key]] + r[i] * sign
                rels.append(tuple(col))
    return FPModule(ring, len(subsets), tuple(rels))


def colon_generator(M: FPModule, i: int) -> Ideal:
    """{a : a*g_i = 0 in M}."""
    ring = M.ring
    e = unit_vector(ring, M.ngens, i)
    syz = syzygies([e] + list(M.relations), ring, M.ngens)
    return Ideal(ring, [s[0] for s in syz])


def annihilator(M: FPModule) -> Ideal:
    ring = M.ring
    result = unit_ideal(ring)
    for i in range(M.ngens):
        result = intersect(result, colon_generator(M, i))
    return result


def quotient_module(I: Ideal) -> FPModule:
    """A/I as a cyclic module."""
    return FPModule(I.ring, 1, tuple((g,) for g in I.gens))


def ass_membership(p: Ideal, M: FPModule) -> bool:
    """Is the (caller-asserted prime) p associated to M?

    p ∈ Ass(M) iff Hom(A/p, M) localized at p is nonzero, i.e. iff the
    annihilator of Hom(A/p, M) is contained in p.
    """
    if p.is_unit():
        raise UnitIdeal("the unit ideal is not prime")
    H = hom_module(quotient_module(p), M).module
    return annihilator(H).issubset(p)


def fitting_ideal(M: FPModule, k: int) -> Ideal:
    """k-th Fitting ideal: (n-k)-minors of the presentation matrix."""
    ring = M.ring
    amb = ring.ambient
    size = M.ngens - k
    if size <= 0:
        return unit_ideal(ring)
    mat = M.matrix()
    m = len(M.relations)
    if size > m:
        return Ideal(ring, [])
    minors = []
    for rows in combinations(range(M.ngens), size):
        for cols in combinations(range(m), size):
            minors.append(_det([[mat[r][c] for c in cols] for r in rows], amb))
    return Ideal(ring, minors)


def _det(mat, amb):
    if not mat:
        return amb.one
    if len(mat) == 1:
        return mat[0][0]
    total = amb.zero
    for j, a in enumerate(mat[0]):
        if not a:
            continue
        minor = [row[:j] + row[j + 1:] for row in mat[1:]]
        term = a * _det(minor, amb)
        total = total + term if j % 2 == 0 else total - term
    return total
