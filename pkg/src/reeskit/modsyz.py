"""Submodules of free modules over affine rings: Groebner bases, syzygies, kernels.

A vector is a tuple of ambient polynomials.  Module monomials are
``(position, exponents...)``.  Over ``A = k[x]/I`` every computation adds the
vectors ``g*e_k`` (g in I) so the polynomial-ring engine can be reused.  The
default order is position-over-term (lower position index is larger) with the
ring's own order on each position.
"""

from __future__ import annotations

from functools import cached_property
from typing import Iterable, Sequence

from .groebner import GraphSetup, groebner_dicts, reduce_dict
from .polycore import AffineRing, Polynomial, PolyRing, RingMap, _degrevlex_key, as_affine

Vector = tuple


def pot_key(base_key):
    def key(m):
        return (-m[0], base_key(m[1:]))
    return key


def _to_dict(vec: Sequence[Polynomial], offset: int = 0) -> dict:
    out = {}
    for pos, f in enumerate(vec):
        for m, c in f.terms.items():
            out[(pos + offset,) + m] = c
    return out


def _from_dict(d: dict, amb: PolyRing, rank: int, offset: int = 0) -> Vector:
    coords: list[dict] = [dict() for _ in range(rank)]
    for m, c in d.items():
        coords[m[0] - offset][m[1:]] = c
    return tuple(Polynomial(amb, t) for t in coords)


def _basis(dicts: list[dict], key) -> list[tuple]:
    return [(max(g, key=key), g) for g in dicts]


def normalize(ring: AffineRing, vec: Iterable) -> Vector:
    amb = ring.ambient
    return tuple(ring.nf(amb(f)) for f in vec)


def is_zero_vector(vec: Sequence[Polynomial]) -> bool:
    return not any(vec)


def matvec(matrix: Sequence[Sequence[Polynomial]], vec: Sequence[Polynomial],
           ring: AffineRing) -> Vector:
    """Product of a row-major matrix with a column vector, normalized in ``ring``."""
    amb = ring.ambient
    out = []
    for row in matrix:
        acc = amb.zero
        for a, b in zip(row, vec):
            if a and b:
                acc = acc + a * b
        out.append(ring.nf(acc))
    return tuple(out)


def columns_to_rows(cols: Sequence[Sequence], nrows: int) -> list[list]:
    return [[c[i] for c in cols] for i in range(nrows)]


class Submodule:
    """Submodule of A^rank spanned by ``gens``."""

    def __init__(self, ring, rank: int, gens: Iterable[Sequence] = ()):
        self.ring = as_affine(ring)
        self.rank = rank
        out = []
        for g in gens:
            g = normalize(self.ring, g)
            if len(g) != rank:
                raise ValueError(f"vector of length {len(g)} in a rank {rank} module")
            if not is_zero_vector(g):
                out.append(g)
        self.gens = tuple(out)

    @property
    def key(self):
        return pot_key(self.ring.ambient.order.key)

    @cached_property
    def _gb_dicts(self) -> list[dict]:
        vecs = [_to_dict(g) for g in self.gens]
        for k in range(self.rank):
            for g in self.ring.ideal_gens:
                vecs.append({(k,) + m: c for m, c in g.terms.items()})
        return groebner_dicts(vecs, self.key, module=True)

    def gb(self) -> list[Vector]:
        """Reduced module Groebner basis (position-over-term), including I*e_k."""
        return [_from_dict(g, self.ring.ambient, self.rank) for g in self._gb_dicts]

    def reduce(self, vec) -> Vector:
        vec = normalize(self.ring, vec)
        key = self.key
        r = reduce_dict(_to_dict(vec), _basis(self._gb_dicts, key), key, module=True)
        return _from_dict(r, self.ring.ambient, self.rank)

    def contains(self, vec) -> bool:
        return is_zero_vector(self.reduce(vec))

    __contains__ = contains

    def issubset(self, other: Submodule) -> bool:
        return all(other.contains(g) for g in self.gens)

    def __eq__(self, other):
        if not isinstance(other, Submodule):
            return NotImplemented
        return (self.rank == other.rank and self.ring == other.ring
                and self.issubset(other) and other.issubset(self))

    __hash__ = None

    def __add__(self, other: Submodule) -> Submodule:
        return Submodule(self.ring, self.rank, self.gens + other.gens)

    def is_zero(self) -> bool:
        return not self.gens

    def __repr__(self):
        body = ", ".join("(" + ", ".join(str(f) for f in g) + ")" for g in self.gens)
        return f"Submodule(rank {self.rank}: {body})"


def module_gb(S: Submodule) -> list[Vector]:
    return S.gb()


class _Tagged:
    """GB of the vectors (g_j, e_j) in A^n ⊕ A^m, f-part positions dominant.

    Gives syzygies (GB elements living only in the tag part) and liftings.
    """

    def __init__(self, ring: AffineRing, rank: int, gens: Sequence[Vector]):
        self.ring = ring
        self.n = rank
        self.m = len(gens)
        self.gens = gens
        n = self.n
        vecs = []
        for j, g in enumerate(gens):
            d = _to_dict(g)
            d[(n + j,) + (0,) * ring.ambient.nvars] = ring.field.one
            vecs.append(d)
        for k in range(n):
            for g in ring.ideal_gens:
                vecs.append({(k,) + mm: c for mm, c in g.terms.items()})
        self.key = pot_key(ring.ambient.order.key)
        self.gb = groebner_dicts(vecs, self.key, module=True)

    def syzygies(self) -> list[Vector]:
        n, m = self.n, self.m
        amb = self.ring.ambient
        out = []
        for g in self.gb:
            if all(mm[0] >= n for mm in g):
                v = normalize(self.ring, _from_dict(g, amb, m, offset=n))
                if not is_zero_vector(v):
                    out.append(v)
        return out

    def lift(self, vec: Vector) -> Vector | None:
        n, m = self.n, self.m
        amb = self.ring.ambient
        d = _to_dict(normalize(self.ring, vec))
        r = reduce_dict(d, _basis(self.gb, self.key), self.key, module=True)
        if any(mm[0] < n for mm in r):
            return None
        coeffs = _from_dict(r, amb, m, offset=n)
        return tuple(self.ring.nf(-c) for c in coeffs)


def syzygies(columns: Sequence[Sequence], ring, rank: int | None = None) -> list[Vector]:
    """Generators of the relations among ``columns`` (vectors in A^rank).

    Each returned vector s has length len(columns) and sum_j s_j * columns[j] = 0.
    """
    ring = as_affine(ring)
    cols = [normalize(ring, c) for c in columns]
    if rank is None:
        rank = len(cols[0]) if cols else 0
    if not cols:
        return []
    return _prune(ring, _Tagged(ring, rank, cols).syzygies(), len(cols))


def _prune(ring: AffineRing, vecs: list[Vector], rank: int) -> list[Vector]:
    """Drop generators lying in the span of the others (greedy, from the end)."""
    vecs = list(vecs)
    i = len(vecs) - 1
    while i >= 0:
        others = vecs[:i] + vecs[i + 1:]
        if Submodule(ring, rank, others).contains(vecs[i]):
            vecs.pop(i)
        i -= 1
    return vecs


def kernel_of_free_map(matrix: Sequence[Sequence], ring, ncols: int | None = None) -> Submodule:
    """Kernel of A^m -> A^n given by a row-major n x m matrix."""
    ring = as_affine(ring)
    rows = [list(r) for r in matrix]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if not rows:
        return Submodule(ring, ncols, [unit_vector(ring, ncols, j) for j in range(ncols)])
    cols = [tuple(r[j] for r in rows) for j in range(ncols)]
    return Submodule(ring, ncols, syzygies(cols, ring, len(rows)))


def unit_vector(ring, rank: int, j: int) -> Vector:
    ring = as_affine(ring)
    amb = ring.ambient
    return tuple(amb.one if i == j else amb.zero for i in range(rank))


def lift(vec: Sequence, gens: Sequence[Sequence], ring, rank: int | None = None) -> Vector | None:
    """Coefficients c with sum c_j gens[j] == vec in A^rank, or None if vec is not in the span."""
    ring = as_affine(ring)
    vec = normalize(ring, vec)
    if rank is None:
        rank = len(vec)
    gens = [normalize(ring, g) for g in gens]
    if not gens:
        return () if is_zero_vector(vec) else None
    return _Tagged(ring, rank, gens).lift(vec)


def preimage(N: Submodule, phi: RingMap) -> Submodule:
    """{v in S^r : phi(v) in N} for a ring map phi: S -> T and N ⊆ T^r.

    Uses the graph construction with an elimination module order (eliminated
    variables first, then position, then the remaining variables).
    """
    if N.ring != phi.target:
        raise ValueError("submodule does not live over the target of the map")
    g = GraphSetup(phi)
    r = N.rank
    ne = len(g.elim)
    big = g.ring
    vecs = []
    for v in N.gens:
        vecs.append(_to_dict([g.from_target(f) for f in v]))
    rel = g.target_relations + g.graph + g.source_relations
    for k in range(r):
        for f in rel:
            vecs.append({(k,) + m: c for m, c in f.terms.items()})

    def key(m):
        return (_degrevlex_key(m[1:1 + ne]), -m[0], _degrevlex_key(m[1 + ne:]))

    G = groebner_dicts(vecs, key, module=True)
    samb = phi.source.ambient
    keep = []
    for d in G:
        if all(not any(m[1:1 + ne]) for m in d):
            vec = _from_dict(d, big, r)
            keep.append(tuple(f.change_ring(samb) for f in vec))
    return Submodule(phi.source, r, keep)
