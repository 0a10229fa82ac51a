"""Buchberger's algorithm and the ideal toolkit built on it.

The engine below works on plain ``{monomial: coeff}`` dicts.  For ideals a
monomial is an exponent tuple; for submodules of free modules it is
``(position, e_1, ..., e_n)`` and ``module=True`` must be passed so that only
terms in the same position are compared for divisibility.
"""

from __future__ import annotations

from functools import cached_property
from typing import Callable, Iterable, Sequence

from .polycore import (
    DEGREVLEX, MonomialOrder, Polynomial, PolyRing, RingMap,
    RingMismatch, as_affine, block_order,
)

# ---------------------------------------------------------------------------
# engine


def _ops(module: bool):
    if module:
        def divides(a, b):
            if a[0] != b[0]:
                return False
            for x, y in zip(a[1:], b[1:]):
                if x > y:
                    return False
            return True

        def lcm(a, b):
            if a[0] != b[0]:
                return None
            return (a[0],) + tuple(max(x, y) for x, y in zip(a[1:], b[1:]))

        def quo(b, a):
            return tuple(y - x for x, y in zip(a[1:], b[1:]))

        def shift(m, q):
            return (m[0],) + tuple(x + y for x, y in zip(m[1:], q))

        def coprime(a, b):
            return False
    else:
        def divides(a, b):
            for x, y in zip(a, b):
                if x > y:
                    return False
            return True

        def lcm(a, b):
            return tuple(max(x, y) for x, y in zip(a, b))

        def quo(b, a):
            return tuple(y - x for x, y in zip(a, b))

        def shift(m, q):
            return tuple(x + y for x, y in zip(m, q))

        def coprime(a, b):
            return not any(x and y for x, y in zip(a, b))
    return divides, lcm, quo, shift, coprime


def _leading(f: dict, key):
    return max(f, key=key)


def _sub_multiple(f: dict, c, q, g: dict, shift):
    """f -= c * x^q * g, in place."""
    for m, a in g.items():
        mm = shift(m, q)
        v = f.get(mm)
        v = -c * a if v is None else v - c * a
        if v:
            f[mm] = v
        else:
            f.pop(mm, None)


def reduce_dict(f: dict, basis: Sequence[tuple], key: Callable,
                module: bool = False) -> dict:
    """Fully reduce ``f`` by ``basis`` (pairs ``(lm, monic poly dict)``)."""
    divides, _, quo, shift, _ = _ops(module)
    f = dict(f)
    rem = {}
    while f:
        m = _leading(f, key)
        c = f[m]
        for lm, g in basis:
            if divides(lm, m):
                _sub_multiple(f, c, quo(m, lm), g, shift)
                break
        else:
            rem[m] = c
            del f[m]
    return rem


def _monic(f: dict, key):
    lm = _leading(f, key)
    inv = 1 / f[lm]
    return lm, {m: c * inv for m, c in f.items()}


def groebner_dicts(polys: Iterable[dict], key: Callable, module: bool = False) -> list[dict]:
    """Reduced Groebner basis (monic, sorted descending by leading monomial).

    Pairs are selected by the normal strategy; the Gebauer-Moeller update
    applies the coprime criterion (ideals only) and the chain criterion.
    """
    divides, lcm, quo, shift, coprime = _ops(module)
    G: list[tuple] = []
    pairs: dict[tuple[int, int], tuple] = {}

    def update(lm_f):
        nonlocal pairs
        k = len(G)
        # drop old pairs whose lcm is strictly covered by the new leading monomial
        kept = {}
        for (i, j), L in pairs.items():
            if divides(lm_f, L):
                Li, Lj = lcm(G[i][0], lm_f), lcm(G[j][0], lm_f)
                if L != Li and L != Lj:
                    continue
            kept[(i, j)] = L
        by_lcm: dict[tuple, list[int]] = {}
        for i, (lm_i, _) in enumerate(G):
            L = lcm(lm_i, lm_f)
            if L is not None:
                by_lcm.setdefault(L, []).append(i)
        minimal = []
        for L in sorted(by_lcm, key=key):
            if not any(divides(L2, L) for L2 in minimal):
                minimal.append(L)
        for L in minimal:
            if any(coprime(G[i][0], lm_f) for i in by_lcm[L]):
                continue
            kept[(min(by_lcm[L]), k)] = L
        pairs = kept

    for f in polys:
        if not f:
            continue
        f = reduce_dict(f, G, key, module)
        if not f:
            continue
        lm, g = _monic(f, key)
        update(lm)
        G.append((lm, g))

    while pairs:
        (i, j) = min(pairs, key=lambda p: (key(pairs[p]), p))
        L = pairs.pop((i, j))
        lm_i, gi = G[i]
        lm_j, gj = G[j]
        s = {}
        _sub_multiple(s, -1, quo(L, lm_i), gi, shift)
        _sub_multiple(s, 1, quo(L, lm_j), gj, shift)
        s = reduce_dict(s, G, key, module)
        if s:
            lm, g = _monic(s, key)
            update(lm)
            G.append((lm, g))

    # minimalize, then interreduce
    G.sort(key=lambda t: key(t[0]))
    minimal = []
    for lm, g in G:
        if not any(divides(lm2, lm) for lm2, _ in minimal):
            minimal.append((lm, g))
    reduced = []
    for idx, (lm, g) in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1:]
        r = reduce_dict(g, others, key, module)
        reduced.append(_monic(r, key))
    reduced.sort(key=lambda t: key(t[0]), reverse=True)
    return [g for _, g in reduced]


# ---------------------------------------------------------------------------
# polynomial-level API


def buchberger(gens: Sequence[Polynomial], order: MonomialOrder | None = None,
               ring: PolyRing | None = None) -> list[Polynomial]:
    """Reduced Groebner basis of ``gens``.

    With ``order`` the computation is done in a copy of the ring carrying that
    order and the result lives in that copy.
    """
    gens = list(gens)
    if ring is None:
        if not gens:
            return []
        ring = gens[0].ring
    for g in gens:
        if g.ring.variables != ring.variables or g.ring.field != ring.field:
            raise RingMismatch(f"{g.ring} vs {ring}")
    if order is not None and order != ring.order:
        ring = ring.with_order(order)
    key = ring.order.key
    for g in gens:
        if g.terms and g.is_constant():
            return [ring.one]
    out = groebner_dicts([g.terms for g in gens], key)
    return [Polynomial(ring, g) for g in out]


def normal_form(f: Polynomial, G: Sequence[Polynomial]) -> Polynomial:
    """Remainder of ``f`` on division by the Groebner basis ``G``."""
    if not G or not f:
        return f
    ring = G[0].ring
    if f.ring != ring:
        f = f.change_ring(ring)
    basis = [(g.lm, g.terms if g.lc == 1 else g.monic().terms) for g in G]
    return Polynomial(ring, reduce_dict(f.terms, basis, ring.order.key))


def is_groebner(G: Sequence[Polynomial]) -> bool:
    """Buchberger criterion: every S-polynomial reduces to zero."""
    if not G:
        return True
    ring = G[0].ring
    key = ring.order.key
    divides, lcm, quo, shift, _ = _ops(False)
    basis = [(g.lm, g.monic().terms) for g in G]
    for a in range(len(basis)):
        for b in range(a + 1, len(basis)):
            L = lcm(basis[a][0], basis[b][0])
            s = {}
            _sub_multiple(s, -1, quo(L, basis[a][0]), basis[a][1], shift)
            _sub_multiple(s, 1, quo(L, basis[b][0]), basis[b][1], shift)
            if reduce_dict(s, basis, key):
                return False
    return True


# ---------------------------------------------------------------------------
# ideals


class Ideal:
    """Ideal of an affine ring ``k[x]/I0``, stored through generators lifted to ``k[x]``.

    All computations add ``I0`` to the generators, so the canonical form is the
    reduced Groebner basis of ``gens + I0`` in the ambient polynomial ring.
    """

    def __init__(self, ring, gens: Iterable = ()):
        self.ring = as_affine(ring)
        amb = self.ring.ambient
        out = []
        for g in gens:
            g = self.ring.nf(amb(g))
            if g:
                out.append(g)
        self.gens = tuple(out)

    @cached_property
    def gb(self) -> tuple[Polynomial, ...]:
        """Reduced Groebner basis of the lifted ideal in the ambient ring."""
        return tuple(buchberger(list(self.gens) + list(self.ring.ideal_gens),
                                ring=self.ring.ambient))

    def lifted_gens(self) -> list[Polynomial]:
        return list(self.gens) + list(self.ring.ideal_gens)

    def reduce(self, f) -> Polynomial:
        return normal_form(self.ring.ambient(f), self.gb)

    def contains(self, f) -> bool:
        return not self.reduce(f)

    __contains__ = contains

    def is_unit(self) -> bool:
        return len(self.gb) == 1 and self.gb[0].is_constant()

    def is_zero(self) -> bool:
        return all(not self.ring.nf(g) for g in self.gens)

    def issubset(self, other: Ideal) -> bool:
        self._check(other)
        return all(other.contains(g) for g in self.gens)

    def _check(self, other):
        if self.ring.ambient != other.ring.ambient:
            raise RingMismatch(f"{self.ring} vs {other.ring}")

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.ring.ambient == other.ring.ambient and self.gb == other.gb

    def __hash__(self):
        return hash((self.ring.ambient, self.gb))

    def __add__(self, other: Ideal) -> Ideal:
        self._check(other)
        return Ideal(self.ring, self.gens + other.gens)

    def __mul__(self, other: Ideal) -> Ideal:
        self._check(other)
        return Ideal(self.ring, [f * g for f in self.gens for g in other.gens])

    def power(self, n: int) -> Ideal:
        out = Ideal(self.ring, [self.ring.ambient.one])
        for _ in range(n):
            out = out * self
        return out

    def relative_gens(self) -> list[Polynomial]:
        """Reduced GB elements that are nonzero in the quotient ring (canonical display)."""
        if self.is_unit():
            return [self.ring.ambient.one]
        return [g for g in self.gb if self.ring.nf(g)]

    def __str__(self):
        gens = self.relative_gens()
        return "(" + (", ".join(str(g) for g in gens) if gens else "0") + ")"

    def __repr__(self):
        return f"Ideal{self} in {self.ring}"

    def extend_to(self, ring) -> Ideal:
        """Image under the inclusion into a ring with more variables (names matched)."""
        ring = as_affine(ring)
        return Ideal(ring, [g.change_ring(ring.ambient) for g in self.lifted_gens()])


def unit_ideal(ring) -> Ideal:
    ring = as_affine(ring)
    return Ideal(ring, [ring.ambient.one])


def zero_ideal(ring) -> Ideal:
    return Ideal(ring, [])


def eliminate(I: Ideal, names: Iterable[str]) -> Ideal:
    """``I`` intersected with the polynomial ring in the remaining variables.

    The result is an ideal of the free polynomial ring on the remaining
    variables and contains the part of the base relations free of ``names``.
    """
    amb = I.ring.ambient
    names = list(names)
    idx = [amb.index(v) for v in names]
    rest = [v for v in amb.variables if v not in names]
    sub = PolyRing(amb.field, rest, DEGREVLEX)
    if not idx:
        return Ideal(sub, [g.change_ring(sub) for g in I.gb])
    order = block_order(amb.nvars, idx)
    G = buchberger(I.lifted_gens(), order, ring=amb)
    keep = [g for g in G if not any(g.degree_in([i]) - {0} for i in idx)]
    return Ideal(sub, [g.change_ring(sub) for g in keep])


def _fresh(ring: PolyRing, stem: str) -> str:
    name = "@" + stem
    while name in ring.variables:
        name += "'"
    return name


def intersect(I: Ideal, J: Ideal) -> Ideal:
    """I ∩ J via elimination of t from t*I + (1-t)*J."""
    I._check(J)
    R = I.ring
    if I.is_unit():
        return Ideal(R, J.gens)
    if J.is_unit():
        return Ideal(R, I.gens)
    amb = R.ambient
    t = _fresh(amb, "t")
    big = PolyRing(amb.field, (t,) + amb.variables, DEGREVLEX)
    tv = big.var(t)
    gens = [tv * g.change_ring(big) for g in I.lifted_gens()]
    gens += [(1 - tv) * g.change_ring(big) for g in J.lifted_gens()]
    E = eliminate(Ideal(big, gens), [t])
    return Ideal(R, [g.change_ring(amb) for g in E.gens])


def exact_quotient(g: Polynomial, f: Polynomial) -> Polynomial:
    """g / f in the polynomial ring, assuming f divides g."""
    ring = f.ring
    divides, _, quo, shift, _ = _ops(False)
    key = ring.order.key
    rem = dict(g.terms)
    q = {}
    lm, lc = f.lm, f.lc
    while rem:
        m = _leading(rem, key)
        if not divides(lm, m):
            raise ValueError(f"{f} does not divide {g}")
        c = rem[m] / lc
        e = quo(m, lm)
        q[e] = q.get(e, 0) + c
        _sub_multiple(rem, c, e, f.terms, shift)
    return Polynomial.from_terms(ring, q)


def _quotient_by_element(I: Ideal, f: Polynomial) -> Ideal:
    R = I.ring
    amb = R.ambient
    f = R.nf(f)
    if not f:
        return Ideal(R, [amb.one])
    lifted = Ideal(amb.quotient(()), I.lifted_gens())
    meet = intersect(lifted, Ideal(lifted.ring, [f]))
    return Ideal(R, [exact_quotient(g, f) for g in meet.gb])


def ideal_quotient(I: Ideal, J: Ideal) -> Ideal:
    """(I : J) = {f : f*J ⊆ I}."""
    I._check(J)
    R = I.ring
    if J.is_unit():
        return Ideal(R, I.gens)
    if I.is_unit():
        return Ideal(R, I.gens)
    result = Ideal(R, [R.ambient.one])
    for j in J.gens:
        result = intersect(result, _quotient_by_element(I, j))
    return result


def _saturate_element(I: Ideal, f: Polynomial) -> Ideal:
    R = I.ring
    amb = R.ambient
    if not R.nf(f):
        return Ideal(R, [amb.one])
    t = _fresh(amb, "s")
    big = PolyRing(amb.field, (t,) + amb.variables, DEGREVLEX)
    gens = [g.change_ring(big) for g in I.lifted_gens()]
    gens.append(1 - big.var(t) * f.change_ring(big))
    E = eliminate(Ideal(big, gens), [t])
    return Ideal(R, [g.change_ring(amb) for g in E.gens])


def saturate(I: Ideal, J: Ideal) -> Ideal:
    """(I : J^∞) via 1 - t*j adjoined for each generator j, intersected over j."""
    I._check(J)
    R = I.ring
    if J.is_unit() or I.is_unit():
        return Ideal(R, I.gens)
    result = Ideal(R, [R.ambient.one])
    for j in J.gens:
        result = intersect(result, _saturate_element(I, j))
    return result


def saturate_iterated(I: Ideal, J: Ideal, max_steps: int = 100) -> Ideal:
    """(I : J^∞) as the stable value of repeated colon by J."""
    cur = I
    for _ in range(max_steps):
        nxt = ideal_quotient(cur, J)
        if nxt == cur:
            return cur
        cur = nxt
    raise RuntimeError("saturation did not stabilize")


class GraphSetup:
    """Combined ring for graph-ideal computations of a ring map ``phi: S -> T``.

    Target variables are renamed apart from the source's, except that a
    source variable sent to a bare target variable (each used once) is
    identified with it.  ``elim`` lists the variables to eliminate; they come
    first in ``ring``.
    """

    def __init__(self, phi: RingMap):
        S, T = phi.source, phi.target
        samb, tamb = S.ambient, T.ambient
        ident: dict[int, str] = {}
        used = set()
        for i, img in enumerate(phi.images):
            if len(img.terms) == 1:
                (m, c), = img.terms.items()
                if c == 1 and sum(m) == 1:
                    w = tamb.variables[m.index(1)]
                    if w not in used:
                        ident[i] = w
                        used.add(w)
        rename = {}
        for w in tamb.variables:
            if w in used:
                continue
            name = "@" + w
            while name in samb.variables or name in rename.values():
                name += "'"
            rename[w] = name
        src_for = {w: samb.variables[i] for i, w in ident.items()}
        names_in_big = [rename.get(w) or src_for[w] for w in tamb.variables]
        self.elim = [rename[w] for w in tamb.variables if w in rename]
        self.ring = PolyRing(samb.field, tuple(self.elim) + samb.variables, DEGREVLEX)
        self._tgens = [self.ring.var(n) for n in names_in_big]
        self.source = S
        self.target = T
        # graph relations v_i - phi(v_i) for the non-identified variables
        self.graph = [self.ring.var(samb.variables[i]) - self.from_target(img)
                      for i, img in enumerate(phi.images) if i not in ident]
        self.target_relations = [self.from_target(g) for g in T.ideal_gens]
        self.source_relations = [g.change_ring(self.ring) for g in S.ideal_gens]

    def from_target(self, f: Polynomial) -> Polynomial:
        return f.evaluate(self._tgens, self.ring)


def ring_map_kernel(phi: RingMap) -> Ideal:
    """Kernel of ``phi`` as an ideal of its source.

    Built from the graph ideal (target relations + v_i - phi(v_i)) followed by
    elimination of the target variables.
    """
    g = GraphSetup(phi)
    gens = g.target_relations + g.graph + g.source_relations
    E = eliminate(Ideal(g.ring, gens), g.elim)
    samb = phi.source.ambient
    return Ideal(phi.source, [f.change_ring(samb) for f in E.gens])
