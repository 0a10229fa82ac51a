"""Degree-bounded linear-algebra oracle for ideal and module questions.

Works on plain dicts {exponent tuple: Fraction} and never calls the Groebner
engine.  Everything is truncated at a total degree D: the ideal (g_1..g_r)
is replaced by the vector space spanned by the products m*g_i with
deg(m*g_i) <= D.  A positive membership answer is a certificate; a negative
one only says "not reachable with cofactors of that degree".
"""

from fractions import Fraction
from itertools import product


def deg(m):
    return sum(m)


def tdeg(f):
    return max((deg(m) for m in f), default=-1)


def monomials(nvars, d):
    """All exponent tuples of total degree <= d."""
    return [e for e in product(range(d + 1), repeat=nvars) if sum(e) <= d]


def mul(f, g):
    out = {}
    for a, c in f.items():
        for b, e in g.items():
            m = tuple(i + j for i, j in zip(a, b))
            out[m] = out.get(m, 0) + c * e
    return {m: c for m, c in out.items() if c}


def shift(f, m):
    return {tuple(i + j for i, j in zip(a, m)): c for a, c in f.items()}


def sub(f, g, c=1):
    out = dict(f)
    for m, e in g.items():
        v = out.get(m, 0) - c * e
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


class Span:
    """Echelon basis of a space of sparse vectors; columns ordered by ``rank``."""

    def __init__(self, rank=lambda col: col):
        self.rank = rank
        self.rows = {}          # pivot column -> row with 1 at the pivot

    def reduce(self, v):
        v = {k: Fraction(c) for k, c in v.items() if c}
        while True:
            hits = [k for k in v if k in self.rows]
            if not hits:
                return v
            k = min(hits, key=self.rank)
            v = sub(v, self.rows[k], v[k])

    def add(self, v):
        r = self.reduce(v)
        if not r:
            return False
        k = min(r, key=self.rank)
        c = r[k]
        self.rows[k] = {m: e / c for m, e in r.items()}
        return True

    def contains(self, v):
        return not self.reduce(v)

    def __len__(self):
        return len(self.rows)


def ideal_span(gens, nvars, D, rank=lambda col: col):
    """Span of m*g (deg <= D) for the generators g."""
    S = Span(rank)
    for g in gens:
        dg = tdeg(g)
        if dg < 0 or dg > D:
            continue
        for m in monomials(nvars, D - dg):
            S.add(shift(g, m))
    return S


def in_ideal(f, gens, nvars, D):
    return ideal_span(gens, nvars, D).contains(f)


def eliminate(gens, nvars, elim, D):
    """Basis of I ∩ k[other variables] in degree <= D (as full-length exponent dicts)."""
    elim = set(elim)

    def rank(m):
        return (0 if any(m[i] for i in elim) else 1, tuple(-e for e in m))
    S = ideal_span(gens, nvars, D, rank)
    return [row for row in S.rows.values()
            if not any(m[i] for m in row for i in elim)]


def colon(gens, jgens, nvars, d, D):
    """Basis of {f : deg f <= d, f*j in I_{<=D} for every j} (I : J) truncated."""
    V = ideal_span(gens, nvars, D)
    basis = monomials(nvars, d)
    # image of each monomial, reduced modulo V, one block per generator of J
    images = []
    for m in basis:
        img = {}
        for k, j in enumerate(jgens):
            for key, c in V.reduce(shift(j, m)).items():
                img[(k, key)] = c
        images.append(img)
    return _kernel(basis, images)


def _kernel(basis, images):
    """Kernel of the linear map sending basis[i] to images[i]."""
    # column-reduce [image | identity tag]
    S = Span(rank=lambda col: (0, col[1]) if col[0] == "img" else (1, col[1]))
    for m, img in zip(basis, images):
        v = {("img", k): c for k, c in img.items()}
        v[("tag", m)] = Fraction(1)
        S.add(v)
    out = []
    for row in S.rows.values():
        if all(col[0] == "tag" for col in row):
            out.append({col[1]: c for col, c in row.items()})
    return out


def power_gens(jgens, k):
    out = [{(0,) * len(next(iter(jgens[0]))): Fraction(1)}] if jgens else []
    for _ in range(k):
        out = [mul(a, b) for a in out for b in jgens]
    return out


def saturation(gens, jgens, nvars, k, d, D):
    """(I : J^k) truncated at degree d; equals the saturation once k is large."""
    return colon(gens, power_gens(jgens, k), nvars, d, D)


def module_relations(cols, rank_, nvars, d, D, base=()):
    """Relations sum c_j cols[j] = 0 (mod base * A^rank) with deg c_j <= d.

    ``cols`` are lists of dict polynomials of length rank_; returns the
    relation vectors as lists of dicts.
    """
    V = Span()
    for k in range(rank_):
        for g in base:
            for m in monomials(nvars, max(D - tdeg(g), -1)):
                V.add({(k, a): c for a, c in shift(g, m).items()})
    basis = [(j, m) for j in range(len(cols)) for m in monomials(nvars, d)]
    images = []
    for j, m in basis:
        v = {}
        for k, f in enumerate(cols[j]):
            for a, c in shift(f, m).items():
                v[(k, a)] = v.get((k, a), 0) + c
        images.append(V.reduce(v))
    out = []
    for rel in _kernel(basis, images):
        vec = [dict() for _ in cols]
        for (j, m), c in rel.items():
            vec[j][m] = c
        out.append(vec)
    return out


def in_module(vec, gens, rank_, nvars, D, base=()):
    """Is vec (list of dicts) in the span of gens (lists of dicts) + base*A^rank?"""
    V = Span()
    for g in gens:
        dg = max(tdeg(f) for f in g)
        if dg < 0:
            continue
        for m in monomials(nvars, max(D - dg, -1)):
            V.add({(k, a): c for k, f in enumerate(g) for a, c in shift(f, m).items()})
    for k in range(rank_):
        for g in base:
            for m in monomials(nvars, max(D - tdeg(g), -1)):
                V.add({(k, a): c for a, c in shift(g, m).items()})
    return V.contains({(k, a): c for k, f in enumerate(vec) for a, c in f.items()})
