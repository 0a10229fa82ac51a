"""Small ideals (<= 3 variables, generators of degree <= 3) shared by the engine tests.

Each case names its ring, generators, defining relations of the ring (if a
quotient), a variable to eliminate, an ideal J to divide and saturate by,
and membership probes.
"""

from dataclasses import dataclass, field

import oracle
from reeskit.groebner import Ideal, eliminate, ideal_quotient, saturate
from reeskit.polycore import QQ, AffineRing, PolyRing


@dataclass
class Case:
    name: str
    variables: list
    gens: list
    base: list = field(default_factory=list)
    elim: list = field(default_factory=list)
    J: list = field(default_factory=list)
    probes: list = field(default_factory=list)

    def ring(self):
        return AffineRing(PolyRing(QQ, self.variables), self.base)

    def ideal(self):
        return Ideal(self.ring(), self.gens)

    def jideal(self):
        return Ideal(self.ring(), self.J)


CASES = [
    Case("hyperbola", ["x", "y"], ["x^2 - 1", "x*y - 1"], elim=["x"], J=["y - 1"],
         probes=["x - y", "y^2 - 1", "x + y", "x", "x^3 - y"]),
    Case("nilpotent cone", ["x", "T"], ["x^2", "x*T", "T^2"], elim=["x"], J=["T"],
         probes=["x^2*T + T^3", "x + T", "x*T^2", "T"]),
    Case("graph of t", ["t", "x"], ["t^2", "x - t"], elim=["t"], J=["x"],
         probes=["x^2", "x", "t*x", "x^2 - t"]),
    Case("crossing", ["x", "y"], ["x*y"], elim=["y"], J=["x"],
         probes=["x^2*y", "x + y", "y"]),
    Case("double line", ["x", "y"], ["x^2*y"], elim=[], J=["y"],
         probes=["x^2*y^2", "x^2", "x*y"]),
    Case("versal graph", ["x", "Y", "T"], ["Y*x - T", "x^2"], elim=["Y"], J=["T"],
         probes=["x*T", "T^2", "T", "x*Y"]),
    Case("nilpotent base", ["x", "T"], ["x*T", "T^2"], base=["x^2"], elim=["T"], J=["T"],
         probes=["x*T + T^2", "x", "T"]),
    Case("space curve", ["x", "y", "z"], ["y^2 - x*z", "x*y - z"], elim=["z"], J=["x"],
         probes=["y^3 - x*y*z", "x^2*z - y*z", "z", "y^2 - z"]),
    Case("cubic", ["x", "y", "z"], ["x^3 - y", "x*y^2 - z"], elim=["x"], J=["y"],
         probes=["x^4 - x*y", "y^3*x - z*y", "x - y", "z"]),
    Case("quotient colon", ["x", "y"], [], base=["x*y"], elim=[], J=["x"],
         probes=["x*y", "y"]),
]


def d(f):
    return dict(f.terms)


def lifted_dicts(I):
    return [d(g) for g in I.lifted_gens()]


def widen(f, big_vars):
    """Exponent dict of a polynomial in a sub-ring, padded to ``big_vars``."""
    names = f.ring.variables
    out = {}
    for m, c in f.terms.items():
        e = dict(zip(names, m))
        out[tuple(e.get(v, 0) for v in big_vars)] = c
    return out


DEG = 6


def membership_agrees(case, D=DEG):
    I = case.ideal()
    amb = I.ring.ambient
    gens = lifted_dicts(I)
    out = []
    for p in case.probes:
        f = amb(p)
        out.append(I.contains(f) == oracle.in_ideal(d(f), gens, amb.nvars, D))
    return all(out)


def elimination_agrees(case, D=DEG):
    I = case.ideal()
    amb = I.ring.ambient
    idx = [amb.index(v) for v in case.elim]
    E = eliminate(I, case.elim)
    basis = oracle.eliminate(lifted_dicts(I), amb.nvars, idx, D)
    space = oracle.Span()
    for b in basis:
        space.add(b)
    egens = [widen(g, amb.variables) for g in E.gb]
    # every engine generator is an oracle element, and vice versa
    sound = all(space.contains(g) for g in egens if oracle.tdeg(g) <= D)
    complete = all(oracle.in_ideal(b, egens, amb.nvars, D) for b in basis)
    free_of = all(m[i] == 0 for g in egens for m in g for i in idx)
    return sound and complete and free_of


def quotient_agrees(case, dmax=3, D=DEG):
    I, J = case.ideal(), case.jideal()
    amb = I.ring.ambient
    Q = ideal_quotient(I, J)
    gens = lifted_dicts(I)
    jg = [d(j) for j in J.gens]
    basis = oracle.colon(gens, jg, amb.nvars, dmax, D)
    qgens = lifted_dicts(Q)
    complete = all(oracle.in_ideal(b, qgens, amb.nvars, D) for b in basis)
    sound = all(oracle.in_ideal(oracle.mul(d(g), j), gens, amb.nvars, D)
                for g in Q.gens for j in jg)
    return complete and sound


def saturation_agrees(case, k=3, dmax=3, D=DEG):
    I, J = case.ideal(), case.jideal()
    amb = I.ring.ambient
    S = saturate(I, J)
    gens = lifted_dicts(I)
    jg = [d(j) for j in J.gens]
    basis = oracle.saturation(gens, jg, amb.nvars, k, dmax, D + k)
    sgens = lifted_dicts(S)
    complete = all(oracle.in_ideal(b, sgens, amb.nvars, D) for b in basis)
    sound = all(oracle.in_ideal(oracle.mul(d(g), p), gens, amb.nvars, D + k)
                for g in S.gens for p in oracle.power_gens(jg, k))
    return complete and sound
