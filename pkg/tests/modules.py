"""Test modules used across the Rees and Proj suites."""

from reeskit.fpmod import coker, direct_sum, exterior_power, free, present
from reeskit.groebner import Ideal
from reeskit.polycore import QQ, AffineRing, PolyRing, as_affine


def plane():
    return as_affine(PolyRing(QQ, ["x", "y"]))


def nilpotent_line():
    return AffineRing(PolyRing(QQ, ["x"]), ["x^2"])


def line():
    return as_affine(PolyRing(QQ, ["x"]))


def maximal_ideal():
    A = plane()
    x, y = A.ambient.gens()
    return present([(x,), (y,)], A, 1)


def nilpotent_module():
    A = nilpotent_line()
    return coker(A, [["x"]])


def torsion_sum():
    A = line()
    return direct_sum(free(A, 1), coker(A, [["x"]]))


def wedge_of_rank_three():
    """∧² of A^3 modulo the single relation (x, y, x + y)."""
    A = plane()
    return exterior_power(coker(A, [["x"], ["y"], ["x + y"]]), 2)


def suite_modules():
    return [
        ("free 2", free(plane(), 2)),
        ("ideal (x,y)", maximal_ideal()),
        ("nilpotent", nilpotent_module()),
        ("A + A/(x)", torsion_sum()),
        ("wedge 2", wedge_of_rank_three()),
        ("free 1 over A1", free(nilpotent_line(), 1)),
    ]


def density_instances():
    """(name, M, primes of A outside U, Jc, expected density of the preimage of U)."""
    A1 = nilpotent_line()
    A = plane()
    Axy = A.quotient(["x*y"])
    Ax = line()
    return [
        ("nilpotent", nilpotent_module(), [Ideal(A1, ["x"])], Ideal(A1, ["x"]), True),
        ("ideal (x,y)", maximal_ideal(), [], Ideal(A, ["x", "y"]), True),
        ("crossing p=(y)", free(Axy, 1), [Ideal(Axy, ["y"])], Ideal(Axy, ["y"]), False),
        ("crossing p=(x)", free(Axy, 1), [Ideal(Axy, ["x"])], Ideal(Axy, ["x"]), False),
        ("A + A/(x)", torsion_sum(), [], Ideal(Ax, ["x"]), True),
        ("crossing A/(y)", coker(Axy, [["y"]]), [Ideal(Axy, ["y"])], Ideal(Axy, ["y"]), False),
        ("crossing A/(x)", coker(Axy, [["x"]]), [Ideal(Axy, ["y"])], Ideal(Axy, ["y"]), True),
        ("nilpotent free", free(A1, 1), [Ideal(A1, ["x"])], Ideal(A1, ["x"]), False),
        ("wedge 2", wedge_of_rank_three(), [], Ideal(A, ["x", "y"]), True),
    ]
