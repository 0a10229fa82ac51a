"""Exact coefficients, monomial orders, polynomials, affine rings and ring maps."""

from __future__ import annotations

import re
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence


class RingMismatch(ValueError):
    """Raised when operands live in different rings."""


# ---------------------------------------------------------------------------
# coefficient fields

class GFElement:
    """Residue modulo a prime p, kept in [0, p)."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = value % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, GFElement):
            if other.p != self.p:
                raise RingMismatch(f"GF({self.p}) vs GF({other.p})")
            return other.value
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GFElement(self.value + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GFElement(self.value - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GFElement(o - self.value, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GFElement(self.value * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return GFElement(-self.value, self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o % self.p == 0:
            raise ZeroDivisionError("division by zero in GF(%d)" % self.p)
        return GFElement(self.value * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.value == 0:
            raise ZeroDivisionError("division by zero in GF(%d)" % self.p)
        return GFElement(o * pow(self.value, -1, self.p), self.p)

    def __pow__(self, n: int):
        if n < 0:
            return 1 / GFElement(pow(self.value, -n, self.p), self.p)
        return GFElement(pow(self.value, n, self.p), self.p)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return (self.value - o) % self.p == 0

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"GFElement({self.value}, {self.p})"

    def __str__(self):
        return str(self.value)


class Field:
    """Coefficient field: the rationals (p == 0) or GF(p)."""

    def __init__(self, characteristic: int = 0):
        if characteristic and not _is_prime(characteristic):
            raise ValueError(f"GF({characteristic}): modulus must be prime")
        self.characteristic = characteristic

    def __call__(self, value):
        p = self.characteristic
        if p == 0:
            if isinstance(value, GFElement):
                raise RingMismatch("cannot coerce a GF element into QQ")
            return Fraction(value)
        if isinstance(value, GFElement):
            if value.p != p:
                raise RingMismatch(f"GF({value.p}) vs GF({p})")
            return value
        if isinstance(value, str):
            value = Fraction(value)
        if isinstance(value, Fraction):
            if value.denominator % p == 0:
                raise ZeroDivisionError(f"denominator vanishes in GF({p})")
            return GFElement(value.numerator * pow(value.denominator, -1, p), p)
        return GFElement(int(value), p)

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def format(self, c) -> str:
        return str(c)

    def __eq__(self, other):
        return isinstance(other, Field) and other.characteristic == self.characteristic

    def __hash__(self):
        return hash(("Field", self.characteristic))

    def __str__(self):
        return "QQ" if self.characteristic == 0 else f"GF({self.characteristic})"

    __repr__ = __str__


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)


# ---------------------------------------------------------------------------
# monomial orders
#
# An order is a sort key on exponent tuples: larger key == larger monomial.

def _degrevlex_key(exps):
    return (sum(exps), tuple(-e for e in reversed(exps)))


class MonomialOrder:
    """A monomial order on exponent tuples of a fixed variable list.

    ``kind`` is one of ``lex``, ``degrevlex``, ``block`` or ``tgraded``.
    ``block`` compares the exponents of the ``first`` indices by degrevlex and
    breaks ties with ``inner`` on the remaining indices; it eliminates
    exactly those variables.  ``tgraded`` gives degree 1 to the ``first``
    indices and 0 to the others, ties by degrevlex.
    """

    def __init__(self, kind: str = "degrevlex", first: Sequence[int] = (),
                 inner: MonomialOrder | None = None):
        if kind not in ("lex", "degrevlex", "block", "tgraded"):
            raise ValueError(f"unknown monomial order {kind!r}")
        self.kind = kind
        self.first = tuple(first)
        self.inner = inner
        if kind == "lex":
            self.key = tuple
        elif kind == "degrevlex":
            self.key = _degrevlex_key
        elif kind == "block":
            first = self.first
            inner = inner or MonomialOrder("degrevlex")
            self.inner = inner
            first_set = set(first)

            def key(exps, _f=first, _s=first_set, _ik=inner.key):
                head = [exps[i] for i in _f]
                rest = [e for i, e in enumerate(exps) if i not in _s]
                return (_degrevlex_key(head), _ik(tuple(rest)))
            self.key = key
        else:
            first = self.first

            def key(exps, _f=first):
                return (sum(exps[i] for i in _f), _degrevlex_key(exps))
            self.key = key

    def compare(self, a: Sequence[int], b: Sequence[int]) -> int:
        """Return -1, 0 or 1 as monomial ``a`` is less, equal, greater than ``b``."""
        if len(a) != len(b):
            raise ValueError("monomials of different lengths")
        ka, kb = self.key(tuple(a)), self.key(tuple(b))
        return (ka > kb) - (ka < kb)

    def _sig(self):
        return (self.kind, self.first, self.inner._sig() if self.inner else None)

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and self._sig() == other._sig()

    def __hash__(self):
        return hash(self._sig())

    def __repr__(self):
        if self.kind in ("lex", "degrevlex"):
            return self.kind
        return f"{self.kind}({list(self.first)}, {self.inner!r})"


LEX = MonomialOrder("lex")
DEGREVLEX = MonomialOrder("degrevlex")


def block_order(nvars: int, eliminate: Iterable[int], inner: MonomialOrder | None = None):
    """Elimination order for the given variable indices (``nvars`` is unused but checked)."""
    eliminate = sorted(set(eliminate))
    if any(i < 0 or i >= nvars for i in eliminate):
        raise ValueError("variable index out of range")
    return MonomialOrder("block", eliminate, inner or DEGREVLEX)


# ---------------------------------------------------------------------------
# polynomial rings and polynomials

_IDENT = re.compile(r"^[A-Za-z_][A-Za-z_0-9']*$")


class PolyRing:
    """k[x_1..x_n] with a fixed monomial order."""

    def __init__(self, field: Field, variables: Sequence[str],
                 order: MonomialOrder = DEGREVLEX):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ValueError(f"duplicate variable names in {variables}")
        self.field = field
        self.variables = variables
        self.order = order
        self.nvars = len(variables)
        self._index = {v: i for i, v in enumerate(variables)}

    # identity -------------------------------------------------------------
    def _sig(self):
        return (self.field, self.variables, self.order)

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self._sig() == other._sig()

    def __hash__(self):
        return hash(self._sig())

    def __repr__(self):
        return f"{self.field}[{','.join(self.variables)}]"

    # construction -----------------------------------------------------------
    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown variable {name!r} in {self}") from None

    @property
    def zero(self) -> Polynomial:
        return Polynomial(self, {})

    @property
    def one(self) -> Polynomial:
        return self.constant(1)

    def constant(self, c) -> Polynomial:
        c = self.field(c)
        if not c:
            return self.zero
        return Polynomial(self, {(0,) * self.nvars: c})

    def var(self, name: str) -> Polynomial:
        e = [0] * self.nvars
        e[self.index(name)] = 1
        return Polynomial(self, {tuple(e): self.field.one})

    def gens(self) -> list[Polynomial]:
        return [self.var(v) for v in self.variables]

    def monomial(self, exps: Sequence[int], coeff=1) -> Polynomial:
        c = self.field(coeff)
        if len(exps) != self.nvars:
            raise ValueError("exponent vector has wrong length")
        return Polynomial(self, {tuple(exps): c} if c else {})

    def __call__(self, obj) -> Polynomial:
        """Coerce a constant, a polynomial from a ring with a subset of our variables, or a string."""
        if isinstance(obj, Polynomial):
            if obj.ring is self:
                return obj
            return obj.change_ring(self)
        if isinstance(obj, str):
            from .dsl import parse_polynomial
            return parse_polynomial(obj, self)
        return self.constant(obj)

    def with_order(self, order: MonomialOrder) -> PolyRing:
        return PolyRing(self.field, self.variables, order)

    def extend(self, names: Sequence[str], order: MonomialOrder = DEGREVLEX) -> PolyRing:
        """Ring on our variables followed by ``names`` (which must be new)."""
        return PolyRing(self.field, self.variables + tuple(names), order)

    def fresh_names(self, stem: str, count: int, avoid: Iterable[str] = ()) -> list[str]:
        """``count`` names ``stem1..`` (or ``stem`` when count == 1) not clashing with our variables."""
        taken = set(self.variables) | set(avoid)
        while True:
            names = [stem] if count == 1 else [f"{stem}{i + 1}" for i in range(count)]
            if not taken.intersection(names):
                return names
            stem = stem + "'"

    def quotient(self, gens: Iterable = ()) -> AffineRing:
        return AffineRing(self, gens)


class Polynomial:
    """Sparse polynomial: exponent tuple -> nonzero coefficient."""

    def __init__(self, ring: PolyRing, terms: Mapping[tuple, object]):
        self.ring = ring
        self.terms = terms

    @classmethod
    def from_terms(cls, ring: PolyRing, terms: Mapping[tuple, object]) -> Polynomial:
        """Build from a possibly unnormalized mapping (drops zeros, coerces)."""
        f = ring.field
        out = {}
        for m, c in terms.items():
            c = f(c)
            if c:
                out[tuple(m)] = c
        return cls(ring, out)

    # basic queries ----------------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self):
        return self.terms.get((0,) * self.ring.nvars, self.ring.field.zero)

    @cached_property
    def lm(self) -> tuple:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=self.ring.order.key)

    @property
    def lc(self):
        return self.terms[self.lm]

    def sorted_terms(self) -> list[tuple[tuple, object]]:
        key = self.ring.order.key
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def degree_in(self, indices: Iterable[int]) -> set[int]:
        """Set of partial degrees in the given variable indices over all terms."""
        idx = tuple(indices)
        return {sum(m[i] for i in idx) for m in self.terms}

    def variables_used(self) -> set[str]:
        used = set()
        for m in self.terms:
            for i, e in enumerate(m):
                if e:
                    used.add(self.ring.variables[i])
        return used

    def monic(self) -> Polynomial:
        if not self.terms:
            return self
        inv = 1 / self.lc
        return Polynomial(self.ring, {m: c * inv for m, c in self.terms.items()})

    # arithmetic -------------------------------------------------------------
    def _other(self, other) -> Polynomial | None:
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatch(f"{other.ring} vs {self.ring}")
            return other
        if isinstance(other, (int, Fraction, GFElement)):
            return self.ring.constant(other)
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for m, c in o.terms.items():
            s = out.get(m)
            s = c if s is None else s + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in o.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                s = out.get(m)
                s = c1 * c2 if s is None else s + c1 * c2
                if s:
                    out[m] = s
                else:
                    del out[m]
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def scale(self, c) -> Polynomial:
        c = self.ring.field(c)
        if not c:
            return self.ring.zero
        return Polynomial(self.ring, {m: v * c for m, v in self.terms.items()})

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, GFElement)):
            return self.scale(1 / self.ring.field(other))
        o = self._other(other)
        if o is not None and o.is_constant() and o:
            return self.scale(1 / o.constant_value())
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative exponent")
        result = self.ring.one
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction, GFElement)):
            return self.terms == self.ring.constant(other).terms
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    # ring changes ---------------------------------------------------------
    def change_ring(self, ring: PolyRing) -> Polynomial:
        """Move into ``ring`` matching variables by name (absent variables must have exponent 0)."""
        if ring.variables == self.ring.variables:
            return Polynomial(ring, {m: ring.field(c) for m, c in self.terms.items()})
        idx = []
        for i, v in enumerate(self.ring.variables):
            idx.append(ring._index.get(v))
        out = {}
        for m, c in self.terms.items():
            e = [0] * ring.nvars
            for i, k in enumerate(m):
                if k:
                    j = idx[i]
                    if j is None:
                        raise RingMismatch(
                            f"variable {self.ring.variables[i]} not in {ring}")
                    e[j] = k
            out[tuple(e)] = ring.field(c)
        return Polynomial(ring, out)

    def evaluate(self, images: Sequence[Polynomial], target: PolyRing) -> Polynomial:
        """Substitute ``images[i]`` for the i-th variable; results live in ``target``."""
        cache: list[dict[int, Polynomial]] = [dict() for _ in images]

        def power(i, k):
            d = cache[i]
            if k not in d:
                d[k] = images[i] ** k
            return d[k]

        acc = target.zero
        for m, c in self.terms.items():
            t = target.constant(c)
            for i, k in enumerate(m):
                if k:
                    t = t * power(i, k)
            acc = acc + t
        return acc

    # printing ---------------------------------------------------------------
    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({self})"


def _format_monomial(names, exps) -> str:
    parts = []
    for v, e in zip(names, exps):
        if e == 1:
            parts.append(v)
        elif e > 1:
            parts.append(f"{v}^{e}")
    return "*".join(parts)


def format_polynomial(f: Polynomial) -> str:
    if not f.terms:
        return "0"
    names = f.ring.variables
    char = f.ring.field.characteristic
    out = []
    for m, c in f.sorted_terms():
        mono = _format_monomial(names, m)
        if char:
            neg, mag = False, str(c)
        else:
            neg, mag = c < 0, str(abs(c))
        if mono:
            body = mono if mag == "1" else f"{mag}*{mono}"
        else:
            body = mag
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append(("- " if neg else "+ ") + body)
    return " ".join(out)


# ---------------------------------------------------------------------------
# affine rings

class AffineRing:
    """k[x]/I with elements represented by normal forms modulo I's reduced GB."""

    def __init__(self, ambient: PolyRing, ideal: Iterable = ()):
        self.ambient = ambient
        gens = []
        for g in ideal:
            g = ambient(g)
            if g:
                gens.append(g)
        self.ideal_gens = tuple(gens)

    @cached_property
    def gb(self) -> tuple[Polynomial, ...]:
        """Reduced Groebner basis of the defining ideal in the ambient order."""
        from .groebner import buchberger
        return tuple(buchberger(self.ideal_gens, self.ambient.order))

    @property
    def field(self) -> Field:
        return self.ambient.field

    @property
    def variables(self) -> tuple[str, ...]:
        return self.ambient.variables

    def nf(self, f) -> Polynomial:
        """Canonical representative of ``f``."""
        from .groebner import normal_form
        f = self.ambient(f)
        if not self.ideal_gens:
            return f
        return normal_form(f, self.gb)

    __call__ = nf

    def is_zero(self, f) -> bool:
        return not self.nf(f)

    def equal(self, f, g) -> bool:
        return self.is_zero(self.ambient(f) - self.ambient(g))

    def is_trivial(self) -> bool:
        """True for the zero ring."""
        return len(self.gb) == 1 and self.gb[0].is_constant()

    def var(self, name: str) -> Polynomial:
        return self.nf(self.ambient.var(name))

    def gens(self) -> list[Polynomial]:
        return [self.var(v) for v in self.variables]

    @property
    def zero(self) -> Polynomial:
        return self.ambient.zero

    @property
    def one(self) -> Polynomial:
        return self.nf(self.ambient.one)

    def _sig(self):
        return (self.ambient, self.gb)

    def __eq__(self, other):
        return isinstance(other, AffineRing) and self._sig() == other._sig()

    def __hash__(self):
        return hash(self._sig())

    def __str__(self):
        base = f"{self.field}[{','.join(self.variables)}]"
        if not self.ideal_gens:
            return base
        return f"{base}/({', '.join(str(g) for g in self.gb)})"

    __repr__ = __str__

    def extend(self, names: Sequence[str], relations: Iterable = (),
               order: MonomialOrder = DEGREVLEX) -> AffineRing:
        """This ring with new variables adjoined, modulo optional extra relations."""
        amb = self.ambient.extend(names, order)
        gens = [g.change_ring(amb) for g in self.ideal_gens]
        gens += [amb(r) for r in relations]
        return AffineRing(amb, gens)

    def with_order(self, order: MonomialOrder) -> AffineRing:
        amb = self.ambient.with_order(order)
        return AffineRing(amb, [g.change_ring(amb) for g in self.ideal_gens])

    def quotient(self, relations: Iterable) -> AffineRing:
        amb = self.ambient
        return AffineRing(amb, list(self.ideal_gens) + [amb(r) for r in relations])


def as_affine(R) -> AffineRing:
    if isinstance(R, AffineRing):
        return R
    if isinstance(R, PolyRing):
        return AffineRing(R, ())
    raise TypeError(f"not a ring: {R!r}")


# ---------------------------------------------------------------------------
# ring maps

class RingMap:
    """k-algebra map given by images of the source variables.

    Construction checks that every defining relation of the source maps to 0.
    """

    def __init__(self, source, target, images: Mapping[str, object] | Sequence,
                 check: bool = True):
        self.source = as_affine(source)
        self.target = as_affine(target)
        if self.source.field != self.target.field:
            raise RingMismatch("ring maps must preserve the coefficient field")
        amb = self.target.ambient
        if isinstance(images, Mapping):
            missing = set(self.source.variables) - set(images)
            if missing:
                raise ValueError(f"no image given for {sorted(missing)}")
            imgs = [images[v] for v in self.source.variables]
        else:
            imgs = list(images)
            if len(imgs) != len(self.source.variables):
                raise ValueError("wrong number of images")
        self.images = tuple(self.target.nf(amb(f)) for f in imgs)
        if check:
            for g in self.source.ideal_gens:
                if self(g):
                    raise ValueError(f"map is not well defined: {g} does not map to 0")

    def __call__(self, f) -> Polynomial:
        f = self.source.ambient(f)
        return self.target.nf(f.evaluate(self.images, self.target.ambient))

    def image_dict(self) -> dict[str, Polynomial]:
        return dict(zip(self.source.variables, self.images))

    def compose(self, other: RingMap) -> RingMap:
        """``self`` after ``other`` (``other.target`` must be ``self.source``)."""
        return RingMap(other.source, self.target, [self(f) for f in other.images],
                       check=False)

    @classmethod
    def identity(cls, R) -> RingMap:
        R = as_affine(R)
        return cls(R, R, R.ambient.gens(), check=False)

    @classmethod
    def inclusion(cls, source, target) -> RingMap:
        """Send each source variable to the target variable of the same name."""
        target = as_affine(target)
        source = as_affine(source)
        return cls(source, target, {v: target.ambient.var(v) for v in source.variables})

    def __eq__(self, other):
        return (isinstance(other, RingMap) and self.source == other.source
                and self.target == other.target and self.images == other.images)

    def __hash__(self):
        return hash((self.source, self.target, self.images))

    def __repr__(self):
        pairs = ", ".join(f"{v} -> {f}" for v, f in self.image_dict().items())
        return f"RingMap({self.source} -> {self.target} {{{pairs}}})"
