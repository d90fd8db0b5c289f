"""Sparse multivariate polynomials over a pluggable exact field.

A polynomial is a mapping from exponent tuples to nonzero field elements,
attached to a :class:`RingDescriptor` that fixes variable names, the
coefficient field, an optional multigrading (variable blocks, e.g. the two
factors of P2 x P2), and a default monomial order.
"""

from __future__ import annotations

from typing import Dict, Iterable, Optional, Sequence, Tuple

from .fields import Field, rational
from .orders import GREVLEX, MonomialOrder, mono_mul
from .parsing import ParseError, UnknownVariable, parse_expression


class RingMismatch(ValueError):
    """Raised when an operation mixes polynomials from different rings."""


class UnboundVariable(KeyError):
    """Raised when a substitution leaves a variable without an image."""


class ZeroPolynomial(ArithmeticError):
    """Raised when asking for the leading term of the zero polynomial."""


class RingDescriptor:
    """Variables, coefficient field, grading blocks, and default order."""

    def __init__(
        self,
        variables: Sequence[str],
        field: Field,
        blocks: Optional[Sequence[Sequence[str]]] = None,
        order: MonomialOrder = GREVLEX,
    ):
        self.variables = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("duplicate variable names")
        self.field = field
        self.order = order
        self.index = {name: i for i, name in enumerate(self.variables)}
        if blocks is None:
            blocks = [self.variables]
        self.blocks = tuple(tuple(b) for b in blocks)
        seen = [name for block in self.blocks for name in block]
        if sorted(seen) != sorted(self.variables):
            raise ValueError("grading blocks must partition the variables")
        self.block_of = {}
        for bi, block in enumerate(self.blocks):
            for name in block:
                self.block_of[self.index[name]] = bi

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def descriptor_key(self):
        return (self.variables, self.field.descriptor, self.blocks)

    def same_ring(self, other: "RingDescriptor") -> bool:
        return self.descriptor_key() == other.descriptor_key()

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(self.field.one)

    def constant(self, value) -> "Polynomial":
        if self.field.is_zero(value):
            return self.zero()
        return Polynomial(self, {(0,) * self.nvars: value})

    def variable(self, name: str) -> "Polynomial":
        if name not in self.index:
            raise KeyError("no variable %r in ring" % name)
        expo = [0] * self.nvars
        expo[self.index[name]] = 1
        return Polynomial(self, {tuple(expo): self.field.one})

    def gens(self):
        return [self.variable(v) for v in self.variables]

    def multidegree(self, mono) -> Tuple[int, ...]:
        degs = [0] * len(self.blocks)
        for i, e in enumerate(mono):
            if e:
                degs[self.block_of[i]] += e
        return tuple(degs)

    def mono_str(self, mono) -> str:
        parts = []
        for name, e in zip(self.variables, mono):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append("%s^%d" % (name, e))
        return "*".join(parts) if parts else "1"

    def parse(self, text: str, constants: Optional[dict] = None) -> "Polynomial":
        bound = dict(constants or {})
        if hasattr(self.field, "zeta"):
            bound.setdefault("zeta", self.field.zeta)
        return parse_expression(text, _PolyAdapter(self, bound))

    def with_field(self, field: Field) -> "RingDescriptor":
        return RingDescriptor(self.variables, field, self.blocks, self.order)

    def __repr__(self):
        return "%s[%s]" % (self.field.descriptor, ",".join(self.variables))


class Polynomial:
    """Immutable sparse polynomial; ``coeffs`` maps exponent tuples to nonzero values."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: RingDescriptor, coeffs: Dict[tuple, object]):
        self.ring = ring
        self.coeffs = coeffs

    # -- ring plumbing ----------------------------------------------------
    def _check(self, other: "Polynomial"):
        if self.ring is not other.ring and not self.ring.same_ring(other.ring):
            raise RingMismatch("polynomials live in different rings")

    def _wrap(self, coeffs) -> "Polynomial":
        return Polynomial(self.ring, coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring.same_ring(other.ring) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.ring.descriptor_key(), frozenset(self.coeffs.items())))

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = self.ring.constant(self.ring.field.from_rational(rational(other)))
        self._check(other)
        field = self.ring.field
        out = dict(self.coeffs)
        for mono, c in other.coeffs.items():
            val = field.add(out.get(mono, field.zero), c)
            if field.is_zero(val):
                out.pop(mono, None)
            else:
                out[mono] = val
        return self._wrap(out)

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        field = self.ring.field
        return self._wrap({m: field.neg(c) for m, c in self.coeffs.items()})

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            other = self.ring.constant(self.ring.field.from_rational(rational(other)))
        return self.__add__(-other)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(self.ring.field.from_rational(rational(other)))
        self._check(other)
        field = self.ring.field
        out: Dict[tuple, object] = {}
        zero = field.zero
        add, mul = field.add, field.mul
        small, large = (self.coeffs, other.coeffs)
        if len(small) > len(large):
            small, large = large, small
        for m1, c1 in small.items():
            for m2, c2 in large.items():
                key = tuple(a + b for a, b in zip(m1, m2))
                val = add(out.get(key, zero), mul(c1, c2))
                if field.is_zero(val):
                    out.pop(key, None)
                else:
                    out[key] = val
        return self._wrap(out)

    def __rmul__(self, other):
        return self.__mul__(other)

    def scale(self, value) -> "Polynomial":
        field = self.ring.field
        if field.is_zero(value):
            return self.ring.zero()
        return self._wrap({m: field.mul(c, value) for m, c in self.coeffs.items()})

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative polynomial power")
        result = self.ring.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    # -- structure ----------------------------------------------------------
    def terms(self, order: Optional[MonomialOrder] = None):
        """Term list (monomial, coefficient), sorted descending in the order."""
        order = order or self.ring.order
        return [(m, self.coeffs[m]) for m in order.sorted_desc(self.coeffs)]

    def leading_term(self, order: Optional[MonomialOrder] = None):
        if not self.coeffs:
            raise ZeroPolynomial("zero polynomial has no leading term")
        order = order or self.ring.order
        mono = max(self.coeffs, key=order.key)
        return mono, self.coeffs[mono]

    def leading_monomial(self, order: Optional[MonomialOrder] = None):
        return self.leading_term(order)[0]

    def total_degree(self) -> int:
        if not self.coeffs:
            return -1
        return max(sum(m) for m in self.coeffs)

    def multidegree(self):
        """Common multidegree if multihomogeneous, else None."""
        degs = {self.ring.multidegree(m) for m in self.coeffs}
        if len(degs) == 1:
            return degs.pop()
        return None

    def is_homogeneous(self) -> bool:
        return not self.coeffs or self.multidegree() is not None

    def homogeneous_parts(self) -> Dict[int, "Polynomial"]:
        parts: Dict[int, Dict[tuple, object]] = {}
        for m, c in self.coeffs.items():
            parts.setdefault(sum(m), {})[m] = c
        return {d: self._wrap(cs) for d, cs in sorted(parts.items())}

    def differentiate(self, var: str) -> "Polynomial":
        i = self.ring.index[var]
        field = self.ring.field
        out: Dict[tuple, object] = {}
        for m, c in self.coeffs.items():
            e = m[i]
            if e == 0:
                continue
            key = m[:i] + (e - 1,) + m[i + 1:]
            val = field.add(out.get(key, field.zero), field.mul(c, field.from_int(e)))
            if field.is_zero(val):
                out.pop(key, None)
            else:
                out[key] = val
        return self._wrap(out)

    def substitute(self, assignment: dict, target_ring: Optional[RingDescriptor] = None) -> "Polynomial":
        """Image under variable -> polynomial/field-element substitution.

        Unassigned variables map to the target ring's variable of the same
        name; a missing name raises :class:`UnboundVariable`.
        """
        target = target_ring
        images = {}
        for name, value in assignment.items():
            if name not in self.ring.index:
                raise UnboundVariable("variable %r not in source ring" % name)
            if isinstance(value, Polynomial):
                if target is None:
                    target = value.ring
                images[name] = value
        if target is None:
            target = self.ring
        tfield = target.field
        for name, value in assignment.items():
            if not isinstance(value, Polynomial):
                images[name] = target.constant(_as_scalar(tfield, value))
        appearing = set()
        for m in self.coeffs:
            for name, e in zip(self.ring.variables, m):
                if e:
                    appearing.add(name)
        for name in appearing:
            if name not in images:
                if name not in target.index:
                    raise UnboundVariable("no image for variable %r" % name)
                images[name] = target.variable(name)
        for name, img in images.items():
            if not img.ring.same_ring(target):
                raise RingMismatch("substitution images live in different rings")
        # power cache per variable
        powers = {name: {0: target.one()} for name in self.ring.variables}

        def var_power(name, e):
            cache = powers[name]
            if e not in cache:
                best = max(k for k in cache if k <= e)
                value = cache[best]
                for _ in range(e - best):
                    value = value * images[name]
                    best += 1
                    cache[best] = value
            return cache[e]

        result = target.zero()
        for m, c in self.coeffs.items():
            term = target.constant(_coerce_scalar(tfield, c, self.ring.field))
            for name, e in zip(self.ring.variables, m):
                if e:
                    term = term * var_power(name, e)
            result = result + term
        return result

    def evaluate(self, values: Sequence) -> object:
        """Value at a point: one field element per ring variable."""
        field = self.ring.field
        if len(values) != self.ring.nvars:
            raise ValueError("expected %d coordinates" % self.ring.nvars)
        total = field.zero
        for m, c in self.coeffs.items():
            term = c
            for v, e in zip(values, m):
                if e:
                    term = field.mul(term, field.pow(v, e))
            total = field.add(total, term)
        return total

    def map_coefficients(self, target_ring: RingDescriptor) -> "Polynomial":
        """Coerce coefficients into another ring with the same variables."""
        if target_ring.variables != self.ring.variables:
            raise RingMismatch("coefficient maps preserve the variable list")
        tfield = target_ring.field
        out = {}
        for m, c in self.coeffs.items():
            val = _coerce_scalar(tfield, c, self.ring.field)
            if not tfield.is_zero(val):
                out[m] = val
        return Polynomial(target_ring, out)

    def content_normalized(self) -> "Polynomial":
        from .groebner import content_normalize

        return self._wrap(content_normalize(self.coeffs, self.ring.field))

    def monic(self, order: Optional[MonomialOrder] = None) -> "Polynomial":
        if not self.coeffs:
            return self
        _, lc = self.leading_term(order)
        return self.scale(self.ring.field.inv(lc))

    def fingerprint(self) -> str:
        items = sorted(self.coeffs.items())
        return repr([(m, self.ring.field.format(c)) for m, c in items])

    # -- printing ------------------------------------------------------------
    def __str__(self):
        if not self.coeffs:
            return "0"
        field = self.ring.field
        chunks = []
        for mono, coeff in self.terms():
            mstr = self.ring.mono_str(mono)
            cstr = field.format(coeff)
            compound = any(ch in cstr[1:] for ch in "+-* ")
            if compound:
                body = "(%s)" % cstr
                sign = "+"
                if mstr != "1":
                    body += "*" + mstr
            else:
                sign = "-" if cstr.startswith("-") else "+"
                mag = cstr.lstrip("-")
                body = mag if mstr == "1" else (mstr if mag == "1" else "%s*%s" % (mag, mstr))
            chunks.append((sign, body))
        sign, body = chunks[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in chunks[1:]:
            out += " %s %s" % (sign, body)
        return out

    def __repr__(self):
        return "<%s | %s>" % (self.ring, self)


def _coerce_scalar(target_field: Field, value, source_field: Field):
    if source_field.descriptor == target_field.descriptor:
        return value
    return target_field.coerce(value, source_field)


def _as_scalar(field: Field, value):
    """Interpret a raw scalar for ``field``: ints and rationals are coerced,
    tuples are taken verbatim (cyclotomic vectors), strings are parsed."""
    if isinstance(value, tuple):
        return value
    if isinstance(value, int):
        return field.from_int(value)
    if isinstance(value, str):
        return field.parse(value)
    if hasattr(value, "denominator"):
        return field.from_rational(value)
    return value


class _PolyAdapter:
    """Parser adapter building Polynomial values; names resolve to ring
    variables first, then to bound constants (parameters, 'zeta')."""

    def __init__(self, ring: RingDescriptor, constants: dict):
        self.ring = ring
        self.constants = constants

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def pow(self, a, e):
        return a ** e

    def number(self, q):
        return self.ring.constant(self.ring.field.from_rational(q))

    def name(self, name, pos):
        if name in self.ring.index:
            return self.ring.variable(name)
        if name in self.constants:
            value = self.constants[name]
            if isinstance(value, Polynomial):
                return value
            return self.ring.constant(value)
        raise UnknownVariable(name, pos)


def multiply(f: Polynomial, g: Polynomial) -> Polynomial:
    """Exact product in a common ring."""
    return f * g


def substitute(f: Polynomial, assignment: dict, target_ring: Optional[RingDescriptor] = None) -> Polynomial:
    return f.substitute(assignment, target_ring)


def leading_term(f: Polynomial, order: Optional[MonomialOrder] = None):
    return f.leading_term(order)


def parse(ring: RingDescriptor, text: str, constants: Optional[dict] = None) -> Polynomial:
    return ring.parse(text, constants)


def parse_many(ring: RingDescriptor, texts: Iterable[str], constants: Optional[dict] = None):
    return [ring.parse(t, constants) for t in texts]
