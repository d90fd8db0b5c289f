"""Exact coefficient arithmetic: rationals, prime fields, cyclotomic quotients.

Every field element is an immutable plain value (``mpq``/``Fraction``, ``int``
residue, or a tuple of rationals) manipulated through a field object.  Field
objects with equal descriptors are interchangeable; binary operations between
elements of different fields raise :class:`IncompatibleField`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

try:  # pragma: no cover - exercised implicitly
    from gmpy2 import mpq as _RAT
except ImportError:  # pragma: no cover
    from fractions import Fraction as _RAT


class FieldError(ArithmeticError):
    pass


class ZeroInverse(FieldError):
    """Raised when inverting the zero element."""


class IncompatibleField(FieldError):
    """Raised when a binary operation mixes distinct fields."""


class BadPrime(FieldError):
    """Raised when a rational cannot be reduced modulo p (p divides a denominator)."""


#: Fixed primes above 2**20 used for modular verification runs.
VERIFICATION_PRIMES = (1048583, 1048589, 1048601)


def rational(num, den=None):
    """Build an exact rational from ints, a string like ``"2/3"``, or another rational."""
    if den is not None:
        return _RAT(num, den)
    if isinstance(num, str):
        return _RAT(num)
    return _RAT(num)


def is_probable_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 3.3e24."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def euler_phi(n: int) -> int:
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _poly_divmod_z(num, den):
    """Exact division of integer coefficient lists (low-to-high degree)."""
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for shift in range(len(num) - len(den), -1, -1):
        c = num[shift + len(den) - 1]
        if c % den[-1] != 0:
            raise ArithmeticError("non-exact polynomial division")
        q = c // den[-1]
        out[shift] = q
        if q:
            for i, d in enumerate(den):
                num[shift + i] -= q * d
    if any(num):
        raise ArithmeticError("non-exact polynomial division")
    return out


def cyclotomic_minimal_poly(n: int) -> list:
    """Coefficients (low to high) of the n-th cyclotomic polynomial, monic of degree phi(n)."""
    if n < 1:
        raise ValueError("n must be positive")
    # z^n - 1 divided by the product of lower cyclotomic polynomials.
    num = [0] * (n + 1)
    num[0], num[n] = -1, 1
    for d in range(1, n):
        if n % d == 0:
            num = _poly_divmod_z(num, cyclotomic_minimal_poly(d))
    return num


@dataclass(frozen=True)
class FieldDescriptor:
    """Identity of a field: 'rational', 'prime' (with p), or 'cyclotomic' (with n)."""

    kind: str
    prime: Optional[int] = None
    order: Optional[int] = None

    @property
    def characteristic(self) -> int:
        return self.prime if self.kind == "prime" else 0

    def __str__(self):
        if self.kind == "rational":
            return "QQ"
        if self.kind == "prime":
            return "GF(%d)" % self.prime
        return "QQ(zeta%d)" % self.order


class Field:
    """Base class; concrete fields implement arithmetic on raw element values."""

    descriptor: FieldDescriptor

    def check_same(self, other: "Field"):
        if self.descriptor != other.descriptor:
            raise IncompatibleField(
                "field mismatch: %s vs %s" % (self.descriptor, other.descriptor)
            )

    # generic helpers -----------------------------------------------------
    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        if e < 0:
            return self.pow(self.inv(a), -e)
        result = self.one
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def is_zero(self, a) -> bool:
        return not a

    def sum(self, values):
        total = self.zero
        for v in values:
            total = self.add(total, v)
        return total

    def axpy(self, work: dict, c, shift, g: dict):
        """In-place ``work -= c * x^shift * g`` on coefficient dicts."""
        mul = self.mul
        sub = self.sub
        zero = self.zero
        for mono, coeff in g.items():
            key = tuple(a + b for a, b in zip(mono, shift))
            val = sub(work.get(key, zero), mul(c, coeff))
            if val:
                work[key] = val
            else:
                work.pop(key, None)

    def coerce(self, value, source: "Field"):
        """Map a value of ``source`` into this field, when a canonical map exists."""
        if source.descriptor == self.descriptor:
            return value
        if source.descriptor.kind == "rational":
            return self.from_rational(value)
        raise IncompatibleField(
            "no coercion from %s to %s" % (source.descriptor, self.descriptor)
        )

    def from_rational(self, q):
        raise IncompatibleField("no rational coercion into %s" % self.descriptor)


class RationalField(Field):
    """Arbitrary-precision rationals, always stored reduced with positive denominator."""

    def __init__(self):
        self.descriptor = FieldDescriptor("rational")
        self.zero = _RAT(0)
        self.one = _RAT(1)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if not a:
            raise ZeroInverse("0 has no inverse")
        return 1 / a

    def pow(self, a, e):
        if e < 0 and not a:
            raise ZeroInverse("0 has no inverse")
        return a ** e

    def from_int(self, n: int):
        return _RAT(n)

    def from_rational(self, q):
        return _RAT(q)

    def axpy(self, work, c, shift, g):
        zero = self.zero
        for mono, coeff in g.items():
            key = tuple(a + b for a, b in zip(mono, shift))
            val = work.get(key, zero) - c * coeff
            if val:
                work[key] = val
            else:
                work.pop(key, None)

    def parse(self, text: str):
        return _RAT(text.strip())

    def format(self, a) -> str:
        return str(a)


class PrimeField(Field):
    """Residue arithmetic modulo a prime p > 2 (intended for p > 2**20)."""

    def __init__(self, p: int):
        if not is_probable_prime(p):
            raise ValueError("modulus %d is not prime" % p)
        self.p = p
        self.descriptor = FieldDescriptor("prime", prime=p)
        self.zero = 0
        self.one = 1

    def add(self, a, b):
        return (a + b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroInverse("0 has no inverse")
        return pow(a, -1, self.p)

    def pow(self, a, e):
        if e < 0 and a % self.p == 0:
            raise ZeroInverse("0 has no inverse")
        return pow(a, e, self.p)

    def from_int(self, n: int):
        return n % self.p

    def from_rational(self, q):
        den = q.denominator
        if den % self.p == 0:
            raise BadPrime("denominator of %s vanishes modulo %d" % (q, self.p))
        return q.numerator * pow(den, -1, self.p) % self.p

    def axpy(self, work, c, shift, g):
        p = self.p
        for mono, coeff in g.items():
            key = tuple(a + b for a, b in zip(mono, shift))
            val = (work.get(key, 0) - c * coeff) % p
            if val:
                work[key] = val
            else:
                work.pop(key, None)

    def parse(self, text: str):
        return self.from_rational(_RAT(text.strip()))

    def format(self, a) -> str:
        return str(a % self.p)


class CyclotomicField(Field):
    """QQ[z]/(Phi_n(z)): vectors of phi(n) rationals in the power basis 1, z, ..., z^(phi-1)."""

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("order must be positive")
        self.n = n
        self.phi = euler_phi(n)
        self.descriptor = FieldDescriptor("cyclotomic", order=n)
        self.minimal_poly = [_RAT(c) for c in cyclotomic_minimal_poly(n)]
        self.zero = tuple([_RAT(0)] * self.phi)
        one = [_RAT(0)] * self.phi
        one[0] = _RAT(1)
        self.one = tuple(one)
        # z^k mod Phi_n for k = phi .. 2*phi-2, used to fold products.
        self._high_powers = []
        current = [-c for c in self.minimal_poly[: self.phi]]
        self._high_powers.append(tuple(current))
        for _ in range(self.phi - 2):
            shifted = [_RAT(0)] + current[:-1]
            top = current[-1]
            if top:
                shifted = [
                    s + top * r for s, r in zip(shifted, self._high_powers[0])
                ]
            current = shifted
            self._high_powers.append(tuple(current))

    @property
    def zeta(self):
        if self.phi == 1:
            # z reduces to a rational (n = 1 or 2).
            return self._high_powers[0] if self.n > 1 else self.one
        gen = [_RAT(0)] * self.phi
        gen[1] = _RAT(1)
        return tuple(gen)

    def zeta_power(self, k: int):
        return self.pow(self.zeta, k % self.n if self.n > 0 else k)

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x for x in a)

    def is_zero(self, a):
        return not any(a)

    def mul(self, a, b):
        phi = self.phi
        if phi == 1:
            return (a[0] * b[0],)
        prod = [_RAT(0)] * (2 * phi - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        out = prod[:phi]
        for k in range(phi, 2 * phi - 1):
            c = prod[k]
            if c:
                table = self._high_powers[k - phi]
                for i, r in enumerate(table):
                    if r:
                        out[i] += c * r
        return tuple(out)

    def inv(self, a):
        if not any(a):
            raise ZeroInverse("0 has no inverse")
        # Extended Euclid in QQ[z] against the minimal polynomial.
        r0 = list(self.minimal_poly)
        r1 = list(a)
        s0, s1 = [], [_RAT(1)]
        while True:
            while r1 and not r1[-1]:
                r1.pop()
            if len(r1) == 1:
                c = r1[0]
                result = [x / c for x in s1]
                result += [_RAT(0)] * (self.phi - len(result))
                return tuple(result[: self.phi])
            q, r = self._poly_divmod(r0, r1)
            r0, r1 = r1, r
            s_next = self._poly_sub(s0, self._poly_mul(q, s1))
            s0, s1 = s1, s_next

    @staticmethod
    def _poly_mul(a, b):
        if not a or not b:
            return []
        out = [_RAT(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return out

    @staticmethod
    def _poly_sub(a, b):
        out = list(a) + [_RAT(0)] * (len(b) - len(a))
        for i, y in enumerate(b):
            out[i] -= y
        while out and not out[-1]:
            out.pop()
        return out

    @staticmethod
    def _poly_divmod(a, b):
        a = list(a)
        while a and not a[-1]:
            a.pop()
        db = len(b) - 1
        lead = b[-1]
        q = [_RAT(0)] * max(len(a) - db, 0)
        while len(a) - 1 >= db and a:
            c = a[-1] / lead
            shift = len(a) - 1 - db
            q[shift] = c
            for i in range(db + 1):
                a[shift + i] -= c * b[i]
            while a and not a[-1]:
                a.pop()
        return q, a

    def from_int(self, n: int):
        out = [_RAT(0)] * self.phi
        out[0] = _RAT(n)
        return tuple(out)

    def from_rational(self, q):
        out = [_RAT(0)] * self.phi
        out[0] = _RAT(q)
        return tuple(out)

    def as_rational(self, a):
        """Return the rational value of ``a`` if it lies in QQ, else None."""
        if any(a[1:]):
            return None
        return a[0]

    def roots_of_unity(self):
        """All roots of unity in the field: +/- zeta^k, deduplicated."""
        seen = {}
        for k in range(self.n):
            u = self.zeta_power(k)
            seen.setdefault(u, u)
            seen.setdefault(self.neg(u), self.neg(u))
        return list(seen.values())

    def parse(self, text: str):
        from .parsing import parse_field_literal

        return parse_field_literal(text, self)

    def format(self, a) -> str:
        terms = []
        for i, c in enumerate(a):
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                power = "zeta" if i == 1 else "zeta^%d" % i
                if c == 1:
                    terms.append(power)
                elif c == -1:
                    terms.append("-" + power)
                else:
                    terms.append("%s*%s" % (c, power))
        if not terms:
            return "0"
        out = terms[0]
        for t in terms[1:]:
            out += " - " + t[1:] if t.startswith("-") else " + " + t
        return out


_RATIONAL_FIELD = RationalField()
_FIELD_CACHE: dict = {}


def rational_field() -> RationalField:
    return _RATIONAL_FIELD


def prime_field(p: int) -> PrimeField:
    key = ("prime", p)
    if key not in _FIELD_CACHE:
        _FIELD_CACHE[key] = PrimeField(p)
    return _FIELD_CACHE[key]


def cyclotomic_field(n: int) -> CyclotomicField:
    key = ("cyclotomic", n)
    if key not in _FIELD_CACHE:
        _FIELD_CACHE[key] = CyclotomicField(n)
    return _FIELD_CACHE[key]


def field_from_descriptor(desc: FieldDescriptor) -> Field:
    if desc.kind == "rational":
        return rational_field()
    if desc.kind == "prime":
        return prime_field(desc.prime)
    if desc.kind == "cyclotomic":
        return cyclotomic_field(desc.order)
    raise ValueError("unknown field kind %r" % desc.kind)


def field_inverse(field: Field, a):
    """Multiplicative inverse in the given field; raises ZeroInverse on 0."""
    return field.inv(a)


def reduce_to_prime_field(q, p: int) -> int:
    """Image of a rational in GF(p); raises BadPrime if p divides the denominator."""
    return prime_field(p).from_rational(rational(q))
