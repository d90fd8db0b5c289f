"""Monomial orders: grevlex (default), lex, graded lex, and elimination block orders.

Monomials are exponent tuples.  Each order provides ``key`` (sort key for
max-comparison) and ``negkey`` (key whose ascending order is the descending
monomial order, for use with min-heaps).
"""

from __future__ import annotations


def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a, b):
    """True if x^a divides x^b."""
    return all(x <= y for x, y in zip(a, b))


def mono_div(a, b):
    """Exponent vector of x^a / x^b (caller guarantees divisibility)."""
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_gcd(a, b):
    return tuple(min(x, y) for x, y in zip(a, b))


def mono_degree(a):
    return sum(a)


def mono_coprime(a, b):
    return all(x == 0 or y == 0 for x, y in zip(a, b))


class MonomialOrder:
    name = "?"

    def key(self, m):
        raise NotImplementedError

    def negkey(self, m):
        raise NotImplementedError

    def max(self, monomials):
        return max(monomials, key=self.key)

    def sorted_desc(self, monomials):
        return sorted(monomials, key=self.key, reverse=True)

    def __repr__(self):
        return self.name

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and self.name == getattr(other, "name", None)

    def __hash__(self):
        return hash(self.name)


class Grevlex(MonomialOrder):
    """Graded reverse lexicographic: higher total degree wins, ties go to the
    monomial with the smaller exponent on the last distinguishing variable."""

    name = "grevlex"

    def key(self, m):
        return (sum(m), tuple(-e for e in reversed(m)))

    def negkey(self, m):
        return (-sum(m), tuple(reversed(m)))


class Lex(MonomialOrder):
    name = "lex"

    def key(self, m):
        return m

    def negkey(self, m):
        return tuple(-e for e in m)


class Grlex(MonomialOrder):
    """Total degree refined by lex; the graded-refined order."""

    name = "grlex"

    def key(self, m):
        return (sum(m), m)

    def negkey(self, m):
        return (-sum(m), tuple(-e for e in m))


class BlockOrder(MonomialOrder):
    """Elimination order: compare the first ``split`` variables first.

    A Groebner basis under this order intersected with the second block's
    subring generates the elimination ideal.
    """

    def __init__(self, split: int, first: MonomialOrder = None, second: MonomialOrder = None):
        self.split = split
        self.first = first or Grevlex()
        self.second = second or Grevlex()
        self.name = "block(%d;%s,%s)" % (split, self.first.name, self.second.name)

    def key(self, m):
        return (self.first.key(m[: self.split]), self.second.key(m[self.split:]))

    def negkey(self, m):
        return (self.first.negkey(m[: self.split]), self.second.negkey(m[self.split:]))


GREVLEX = Grevlex()
LEX = Lex()
GRLEX = Grlex()


def order_from_name(name: str) -> MonomialOrder:
    if name == "grevlex":
        return GREVLEX
    if name == "lex":
        return LEX
    if name == "grlex":
        return GRLEX
    if name.startswith("block(") and name.endswith(")"):
        inner = name[6:-1].split(";")[0]
        return BlockOrder(int(inner))
    raise ValueError("unknown monomial order %r" % name)
