"""Ideal-level operations: elimination, saturation, Hilbert data, projective
emptiness, and support extraction for zero-dimensional homogeneous ideals.

Dimension and degree are read off the Hilbert series of the leading-term
ideal of a Groebner basis; the projective dimension is -1 exactly when the
scheme is empty.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .fields import Field, rational, rational_field
from .groebner import GroebnerBasis, normal_form, reduced_groebner_basis
from .linalg import solve_linear
from .orders import GREVLEX, BlockOrder, MonomialOrder, mono_divides
from .polynomials import Polynomial, RingDescriptor


class NotHomogeneous(ValueError):
    """Raised when an operation requires a homogeneous ideal."""


class DimensionNotZero(ValueError):
    """Raised when support extraction is asked of a positive-dimensional ideal."""


class UnsupportedField(ValueError):
    """Raised when point extraction needs rational-root finding outside QQ."""


_GB_CACHE: dict = {}


class Ideal:
    """Finitely generated ideal with cached reduced Groebner bases per order."""

    def __init__(self, ring: RingDescriptor, generators: Sequence[Polynomial]):
        self.ring = ring
        self.generators = [g for g in generators if not g.is_zero()]
        for g in self.generators:
            if not g.ring.same_ring(ring):
                raise ValueError("generator outside the ideal's ring")

    @classmethod
    def parse(cls, ring: RingDescriptor, texts: Sequence[str], constants=None) -> "Ideal":
        return cls(ring, [ring.parse(t, constants) for t in texts])

    def fingerprint(self) -> str:
        gens = sorted(g.fingerprint() for g in self.generators)
        return repr((self.ring.variables, str(self.ring.field.descriptor), gens))

    def groebner_basis(
        self,
        order: Optional[MonomialOrder] = None,
        strategy: str = "sugar",
        deadline=None,
    ) -> GroebnerBasis:
        order = order or self.ring.order
        if not self.generators:
            return GroebnerBasis(self.ring, order, [], reduced=True)
        key = (self.fingerprint(), order.name, strategy)
        cached = _GB_CACHE.get(key)
        if cached is None:
            cached = reduced_groebner_basis(self.generators, order, strategy, deadline)
            _GB_CACHE[key] = cached
        return cached

    def normal_form(self, f: Polynomial, deadline=None) -> Polynomial:
        gb = self.groebner_basis(deadline=deadline)
        return normal_form(f, gb.basis, gb.order, deadline)

    def contains(self, f: Polynomial, deadline=None) -> bool:
        return self.normal_form(f, deadline).is_zero()

    def is_trivial(self, deadline=None) -> bool:
        return self.groebner_basis(deadline=deadline).contains_one()

    def __add__(self, other: "Ideal") -> "Ideal":
        if not self.ring.same_ring(other.ring):
            raise ValueError("ideal sum requires a common ring")
        return Ideal(self.ring, self.generators + other.generators)

    def is_homogeneous(self) -> bool:
        """Homogeneity for the total grading."""
        return all(
            len({sum(m) for m in g.coeffs}) == 1 for g in self.generators
        )

    def is_multihomogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.generators)

    def with_field(self, field: Field) -> "Ideal":
        """Image of the generators under coefficient coercion (e.g. mod p)."""
        ring = self.ring.with_field(field)
        return Ideal(ring, [g.map_coefficients(ring) for g in self.generators])

    def evaluate_at(self, point) -> bool:
        """True when every generator vanishes at the point."""
        field = self.ring.field
        return all(field.is_zero(g.evaluate(point)) for g in self.generators)

    def __repr__(self):
        return "Ideal(%d gens in %r)" % (len(self.generators), self.ring)


# ---------------------------------------------------------------------------
# Hilbert series of monomial ideals
# ---------------------------------------------------------------------------


def minimalize_monomials(monos: Sequence[tuple]) -> Tuple[tuple, ...]:
    monos = sorted(set(monos), key=lambda m: (sum(m), m))
    out: List[tuple] = []
    for m in monos:
        if not any(mono_divides(k, m) for k in out):
            out.append(m)
    return tuple(out)


def _poly_add(a: List[int], b: List[int], shift: int = 0) -> List[int]:
    out = list(a) + [0] * max(0, shift + len(b) - len(a))
    for i, c in enumerate(b):
        out[shift + i] += c
    return out


def _poly_mul_int(a: List[int], b: List[int]) -> List[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


_HILBERT_MEMO: dict = {}


def hilbert_numerator(lt_monomials: Sequence[tuple], nvars: int) -> List[int]:
    """Numerator N(t) of the Hilbert series N(t)/(1-t)^nvars of the quotient
    by the monomial ideal, via the pivot-variable recursion."""
    gens = minimalize_monomials(lt_monomials)
    return list(_hilbert_rec(gens))


def _hilbert_rec(gens: Tuple[tuple, ...]) -> Tuple[int, ...]:
    if not gens:
        return (1,)
    if any(sum(m) == 0 for m in gens):
        return (0,)
    cached = _HILBERT_MEMO.get(gens)
    if cached is not None:
        return cached
    coprime = True
    for a, b in itertools.combinations(gens, 2):
        if any(x > 0 and y > 0 for x, y in zip(a, b)):
            coprime = False
            break
    if coprime:
        result = [1]
        for m in gens:
            factor = [0] * (sum(m) + 1)
            factor[0] = 1
            factor[sum(m)] = -1
            result = _poly_mul_int(result, factor)
        result = tuple(result)
        _HILBERT_MEMO[gens] = result
        return result
    nvars = len(gens[0])
    counts = [0] * nvars
    for m in gens:
        for i, e in enumerate(m):
            if e:
                counts[i] += 1
    pivot = max(range(nvars), key=lambda i: counts[i])
    unit = tuple(1 if i == pivot else 0 for i in range(nvars))
    plus = minimalize_monomials([m for m in gens if m[pivot] == 0] + [unit])
    colon = minimalize_monomials(
        [m[:pivot] + (m[pivot] - 1,) + m[pivot + 1:] if m[pivot] else m for m in gens]
    )
    n_plus = _hilbert_rec(plus)
    n_colon = _hilbert_rec(colon)
    result = tuple(_poly_add(list(n_plus), list(n_colon), shift=1))
    _HILBERT_MEMO[gens] = result
    return result


def hilbert_series_coefficients(numerator: Sequence[int], nvars: int, upto: int) -> List[int]:
    """First coefficients of N(t)/(1-t)^nvars (the Hilbert function values)."""
    out = []
    for d in range(upto + 1):
        total = 0
        for i, c in enumerate(numerator):
            if i > d:
                break
            if c:
                total += c * math.comb(nvars - 1 + d - i, nvars - 1)
        out.append(total)
    return out


@dataclass
class HilbertData:
    """Projective dimension and degree, with the Hilbert-series numerator as
    the machine-checkable certificate."""

    numerator: List[int]
    dimension: int
    degree: Optional[int]

    def as_tuple(self):
        return (self.dimension, self.degree)


def hilbert_from_numerator(numerator: Sequence[int], nvars: int) -> HilbertData:
    reduced = list(numerator)
    cancels = 0
    while reduced and sum(reduced) == 0 and cancels < nvars:
        prefix = list(itertools.accumulate(reduced))
        while prefix and prefix[-1] == 0:
            prefix.pop()
        reduced = prefix if prefix else [0]
        cancels += 1
        if reduced == [0]:
            break
    if reduced == [0] or not reduced:
        return HilbertData(list(numerator), -1, None)
    pole = nvars - cancels
    if pole <= 0:
        return HilbertData(list(numerator), -1, None)
    return HilbertData(list(numerator), pole - 1, sum(reduced))


def hilbert_dimension_degree(
    ideal: Ideal, order: Optional[MonomialOrder] = None, deadline=None
) -> HilbertData:
    """Dimension and degree of Proj(ring/I) for a homogeneous ideal."""
    if not ideal.is_homogeneous():
        raise NotHomogeneous("ideal is not homogeneous for the total grading")
    nvars = ideal.ring.nvars
    if not ideal.generators:
        return HilbertData([1], nvars - 1, 1)
    gb = ideal.groebner_basis(order, deadline=deadline)
    lts = [g.leading_monomial(gb.order) for g in gb.basis]
    numerator = hilbert_numerator(lts, nvars)
    return hilbert_from_numerator(numerator, nvars)


# ---------------------------------------------------------------------------
# Elimination, intersection, saturation
# ---------------------------------------------------------------------------


def _induced_blocks(blocks, keep_names):
    kept = [tuple(v for v in block if v in keep_names) for block in blocks]
    return [b for b in kept if b] or None


def eliminate(ideal: Ideal, variables: Sequence[str], deadline=None) -> Ideal:
    """Generators of I intersected with the subring omitting ``variables``."""
    elim = [v for v in ideal.ring.variables if v in set(variables)]
    keep = [v for v in ideal.ring.variables if v not in set(variables)]
    if not elim:
        gb = ideal.groebner_basis(deadline=deadline)
        return Ideal(ideal.ring, list(gb.basis))
    work_ring = RingDescriptor(
        elim + keep, ideal.ring.field, None, BlockOrder(len(elim))
    )
    moved = [
        g.substitute({v: work_ring.variable(v) for v in ideal.ring.variables}, work_ring)
        for g in ideal.generators
    ]
    gb = reduced_groebner_basis(moved, work_ring.order, deadline=deadline)
    target = RingDescriptor(
        keep,
        ideal.ring.field,
        _induced_blocks(ideal.ring.blocks, set(keep)),
        ideal.ring.order,
    )
    kept_polys = []
    split = len(elim)
    for g in gb.basis:
        if all(sum(m[:split]) == 0 for m in g.coeffs):
            kept_polys.append(
                g.substitute({v: target.variable(v) for v in keep}, target)
            )
    return Ideal(target, kept_polys)


def intersect(a: Ideal, b: Ideal, deadline=None) -> Ideal:
    """I cap J via the auxiliary-variable trick: eliminate w from w*I + (1-w)*J."""
    if not a.ring.same_ring(b.ring):
        raise ValueError("intersection requires a common ring")
    if not a.generators or not b.generators:
        return Ideal(a.ring, [])
    base = a.ring
    aux = "w_"
    while aux in base.index:
        aux += "_"
    work_ring = RingDescriptor(
        (aux,) + base.variables, base.field, None, BlockOrder(1)
    )
    move = {v: work_ring.variable(v) for v in base.variables}
    w = work_ring.variable(aux)
    one = work_ring.one()
    gens = [w * g.substitute(move, work_ring) for g in a.generators]
    gens += [(one - w) * g.substitute(move, work_ring) for g in b.generators]
    gb = reduced_groebner_basis(gens, work_ring.order, deadline=deadline)
    out = []
    for g in gb.basis:
        if all(m[0] == 0 for m in g.coeffs):
            out.append(g.substitute({v: base.variable(v) for v in base.variables}, base))
    return Ideal(base, out)


def saturate_single(ideal: Ideal, f: Polynomial, deadline=None) -> Ideal:
    """I : f^infinity via the Rabinowitsch trick (adjoin w with w*f = 1)."""
    if f.is_zero():
        return Ideal(ideal.ring, list(ideal.generators))
    base = ideal.ring
    aux = "w_"
    while aux in base.index:
        aux += "_"
    work_ring = RingDescriptor((aux,) + base.variables, base.field, None, BlockOrder(1))
    move = {v: work_ring.variable(v) for v in base.variables}
    w = work_ring.variable(aux)
    gens = [g.substitute(move, work_ring) for g in ideal.generators]
    gens.append(work_ring.one() - w * f.substitute(move, work_ring))
    gb = reduced_groebner_basis(gens, work_ring.order, deadline=deadline)
    out = []
    for g in gb.basis:
        if all(m[0] == 0 for m in g.coeffs):
            out.append(g.substitute({v: base.variable(v) for v in base.variables}, base))
    return Ideal(base, out)


def saturate(ideal: Ideal, other: Ideal, deadline=None) -> Ideal:
    """I : J^infinity; intersection of the single-generator saturations."""
    if not other.generators:
        return Ideal(ideal.ring, list(ideal.generators))
    parts = [saturate_single(ideal, f, deadline) for f in other.generators]
    result = parts[0]
    for part in parts[1:]:
        result = intersect(result, part, deadline)
    return result


def colon(ideal: Ideal, f: Polynomial, deadline=None) -> Ideal:
    """The colon ideal I : f, from generators of I cap (f)."""
    inter = intersect(ideal, Ideal(ideal.ring, [f]), deadline)
    out = []
    for g in inter.generators:
        q = _exact_poly_div(g, f)
        if q is None:
            raise ArithmeticError("intersection element not divisible; colon failed")
        out.append(q)
    return Ideal(ideal.ring, out)


def _exact_poly_div(g: Polynomial, f: Polynomial) -> Optional[Polynomial]:
    """g / f when the division is exact, else None."""
    ring = g.ring
    field = ring.field
    order = ring.order
    work = dict(g.coeffs)
    out = {}
    lt_f, lc_f = f.leading_term(order)
    inv = field.inv(lc_f)
    while work:
        m = max(work, key=order.key)
        c = work[m]
        if not mono_divides(lt_f, m):
            return None
        shift = tuple(a - b for a, b in zip(m, lt_f))
        factor = field.mul(c, inv)
        out[shift] = factor
        for fm, fc in f.coeffs.items():
            key = tuple(a + b for a, b in zip(fm, shift))
            val = field.sub(work.get(key, field.zero), field.mul(factor, fc))
            if field.is_zero(val):
                work.pop(key, None)
            else:
                work[key] = val
    return Polynomial(ring, out)


def irrelevant_ideal(ring: RingDescriptor) -> Ideal:
    return Ideal(ring, ring.gens())


def is_projectively_empty(
    ideal: Ideal, method: str = "hilbert", deadline=None
) -> bool:
    """True iff the projective scheme is empty.

    ``method='hilbert'`` reads the Hilbert dimension (-1 means empty);
    ``method='saturation'`` checks that saturating by the irrelevant maximal
    ideal gives the unit ideal.  Both routes must agree.
    """
    if not ideal.is_homogeneous():
        raise NotHomogeneous("emptiness test requires a homogeneous ideal")
    if method == "hilbert":
        return hilbert_dimension_degree(ideal, deadline=deadline).dimension == -1
    if method == "saturation":
        sat = saturate(ideal, irrelevant_ideal(ideal.ring), deadline)
        return sat.is_trivial(deadline)
    raise ValueError("unknown method %r" % method)


# ---------------------------------------------------------------------------
# Zero-dimensional support
# ---------------------------------------------------------------------------


def staircase_monomials(lts: Sequence[tuple], nvars: int) -> Optional[List[tuple]]:
    """Monomials outside the monomial ideal; None when infinitely many."""
    for i in range(nvars):
        if not any(all(e == 0 for j, e in enumerate(m) if j != i) and m[i] > 0 for m in lts):
            return None
    basis = []
    stack = [(0,) * nvars]
    seen = set(stack)
    while stack:
        m = stack.pop()
        if any(mono_divides(l, m) for l in lts):
            continue
        basis.append(m)
        for i in range(nvars):
            nxt = m[:i] + (m[i] + 1,) + m[i + 1:]
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return sorted(basis)


def _upoly_normalize(field, coeffs):
    while coeffs and field.is_zero(coeffs[-1]):
        coeffs.pop()
    return coeffs


def _upoly_derivative(field, coeffs):
    return _upoly_normalize(
        field, [field.mul(c, field.from_int(i)) for i, c in enumerate(coeffs)][1:]
    )


def _upoly_divmod(field, a, b):
    a = list(a)
    db = len(b) - 1
    inv = field.inv(b[-1])
    q = [field.zero] * max(len(a) - db, 1)
    while len(a) - 1 >= db and a:
        c = field.mul(a[-1], inv)
        shift = len(a) - 1 - db
        q[shift] = c
        for i in range(db + 1):
            a[shift + i] = field.sub(a[shift + i], field.mul(c, b[i]))
        _upoly_normalize(field, a)
        if not a:
            break
    return q, a


def _upoly_gcd(field, a, b):
    a = _upoly_normalize(field, list(a))
    b = _upoly_normalize(field, list(b))
    while b:
        _, r = _upoly_divmod(field, a, b)
        a, b = b, r
    if a:
        inv = field.inv(a[-1])
        a = [field.mul(c, inv) for c in a]
    return a


def squarefree_part(field, coeffs):
    """coeffs / gcd(coeffs, coeffs'), monic."""
    g = _upoly_gcd(field, coeffs, _upoly_derivative(field, list(coeffs)))
    if len(g) <= 1:
        out = list(coeffs)
    else:
        out, rem = _upoly_divmod(field, list(coeffs), g)
        if rem:
            raise ArithmeticError("squarefree division not exact")
    inv = field.inv(out[-1])
    return [field.mul(c, inv) for c in out]


def univariate_minimal_poly(gb: GroebnerBasis, var: str, deadline=None) -> List:
    """Minimal polynomial of a coordinate in a finite quotient ring, by linear
    algebra on normal forms of its powers."""
    ring = gb.ring
    field = ring.field
    lts = [g.leading_monomial(gb.order) for g in gb.basis]
    basis = staircase_monomials(lts, ring.nvars)
    if basis is None:
        raise DimensionNotZero("quotient ring is not finite-dimensional")
    index = {m: i for i, m in enumerate(basis)}
    x = ring.variable(var)
    power = ring.one()
    vectors = []
    for k in range(len(basis) + 1):
        nf = normal_form(power, gb.basis, gb.order, deadline)
        vec = [field.zero] * len(basis)
        for m, c in nf.coeffs.items():
            vec[index[m]] = c
        vectors.append(vec)
        # solve for a dependency among vectors[0..k]
        if k >= 1:
            cols = list(range(k))
            matrix = [[vectors[j][i] for j in cols] for i in range(len(basis))]
            sol = solve_linear(field, matrix, vectors[k])
            if sol is not None:
                coeffs = [field.neg(c) for c in sol] + [field.one]
                return coeffs
        power = power * x
    raise ArithmeticError("no univariate dependency found")


def rational_roots(field, coeffs) -> List:
    """All roots in QQ of a rational univariate polynomial."""
    if field.descriptor.kind != "rational":
        raise UnsupportedField("rational-root extraction requires the rational field")
    coeffs = _upoly_normalize(field, list(coeffs))
    if not coeffs:
        return []
    roots = []
    val = 0
    while field.is_zero(coeffs[0]):
        coeffs = coeffs[1:]
        val += 1
    if val:
        roots.append(field.zero)
    if len(coeffs) <= 1:
        return roots
    den_lcm = 1
    for c in coeffs:
        den_lcm = den_lcm * c.denominator // math.gcd(den_lcm, int(c.denominator))
    ints = [int(c.numerator) * (den_lcm // int(c.denominator)) for c in coeffs]
    g = 0
    for c in ints:
        g = math.gcd(g, c)
    ints = [c // g for c in ints]
    lead, const = abs(ints[-1]), abs(ints[0])

    def divisors(n):
        out = []
        d = 1
        while d * d <= n:
            if n % d == 0:
                out.append(d)
                out.append(n // d)
            d += 1
        return sorted(set(out))

    for p in divisors(const):
        for q in divisors(lead):
            for sign in (1, -1):
                cand = rational(sign * p, q)
                total = field.zero
                for c in reversed(ints):
                    total = total * cand + c
                if field.is_zero(total):
                    if cand not in roots:
                        roots.append(cand)
    return sorted(roots)


def _chart_ideal(ideal: Ideal, chart: int) -> Ideal:
    """Dehomogenize on the chart x_chart = 1, forcing earlier coordinates to 0
    (projective points are counted where their first nonzero coordinate sits).
    The chart ring keeps only the coordinates after ``chart``."""
    ring = ideal.ring
    names = list(ring.variables[chart + 1:])
    target = RingDescriptor(names, ring.field, None, GREVLEX)
    field = ring.field
    assignment = {}
    for i, v in enumerate(ring.variables):
        if i == chart:
            assignment[v] = field.one
        elif i < chart:
            assignment[v] = field.zero
        else:
            assignment[v] = target.variable(v)
    gens = [g.substitute(assignment, target) for g in ideal.generators]
    return Ideal(target, gens)


def _radicalize_zero_dim(ideal: Ideal, deadline=None) -> Optional[Ideal]:
    """Radical of a zero-dimensional affine ideal (Seidenberg: adjoin the
    squarefree part of each coordinate's minimal polynomial).  None if the
    ideal is the unit ideal."""
    ring = ideal.ring
    field = ring.field
    gb = ideal.groebner_basis(deadline=deadline)
    if gb.contains_one():
        return None
    extra = []
    for var in ring.variables:
        mp = univariate_minimal_poly(gb, var, deadline)
        sf = squarefree_part(field, mp)
        if len(sf) < len(mp):
            poly = ring.zero()
            x = ring.variable(var)
            for i, c in enumerate(sf):
                if not field.is_zero(c):
                    poly = poly + (x ** i).scale(c)
            extra.append(poly)
    if not extra:
        return ideal
    return Ideal(ring, ideal.generators + extra)


def _affine_points(ideal: Ideal, deadline=None) -> Tuple[int, List[list]]:
    """(number of geometric points, list of rational points) of a
    zero-dimensional affine ideal over QQ."""
    ring = ideal.ring
    field = ring.field
    radical = _radicalize_zero_dim(ideal, deadline)
    if radical is None:
        return 0, []
    gb = radical.groebner_basis(deadline=deadline)
    if gb.contains_one():
        return 0, []
    lts = [g.leading_monomial(gb.order) for g in gb.basis]
    basis = staircase_monomials(lts, ring.nvars)
    if basis is None:
        raise DimensionNotZero("ideal is not zero-dimensional on this chart")
    count = len(basis)

    def search(current: Ideal, names: List[str], partial: dict) -> List[dict]:
        if not names:
            return [dict(partial)]
        cgb = current.groebner_basis(deadline=deadline)
        if cgb.contains_one():
            return []
        var = names[0]
        mp = univariate_minimal_poly(cgb, var, deadline)
        found = []
        for root in rational_roots(field, mp):
            partial[var] = root
            sub = {var: root}
            rest_ring = RingDescriptor(
                [v for v in current.ring.variables if v != var], field, None, GREVLEX
            )
            if rest_ring.variables:
                gens = [
                    g.substitute(
                        dict(sub, **{v: rest_ring.variable(v) for v in rest_ring.variables}),
                        rest_ring,
                    )
                    for g in current.generators
                ]
                found.extend(search(Ideal(rest_ring, gens), names[1:], partial))
            else:
                if all(field.is_zero(g.evaluate([root])) for g in current.generators):
                    found.append(dict(partial))
            partial.pop(var, None)
        return found

    if ring.nvars == 0:
        return count, []
    solutions = search(radical, list(ring.variables), {})
    points = []
    for sol in solutions:
        points.append([sol[v] for v in ring.variables])
    return count, points


def zero_dim_support(ideal: Ideal, deadline=None) -> Tuple[int, List[list]]:
    """Reduced degree (geometric point count) and all rational points of a
    homogeneous ideal whose projective dimension is 0.

    Points come back as projective coordinate lists normalized so the first
    nonzero coordinate is 1.
    """
    if ideal.ring.field.descriptor.kind != "rational":
        raise UnsupportedField("support extraction is implemented over QQ")
    data = hilbert_dimension_degree(ideal, deadline=deadline)
    if data.dimension != 0:
        raise DimensionNotZero(
            "projective dimension is %d, not 0" % data.dimension
        )
    field = ideal.ring.field
    nvars = ideal.ring.nvars
    total = 0
    points = []
    for chart in range(nvars):
        if chart == nvars - 1:
            last = [field.zero] * (nvars - 1) + [field.one]
            if ideal.evaluate_at(last):
                total += 1
                points.append(last)
            continue
        chart_ideal = _chart_ideal(ideal, chart)
        cgb = chart_ideal.groebner_basis(deadline=deadline)
        if cgb.contains_one():
            continue
        count, rats = _affine_points(chart_ideal, deadline)
        total += count
        for sol in rats:
            coords = [field.zero] * chart + [field.one] + sol
            points.append(coords)
    return total, points
