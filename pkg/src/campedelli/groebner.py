"""Buchberger's algorithm with Gebauer-Moeller pair pruning and sugar selection.

The engine works on raw coefficient dicts for speed; the public entry points
accept and return :class:`~campedelli.polynomials.Polynomial` values.  Runs are
deterministic: fixed tie-breaking by input index, then by the monomial order,
so repeated runs produce bit-identical bases.
"""

from __future__ import annotations

import heapq
import math
import time
from dataclasses import dataclass, field as dc_field
from typing import List, Optional, Sequence

from .orders import (
    MonomialOrder,
    mono_coprime,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
)
from .polynomials import Polynomial, RingDescriptor, ZeroPolynomial


class ComputationTimeout(RuntimeError):
    """A Groebner run exceeded its deadline."""


def _check_deadline(deadline):
    if deadline is not None and time.monotonic() > deadline:
        raise ComputationTimeout("computation exceeded its time budget")


def content_normalize(coeffs: dict, field) -> dict:
    """Rescale a coefficient dict to keep integer sizes small.

    Over the rationals (and cyclotomic extensions, coordinate-wise) the result
    has coprime integer entries; over prime fields the dict is returned as-is.
    """
    if not coeffs:
        return coeffs
    kind = field.descriptor.kind
    if kind == "prime":
        return coeffs
    if kind == "rational":
        values = coeffs.values()
        den_lcm = 1
        for c in values:
            den_lcm = den_lcm * c.denominator // math.gcd(den_lcm, int(c.denominator))
        num_gcd = 0
        for c in values:
            num_gcd = math.gcd(num_gcd, int(c.numerator))
        if num_gcd == 0:
            return coeffs
        scale = field.from_rational(field.one * den_lcm / num_gcd)
        if scale == field.one:
            return coeffs
        return {m: c * scale for m, c in coeffs.items()}
    if kind == "cyclotomic":
        den_lcm = 1
        num_gcd = 0
        for vec in coeffs.values():
            for c in vec:
                den_lcm = den_lcm * c.denominator // math.gcd(den_lcm, int(c.denominator))
                num_gcd = math.gcd(num_gcd, int(c.numerator))
        if num_gcd == 0 or (den_lcm == 1 and num_gcd == 1):
            return coeffs
        from .fields import rational

        scale = field.from_rational(rational(den_lcm, num_gcd))
        return {m: field.mul(c, scale) for m, c in coeffs.items()}
    return coeffs


class _Reducer:
    __slots__ = ("lt", "deg", "inv_lc", "tail", "index")

    def __init__(self, coeffs: dict, field, order: MonomialOrder, index: int):
        lt = max(coeffs, key=order.key)
        self.lt = lt
        self.deg = sum(lt)
        self.inv_lc = field.inv(coeffs[lt])
        self.tail = {m: c for m, c in coeffs.items() if m != lt}
        self.index = index


def _find_reducer(mono, deg, reducers):
    for red in reducers:
        if red.deg <= deg:
            lt = red.lt
            for a, b in zip(mono, lt):
                if a < b:
                    break
            else:
                return red
    return None


def _nf_dict(fdict: dict, reducers, field, order: MonomialOrder, deadline=None) -> dict:
    """Full normal form of a coefficient dict against a reducer list."""
    if not fdict:
        return {}
    work = dict(fdict)
    out: dict = {}
    negkey = order.negkey
    heap = [(negkey(m), m) for m in work]
    heapq.heapify(heap)
    zero = field.zero
    is_zero = field.is_zero
    steps = 0
    while heap:
        _, m = heapq.heappop(heap)
        c = work.pop(m, None)
        if c is None:
            continue
        steps += 1
        if steps % 512 == 0:
            _check_deadline(deadline)
        red = _find_reducer(m, sum(m), reducers)
        if red is None:
            out[m] = c
            continue
        factor = field.mul(c, red.inv_lc)
        shift = mono_div(m, red.lt)
        for tm, tc in red.tail.items():
            key = tuple(a + b for a, b in zip(tm, shift))
            old = work.get(key)
            val = field.sub(old if old is not None else zero, field.mul(factor, tc))
            if is_zero(val):
                work.pop(key, None)
            else:
                if old is None:
                    heapq.heappush(heap, (negkey(key), key))
                work[key] = val
    return out


def _spair_dict(fi, fj, field, order):
    lt_i = max(fi, key=order.key)
    lt_j = max(fj, key=order.key)
    lcm = mono_lcm(lt_i, lt_j)
    si = mono_div(lcm, lt_i)
    sj = mono_div(lcm, lt_j)
    ci = field.inv(fi[lt_i])
    cj = field.inv(fj[lt_j])
    out: dict = {}
    for m, c in fi.items():
        out[mono_mul(m, si)] = field.mul(c, ci)
    for m, c in fj.items():
        key = mono_mul(m, sj)
        val = field.sub(out.get(key, field.zero), field.mul(c, cj))
        if field.is_zero(val):
            out.pop(key, None)
        else:
            out[key] = val
    return out


def _buchberger(
    inputs: Sequence[dict],
    field,
    order: MonomialOrder,
    strategy: str = "sugar",
    deadline=None,
):
    """Core loop; returns the list of basis dicts (not yet interreduced)."""
    G: List[dict] = []
    lts: List[tuple] = []
    sugars: List[int] = []
    reducers: List[_Reducer] = []
    pairs: dict = {}  # (i, j) -> (sugar, lcm, order key of lcm)

    def add_element(coeffs: dict, sugar: int):
        t = len(G)
        lt_t = max(coeffs, key=order.key)
        # Gebauer-Moeller update of the pair set.
        cand = [(i, mono_lcm(lts[i], lt_t)) for i in range(t)]
        kept = []
        for pos, (i, lcm_i) in enumerate(cand):
            if mono_coprime(lts[i], lt_t):
                kept.append((i, lcm_i, True))
                continue
            drop = False
            for j, lcm_j, _ in kept:
                if mono_divides(lcm_j, lcm_i):
                    drop = True
                    break
            if not drop:
                for _, lcm_j in cand[pos + 1:]:
                    if lcm_j != lcm_i and mono_divides(lcm_j, lcm_i):
                        drop = True
                        break
            if not drop:
                kept.append((i, lcm_i, False))
        # prune old pairs using the new leading term
        for (i, j) in list(pairs):
            lcm_ij = pairs[(i, j)][1]
            if (
                mono_divides(lt_t, lcm_ij)
                and mono_lcm(lts[i], lt_t) != lcm_ij
                and mono_lcm(lts[j], lt_t) != lcm_ij
            ):
                del pairs[(i, j)]
        for i, lcm_i, coprime in kept:
            if coprime:
                continue  # Buchberger's first criterion
            pair_sugar = max(sugars[i] - sum(lts[i]), sugar - sum(lt_t)) + sum(lcm_i)
            pairs[(i, t)] = (pair_sugar, lcm_i, order.key(lcm_i))
        G.append(coeffs)
        lts.append(lt_t)
        sugars.append(sugar)
        reducers.append(_Reducer(coeffs, field, order, t))

    for f in inputs:
        if f:
            add_element(dict(f), max(sum(m) for m in f))

    while pairs:
        _check_deadline(deadline)
        if strategy == "sugar":
            (i, j) = min(pairs, key=lambda ij: (pairs[ij][0], pairs[ij][2], ij))
        else:
            (i, j) = min(pairs, key=lambda ij: (pairs[ij][2], ij))
        pair_sugar = pairs.pop((i, j))[0]
        s = _spair_dict(G[i], G[j], field, order)
        if not s:
            continue
        h = _nf_dict(s, reducers, field, order, deadline)
        if h:
            h = content_normalize(h, field)
            add_element(h, max(pair_sugar, max(sum(m) for m in h)))
    return G


def _interreduce(G: List[dict], field, order: MonomialOrder, deadline=None) -> List[dict]:
    """Minimalize and tail-reduce a basis; output is monic, sorted by leading term."""
    order_key = order.key
    indexed = sorted(range(len(G)), key=lambda k: order_key(max(G[k], key=order_key)))
    minimal: List[int] = []
    for k in indexed:
        lt_k = max(G[k], key=order_key)
        if not any(mono_divides(max(G[j], key=order_key), lt_k) for j in minimal):
            minimal.append(k)
    polys = [G[k] for k in minimal]
    reduced = []
    for idx, g in enumerate(polys):
        others = [p for j, p in enumerate(polys) if j != idx]
        reducers = [_Reducer(p, field, order, j) for j, p in enumerate(others)]
        h = _nf_dict(g, reducers, field, order, deadline)
        if h:
            lt = max(h, key=order_key)
            inv = field.inv(h[lt])
            reduced.append({m: field.mul(c, inv) for m, c in h.items()})
    reduced.sort(key=lambda p: order_key(max(p, key=order_key)))
    return reduced


@dataclass
class GroebnerBasis:
    """A (reduced) Groebner basis together with the order it was computed for."""

    ring: RingDescriptor
    order: MonomialOrder
    basis: List[Polynomial]
    reduced: bool = True
    strategy: str = "sugar"

    @property
    def leading_monomials(self):
        return [g.leading_monomial(self.order) for g in self.basis]

    def contains_one(self) -> bool:
        return any(sum(m) == 0 for m in self.leading_monomials)

    def __iter__(self):
        return iter(self.basis)

    def __len__(self):
        return len(self.basis)


def s_polynomial(f: Polynomial, g: Polynomial, order: Optional[MonomialOrder] = None) -> Polynomial:
    """The standard S-polynomial of two nonzero polynomials."""
    if f.is_zero() or g.is_zero():
        raise ZeroPolynomial("S-polynomial of the zero polynomial")
    f._check(g)
    order = order or f.ring.order
    return Polynomial(f.ring, _spair_dict(f.coeffs, g.coeffs, f.ring.field, order))


def normal_form(
    f: Polynomial,
    basis: Sequence[Polynomial],
    order: Optional[MonomialOrder] = None,
    deadline=None,
) -> Polynomial:
    """Remainder of f on division by the basis: no remainder term is divisible
    by any basis leading monomial, and f minus the result lies in the ideal."""
    order = order or f.ring.order
    field = f.ring.field
    reducers = [
        _Reducer(g.coeffs, field, order, k) for k, g in enumerate(basis) if not g.is_zero()
    ]
    return Polynomial(f.ring, _nf_dict(f.coeffs, reducers, field, order, deadline))


def reduced_groebner_basis(
    gens: Sequence[Polynomial],
    order: Optional[MonomialOrder] = None,
    strategy: str = "sugar",
    deadline=None,
) -> GroebnerBasis:
    """The unique reduced Groebner basis of the ideal generated by ``gens``."""
    polys = [g for g in gens if not g.is_zero()]
    if not polys:
        raise ValueError("cannot compute a basis for the zero list")
    ring = polys[0].ring
    for g in polys:
        polys[0]._check(g)
    order = order or ring.order
    field = ring.field
    raw = _buchberger([g.coeffs for g in polys], field, order, strategy, deadline)
    raw = _interreduce(raw, field, order, deadline)
    basis = [Polynomial(ring, d) for d in raw]
    return GroebnerBasis(ring=ring, order=order, basis=basis, reduced=True, strategy=strategy)


def ideal_member(
    f: Polynomial,
    gens: Sequence[Polynomial],
    order: Optional[MonomialOrder] = None,
    deadline=None,
) -> bool:
    """Ideal membership via normal form against the reduced basis."""
    gb = reduced_groebner_basis(gens, order, deadline=deadline)
    return normal_form(f, gb.basis, gb.order, deadline).is_zero()
