"""Buchberger's algorithm, normal forms and graded quotient bases.

Internally every monomial is packed into one Python int (its *key*) such that

* integer comparison of keys is the monomial order, and
* the product of two monomials is the sum of their keys.

Exponents also live in a second packing with a guard bit per field, which
turns a divisibility test into one subtraction and one mask.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from gmpy2 import gcd, lcm, mpq, mpz

from .polyring import ContextMismatch, Polynomial, VariableContext

_FIELD_BITS = 16
_MAX_EXP = (1 << (_FIELD_BITS - 1)) - 1


class GroebnerLimitError(RuntimeError):
    """The computation exceeded its resource budget; no answer was produced."""

    def __init__(self, message: str, *, basis_size: int = 0, coeff_bits: int = 0):
        super().__init__(message)
        self.basis_size = basis_size
        self.coeff_bits = coeff_bits


@dataclass(frozen=True)
class MonomialOrder:
    kind: str = "grevlex"

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex"):
            raise ValueError(f"unknown monomial order {self.kind!r}")


DEGREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


@dataclass(frozen=True)
class Budget:
    """Caps on the number of basis elements and on coefficient size (bits)."""

    max_basis: int | None = None
    max_coeff_bits: int | None = None

    def check(self, size: int, bits: int):
        if self.max_basis is not None and size > self.max_basis:
            raise GroebnerLimitError(
                f"basis size {size} exceeds limit {self.max_basis}", basis_size=size, coeff_bits=bits
            )
        if self.max_coeff_bits is not None and bits > self.max_coeff_bits:
            raise GroebnerLimitError(
                f"coefficient size {bits} bits exceeds limit {self.max_coeff_bits}",
                basis_size=size,
                coeff_bits=bits,
            )


UNLIMITED = Budget()


class _Packing:
    """Monomial <-> int conversion for one (context, order) pair."""

    def __init__(self, ring: VariableContext, order: MonomialOrder):
        self.ring = ring
        self.order = order
        self.n = n = ring.nvars
        self.degrees = ring.degrees
        w = _FIELD_BITS
        self.shift = n * w
        self.guard = sum(1 << (w * i + w - 1) for i in range(n))
        self.grevlex = order.kind == "grevlex"
        # exponent of variable i sits in field pos[i]
        if self.grevlex:
            self.pos = [w * i for i in range(n)]
        else:
            self.pos = [w * (n - 1 - i) for i in range(n)]
        self.field_mask = (1 << w) - 1

    def packed(self, exps) -> int:
        p = 0
        for e, s in zip(exps, self.pos):
            if e > _MAX_EXP:
                raise GroebnerLimitError(f"exponent {e} too large for monomial packing")
            p |= e << s
        return p

    def encode(self, exps) -> int:
        p = self.packed(exps)
        if self.grevlex:
            wd = sum(e * d for e, d in zip(exps, self.degrees))
            return (wd << self.shift) - p
        return p

    def mask_of(self, key: int) -> int:
        if self.grevlex:
            wd = -((-key) >> self.shift)
            return (wd << self.shift) - key
        return key

    def decode(self, key: int) -> tuple:
        p = self.mask_of(key)
        fm = self.field_mask
        return tuple((p >> s) & fm for s in self.pos)

    def wdeg(self, key: int) -> int:
        if self.grevlex:
            return -((-key) >> self.shift)
        return sum(e * d for e, d in zip(self.decode(key), self.degrees))

    def divides(self, pa: int, pb: int) -> bool:
        """Does the monomial with packed exponents ``pa`` divide ``pb``?"""
        g = self.guard
        return ((pb | g) - pa) & g == g

    def lcm(self, k1: int, k2: int) -> int:
        a, b = self.decode(k1), self.decode(k2)
        return self.encode(tuple(max(x, y) for x, y in zip(a, b)))

    def coprime(self, k1: int, k2: int) -> bool:
        a, b = self.decode(k1), self.decode(k2)
        return not any(x and y for x, y in zip(a, b))

    def to_terms(self, p: Polynomial) -> dict:
        return {self.encode(m): c for m, c in p.items()}

    def to_poly(self, terms: dict) -> Polynomial:
        return Polynomial(self.ring, {self.decode(k): c for k, c in terms.items()})


def _content(values) -> mpz:
    g = mpz(0)
    for v in values:
        g = gcd(g, v)
        if g == 1:
            break
    return g


def _integral(terms: dict) -> tuple:
    """Scale rational ``terms`` to a primitive integer form with positive lead.

    Returns (integer terms, factor) with terms_in = factor * integer terms.
    """
    den = mpz(1)
    for c in terms.values():
        den = lcm(den, c.denominator)
    ints = {k: mpz(c * den) for k, c in terms.items()}
    g = _content(ints.values())
    if ints[max(ints)] < 0:
        g = -g
    return {k: v // g for k, v in ints.items()}, mpq(g, den)


class _Reducer:
    """A growing set of primitive integer polynomials used for division.

    Working over ZZ with primitive representatives avoids a gcd per
    coefficient operation; the scalar factors needed to recover exact
    rational results are tracked separately.
    """

    def __init__(self, packing: _Packing):
        self.pk = packing
        self.lead: list = []  # lead key per element
        self.lead_mask: list = []
        self.lc: list = []  # positive integer lead coefficient
        self.tail: list = []  # list of (key, int), descending
        self.active: list = []  # indices usable as reducers
        self._hits: dict = {}
        self._misses: set = set()

    def add(self, lead: int, lc, tail: list) -> int:
        idx = len(self.lead)
        self.lead.append(lead)
        self.lead_mask.append(self.pk.mask_of(lead))
        self.lc.append(lc)
        self.tail.append(tail)
        self.active.append(idx)
        self._misses.clear()
        return idx

    def add_terms(self, terms: dict) -> int:
        keys = sorted(terms, reverse=True)
        return self.add(keys[0], terms[keys[0]], [(k, terms[k]) for k in keys[1:]])

    def coeff_bits(self, i: int) -> int:
        return max([self.lc[i].bit_length()] + [c.bit_length() for _, c in self.tail[i]])

    def interreduce(self, h: int):
        """Remove lead(h) from the tails of the other active elements.

        Tails only contain monomials of their own degree, so only elements of
        the same weighted degree as h can be affected.
        """
        lead = self.lead[h]
        wdeg = self.pk.wdeg
        d = wdeg(lead)
        hlc = self.lc[h]
        htail = self.tail[h]
        for g in self.active:
            if g == h or wdeg(self.lead[g]) != d:
                continue
            tail = self.tail[g]
            c = next((c for k, c in tail if k == lead), None)
            if c is None:
                continue
            q = gcd(c, hlc)
            a, b = hlc // q, c // q
            terms = {k: a * v for k, v in tail if k != lead}
            for k, v in htail:
                nv = terms.get(k, 0) - b * v
                if nv:
                    terms[k] = nv
                else:
                    terms.pop(k, None)
            lc = a * self.lc[g]
            cont = _content(itertools.chain((lc,), terms.values()))
            if cont != 1:
                lc //= cont
                terms = {k: v // cont for k, v in terms.items()}
            self.lc[g] = lc
            self.tail[g] = [(k, terms[k]) for k in sorted(terms, reverse=True)]

    def deactivate(self, indices: set):
        if indices:
            self.active = [i for i in self.active if i not in indices]

    def find(self, key: int):
        idx = self._hits.get(key)
        if idx is not None:
            return idx
        if key in self._misses:
            return None
        mask = self.pk.mask_of(key)
        g = self.pk.guard
        lead_mask = self.lead_mask
        for i in self.active:
            if ((mask | g) - lead_mask[i]) & g == g:
                self._hits[key] = i
                return i
        self._misses.add(key)
        return None

    def reduce(self, terms: dict) -> tuple:
        """Remainder of integer ``terms`` on division by the active set.

        Returns (r, f): r is primitive (or empty) and the true remainder of
        the input equals f * r.
        """
        acc = dict(terms)
        heap = [-k for k in acc]
        heapq.heapify(heap)
        rem: dict = {}
        factor = mpq(1)
        find = self.find
        tails = self.tail
        leads = self.lead
        lcs = self.lc
        push = heapq.heappush
        pop = heapq.heappop
        grown = 0  # bits multiplied in since the last content removal
        while heap:
            k = -pop(heap)
            c = acc.pop(k, None)
            if not c:
                continue
            idx = find(k)
            if idx is None:
                rem[k] = c
                continue
            lc = lcs[idx]
            if lc != 1:
                q = gcd(c, lc)
                a = lc // q
                if a != 1:
                    c //= q
                    factor /= a
                    for kk in acc:
                        acc[kk] *= a
                    for kk in rem:
                        rem[kk] *= a
                    grown += a.bit_length()
                else:
                    c //= lc
            shift = k - leads[idx]
            for tk, tc in tails[idx]:
                nk = tk + shift
                v = acc.get(nk)
                if v is None:
                    acc[nk] = -c * tc
                    push(heap, -nk)
                else:
                    acc[nk] = v - c * tc
            if grown > 256:
                cont = _content(itertools.chain(rem.values(), (v for v in acc.values() if v)))
                if cont > 1:
                    factor *= cont
                    acc = {kk: v // cont for kk, v in acc.items()}
                    rem = {kk: v // cont for kk, v in rem.items()}
                grown = 0
        if not rem:
            return rem, factor
        cont = _content(rem.values())
        if rem[max(rem)] < 0:
            cont = -cont
        if cont != 1:
            factor *= cont
            rem = {kk: v // cont for kk, v in rem.items()}
        return rem, factor


@dataclass(frozen=True)
class GroebnerBasis:
    """A Groebner basis; ``truncated_at`` is set for degree-truncated bases.

    A basis truncated at degree D is only valid for homogeneous ideals and
    describes the ideal faithfully in weighted degrees <= D.
    """

    generators: tuple
    order: MonomialOrder
    ring: VariableContext
    reduced: bool = True
    truncated_at: int | None = None
    _pk: _Packing = field(default=None, repr=False, compare=False)
    _lead: tuple = field(default=(), repr=False, compare=False)
    _lc: tuple = field(default=(), repr=False, compare=False)
    _tail: tuple = field(default=(), repr=False, compare=False)

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def leading_monomials(self) -> list:
        return [self._pk.decode(k) for k in self._lead]

    def _reducer(self) -> _Reducer:
        red = _Reducer(self._pk)
        for lead, lc, tail in zip(self._lead, self._lc, self._tail):
            red.add(lead, lc, list(tail))
        return red

    def check_degree(self, d: int):
        if self.truncated_at is not None and d > self.truncated_at:
            raise ValueError(f"basis is only valid up to degree {self.truncated_at}, asked for {d}")


def _ring_of(gens: Sequence[Polynomial], ring: VariableContext | None) -> VariableContext:
    if ring is None:
        if not gens:
            raise ValueError("cannot infer the ring of an empty generator list")
        ring = gens[0].ring
    for g in gens:
        if g.ring != ring:
            raise ContextMismatch("generators live in different variable contexts")
    return ring


def buchberger(
    gens: Sequence[Polynomial],
    order: MonomialOrder = DEGREVLEX,
    *,
    ring: VariableContext | None = None,
    start: GroebnerBasis | None = None,
    max_degree: int | None = None,
    budget: Budget = UNLIMITED,
) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens`` (plus ``start``).

    ``start`` must be a Groebner basis for the same order; its pairs are not
    revisited.  With ``max_degree`` set the ideal must be homogeneous and all
    S-pairs above that weighted degree are skipped.
    """
    if start is not None:
        ring = start.ring
        if start.order != order:
            raise ValueError("start basis uses a different monomial order")
        if start.truncated_at is not None and (max_degree is None or max_degree > start.truncated_at):
            raise ValueError("cannot extend a truncated basis beyond its degree")
    ring = _ring_of(gens, ring)
    if max_degree is not None and not all(g.is_homogeneous() for g in gens):
        raise ValueError("degree truncation requires homogeneous generators")

    pk = start._pk if start is not None else _Packing(ring, order)
    red = start._reducer() if start is not None else _Reducer(pk)
    seq = itertools.count()
    heap: list = []  # (deg, pair id); dead pairs are dropped from `alive`
    alive: dict = {}

    def update(h: int):
        """Gebauer-Moeller installation of the new element h."""
        lh = red.lead[h]
        mh = red.lead_mask[h]
        current = [g for g in red.active if g != h]
        cand = [(g, pk.lcm(lh, red.lead[g])) for g in current]
        kept: list = []
        for idx, (g, l) in enumerate(cand):
            if not pk.coprime(lh, red.lead[g]):
                lm = pk.mask_of(l)
                if any(pk.divides(pk.mask_of(l2), lm) for _, l2 in cand[idx + 1 :]):
                    continue
                if any(pk.divides(pk.mask_of(l2), lm) for _, l2 in kept):
                    continue
            kept.append((g, l))
        # chain criterion on the old pairs
        for pid, (i, j, l) in list(alive.items()):
            if pk.divides(mh, pk.mask_of(l)):
                if pk.lcm(red.lead[i], lh) != l and pk.lcm(red.lead[j], lh) != l:
                    del alive[pid]
        for g, l in kept:
            if pk.coprime(lh, red.lead[g]):
                continue  # product criterion
            d = pk.wdeg(l)
            if max_degree is not None and d > max_degree:
                continue
            pid = next(seq)
            alive[pid] = (g, h, l)
            heapq.heappush(heap, (d, pid))
        red.deactivate({g for g in current if pk.divides(mh, red.lead_mask[g])})

    homogeneous = all(g.is_homogeneous() for g in gens) and (
        start is None or all(g.is_homogeneous() for g in start.generators)
    )
    full: dict = {}  # degree -> no standard monomial left (homogeneous input only)

    def install(terms: dict):
        h = red.add_terms(terms)
        red.interreduce(h)
        budget.check(len(red.active), red.coeff_bits(h))
        full.clear()
        update(h)

    def degree_full(d: int) -> bool:
        if d not in full:
            masks = [red.lead_mask[i] for i in red.active]
            full[d] = not _standard_monomials(pk, masks, d, first_only=True)
        return full[d]

    for g in gens:
        if not g or (max_degree is not None and g.degree() > max_degree):
            continue
        rem, _ = red.reduce(_integral(pk.to_terms(g))[0])
        if rem:
            install(rem)

    while heap:
        _, pid = heapq.heappop(heap)
        pair = alive.pop(pid, None)
        if pair is None:
            continue
        i, j, l = pair
        if homogeneous and degree_full(pk.wdeg(l)):
            continue  # every S-polynomial of this degree reduces to zero
        q = gcd(red.lc[i], red.lc[j])
        a, b = red.lc[j] // q, red.lc[i] // q
        si, sj = l - red.lead[i], l - red.lead[j]
        terms: dict = {}
        for k, c in red.tail[i]:
            terms[k + si] = a * c
        for k, c in red.tail[j]:
            nk = k + sj
            v = terms.get(nk)
            terms[nk] = -b * c if v is None else v - b * c
        rem, _ = red.reduce({k: c for k, c in terms.items() if c})
        if rem:
            install(rem)

    return _finish(red, pk, ring, order, max_degree if max_degree is not None else (
        start.truncated_at if start is not None else None), budget)


def _finish(red: _Reducer, pk: _Packing, ring, order, truncated_at, budget) -> GroebnerBasis:
    active = sorted(red.active, key=lambda i: red.lead[i])
    final = _Reducer(pk)
    for i in active:
        final.add(red.lead[i], red.lc[i], red.tail[i])
    leads, lcs, tails, polys = [], [], [], []
    max_bits = 0
    for i in active:
        lead = red.lead[i]
        rat = {lead: mpq(1)}
        if red.tail[i]:
            # the lead is irreducible by the others, so only the tail moves
            tail, f = final.reduce(dict(red.tail[i]))
            f /= red.lc[i]
            rat.update((k, v * f) for k, v in tail.items())
        terms, _ = _integral(rat)
        keys = sorted(terms, reverse=True)
        lc = terms[keys[0]]
        tail_list = tuple((k, terms[k]) for k in keys[1:])
        max_bits = max([max_bits, lc.bit_length()] + [c.bit_length() for _, c in tail_list])
        leads.append(lead)
        lcs.append(lc)
        tails.append(tail_list)
        polys.append(pk.to_poly(rat))
    budget.check(len(polys), max_bits)
    return GroebnerBasis(
        generators=tuple(polys),
        order=order,
        ring=ring,
        reduced=True,
        truncated_at=truncated_at,
        _pk=pk,
        _lead=tuple(leads),
        _lc=tuple(lcs),
        _tail=tuple(tails),
    )


def normal_form(p: Polynomial, gb: GroebnerBasis) -> Polynomial:
    """Remainder of ``p`` on division by ``gb``."""
    if p.ring != gb.ring:
        raise ContextMismatch("polynomial and basis live in different contexts")
    if p and gb.truncated_at is not None:
        gb.check_degree(p.degree())
    if not p or not gb.generators:
        return p
    ints, scale = _integral(gb._pk.to_terms(p))
    rem, f = gb._reducer().reduce(ints)
    f *= scale
    return gb._pk.to_poly({k: v * f for k, v in rem.items()})


def ideal_contains(p: Polynomial, gb: GroebnerBasis) -> bool:
    return normal_form(p, gb).is_zero()


def _standard_monomials(pk: _Packing, lead_masks: list, d: int, first_only: bool = False) -> list:
    """Exponent tuples of weighted degree ``d`` outside the monomial ideal."""
    guard = pk.guard
    n = pk.n
    degs = pk.degrees
    pos = pk.pos
    out = []

    def blocked(mask):
        m = mask | guard
        for lm in lead_masks:
            if (m - lm) & guard == guard:
                return True
        return False

    def rec(i, left, mask, exps):
        if blocked(mask):
            return False
        if left == 0:
            out.append(tuple(exps) + (0,) * (n - i))
            return first_only
        if i == n:
            return False
        di = degs[i]
        for e in range(left // di, -1, -1):
            if e > _MAX_EXP:
                raise GroebnerLimitError("degree too large for monomial packing")
            exps.append(e)
            done = rec(i + 1, left - e * di, mask | (e << pos[i]), exps)
            exps.pop()
            if done:
                return True
        return False

    if d < 0:
        return []
    if n == 0:
        return [()] if d == 0 and not lead_masks else []
    rec(0, d, 0, [])
    return out


def graded_quotient_basis(gb: GroebnerBasis, d: int) -> list:
    """Standard monomials of weighted degree ``d``, largest first."""
    gb.check_degree(d)
    pk = gb._pk or _Packing(gb.ring, gb.order)
    out = _standard_monomials(pk, [pk.mask_of(k) for k in gb._lead], d)
    out.sort(key=pk.encode, reverse=True)
    return out


def graded_quotient_dim(gb: GroebnerBasis, d: int) -> int:
    return len(graded_quotient_basis(gb, d))


def is_artinian(gb: GroebnerBasis) -> bool:
    """True iff every variable has a pure power among the leading monomials."""
    n = gb.ring.nvars
    seen = set()
    for m in gb.leading_monomials():
        support = [i for i, e in enumerate(m) if e]
        if len(support) == 1:
            seen.add(support[0])
        elif not support:
            return True
    return len(seen) == n


def standard_monomials(gb: GroebnerBasis) -> dict:
    """All standard monomials of an Artinian quotient, grouped by degree."""
    if not is_artinian(gb):
        raise ValueError("quotient is not finite dimensional")
    out: dict = {}
    d = 0
    empty_run = 0
    step = min(gb.ring.degrees) if gb.ring.nvars else 2
    top = max(gb.ring.degrees) if gb.ring.nvars else 2
    while True:
        basis = graded_quotient_basis(gb, d)
        if basis:
            out[d] = basis
            empty_run = 0
        else:
            empty_run += 1
            # once a whole window of degrees is empty, the staircase has ended
            if empty_run * step > top + step:
                break
        d += step
    return out


def generators_text(gb: GroebnerBasis) -> list:
    return [str(g) for g in gb.generators]


def ideal_equal(a: Iterable[Polynomial], b: Iterable[Polynomial], order: MonomialOrder = DEGREVLEX) -> bool:
    a, b = list(a), list(b)
    return buchberger(a, order, ring=(a or b)[0].ring).generators == buchberger(
        b, order, ring=(a or b)[0].ring
    ).generators
