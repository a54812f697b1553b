"""Sparse multivariate polynomials over QQ with an even weighted grading.

Coefficients are ``gmpy2.mpq`` (exact, always in lowest terms).  Monomials are
plain tuples of exponents whose length equals the number of variables of the
owning :class:`VariableContext`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from gmpy2 import mpq

Monomial = tuple

_ZERO = mpq(0)
_ONE = mpq(1)


def to_rational(value) -> mpq:
    """Coerce ints, Fractions, mpq values and ``"a/b"`` strings to ``mpq``."""
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    if isinstance(value, str):
        return mpq(Fraction(value.strip()))
    if isinstance(value, float):
        raise TypeError("floating point coefficients are not allowed")
    return mpq(value)


def format_rational(c) -> str:
    c = to_rational(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


class ContextMismatch(ValueError):
    """Raised when polynomials from different variable contexts are combined."""


@dataclass(frozen=True)
class VariableContext:
    names: tuple
    degrees: tuple

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "degrees", tuple(int(d) for d in self.degrees))
        if len(self.names) != len(self.degrees):
            raise ValueError("names and degrees differ in length")
        if len(set(self.names)) != len(self.names):
            raise ValueError("variable names must be unique")
        for d in self.degrees:
            if d < 2 or d % 2:
                raise ValueError(f"variable degrees must be even and >= 2, got {d}")

    @classmethod
    def uniform(cls, prefix: str, count: int, degree: int = 2) -> "VariableContext":
        return cls(tuple(f"{prefix}{i}" for i in range(1, count + 1)), (degree,) * count)

    @property
    def nvars(self) -> int:
        return len(self.names)

    def gens(self) -> list:
        return [self.gen(i) for i in range(self.nvars)]

    def gen(self, i: int) -> "Polynomial":
        exps = [0] * self.nvars
        exps[i] = 1
        return Polynomial(self, {tuple(exps): _ONE})

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c) -> "Polynomial":
        return Polynomial(self, {(0,) * self.nvars: to_rational(c)})

    def monomial(self, exps, coeff=1) -> "Polynomial":
        return Polynomial(self, {tuple(exps): to_rational(coeff)})

    def linear_form(self, coeffs: Sequence) -> "Polynomial":
        if len(coeffs) != self.nvars:
            raise ValueError("need one coefficient per variable")
        terms = {}
        for i, c in enumerate(coeffs):
            c = to_rational(c)
            if c:
                exps = [0] * self.nvars
                exps[i] = 1
                terms[tuple(exps)] = c
        return Polynomial(self, terms)

    def weighted_degree(self, exps) -> int:
        return sum(e * d for e, d in zip(exps, self.degrees))

    def monomials_of_degree(self, d: int) -> list:
        """All exponent vectors of weighted degree exactly ``d``, descending order."""
        out = []
        n = self.nvars
        degs = self.degrees

        def rec(i, left, acc):
            if i == n - 1:
                if left % degs[i] == 0:
                    out.append(tuple(acc + [left // degs[i]]))
                return
            for e in range(left // degs[i], -1, -1):
                rec(i + 1, left - e * degs[i], acc + [e])

        if n == 0:
            return [()] if d == 0 else []
        if d < 0:
            return []
        rec(0, d, [])
        out.sort(key=self.sort_key, reverse=True)
        return out

    def sort_key(self, exps):
        """Graded reverse lexicographic key; larger key = larger monomial."""
        return (self.weighted_degree(exps), tuple(-e for e in reversed(exps)))

    def monomial_str(self, exps) -> str:
        factors = []
        for name, e in zip(self.names, exps):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        return "*".join(factors) if factors else "1"

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(self, text)


class Polynomial:
    """Immutable polynomial; ``terms`` maps exponent tuples to nonzero ``mpq``."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: VariableContext, terms: Mapping | None = None, *, _trusted=False):
        self.ring = ring
        self._hash = None
        if _trusted:
            self._terms = terms
            return
        clean = {}
        n = ring.nvars
        for exps, c in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != n or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent vector {exps} for {n} variables")
            c = to_rational(c)
            if c:
                clean[exps] = clean.get(exps, _ZERO) + c
                if not clean[exps]:
                    del clean[exps]
        self._terms = clean

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def _check(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise ContextMismatch("polynomials live in different variable contexts")
            return other
        return self.ring.constant(other)

    def __add__(self, other):
        other = self._check(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = out.get(m)
            if v is None:
                out[m] = c
            else:
                v = v + c
                if v:
                    out[m] = v
                else:
                    del out[m]
        return Polynomial(self.ring, out, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {m: -c for m, c in self._terms.items()}, _trusted=True)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = to_rational(other)
            if not c:
                return self.ring.zero()
            return Polynomial(self.ring, {m: v * c for m, v in self._terms.items()}, _trusted=True)
        other = self._check(other)
        out: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                v = out.get(m)
                out[m] = c1 * c2 if v is None else v + c1 * c2
        return Polynomial(self.ring, {m: c for m, c in out.items() if c}, _trusted=True)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._terms == other._terms
        try:
            return self == self.ring.constant(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    def degrees(self) -> set:
        return {self.ring.weighted_degree(m) for m in self._terms}

    def degree(self) -> int:
        """Maximal weighted degree; -1 for the zero polynomial."""
        return max(self.degrees(), default=-1)

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def homogeneous_component(self, d: int) -> "Polynomial":
        wd = self.ring.weighted_degree
        return Polynomial(self.ring, {m: c for m, c in self._terms.items() if wd(m) == d}, _trusted=True)

    def coefficient(self, exps) -> mpq:
        return self._terms.get(tuple(exps), _ZERO)

    def sorted_terms(self) -> list:
        return sorted(self._terms.items(), key=lambda t: self.ring.sort_key(t[0]), reverse=True)

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for i, (m, c) in enumerate(self.sorted_terms()):
            neg = c < 0
            a = -c if neg else c
            mono = self.ring.monomial_str(m)
            if mono == "1":
                body = format_rational(a)
            elif a == 1:
                body = mono
            else:
                body = f"{format_rational(a)}*{mono}"
            if i == 0:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f" - {body}" if neg else f" + {body}")
        return "".join(parts)

    def __repr__(self):
        return f"Polynomial({self})"


_TERM_RE = re.compile(r"\s*([+-]?)\s*([^+-]+)")


def parse_polynomial(ring: VariableContext, text: str) -> Polynomial:
    """Parse sums of products such as ``3*x1^2*x2 - 1/2*x2^3``."""
    s = text.strip()
    if not s:
        raise ValueError("empty polynomial text")
    index = {name: i for i, name in enumerate(ring.names)}
    terms: dict = {}
    pos = 0
    while pos < len(s):
        match = _TERM_RE.match(s, pos)
        if not match or match.end() == pos:
            raise ValueError(f"cannot parse polynomial near {s[pos:]!r}")
        pos = match.end()
        sign, body = match.group(1), match.group(2).strip()
        coeff = _ONE
        exps = [0] * ring.nvars
        for factor in body.split("*"):
            factor = factor.strip()
            if not factor:
                raise ValueError(f"empty factor in {body!r}")
            if factor[0].isdigit():
                coeff *= to_rational(factor)
                continue
            name, _, power = factor.partition("^")
            if name not in index:
                raise ValueError(f"unknown variable {name!r}")
            exps[index[name]] += int(power) if power else 1
        if sign == "-":
            coeff = -coeff
        key = tuple(exps)
        terms[key] = terms.get(key, _ZERO) + coeff
    return Polynomial(ring, terms)


def elementary_symmetric(i: int, args: Sequence[Polynomial]) -> Polynomial:
    """The ``i``-th elementary symmetric polynomial evaluated at ``args``.

    Uses e_i(a_1..a_n) = a_n * e_{i-1}(a_1..a_{n-1}) + e_i(a_1..a_{n-1}),
    tabulated over prefixes instead of recursing.
    """
    if not args:
        raise ValueError("need at least one argument")
    if i < 0:
        raise ValueError("index must be nonnegative")
    ring = args[0].ring
    if any(a.ring != ring for a in args):
        raise ContextMismatch("arguments live in different variable contexts")
    n = len(args)
    if i > n:
        return ring.zero()
    if i == 0:
        return ring.one()
    # row[j] = e_j of the current prefix
    row = [ring.one()] + [ring.zero()] * i
    for a in args:
        for j in range(i, 0, -1):
            if row[j - 1]:
                row[j] = a * row[j - 1] + row[j]
    return row[i]


def substitute(p: Polynomial, images: Sequence[Polynomial], target: VariableContext | None = None) -> Polynomial:
    """Apply the ring map sending the j-th variable of ``p.ring`` to ``images[j]``."""
    src = p.ring
    if len(images) != src.nvars:
        raise ValueError(f"expected {src.nvars} images, got {len(images)}")
    if target is None:
        if not images:
            raise ValueError("cannot infer target context")
        target = images[0].ring
    for j, img in enumerate(images):
        if img.ring != target:
            raise ContextMismatch("images live in different variable contexts")
        if img and (not img.is_homogeneous() or img.degree() != src.degrees[j]):
            raise ValueError(
                f"image of {src.names[j]} must be homogeneous of degree {src.degrees[j]}"
            )
    powers: list[dict] = [{0: target.one()} for _ in images]

    def power(j, e):
        cache = powers[j]
        if e not in cache:
            cache[e] = power(j, e - 1) * images[j]
        return cache[e]

    acc: dict = {}
    for exps, c in p.items():
        term = target.constant(c)
        for j, e in enumerate(exps):
            if e:
                term = term * power(j, e)
                if not term:
                    break
        for m, v in term.items():
            acc[m] = acc.get(m, _ZERO) + v
    return Polynomial(target, {m: c for m, c in acc.items() if c}, _trusted=True)


def polynomial_sum(polys: Iterable[Polynomial], ring: VariableContext) -> Polynomial:
    out = ring.zero()
    for p in polys:
        out = out + p
    return out
