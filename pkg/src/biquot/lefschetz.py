"""Hard Lefschetz tests for Artinian presentations QQ[x]/(f).

w in A^2 is Hard Lefschetz iff for every k = 1..m multiplication by w^k is
surjective onto the degree m+k component, i.e. iff QQ[x]/(f, p^k) vanishes
in degree m+k.  The primary test checks that vanishing with a Groebner basis;
:func:`surjectivity_rank_oracle` checks the same surjectivity by the rank of
an explicit multiplication matrix.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field

from gmpy2 import mpq

from .biquotient import GradedAlgebraPresentation
from .groebner import (
    DEGREVLEX,
    UNLIMITED,
    Budget,
    GroebnerBasis,
    GroebnerLimitError,
    MonomialOrder,
    buchberger,
    graded_quotient_basis,
    graded_quotient_dim,
    is_artinian,
    normal_form,
)
from .polyring import Polynomial


class LefschetzLimitError(GroebnerLimitError):
    """A Groebner computation inside the k-loop ran out of budget."""

    def __init__(self, message: str, k: int, **kw):
        super().__init__(message, **kw)
        self.k = k


@dataclass(frozen=True)
class OmegaCandidate:
    poly: Polynomial

    def __post_init__(self):
        p = self.poly
        if p and (not p.is_homogeneous() or p.degree() != 2):
            raise ValueError("a Lefschetz candidate must be homogeneous of degree 2")

    @classmethod
    def from_coefficients(cls, pres: GradedAlgebraPresentation, coeffs) -> "OmegaCandidate":
        ctx = pres.context
        if any(d != 2 for d in ctx.degrees):
            raise ValueError("coefficient vectors need all generators in degree 2")
        return cls(ctx.linear_form(list(coeffs)))


@dataclass(frozen=True)
class HlpVerdict:
    passes: bool
    failing_k: int | None = None
    witness_monomials: tuple = ()
    witness: tuple = field(default=(), compare=False)

    def __post_init__(self):
        if self.passes != (self.failing_k is None):
            raise ValueError("passes must be equivalent to an absent failing_k")
        if bool(self.witness_monomials) == self.passes:
            raise ValueError("a witness is present exactly when the test fails")


def default_omega(pres: GradedAlgebraPresentation) -> OmegaCandidate:
    return OmegaCandidate.from_coefficients(pres, range(1, pres.context.nvars + 1))


def relations_basis(pres: GradedAlgebraPresentation, order: MonomialOrder = DEGREVLEX,
                    budget: Budget = UNLIMITED) -> GroebnerBasis:
    gb = buchberger(list(pres.relations), order, ring=pres.context, budget=budget)
    if not is_artinian(gb):
        raise ValueError("presentation is not Artinian (quotient is infinite dimensional)")
    return gb


def _power(w: Polynomial, k: int, gb: GroebnerBasis | None) -> Polynomial:
    """w^k by binary exponentiation, optionally reducing modulo gb as it goes."""
    if gb is None:
        return w**k
    result = w.ring.one()
    base = normal_form(w, gb)
    while k:
        if k & 1:
            result = normal_form(result * base, gb)
        k >>= 1
        if k:
            base = normal_form(base * base, gb)
    return result


def is_hard_lefschetz(
    pres: GradedAlgebraPresentation,
    w: OmegaCandidate | None = None,
    *,
    order: MonomialOrder = DEGREVLEX,
    budget: Budget = UNLIMITED,
    reduced_power: bool = False,
) -> HlpVerdict:
    """Check that degree m+k of QQ[x]/(f, w^k) is zero for k = 1..m.

    Stops at the first k where it is not and reports that component's
    standard monomials as the witness.
    """
    if w is None:
        w = default_omega(pres)
    ctx = pres.context
    m = pres.m
    k = 0
    try:
        base = relations_basis(pres, order, budget)
        for k in range(1, m + 1):
            target = m + k
            if not ctx.monomials_of_degree(target):
                continue
            pk = _power(w.poly, k, base if reduced_power else None)
            # homogeneous ideal: pairs above the target degree cannot matter
            gb = buchberger([*pres.relations, pk], order, start=base, max_degree=target, budget=budget)
            residual = graded_quotient_basis(gb, target)
            if residual:
                return HlpVerdict(
                    False, k, tuple(residual), tuple(ctx.monomial_str(e) for e in residual)
                )
    except LefschetzLimitError:
        raise
    except GroebnerLimitError as exc:
        raise LefschetzLimitError(str(exc), k, basis_size=exc.basis_size, coeff_bits=exc.coeff_bits) from exc
    return HlpVerdict(True)


def _rank(rows: list) -> int:
    """Rank over QQ of sparse rows (dicts column -> value)."""
    pivots: dict = {}
    for row in rows:
        row = dict(row)
        while row:
            col = min(row)
            prow = pivots.get(col)
            if prow is None:
                inv = 1 / row[col]
                pivots[col] = {c: v * inv for c, v in row.items()}
                break
            f = row[col]
            for c, v in prow.items():
                nv = row.get(c, 0) - f * v
                if nv:
                    row[c] = nv
                else:
                    row.pop(c, None)
    return len(pivots)


def multiplication_matrix(pres: GradedAlgebraPresentation, w: OmegaCandidate, k: int,
                          gb: GroebnerBasis | None = None) -> tuple:
    """Matrix of w^k : A^{m-k} -> A^{m+k} in standard monomial bases.

    Returns (rows, source basis, target basis); row i holds the coordinates of
    w^k times the i-th source monomial.
    """
    if gb is None:
        gb = relations_basis(pres)
    ctx = pres.context
    src = graded_quotient_basis(gb, pres.m - k) if pres.m - k >= 0 else []
    dst = graded_quotient_basis(gb, pres.m + k)
    index = {e: i for i, e in enumerate(dst)}
    wk = normal_form(w.poly**k, gb)
    rows = []
    for e in src:
        img = normal_form(ctx.monomial(e) * wk, gb)
        row = {}
        for mono, c in img.items():
            row[index[mono]] = mpq(c)
        rows.append(row)
    return rows, src, dst


def surjectivity_rank_oracle(pres: GradedAlgebraPresentation, w: OmegaCandidate, k: int,
                             gb: GroebnerBasis | None = None) -> bool:
    rows, _, dst = multiplication_matrix(pres, w, k, gb)
    return _rank(rows) == len(dst)


def rank_oracle_verdict(pres: GradedAlgebraPresentation, w: OmegaCandidate | None = None) -> bool:
    """HLP decided by the rank oracle for every k = 1..m."""
    if w is None:
        w = default_omega(pres)
    gb = relations_basis(pres)
    return all(surjectivity_rank_oracle(pres, w, k, gb) for k in range(1, pres.m + 1))


def betti_numbers(pres: GradedAlgebraPresentation, gb: GroebnerBasis | None = None) -> list:
    """dim H^d for d = 0..2m; odd degrees are zero."""
    if gb is None:
        gb = relations_basis(pres)
    return [graded_quotient_dim(gb, d) if d % 2 == 0 else 0 for d in range(2 * pres.m + 1)]


def verdict_json(verdict: HlpVerdict, betti: list, runtime_ms: int | None = None) -> str:
    payload = {
        "passes": verdict.passes,
        "failing_k": verdict.failing_k,
        "witness": list(verdict.witness),
        "betti": betti,
        "euler": sum(betti),
        "runtime_ms": runtime_ms,
    }
    return json.dumps(payload, indent=2) + "\n"


def timed_hlp(pres, w=None, **kw):
    t0 = time.perf_counter()
    verdict = is_hard_lefschetz(pres, w, **kw)
    return verdict, int((time.perf_counter() - t0) * 1000)
