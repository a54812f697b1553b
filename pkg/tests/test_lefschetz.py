import json
import random
from fractions import Fraction

import pytest
import sympy

from biquot.biquotient import (
    GradedAlgebraPresentation,
    GroupSpec,
    TorusSpec,
    all_cases,
    cohomology_presentation,
)
from biquot.groebner import DEGREVLEX, LEX, Budget
from biquot.lefschetz import (
    HlpVerdict,
    LefschetzLimitError,
    OmegaCandidate,
    betti_numbers,
    default_omega,
    is_hard_lefschetz,
    multiplication_matrix,
    rank_oracle_verdict,
    relations_basis,
    surjectivity_rank_oracle,
    verdict_json,
)
from biquot.polyring import VariableContext

RANK3 = all_cases(3)


def case_id(case):
    g, t = case
    return f"{g.name}-{t.label}"


def cp1():
    ctx = VariableContext.uniform("x", 1)
    x = ctx.gen(0)
    return GradedAlgebraPresentation(ctx, (x * x,), 1), x


def eschenburg_like():
    return cohomology_presentation(GroupSpec("SU", 3), TorusSpec("S_k2", 1))


def random_candidate(rng, pres):
    n = pres.context.nvars
    if rng.random() < 0.15:
        # coordinate hyperplanes and multiples of one variable fail often
        coeffs = [0] * n
        coeffs[rng.randrange(n)] = rng.randint(1, 3)
    else:
        coeffs = [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(n)]
    return OmegaCandidate.from_coefficients(pres, coeffs)


def test_default_omega():
    pres = eschenburg_like()
    x1, x2 = pres.context.gens()
    assert default_omega(pres).poly == x1 + 2 * x2
    pres1, x = cp1()
    assert default_omega(pres1).poly == x


def test_omega_must_have_degree_two():
    x1, x2 = eschenburg_like().context.gens()
    with pytest.raises(ValueError):
        OmegaCandidate(x1 * x2)
    OmegaCandidate(x1.ring.zero())


def test_cp1():
    pres, x = cp1()
    assert is_hard_lefschetz(pres, OmegaCandidate(x)) == HlpVerdict(True)
    v = is_hard_lefschetz(pres, OmegaCandidate(x.ring.zero()))
    assert not v.passes and v.failing_k == 1
    assert v.witness == ("x1",)
    for w in (x, x.ring.zero()):
        c = OmegaCandidate(w)
        assert is_hard_lefschetz(pres, c).passes == surjectivity_rank_oracle(pres, c, 1)


def test_verdict_invariants():
    with pytest.raises(ValueError):
        HlpVerdict(True, 1, ((1,),))
    with pytest.raises(ValueError):
        HlpVerdict(False, 1)


def test_eschenburg_flag_passes_and_agrees_per_k():
    pres = eschenburg_like()
    w = default_omega(pres)
    assert is_hard_lefschetz(pres, w).passes
    assert all(surjectivity_rank_oracle(pres, w, k) for k in range(1, pres.m + 1))


@pytest.mark.parametrize("case", RANK3, ids=case_id)
def test_random_candidates_agree_with_rank_oracle(case):
    pres = cohomology_presentation(*case)
    rng = random.Random(case_id(case))
    seen = set()
    for _ in range(20):
        w = random_candidate(rng, pres)
        verdict = is_hard_lefschetz(pres, w)
        assert verdict.passes == rank_oracle_verdict(pres, w)
        if not verdict.passes:
            k = verdict.failing_k
            assert not surjectivity_rank_oracle(pres, w, k)
            assert all(surjectivity_rank_oracle(pres, w, j) for j in range(1, k))
        seen.add(verdict.passes)
    assert True in seen


def sympy_rank_check(pres, w, k):
    rows, _, dst = multiplication_matrix(pres, w, k)
    if not dst:
        return True
    if not rows:
        return False
    mat = sympy.zeros(len(rows), len(dst))
    for i, row in enumerate(rows):
        for j, c in row.items():
            mat[i, j] = sympy.Rational(int(c.numerator), int(c.denominator))
    return mat.rank() == len(dst)


def test_internal_rank_matches_sympy_rank():
    pres = cohomology_presentation(GroupSpec("Sp", 2), TorusSpec("S_1"))
    rng = random.Random(11)
    for _ in range(10):
        w = random_candidate(rng, pres)
        for k in range(1, pres.m + 1):
            assert surjectivity_rank_oracle(pres, w, k) == sympy_rank_check(pres, w, k)


@pytest.mark.parametrize("case", RANK3, ids=case_id)
def test_order_independence(case):
    pres = cohomology_presentation(*case)
    rng = random.Random(3)
    for w in [default_omega(pres)] + [random_candidate(rng, pres) for _ in range(3)]:
        assert is_hard_lefschetz(pres, w, order=DEGREVLEX) == is_hard_lefschetz(pres, w, order=LEX)


@pytest.mark.parametrize("case", RANK3, ids=case_id)
def test_scaling_invariance(case):
    pres = cohomology_presentation(*case)
    rng = random.Random(5)
    for w in [default_omega(pres)] + [random_candidate(rng, pres) for _ in range(3)]:
        base = is_hard_lefschetz(pres, w)
        for c in (Fraction(-1), Fraction(3, 7), Fraction(-22, 5)):
            assert is_hard_lefschetz(pres, OmegaCandidate(w.poly * c)) == base


@pytest.mark.parametrize("case", all_cases(4), ids=case_id)
def test_reduced_power_mode_gives_same_verdict(case):
    pres = cohomology_presentation(*case)
    w = default_omega(pres)
    assert is_hard_lefschetz(pres, w, reduced_power=True) == is_hard_lefschetz(pres, w)


@pytest.mark.parametrize("case", RANK3, ids=case_id)
def test_duality_consistency(case):
    pres = cohomology_presentation(*case)
    w = default_omega(pres)
    assert is_hard_lefschetz(pres, w).passes
    b = betti_numbers(pres)
    for k in range(1, pres.m + 1):
        assert surjectivity_rank_oracle(pres, w, k)
        assert b[pres.m - k] == b[pres.m + k]


def direct_staircase_betti(pres):
    """Degree-d dimension as (#monomials) - rank of the degree-d part of the
    ideal, spanned by monomial multiples of the relations (sympy rank)."""
    ctx = pres.context
    out = []
    for d in range(2 * pres.m + 1):
        monos = ctx.monomials_of_degree(d)
        if not monos:
            out.append(0)
            continue
        idx = {m: i for i, m in enumerate(monos)}
        rows = []
        for f in pres.relations:
            e = d - f.degree()
            if e < 0:
                continue
            for m in ctx.monomials_of_degree(e):
                row = [0] * len(monos)
                for mono, c in (ctx.monomial(m) * f).items():
                    row[idx[mono]] = sympy.Rational(int(c.numerator), int(c.denominator))
                rows.append(row)
        rank = sympy.Matrix(rows).rank() if rows else 0
        out.append(len(monos) - rank)
    return out


def test_eschenburg_betti_two_methods():
    pres = eschenburg_like()
    assert betti_numbers(pres) == [1, 0, 2, 0, 2, 0, 1]
    assert direct_staircase_betti(pres) == [1, 0, 2, 0, 2, 0, 1]


def test_budget_limit_carries_k():
    pres = cohomology_presentation(GroupSpec("SU", 4), TorusSpec("S_k1", 1))
    with pytest.raises(LefschetzLimitError) as info:
        is_hard_lefschetz(pres, budget=Budget(max_basis=4))
    assert info.value.k >= 0


def test_non_artinian_rejected():
    ctx = VariableContext.uniform("x", 2)
    x1, _ = ctx.gens()
    pres = GradedAlgebraPresentation(ctx, (x1 * x1,), 1)
    with pytest.raises(ValueError):
        is_hard_lefschetz(pres)


def test_verdict_json_keys():
    pres = eschenburg_like()
    v = is_hard_lefschetz(pres, OmegaCandidate.from_coefficients(pres, [0, 0]))
    data = json.loads(verdict_json(v, betti_numbers(pres)))
    assert set(data) == {"passes", "failing_k", "witness", "betti", "euler", "runtime_ms"}
    assert data["passes"] is False and data["failing_k"] == 1
    assert data["euler"] == 6 and data["runtime_ms"] is None
    assert relations_basis(pres).truncated_at is None
