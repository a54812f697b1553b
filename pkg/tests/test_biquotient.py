import math
from fractions import Fraction

import pytest

from biquot.biquotient import (
    GradedAlgebraPresentation,
    GroupSpec,
    TorusSpec,
    all_cases,
    cohomology_presentation,
    relations,
    torus_embedding,
    valid_tori,
    weyl_generators,
)
from biquot.groebner import buchberger, standard_monomials
from biquot.polyring import VariableContext, elementary_symmetric

RANK4 = all_cases(4)


def case_id(case):
    g, t = case
    return f"{g.name}-{t.label}"


def test_group_bounds():
    for fam, bad in (("SU", 2), ("Sp", 1), ("SpinOdd", 1), ("SpinEven", 3)):
        with pytest.raises(ValueError):
            GroupSpec(fam, bad)
    with pytest.raises(ValueError):
        GroupSpec("G2", 2)
    assert GroupSpec("spin2n+1", 3).name == "Spin(7)"
    assert GroupSpec("d", 4).name == "Spin(8)"


def test_torus_validation():
    with pytest.raises(ValueError):
        TorusSpec("S_1").validate_for(GroupSpec("SU", 4))
    with pytest.raises(ValueError):
        TorusSpec("S_k1", 3).validate_for(GroupSpec("SU", 5))
    with pytest.raises(ValueError):
        TorusSpec("S_k2", 1).validate_for(GroupSpec("Sp", 3))
    with pytest.raises(ValueError):
        TorusSpec("eschenburg").validate_for(GroupSpec("SU", 4))
    with pytest.raises(ValueError):
        TorusSpec("S_k1")
    assert TorusSpec("S_k2", 1).label == "S_12"


def test_case_counts():
    # SU(n), n=3..6 with k=1..n//2 two tori each; Sp, SpinOdd n=2..5; SpinEven n=4,5
    cases = all_cases(5)
    su = [c for c in cases if c[0].family == "SU"]
    assert len(su) == 2 * sum(n // 2 for n in range(3, 7))
    assert len(cases) == len(su) + 2 * 4 + 2 * 4 + 2 * 2


def test_sp_embeddings():
    n = 3
    emb = torus_embedding(GroupSpec("Sp", n), TorusSpec("S_1"))
    cols = emb.columns()
    assert cols[0] == (0, 0, 1, 0, 0, 0)
    assert cols[1] == (0, 0, 0, 1, 0, -1)
    assert cols[2] == (0, 0, 0, 0, 1, -1)
    emb2 = torus_embedding(GroupSpec("Sp", n), TorusSpec("S_2"))
    assert emb2.columns() == [(1, 1, 1, 0, 0, 0), (0, 0, 0, 1, 0, 0), (0, 0, 0, 0, 1, 0)]


def test_eschenburg_embedding():
    emb = torus_embedding(GroupSpec("SU", 3), TorusSpec("eschenburg"))
    assert emb.columns() == [(2, 0, 0, 1, 0, 1), (0, 0, 0, 1, -1, 0)]


@pytest.mark.parametrize("case", all_cases(5), ids=case_id)
def test_embedding_invariants(case):
    g, t = case
    emb = torus_embedding(g, t)
    assert emb.rows == 2 * g.torus_dim
    assert emb.cols == g.rank
    # linear independence of the columns via exact elimination
    rows = [list(c) for c in emb.columns()]
    rank = 0
    for col in range(emb.rows):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                f = Fraction(rows[r][col]) / rows[rank][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
    assert rank == g.rank
    if g.family == "SU":
        N = g.torus_dim
        for c in emb.columns():
            assert sum(c[:N]) == 0 and sum(c[N:]) == 0


def test_weyl_generators():
    ys = VariableContext.uniform("y", 2).gens()
    y1, y2 = ys
    assert weyl_generators(GroupSpec("Sp", 2)) == [y1**2 + y2**2, y1**2 * y2**2]
    su3 = weyl_generators(GroupSpec("SU", 3))
    assert [p.degree() for p in su3] == [4, 6]
    ys4 = VariableContext.uniform("y", 4).gens()
    spin8 = weyl_generators(GroupSpec("SpinEven", 4))
    sq = [y * y for y in ys4]
    assert spin8 == [elementary_symmetric(i, sq) for i in (1, 2, 3)] + [ys4[0] * ys4[1] * ys4[2] * ys4[3]]


def test_m_values():
    assert cohomology_presentation(GroupSpec("SU", 3), TorusSpec("S_k2", 1)).m == 3
    assert cohomology_presentation(GroupSpec("SpinEven", 4), TorusSpec("S_1")).m == 12
    for n in (2, 3, 4):
        assert cohomology_presentation(GroupSpec("Sp", n), TorusSpec("S_1")).m == n * n


@pytest.mark.parametrize("case", all_cases(5), ids=case_id)
def test_relations_homogeneous_and_socle_identity(case):
    g, t = case
    pres = cohomology_presentation(g, t)
    sigma_degrees = [s.degree() for s in weyl_generators(g)]
    assert [f.degree() for f in pres.relations] == sigma_degrees
    assert all(f and f.is_homogeneous() for f in pres.relations)
    assert pres.socle_degree == 2 * pres.m
    assert 2 * pres.m == g.dimension - g.rank


@pytest.mark.parametrize("case", RANK4, ids=case_id)
def test_quotient_dimension_duality_and_weyl_order(case):
    g, t = case
    pres = cohomology_presentation(g, t)
    stairs = standard_monomials(buchberger(list(pres.relations)))
    dims = [len(stairs.get(d, [])) for d in range(2 * pres.m + 1)]
    assert max(stairs) == 2 * pres.m
    assert all(dims[d] == 0 for d in range(1, 2 * pres.m, 2))
    assert dims == dims[::-1]
    assert sum(dims) == g.weyl_order
    expected = {
        "SU": math.factorial(g.n),
        "Sp": 2**g.n * math.factorial(g.n),
        "SpinOdd": 2**g.n * math.factorial(g.n),
        "SpinEven": 2 ** (g.n - 1) * math.factorial(g.n),
    }[g.family]
    assert g.weyl_order == expected


@pytest.mark.parametrize("n", [2, 3, 4, 5])
@pytest.mark.parametrize("kind", ["S_1", "S_2"])
def test_sp_and_spin_odd_share_relations(n, kind):
    a = cohomology_presentation(GroupSpec("Sp", n), TorusSpec(kind))
    b = cohomology_presentation(GroupSpec("SpinOdd", n), TorusSpec(kind))
    assert [str(f) for f in a.relations] == [str(f) for f in b.relations]


def test_eschenburg_relations():
    g = GroupSpec("SU", 3)
    rels = relations(g, TorusSpec("eschenburg"))
    assert [f.degree() for f in rels] == [4, 6]
    assert all(rels)


def test_presentation_json_roundtrip():
    pres = cohomology_presentation(GroupSpec("SU", 4), TorusSpec("S_k1", 2))
    back = GradedAlgebraPresentation.from_json(pres.to_json())
    assert back == pres
    assert pres.dumps() == back.dumps()


def test_valid_tori():
    assert [t.label for t in valid_tori(GroupSpec("SU", 5))] == ["S_11", "S_12", "S_21", "S_22"]
    assert [t.label for t in valid_tori(GroupSpec("Sp", 3))] == ["S_1", "S_2"]
