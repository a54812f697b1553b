"""Equal-rank torus biquotients G//S and their rational cohomology rings.

The ring is S(s*) modulo the pullbacks of sigma_i(y_left) - sigma_i(y_right),
where sigma_i run over the basic Weyl invariants of G written in the diagonal
torus coordinates y_1..y_N of each factor.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction

from .polyring import (
    VariableContext,
    elementary_symmetric,
    format_rational,
    substitute,
)

FAMILIES = ("SU", "SpinOdd", "SpinEven", "Sp")

_FAMILY_ALIASES = {
    "su": "SU",
    "sp": "Sp",
    "spinodd": "SpinOdd",
    "spin-odd": "SpinOdd",
    "spin2n+1": "SpinOdd",
    "b": "SpinOdd",
    "spineven": "SpinEven",
    "spin-even": "SpinEven",
    "spin2n": "SpinEven",
    "d": "SpinEven",
}


@dataclass(frozen=True)
class GroupSpec:
    """A simply connected simple group: SU(n), Spin(2n+1), Spin(2n) or Sp(n)."""

    family: str
    n: int

    def __post_init__(self):
        fam = _FAMILY_ALIASES.get(str(self.family).lower(), self.family)
        if fam not in FAMILIES:
            raise ValueError(f"unknown group family {self.family!r}")
        object.__setattr__(self, "family", fam)
        lower = {"SU": 3, "Sp": 2, "SpinOdd": 2, "SpinEven": 4}[fam]
        if int(self.n) < lower:
            raise ValueError(f"{self.name} needs n >= {lower}")

    @property
    def name(self) -> str:
        return {
            "SU": f"SU({self.n})",
            "Sp": f"Sp({self.n})",
            "SpinOdd": f"Spin({2 * self.n + 1})",
            "SpinEven": f"Spin({2 * self.n})",
        }[self.family]

    @property
    def rank(self) -> int:
        return self.n - 1 if self.family == "SU" else self.n

    @property
    def torus_dim(self) -> int:
        """Number of diagonal coordinates y_j per factor."""
        return self.n

    @property
    def dimension(self) -> int:
        n = self.n
        return {"SU": n * n - 1, "Sp": 2 * n * n + n, "SpinOdd": 2 * n * n + n, "SpinEven": 2 * n * n - n}[
            self.family
        ]

    @property
    def half_dim_quotient(self) -> int:
        """m = (dim G - rank G) / 2, the complex dimension of G//S."""
        n = self.n
        return {"SU": (n * n - n) // 2, "Sp": n * n, "SpinOdd": n * n, "SpinEven": n * n - n}[self.family]

    @property
    def weyl_order(self) -> int:
        n = self.n
        return {
            "SU": math.factorial(n),
            "Sp": 2**n * math.factorial(n),
            "SpinOdd": 2**n * math.factorial(n),
            "SpinEven": 2 ** (n - 1) * math.factorial(n),
        }[self.family]

    def to_json(self) -> dict:
        return {"family": self.family, "n": self.n, "name": self.name}


TORUS_KINDS = ("S_k1", "S_k2", "S_1", "S_2", "eschenburg")


@dataclass(frozen=True)
class TorusSpec:
    """``S_k1``/``S_k2`` (with ``k``) for SU(n); ``S_1``/``S_2`` otherwise.

    ``eschenburg`` is the SU(3) torus spanned by (2,0,0;1,0,1), (0,0,0;1,-1,0),
    which has the same orbits as S_12.
    """

    kind: str
    k: int | None = None

    def __post_init__(self):
        if self.kind not in TORUS_KINDS:
            raise ValueError(f"unknown torus kind {self.kind!r}")
        if self.kind in ("S_k1", "S_k2"):
            if self.k is None or int(self.k) < 1:
                raise ValueError(f"{self.kind} needs k >= 1")
        elif self.k is not None:
            raise ValueError(f"{self.kind} takes no k")

    @property
    def label(self) -> str:
        if self.kind in ("S_k1", "S_k2"):
            return f"S_{self.k}{self.kind[-1]}"
        return self.kind

    def validate_for(self, group: GroupSpec):
        if group.family == "SU":
            if self.kind == "eschenburg":
                if group.n != 3:
                    raise ValueError("the Eschenburg torus lives in SU(3)")
                return
            if self.kind not in ("S_k1", "S_k2"):
                raise ValueError(f"SU(n) tori are S_k1, S_k2; got {self.kind}")
            if not 1 <= self.k <= group.n // 2:
                raise ValueError(f"k must lie in 1..{group.n // 2} for {group.name}")
        elif self.kind not in ("S_1", "S_2"):
            raise ValueError(f"{group.name} tori are S_1, S_2; got {self.kind}")

    def to_json(self) -> dict:
        return {"kind": self.kind, "k": self.k, "label": self.label}


def valid_tori(group: GroupSpec) -> list:
    if group.family == "SU":
        return [TorusSpec(kind, k) for k in range(1, group.n // 2 + 1) for kind in ("S_k1", "S_k2")]
    return [TorusSpec("S_1"), TorusSpec("S_2")]


@dataclass(frozen=True)
class TorusEmbedding:
    """Rows y_1..y_N (left factor) then y_1..y_N (right factor); one column per
    basis vector of s.  Entry (j, c) is the value of y_j on the c-th basis vector."""

    matrix: tuple  # of row tuples of Fraction

    @property
    def rows(self) -> int:
        return len(self.matrix)

    @property
    def cols(self) -> int:
        return len(self.matrix[0]) if self.matrix else 0

    def column(self, c: int) -> tuple:
        return tuple(row[c] for row in self.matrix)

    def columns(self) -> list:
        return [self.column(c) for c in range(self.cols)]

    @classmethod
    def from_columns(cls, columns) -> "TorusEmbedding":
        cols = [tuple(Fraction(v) for v in col) for col in columns]
        return cls(tuple(zip(*cols)))


def _unit(n, *indices, scale=1) -> list:
    v = [Fraction(0)] * n
    for i in indices:
        v[i - 1] += scale
    return v


def _project(v: list) -> list:
    """x' = x - (tr x / n) e, the projection of u(n) onto su(n)."""
    n = len(v)
    t = sum(v) / n
    return [x - t for x in v]


def torus_embedding(group: GroupSpec, torus: TorusSpec) -> TorusEmbedding:
    torus.validate_for(group)
    n = group.n
    zero = [Fraction(0)] * n
    cols: list = []
    if torus.kind == "eschenburg":
        cols = [[2, 0, 0, 1, 0, 1], [0, 0, 0, 1, -1, 0]]
        return TorusEmbedding.from_columns(cols)
    if group.family == "SU":
        k = torus.k
        if torus.kind == "S_k1":
            cols.append((_unit(n, n, scale=2), _unit(n, 1, n)))
            cols += [(zero, [a - b for a, b in zip(_unit(n, a), _unit(n, 1))]) for a in range(2, k + 1)]
            cols += [(zero, [a - b for a, b in zip(_unit(n, b), _unit(n, n))]) for b in range(k + 1, n)]
        else:
            left = _unit(n, *range(1, k + 1), scale=2)
            right = [a + b - c for a, b, c in zip(left, _unit(n, n), _unit(n, 1))]
            cols.append((left, right))
            cols += [(zero, [a - b for a, b in zip(_unit(n, i), _unit(n, 1))]) for i in range(2, n)]
        cols = [_project(l) + _project(r) for l, r in cols]
    elif torus.kind == "S_1":
        cols.append(_unit(n, n) + zero)
        cols += [zero + [a - b for a, b in zip(_unit(n, i), _unit(n, n))] for i in range(1, n)]
    else:
        cols.append(_unit(n, *range(1, n + 1)) + zero)
        cols += [zero + _unit(n, i) for i in range(1, n)]
    return TorusEmbedding.from_columns(cols)


def weyl_generators(group: GroupSpec, ring: VariableContext | None = None) -> list:
    """Basic Weyl invariants sigma_i in y_1..y_N."""
    n = group.n
    if ring is None:
        ring = VariableContext.uniform("y", n)
    ys = ring.gens()
    if group.family == "SU":
        return [elementary_symmetric(i, ys) for i in range(2, n + 1)]
    squares = [y * y for y in ys]
    if group.family in ("Sp", "SpinOdd"):
        return [elementary_symmetric(i, squares) for i in range(1, n + 1)]
    return [elementary_symmetric(i, squares) for i in range(1, n)] + [elementary_symmetric(n, ys)]


def relations(group: GroupSpec, torus: TorusSpec, ring: VariableContext | None = None) -> list:
    """The pullbacks i*(sigma_i x 1 - 1 x sigma_i) in x_1..x_r."""
    emb = torus_embedding(group, torus)
    N = group.torus_dim
    if ring is None:
        ring = VariableContext.uniform("x", emb.cols)
    both = VariableContext.uniform("y", 2 * N)
    ys = both.gens()
    left = VariableContext.uniform("y", N)
    images = [ring.linear_form(row) for row in emb.matrix]
    out = []
    for sigma in weyl_generators(group, left):
        as_left = substitute(sigma, ys[:N], both)
        as_right = substitute(sigma, ys[N:], both)
        out.append(substitute(as_left - as_right, images, ring))
    return out


@dataclass(frozen=True)
class GradedAlgebraPresentation:
    """QQ[x_1..x_r] / (f_1..f_N) together with the half top degree m."""

    context: VariableContext
    relations: tuple
    m: int
    group: GroupSpec | None = None
    torus: TorusSpec | None = None

    @property
    def socle_degree(self) -> int:
        return sum(f.degree() for f in self.relations) - sum(self.context.degrees)

    def to_json(self) -> dict:
        return {
            "group": self.group.to_json() if self.group else None,
            "torus": self.torus.to_json() if self.torus else None,
            "variables": [{"name": n, "degree": d} for n, d in zip(self.context.names, self.context.degrees)],
            "relations": [str(f) for f in self.relations],
            "m": self.m,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, ensure_ascii=False) + "\n"

    @classmethod
    def from_json(cls, data: dict) -> "GradedAlgebraPresentation":
        ctx = VariableContext(
            tuple(v["name"] for v in data["variables"]), tuple(v["degree"] for v in data["variables"])
        )
        group = torus = None
        if data.get("group"):
            group = GroupSpec(data["group"]["family"], data["group"]["n"])
        if data.get("torus"):
            torus = TorusSpec(data["torus"]["kind"], data["torus"].get("k"))
        return cls(ctx, tuple(ctx.parse(t) for t in data["relations"]), int(data["m"]), group, torus)


def cohomology_presentation(group: GroupSpec, torus: TorusSpec) -> GradedAlgebraPresentation:
    ring = VariableContext.uniform("x", group.rank)
    rels = relations(group, torus, ring)
    return GradedAlgebraPresentation(ring, tuple(rels), group.half_dim_quotient, group, torus)


def embedding_text(emb: TorusEmbedding) -> list:
    return [[format_rational(v) for v in col] for col in emb.columns()]


def all_cases(max_rank: int) -> list:
    """Every (group, torus) pair of the classification with rank <= max_rank."""
    cases = []
    for n in range(3, max_rank + 2):
        g = GroupSpec("SU", n)
        cases += [(g, t) for t in valid_tori(g)]
    for fam in ("Sp", "SpinOdd"):
        for n in range(2, max_rank + 1):
            g = GroupSpec(fam, n)
            cases += [(g, t) for t in valid_tori(g)]
    for n in range(4, max_rank + 1):
        g = GroupSpec("SpinEven", n)
        cases += [(g, t) for t in valid_tori(g)]
    return cases


