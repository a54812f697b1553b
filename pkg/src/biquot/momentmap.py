"""Isotropy weights and the moment image of the 2-torus action on the
Eschenburg flag SU(3)//S_12.

Weights are integer covectors written in the dual basis of
s = <e1 - e2, e1 - e3>.  Horizontal weights come from the standard T^3-action
on CP^2 pulled back along S -> T^3; vertical weights are the fiber weights of
H/T = CP^1 pulled back along the homomorphisms phi_1, phi_2, phi_3.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from xml.sax.saxutils import escape

BASE_POINTS = ("[1:0:0]", "[0:1:0]", "[0:0:1]")
LABELS = ("p1", "p2", "p3", "p4", "p5", "p6")

# S -> T^3 on Lie algebras; weights are pulled back along its transpose
S_TO_T3 = ((1, 1), (1, 0), (0, 1))

# fixed points of the CP^1 fiber carry the weights (1,-1) and (-1,1)
FIBER_WEIGHT = (1, -1)


class IntMatrix(tuple):
    """An immutable integer matrix stored as a tuple of row tuples."""

    def __new__(cls, rows):
        rows = tuple(tuple(int(v) for v in r) for r in rows)
        if not rows or not rows[0]:
            raise ValueError("matrix dimensions must be positive")
        if any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged matrix")
        return super().__new__(cls, rows)

    @property
    def shape(self) -> tuple:
        return len(self), len(self[0])

    def transpose(self) -> "IntMatrix":
        return IntMatrix(zip(*self))

    def apply(self, v) -> tuple:
        if len(v) != self.shape[1]:
            raise ValueError(f"cannot apply a {self.shape} matrix to a vector of length {len(v)}")
        return tuple(sum(a * b for a, b in zip(row, v)) for row in self)


class WeightSet(tuple):
    """A multiset of integer covectors; equality ignores order."""

    def __new__(cls, weights):
        return super().__new__(cls, (tuple(int(x) for x in w) for w in weights))

    def __eq__(self, other):
        if not isinstance(other, tuple):
            return NotImplemented
        return Counter(self) == Counter(tuple(tuple(w) for w in other))

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        return hash(frozenset(Counter(self).items()))

    def __add__(self, other):
        return WeightSet(tuple(self) + tuple(other))


@dataclass(frozen=True)
class FixedPointData:
    label: str
    base_point: str
    horizontal: WeightSet
    vertical: tuple
    kind: str

    @property
    def weights(self) -> WeightSet:
        return self.horizontal + WeightSet([self.vertical])


def base_weights_cp2() -> dict:
    """Weights of the standard T^3-action on CP^2 at its three fixed points."""
    return {
        "[1:0:0]": WeightSet([(-1, 1, 0), (-1, 0, 1)]),
        "[0:1:0]": WeightSet([(1, -1, 0), (0, -1, 1)]),
        "[0:0:1]": WeightSet([(1, 0, -1), (0, 1, -1)]),
    }


def pullback_weights(h, ws) -> WeightSet:
    """Map every weight w (as a column) to h @ w."""
    h = IntMatrix(h)
    return WeightSet(h.apply(w) for w in ws)


def fiber_homomorphisms() -> tuple:
    return (
        IntMatrix([[1, -1], [-1, 0]]),
        IntMatrix([[0, -1], [-1, 1]]),
        IntMatrix([[-1, 0], [0, -1]]),
    )


# (positive point, negative point, base point, index of phi)
_FIBERS = (
    ("p1", "p5", "[0:0:1]", 0),
    ("p2", "p4", "[0:1:0]", 1),
    ("p3", "p6", "[1:0:0]", 2),
)


def fixed_point_weights() -> list:
    """Weight data at p1..p6, in label order."""
    base = base_weights_cp2()
    pull = IntMatrix(S_TO_T3).transpose()
    phis = fiber_homomorphisms()
    data = {}
    for pos, neg, bp, i in _FIBERS:
        horizontal = pullback_weights(pull, base[bp])
        up = phis[i].apply(FIBER_WEIGHT)
        down = tuple(-x for x in up)
        for label, vert in ((pos, up), (neg, down)):
            ws = horizontal + WeightSet([vert])
            data[label] = FixedPointData(label, bp, horizontal, vert, classify(ws))
    return [data[label] for label in LABELS]


def _cross(a, b):
    return a[0] * b[1] - a[1] * b[0]


def _dot(a, b):
    return a[0] * b[0] + a[1] * b[1]


def positively_spans_plane(ws) -> bool:
    """True iff nonnegative combinations of ``ws`` give all of R^2.

    A nonzero finite set fails to do so exactly when some closed half-plane
    {v . x >= 0} contains it, and such a half-plane can be rotated until its
    boundary passes through one of the vectors.  So it suffices to test the
    normals +-perp(w).
    """
    ws = [tuple(w) for w in ws]
    for w in ws:
        if len(w) != 2:
            raise ValueError("weights must be covectors in Z^2")
        if w == (0, 0):
            raise ValueError("zero weight: fixed point is not isolated")
    for w in ws:
        perp = (-w[1], w[0])
        for v in (perp, (-perp[0], -perp[1])):
            if all(_dot(v, u) >= 0 for u in ws):
                return False
    return True


def classify(ws) -> str:
    """``interior`` if the weights positively span R^2, else ``vertex``."""
    return "interior" if positively_spans_plane(ws) else "vertex"


SOLID_EDGES = (("p6", "p1"), ("p1", "p4"), ("p4", "p3"), ("p3", "p6"))
DASHED_EDGES = (("p4", "p2"), ("p2", "p6"), ("p2", "p5"), ("p5", "p3"), ("p5", "p1"))


class PolytopeError(ValueError):
    """Parameters do not describe a valid moment image."""


@dataclass(frozen=True)
class PolytopeImage:
    points: dict  # label -> (Fraction, Fraction)
    edges: tuple  # (a, b, "solid" | "dashed")
    params: tuple  # three Fractions
    weights: dict  # label -> WeightSet

    def __eq__(self, other):
        if not isinstance(other, PolytopeImage):
            return NotImplemented
        return (
            self.points == other.points
            and self.edges == other.edges
            and self.params == other.params
            and {k: WeightSet(v) for k, v in self.weights.items()}
            == {k: WeightSet(v) for k, v in other.weights.items()}
        )

    __hash__ = None

    def to_json(self) -> dict:
        return {
            "points": {k: [_num(c) for c in self.points[k]] for k in LABELS},
            "edges": [list(e) for e in self.edges],
            "weights": {k: [list(w) for w in self.weights[k]] for k in LABELS},
            "params": [_num(p) for p in self.params],
        }

    @classmethod
    def from_json(cls, data: dict) -> "PolytopeImage":
        return cls(
            points={k: tuple(Fraction(c) for c in v) for k, v in data["points"].items()},
            edges=tuple(tuple(e) for e in data["edges"]),
            params=tuple(Fraction(p) for p in data["params"]),
            weights={k: WeightSet(v) for k, v in data["weights"].items()},
        )


def _num(x):
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _strictly_inside(point, hull) -> bool:
    """Is ``point`` in the open interior of the convex polygon ``hull`` (ccw)?"""
    n = len(hull)
    return all(_cross(_sub(hull[(i + 1) % n], hull[i]), _sub(point, hull[i])) > 0 for i in range(n))


def _sub(a, b):
    return (a[0] - b[0], a[1] - b[1])


def _ray_meet(p, u, q, v):
    """Intersection p + s u = q + t v; returns (s, t, point)."""
    den = _cross(u, v)
    if den == 0:
        raise PolytopeError("parallel rays do not meet")
    d = _sub(q, p)
    s = Fraction(_cross(d, v), den)
    t = Fraction(_cross(d, u), den)
    return s, t, (p[0] + s * u[0], p[1] + s * u[1])


# default lengths of the three parallel edges, in multiples of the primitive
# weight (1,-1): (p3,p6) -> 1, (p2,p5) -> 1, (p1,p4) -> 4
_DEFAULT_PARALLEL = (1, 1, 4)
_ANCHOR = (Fraction(-2), Fraction(1))  # position of p1


def polytope_image(params=(1, 1, 1)) -> PolytopeImage:
    """Moment image with the parallel edges (p3,p6), (p2,p5), (p1,p4) scaled.

    The vertex points p1, p6, p3, p4 form a trapezoid fixed by the first and
    third parameter; p5 and p2 are then pinned by their weight rays, which
    forces length(p1,p4) = length(p2,p5) + 3 length(p3,p6).
    """
    try:
        a, b, c = (Fraction(int(p.numerator), int(p.denominator)) for p in map(Fraction, params))
    except (TypeError, ValueError) as exc:
        raise PolytopeError("params must be three rationals") from exc
    if min(a, b, c) <= 0:
        raise PolytopeError("params must be positive")
    fiber = a * _DEFAULT_PARALLEL[0]
    diagonal = c * _DEFAULT_PARALLEL[2]
    top = diagonal - fiber
    p1 = _ANCHOR
    p6 = (p1[0] + top, p1[1])
    p3 = (p6[0] + fiber, p6[1] - fiber)
    p4 = (p1[0] + diagonal, p1[1] - diagonal)
    # interior points sit where the weight rays from the vertices meet
    s5, t5, p5 = _ray_meet(p1, (2, -1), p3, (-1, 0))
    s2, t2, p2 = _ray_meet(p6, (0, -1), p4, (-1, 2))
    hull = [p1, p4, p3, p6]  # counterclockwise
    for label, pt, reach in (("p5", p5, min(s5, t5)), ("p2", p2, min(s2, t2))):
        if top <= 0 or reach <= 0 or not _strictly_inside(pt, hull):
            raise PolytopeError(
                f"interiority violated: {label} is not strictly inside the hull of p1, p6, p3, p4"
            )
    sep = _sub(p2, p5)
    if sep[0] + sep[1] != 0 or sep[0] <= 0:
        raise PolytopeError("interiority violated: p2 and p5 have moved past each other")
    if sep[0] != b * _DEFAULT_PARALLEL[1]:
        raise PolytopeError(
            "inconsistent params: length(p1,p4) must equal length(p2,p5) + 3 length(p3,p6) "
            f"(edge (p2,p5) would have scale {sep[0]}, not {b})"
        )
    points = {"p1": p1, "p2": p2, "p3": p3, "p4": p4, "p5": p5, "p6": p6}
    edges = tuple((x, y, "solid") for x, y in SOLID_EDGES) + tuple((x, y, "dashed") for x, y in DASHED_EDGES)
    weights = {d.label: d.weights for d in fixed_point_weights()}
    return PolytopeImage(points, edges, (a, b, c), weights)


def edge_weight_violations(img: PolytopeImage, kinds=("vertex",)) -> list:
    """Edges at points of the given kinds whose direction is not a positive
    multiple of one of that point's weights."""
    kind_of = {d.label: d.kind for d in fixed_point_weights()}
    bad = []
    for x, y, _ in img.edges:
        for here, there in ((x, y), (y, x)):
            if kind_of[here] not in kinds:
                continue
            d = _sub(img.points[there], img.points[here])
            ok = any(_cross(d, w) == 0 and _dot(d, w) > 0 for w in img.weights[here])
            if not ok:
                bad.append((here, there))
    return bad


SVG_UNIT = 40


def emit(img: PolytopeImage, fmt: str = "json") -> bytes:
    if fmt == "json":
        return (json.dumps(img.to_json(), indent=2, sort_keys=False) + "\n").encode("utf-8")
    if fmt == "svg":
        return _svg(img).encode("utf-8")
    raise ValueError(f"unknown format {fmt!r}")


def _svg(img: PolytopeImage) -> str:
    xs = [p[0] for p in img.points.values()]
    ys = [p[1] for p in img.points.values()]
    x0, x1 = min(xs) - 1, max(xs) + 1
    y0, y1 = min(ys) - 1, max(ys) + 1

    def px(pt):
        # SVG y grows downwards
        return float((pt[0] - x0) * SVG_UNIT), float((y1 - pt[1]) * SVG_UNIT)

    width = float((x1 - x0) * SVG_UNIT)
    height = float((y1 - y0) * SVG_UNIT)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {width:g} {height:g}" '
        f'width="{width:g}" height="{height:g}">',
    ]
    for x, y, style in img.edges:
        (ax, ay), (bx, by) = px(img.points[x]), px(img.points[y])
        dash = ' stroke-dasharray="6,4"' if style == "dashed" else ""
        out.append(
            f'  <line x1="{ax:g}" y1="{ay:g}" x2="{bx:g}" y2="{by:g}" stroke="black" stroke-width="3"{dash}/>'
        )
    for label in LABELS:
        cx, cy = px(img.points[label])
        out.append(f'  <circle cx="{cx:g}" cy="{cy:g}" r="5" fill="black"/>')
        out.append(
            f'  <text x="{cx + 8:g}" y="{cy - 8:g}" font-family="sans-serif" font-size="14">{escape(label)}</text>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
