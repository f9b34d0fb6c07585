"""Exact convex geometry for the index cylinders of the triangle map.

The cylinder C(k1, ..., kr) is the set of triangle points whose first r
index values along the orbit are k1, ..., kr.  It is cut out by the linear
forms

    L0 = x,  L1 = y,  L_{i+1} = k_i * L_i - L_{i-1},

through the inequalities 1 >= L_i > 0 (0 <= i <= r+1) and
L_i + L_{i+1} > 1 (0 <= i <= r); the redundant i = 0 entries are kept as
part of the contract.  A region carries both the inequality list (with
strict/non-strict senses, used for exact lattice membership) and the closure
polygon (used for exact areas).  Vertices come from successive half-plane
clips of the unit square in rational arithmetic; polygons are canonicalized
to CCW order starting at the lexicographically smallest vertex so that two
regions describe the same set iff their vertex tuples are equal.  Degenerate
closures (point, segment, empty) normalize to an empty polygon of area 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence

__all__ = [
    "Point",
    "LinearForm",
    "HalfPlane",
    "ConvexRegion",
    "from_constraints",
    "cylinder",
    "cylinder_forms",
    "cylinder_constraints",
    "cylinder_area",
    "farey_triangle",
    "refine",
    "unimodular_image",
    "stabilized_quadrangle",
    "halfplanes_from_polygon",
    "perimeter",
]

Point = tuple[Fraction, Fraction]

_SENSES = ("<=", "<", ">=", ">")


@dataclass(frozen=True)
class LinearForm:
    """The affine form cx*x + cy*y + c0 with integer coefficients."""

    cx: int
    cy: int
    c0: int = 0

    def __post_init__(self) -> None:
        if self.cx == 0 and self.cy == 0 and self.c0 == 0:
            raise ValueError("all coefficients are zero")

    def evaluate(self, x: Fraction, y: Fraction) -> Fraction:
        return self.cx * x + self.cy * y + self.c0

    def __str__(self) -> str:
        return f"{self.cx}*x + {self.cy}*y + {self.c0}"


@dataclass(frozen=True)
class HalfPlane:
    """Constraint ``form <sense> bound`` with sense in {<=, <, >=, >}."""

    form: LinearForm
    sense: str
    bound: Fraction

    def __post_init__(self) -> None:
        if self.sense not in _SENSES:
            raise ValueError(f"sense must be one of {_SENSES}, got {self.sense!r}")
        object.__setattr__(self, "bound", Fraction(self.bound))

    def holds(self, x: Fraction, y: Fraction) -> bool:
        v = self.form.evaluate(x, y)
        if self.sense == "<=":
            return v <= self.bound
        if self.sense == "<":
            return v < self.bound
        if self.sense == ">=":
            return v >= self.bound
        return v > self.bound

    def closure_holds(self, x: Fraction, y: Fraction) -> bool:
        v = self.form.evaluate(x, y)
        if self.sense in ("<=", "<"):
            return v <= self.bound
        return v >= self.bound

    def __str__(self) -> str:
        return f"{self.form} {self.sense} {self.bound}"


# ---------------------------------------------------------------------------
# polygon machinery
# ---------------------------------------------------------------------------


def _signed_area2(points: Sequence[Point]) -> Fraction:
    """Twice the signed shoelace area."""
    total = Fraction(0)
    n = len(points)
    for i in range(n):
        x1, y1 = points[i]
        x2, y2 = points[(i + 1) % n]
        total += x1 * y2 - x2 * y1
    return total


def _cross(o: Point, a: Point, b: Point) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _canonicalize(points: Sequence[Point]) -> tuple[Point, ...]:
    """Dedupe, drop collinear vertices, orient CCW, rotate to the lex-min vertex.

    Returns () for degenerate input (fewer than 3 distinct vertices or zero
    area).
    """
    pts = [(Fraction(x), Fraction(y)) for x, y in points]
    # remove consecutive duplicates (cyclically)
    dedup: list[Point] = []
    for p in pts:
        if not dedup or p != dedup[-1]:
            dedup.append(p)
    while len(dedup) > 1 and dedup[0] == dedup[-1]:
        dedup.pop()
    if len(dedup) < 3:
        return ()
    # remove collinear middles until stable
    changed = True
    while changed and len(dedup) >= 3:
        changed = False
        out: list[Point] = []
        n = len(dedup)
        for i in range(n):
            if _cross(dedup[i - 1], dedup[i], dedup[(i + 1) % n]) != 0:
                out.append(dedup[i])
            else:
                changed = True
        dedup = out
    if len(dedup) < 3:
        return ()
    area2 = _signed_area2(dedup)
    if area2 == 0:
        return ()
    if area2 < 0:
        dedup.reverse()
    start = min(range(len(dedup)), key=lambda i: dedup[i])
    return tuple(dedup[start:] + dedup[:start])


def convex_hull(points: Iterable[Point]) -> tuple[Point, ...]:
    """Exact convex hull (Andrew monotone chain), canonicalized."""
    pts = sorted({(Fraction(x), Fraction(y)) for x, y in points})
    if len(pts) < 3:
        return ()
    lower: list[Point] = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return _canonicalize(lower[:-1] + upper[:-1])


def _clip(points: Sequence[Point], hp: HalfPlane) -> list[Point]:
    """Clip a convex polygon by the closure of the half-plane, exactly."""
    if not points:
        return []
    f, b = hp.form, hp.bound
    sign = -1 if hp.sense in (">=", ">") else 1
    vals = [sign * (f.evaluate(x, y) - b) for x, y in points]  # keep vals <= 0
    out: list[Point] = []
    n = len(points)
    for i in range(n):
        p, sp = points[i], vals[i]
        q, sq = points[(i + 1) % n], vals[(i + 1) % n]
        if sp <= 0:
            out.append(p)
        if (sp < 0 < sq) or (sq < 0 < sp):
            t = sp / (sp - sq)
            out.append((p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])))
    return out


_UNIT_SQUARE: tuple[Point, ...] = (
    (Fraction(0), Fraction(0)),
    (Fraction(1), Fraction(0)),
    (Fraction(1), Fraction(1)),
    (Fraction(0), Fraction(1)),
)


@dataclass(frozen=True)
class ConvexRegion:
    """A convex region: inequality list plus canonical closure polygon."""

    constraints: tuple[HalfPlane, ...]
    vertices: tuple[Point, ...]

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    def area(self) -> Fraction:
        if not self.vertices:
            return Fraction(0)
        return abs(_signed_area2(self.vertices)) / 2

    def contains(self, x, y) -> bool:
        """Exact membership honoring each constraint's strictness."""
        x, y = Fraction(x), Fraction(y)
        return all(hp.holds(x, y) for hp in self.constraints)

    def closure_contains(self, x, y) -> bool:
        x, y = Fraction(x), Fraction(y)
        return all(hp.closure_holds(x, y) for hp in self.constraints)

    def bounds(self) -> Optional[tuple[Fraction, Fraction, Fraction, Fraction]]:
        """(xmin, xmax, ymin, ymax) of the closure polygon, or None if empty."""
        if not self.vertices:
            return None
        xs = [v[0] for v in self.vertices]
        ys = [v[1] for v in self.vertices]
        return min(xs), max(xs), min(ys), max(ys)

    def same_polygon(self, other: "ConvexRegion") -> bool:
        """True iff the canonical closure polygons coincide."""
        return self.vertices == other.vertices

    def to_json_dict(self) -> dict:
        return {
            "constraints": [
                {
                    "cx": hp.form.cx,
                    "cy": hp.form.cy,
                    "c0": hp.form.c0,
                    "sense": hp.sense,
                    "bound": str(hp.bound),
                }
                for hp in self.constraints
            ],
            "vertices": [{"x": str(x), "y": str(y)} for x, y in self.vertices],
            "area": str(self.area()),
        }


def from_constraints(
    constraints: Iterable[HalfPlane],
    seed: Sequence[Point] = _UNIT_SQUARE,
) -> ConvexRegion:
    """Clip the seed polygon by the closures of all constraints."""
    cons = tuple(constraints)
    pts: Sequence[Point] = list(seed)
    for hp in cons:
        pts = _clip(pts, hp)
        if not pts:
            break
    return ConvexRegion(cons, _canonicalize(pts))


# ---------------------------------------------------------------------------
# cylinders
# ---------------------------------------------------------------------------


def cylinder_forms(ks: Sequence[int]) -> list[LinearForm]:
    """Forms L0..L_{r+1} from the label recurrence."""
    forms = [LinearForm(1, 0, 0), LinearForm(0, 1, 0)]
    for k in ks:
        a, b = forms[-1], forms[-2]
        forms.append(LinearForm(k * a.cx - b.cx, k * a.cy - b.cy, k * a.c0 - b.c0))
    return forms


def cylinder_constraints(ks: Sequence[int]) -> tuple[HalfPlane, ...]:
    forms = cylinder_forms(ks)
    one = Fraction(1)
    zero = Fraction(0)
    cons: list[HalfPlane] = []
    for f in forms:
        cons.append(HalfPlane(f, "<=", one))
        cons.append(HalfPlane(f, ">", zero))
    for f, g in zip(forms, forms[1:]):
        cons.append(
            HalfPlane(LinearForm(f.cx + g.cx, f.cy + g.cy, f.c0 + g.c0), ">", one)
        )
    return tuple(cons)


def cylinder(ks: Sequence[int]) -> ConvexRegion:
    """The convex region of points whose first r index values are ``ks``.

    ks = () gives the whole triangle (closure vertices (0,1), (1,0), (1,1),
    area 1/2); an unrealizable label pattern gives an empty region.
    """
    ks = tuple(int(k) for k in ks)
    if any(k < 1 for k in ks):
        raise ValueError(f"labels must be positive integers, got {ks}")
    return from_constraints(cylinder_constraints(ks))


@lru_cache(maxsize=None)
def cylinder_area(ks: tuple[int, ...]) -> Fraction:
    """Exact area of cylinder(ks); memoized (areas dominate density sums)."""
    return cylinder(ks).area()


def farey_triangle() -> ConvexRegion:
    """The whole phase-space triangle as a region."""
    return cylinder(())


def refine(region: ConvexRegion, extra: "ConvexRegion | Iterable[HalfPlane]") -> ConvexRegion:
    """Intersect a region with further half-plane constraints."""
    extra_cons = tuple(extra.constraints if isinstance(extra, ConvexRegion) else extra)
    pts: Sequence[Point] = list(region.vertices)
    for hp in extra_cons:
        pts = _clip(pts, hp)
        if not pts:
            break
    return ConvexRegion(region.constraints + extra_cons, _canonicalize(pts))


# ---------------------------------------------------------------------------
# the piecewise unimodular action
# ---------------------------------------------------------------------------


def unimodular_image(region: ConvexRegion, k: int) -> ConvexRegion:
    """Image of a region under (x, y) -> (y, k*y - x).

    The map is the restriction of the triangle map to the index-k cell, so
    the region must lie in the closure of cylinder((k,)); the determinant is
    1 and areas are preserved exactly.  Constraints transform by substituting
    the inverse (u, v) -> (k*u - v, u).
    """
    if k < 1:
        raise ValueError("cell index k must be >= 1")
    cell = cylinder((k,))
    for x, y in region.vertices:
        if not cell.closure_contains(x, y):
            raise ValueError(f"vertex ({x}, {y}) is outside the closed index-{k} cell")
    new_cons = tuple(
        HalfPlane(
            LinearForm(k * hp.form.cx + hp.form.cy, -hp.form.cx, hp.form.c0),
            hp.sense,
            hp.bound,
        )
        for hp in region.constraints
    )
    new_pts = [(y, k * y - x) for x, y in region.vertices]
    return ConvexRegion(new_cons, _canonicalize(new_pts))


# ---------------------------------------------------------------------------
# stabilized backward images
# ---------------------------------------------------------------------------


def halfplanes_from_polygon(points: Sequence[Point]) -> tuple[HalfPlane, ...]:
    """Closed edge constraints (integer coefficients) of a convex polygon."""
    pts = _canonicalize(points)
    if not pts:
        raise ValueError("degenerate polygon has no half-plane description")
    cons: list[HalfPlane] = []
    n = len(pts)
    for i in range(n):
        (x1, y1), (x2, y2) = pts[i], pts[(i + 1) % n]
        # inward normal for CCW order: (y1 - y2, x2 - x1)
        a = y1 - y2
        b = x2 - x1
        c = -(a * x1 + b * y1)
        scale = math.lcm(a.denominator, b.denominator, c.denominator)
        ai, bi, ci = int(a * scale), int(b * scale), int(c * scale)
        g = math.gcd(math.gcd(abs(ai), abs(bi)), abs(ci))
        if g > 1:
            ai, bi, ci = ai // g, bi // g, ci // g
        cons.append(HalfPlane(LinearForm(ai, bi, ci), ">=", Fraction(0)))
    return tuple(cons)


def stabilized_quadrangle(m: int, i: int, r: int) -> ConvexRegion:
    """The i-th backward image of the index-m cell, in the stabilized regime.

    For m >= 4r + 2 and 1 <= i <= r the backward iterates act affinely and
    the image is the quadrangle with vertices

        (1 - 2i/m,     1 - 2(i-1)/m),     (1 - 2i/(m+1),     1 - 2(i-1)/(m+1)),
        (1 - 2(i+1)/(m+2), 1 - 2i/(m+2)), (1 - 2(i+1)/(m+1), 1 - 2i/(m+1)),

    which coincides with the clipped cylinder (2, ..., 2, 1, m) carrying
    i - 1 leading 2s.
    """
    if r < 1 or not (1 <= i <= r):
        raise ValueError(f"need 1 <= i <= r with r >= 1, got i={i}, r={r}")
    if m < 4 * r + 2:
        raise ValueError(f"stabilization needs m >= 4r + 2 = {4 * r + 2}, got m={m}")
    pts = [
        (1 - Fraction(2 * i, m), 1 - Fraction(2 * (i - 1), m)),
        (1 - Fraction(2 * i, m + 1), 1 - Fraction(2 * (i - 1), m + 1)),
        (1 - Fraction(2 * (i + 1), m + 2), 1 - Fraction(2 * i, m + 2)),
        (1 - Fraction(2 * (i + 1), m + 1), 1 - Fraction(2 * i, m + 1)),
    ]
    hull = convex_hull(pts)
    return ConvexRegion(halfplanes_from_polygon(hull), hull)


def perimeter(region: ConvexRegion) -> float:
    """Euclidean boundary length of the closure polygon (float; bound checks)."""
    if not region.vertices:
        return 0.0
    total = 0.0
    n = len(region.vertices)
    for j in range(n):
        x1, y1 = region.vertices[j]
        x2, y2 = region.vertices[(j + 1) % n]
        total += math.hypot(float(x2 - x1), float(y2 - y1))
    return total
