"""Points, rectangles and staircase tiles in the unit square.

Every coordinate produced by the tiling and the packing algorithms is copied
from an input point or is 0 or 1, so equality tests on coordinates are exact.
"""

from __future__ import annotations

import math

from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Sequence


class Point(NamedTuple):
    x: float
    y: float


class Rect(NamedTuple):
    x_lo: float
    y_lo: float
    x_hi: float
    y_hi: float

    @property
    def area(self) -> float:
        return rect_area(self)

    @property
    def anchor(self) -> Point:
        return Point(self.x_lo, self.y_lo)


UNIT_SQUARE = Rect(0.0, 0.0, 1.0, 1.0)
ORIGIN = Point(0.0, 0.0)


def in_unit_square(p: Point) -> bool:
    return 0.0 <= p.x <= 1.0 and 0.0 <= p.y <= 1.0


def rect_area(r: Rect) -> float:
    return (r.x_hi - r.x_lo) * (r.y_hi - r.y_lo)


def interiors_overlap(r1: Rect, r2: Rect) -> bool:
    """True iff the open interiors of two rectangles share positive area."""
    return (
        max(r1.x_lo, r2.x_lo) < min(r1.x_hi, r2.x_hi)
        and max(r1.y_lo, r2.y_lo) < min(r1.y_hi, r2.y_hi)
    )


def point_in_open_interior(p: Point, r: Rect) -> bool:
    return r.x_lo < p.x < r.x_hi and r.y_lo < p.y < r.y_hi


# --- processing-order keys --------------------------------------------------
# Each key is symmetric and strictly increasing in x and y. Keys may return
# tuples; they are only ever compared.

def _key_sum(p: Point) -> float:
    return p.x + p.y


def _key_sumsq(p: Point) -> float:
    return p.x * p.x + p.y * p.y


def _key_maxsum(p: Point) -> tuple[float, float]:
    return (max(p.x, p.y), p.x + p.y)


ORDER_KEYS: dict[str, Callable[[Point], object]] = {
    "sum": _key_sum,
    "sumsq": _key_sumsq,
    "maxsum": _key_maxsum,
}


class InstanceError(ValueError):
    """Raised for point sets that are not valid instances."""


@dataclass(frozen=True)
class Instance:
    """A finite point set in the unit square containing the origin.

    ``order_key`` names the symmetric, strictly increasing function used to
    order the points; ties are broken by larger y, then larger x.
    """

    points: tuple[Point, ...]
    order_key: str = "sum"
    _index: dict = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        pts = tuple(Point(float(x), float(y)) for x, y in self.points)
        object.__setattr__(self, "points", pts)
        if self.order_key not in ORDER_KEYS:
            raise InstanceError(f"unknown order key {self.order_key!r}")
        for i, p in enumerate(pts):
            if not in_unit_square(p):
                raise InstanceError(f"point {i} {tuple(p)} lies outside the unit square")
        index: dict[Point, int] = {}
        for i, p in enumerate(pts):
            if p in index:
                raise InstanceError(f"duplicate point {tuple(p)} at indices {index[p]} and {i}")
            index[p] = i
        if ORIGIN not in index:
            raise InstanceError("instance does not contain the origin")
        object.__setattr__(self, "_index", index)

    def __len__(self) -> int:
        return len(self.points)

    @property
    def n(self) -> int:
        return len(self.points)

    def index_of(self, p: Point) -> int:
        return self._index[p]

    def contains(self, p: Point) -> bool:
        return p in self._index

    def key(self, p: Point) -> object:
        return ORDER_KEYS[self.order_key](p)


@dataclass(frozen=True)
class StaircaseTile:
    """Rectilinear staircase anchored at ``anchor``.

    The region is the union over k of [anchor.x, X_k] x [anchor.y, Y_k] where
    ``steps`` lists the convex corners (X_k, Y_k) with X increasing and Y
    decreasing.
    """

    anchor: Point
    steps: tuple[Point, ...]

    def __post_init__(self) -> None:
        steps = tuple(Point(float(x), float(y)) for x, y in self.steps)
        object.__setattr__(self, "steps", steps)
        object.__setattr__(self, "anchor", Point(*self.anchor))
        if not steps:
            raise ValueError("a staircase tile needs at least one step")
        ax, ay = self.anchor
        for (x0, y0), (x1, y1) in zip(steps, steps[1:]):
            if not (x0 < x1 and y0 > y1):
                raise ValueError(f"steps not strictly monotone: {steps}")
        if steps[0].x < ax or steps[-1].y < ay:
            raise ValueError("steps lie below or left of the anchor")
        if steps[-1].x > 1.0 or steps[0].y > 1.0:
            raise ValueError("steps leave the unit square")

    @property
    def m(self) -> int:
        return len(self.steps)

    @property
    def width(self) -> float:
        """Length of the bottom edge."""
        return self.steps[-1].x - self.anchor.x

    @property
    def height(self) -> float:
        """Length of the left edge."""
        return self.steps[0].y - self.anchor.y

    @property
    def concave_corners(self) -> tuple[Point, ...]:
        return tuple(Point(self.steps[k].x, self.steps[k + 1].y) for k in range(self.m - 1))

    def pieces(self) -> list[Rect]:
        """Disjoint vertical strips whose union is the tile."""
        ax, ay = self.anchor
        out = []
        left = ax
        for x, y in self.steps:
            out.append(Rect(left, ay, x, y))
            left = x
        return out

    def step_rects(self) -> list[Rect]:
        """The maximal anchored rectangles, one per convex corner."""
        ax, ay = self.anchor
        return [Rect(ax, ay, x, y) for x, y in self.steps]

    def outline(self) -> list[Point]:
        """Boundary vertices, counter-clockwise from the anchor."""
        ax, ay = self.anchor
        pts = [Point(ax, ay), Point(self.steps[-1].x, ay)]
        for k in range(self.m - 1, 0, -1):
            pts.append(self.steps[k])
            pts.append(Point(self.steps[k - 1].x, self.steps[k].y))
        pts.append(self.steps[0])
        pts.append(Point(ax, self.steps[0].y))
        return pts

    def contains(self, p: Point) -> bool:
        """Closed-region membership."""
        ax, ay = self.anchor
        if p.x < ax or p.y < ay:
            return False
        for x, y in self.steps:
            if p.x <= x:
                return p.y <= y
        return False


def tile_area(t: StaircaseTile) -> float:
    ax, ay = t.anchor
    total = 0.0
    left = ax
    for x, y in t.steps:
        total += (x - left) * (y - ay)
        left = x
    return total


def largest_anchored_rect(t: StaircaseTile) -> Rect:
    """Largest rectangle in the tile; ties go to the leftmost step corner."""
    best = None
    best_area = -1.0
    for r in t.step_rects():
        a = rect_area(r)
        if a > best_area:
            best, best_area = r, a
    return best


@dataclass(frozen=True)
class Packing:
    """One anchored rectangle per point index."""

    entries: tuple[tuple[int, Rect], ...]

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "entries", tuple((int(i), Rect(*r)) for i, r in self.entries)
        )

    @classmethod
    def from_rects(cls, rects: Sequence[Rect]) -> "Packing":
        return cls(tuple(enumerate(rects)))

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    @property
    def rects(self) -> list[Rect]:
        return [r for _, r in self.entries]

    def rect_for(self, i: int) -> Rect:
        for j, r in self.entries:
            if j == i:
                return r
        raise KeyError(i)

    @property
    def area(self) -> float:
        # fsum is exact up to one final rounding, so equal rectangle sets
        # give equal areas whatever their order
        return math.fsum(rect_area(r) for _, r in self.entries)
