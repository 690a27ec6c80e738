"""TilePacking, GreedyPacking and a best-ordering brute-force oracle."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from anchorpack.geometry import (
    Instance,
    Packing,
    Point,
    Rect,
    StaircaseTile,
    in_unit_square,
    interiors_overlap,
    largest_anchored_rect,
    point_in_open_interior,
    rect_area,
)

MAX_ORACLE_POINTS = 8


class OracleTooLarge(ValueError):
    pass


def processing_order(inst: Instance) -> list[int]:
    """Point indices from largest to smallest key (larger y, then x, on ties)."""
    pts = inst.points
    return sorted(
        range(len(pts)),
        key=lambda i: (inst.key(pts[i]), pts[i].y, pts[i].x),
        reverse=True,
    )


# --- tiling -----------------------------------------------------------------

@dataclass(frozen=True)
class Tiling:
    tiles: tuple[StaircaseTile, ...]
    order: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.tiles)

    def __iter__(self):
        return iter(self.tiles)

    def __getitem__(self, i: int) -> StaircaseTile:
        return self.tiles[i]


def _staircase_from_clips(p: Point, clips: list[Point]) -> StaircaseTile:
    """Tile of p = D(p) minus the union of quadrants [u,1]x[v,1] for each clip."""
    ax, ay = p
    if ax >= 1.0 or ay >= 1.0:
        return StaircaseTile(p, (p,))
    # Pareto-minimal clips, x increasing / y strictly decreasing.
    frontier: list[Point] = []
    for c in sorted(set(clips)):
        if not frontier or c.y < frontier[-1].y:
            frontier.append(c)
    rights = [c.x for c in frontier] + [1.0]
    tops = [1.0] + [c.y for c in frontier]
    steps = []
    left = ax
    for right, top in zip(rights, tops):
        if right > left and top > ay:
            steps.append(Point(right, top))
        left = right
    return StaircaseTile(p, tuple(steps))


def tile_packing_tiling(inst: Instance) -> Tiling:
    """Partition U into one staircase tile per point.

    Points are processed in decreasing key order; the tile of a point is its
    dominance quadrant minus the quadrants of all earlier points, which
    matches the two-ray construction.
    """
    order = processing_order(inst)
    pts = inst.points
    tiles: list[StaircaseTile | None] = [None] * len(pts)
    earlier: list[Point] = []  # earlier points not dominating another earlier point
    for i in order:
        p = pts[i]
        clips = []
        for q in earlier:
            u, v = max(q.x, p.x), max(q.y, p.y)
            if u < 1.0 and v < 1.0:
                clips.append(Point(u, v))
        tiles[i] = _staircase_from_clips(p, clips)
        earlier = [q for q in earlier if not (p.x <= q.x and p.y <= q.y)]
        earlier.append(p)
    return Tiling(tuple(tiles), tuple(order))


def tile_packing(inst: Instance, tiling: Tiling | None = None) -> Packing:
    if tiling is None:
        tiling = tile_packing_tiling(inst)
    return Packing.from_rects([largest_anchored_rect(t) for t in tiling.tiles])


# --- greedy -----------------------------------------------------------------

def max_empty_anchored_rect(
    p: Point,
    obstacle_pts: Sequence[Point],
    obstacle_rects: Sequence[Rect],
) -> Rect:
    """Maximum-area rectangle [p.x, x_r] x [p.y, y_t] inside U avoiding obstacles.

    Candidate right edges are 1 and the left sides of obstacles to the right
    of p; for each, the top edge is pushed up until an obstacle whose x-extent
    meets the open strip (p.x, x_r) stops it. Ties prefer larger x_r.
    Zero-area obstacle rectangles are ignored since their interior is empty.
    """
    px, py = p
    # (activation x, blocking y): the blocker applies to every x_r > activation.
    blockers = []
    for ox, oy in obstacle_pts:
        if ox > px and oy > py:
            blockers.append((ox, oy))
    for r in obstacle_rects:
        x_lo, y_lo, x_hi, y_hi = r
        if x_hi > px and y_hi > py and x_hi > x_lo and y_hi > y_lo:
            blockers.append((max(x_lo, px), max(y_lo, py)))
    blockers.sort()

    best = Rect(px, py, px, py)
    best_area = 0.0
    top = 1.0
    k = 0
    nb = len(blockers)
    while True:
        cand = blockers[k][0] if k < nb else 1.0
        if cand > 1.0:
            cand = 1.0
        if cand > px:
            area = (cand - px) * (top - py)
            if area > 0.0 and area >= best_area:
                best, best_area = Rect(px, py, cand, top), area
        if k >= nb:
            break
        # absorb every blocker activating at this x before the next candidate
        while k < nb and blockers[k][0] == cand:
            if blockers[k][1] < top:
                top = blockers[k][1]
            k += 1
        if cand >= 1.0:
            break
    return best


def greedy_packing(inst: Instance, order: Sequence[int] | None = None) -> Packing:
    """Give each point, in order, a maximum empty anchored rectangle."""
    if order is None:
        order = processing_order(inst)
    pts = inst.points
    rects: list[Rect | None] = [None] * len(pts)
    placed: list[Rect] = []
    for i in order:
        r = max_empty_anchored_rect(pts[i], pts, placed)
        rects[i] = r
        placed.append(r)
    return Packing.from_rects(rects)


def brute_force_optimal(inst: Instance) -> tuple[Packing, float]:
    """Best greedy packing over all n! processing orders (n <= 8).

    Orders sharing a prefix share the greedy state, so the search is a DFS
    over prefixes. The first order (lexicographically) reaching the maximum
    wins.
    """
    n = inst.n
    if n > MAX_ORACLE_POINTS:
        raise OracleTooLarge(f"brute-force oracle limited to {MAX_ORACLE_POINTS} points, got {n}")
    pts = inst.points
    best_area = -math.inf
    best_rects: list[Rect] | None = None
    rects: list[Rect | None] = [None] * n
    placed: list[Rect] = []
    used = [False] * n

    def dfs(depth: int) -> None:
        nonlocal best_area, best_rects
        if depth == n:
            area = math.fsum(rect_area(r) for r in rects)
            if area > best_area:
                best_area = area
                best_rects = list(rects)
            return
        for i in range(n):
            if used[i]:
                continue
            r = max_empty_anchored_rect(pts[i], pts, placed)
            used[i] = True
            rects[i] = r
            placed.append(r)
            dfs(depth + 1)
            placed.pop()
            rects[i] = None
            used[i] = False

    dfs(0)
    pk = Packing.from_rects(best_rects)
    return pk, pk.area


# --- validation -------------------------------------------------------------

class Violation(NamedTuple):
    rule: str
    indices: tuple[int, ...]

    def __str__(self) -> str:
        return f"{self.rule} {' '.join(map(str, self.indices))}"


def validate_packing(inst: Instance, pk: Packing) -> list[Violation]:
    """Check the anchored-packing conditions; an empty list means valid."""
    out: list[Violation] = []
    seen = sorted(i for i, _ in pk.entries)
    if seen != list(range(inst.n)):
        out.append(Violation("coverage", tuple(seen)))
    pts = inst.points
    entries = [(i, r) for i, r in pk.entries if 0 <= i < inst.n]
    for i, r in entries:
        if r.x_lo > r.x_hi or r.y_lo > r.y_hi:
            out.append(Violation("malformed", (i,)))
        if not (in_unit_square(Point(r.x_lo, r.y_lo)) and in_unit_square(Point(r.x_hi, r.y_hi))):
            out.append(Violation("outside", (i,)))
        if (r.x_lo, r.y_lo) != pts[i]:
            out.append(Violation("anchor", (i,)))
    by_x = sorted(entries, key=lambda e: e[1].x_lo)
    for a in range(len(by_x)):
        i, ri = by_x[a]
        for b in range(a + 1, len(by_x)):
            j, rj = by_x[b]
            if rj.x_lo >= ri.x_hi:
                break
            if interiors_overlap(ri, rj):
                out.append(Violation("overlap", tuple(sorted((i, j)))))
    for i, r in entries:
        if r.x_hi <= r.x_lo or r.y_hi <= r.y_lo:
            continue
        for k, q in enumerate(pts):
            if point_in_open_interior(q, r):
                out.append(Violation("point-inside", (i, k)))
    return out
