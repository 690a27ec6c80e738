"""Instance generators, the near-optimal packing for S_{n,eps}, and text formats."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from anchorpack.geometry import ORIGIN, Instance, InstanceError, Packing, Point, Rect

INSTANCE_HEADER = "llarp-instance v1"
PACKING_HEADER = "llarp-packing v1"


class FormatError(ValueError):
    pass


class ShapeError(ValueError):
    """The instance was not produced by ``gen_adversarial``."""


# --- adversarial family -----------------------------------------------------

@dataclass(frozen=True)
class AdversarialLevel:
    """Level k of S_{n,eps}: the subsquare [corner, 1]^2 of side ``side``."""

    corner: Point
    side: float
    p: Point
    q: Point
    v: Point
    w: Point


def adversarial_levels(n: int, eps: float) -> list[AdversarialLevel]:
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    if not (0.0 < eps < 0.25):
        raise ValueError(f"eps must lie in (0, 0.25), got {eps!r}")
    levels = []
    corner = ORIGIN
    side = 1.0
    shrink = 1.0 - 2.0 * eps
    low = eps - eps**3
    for _ in range(n):
        cx, cy = corner
        p = Point(cx, cy + side * low)
        q = Point(cx + side * eps, cy)
        v = Point(cx + side * 2.0 * eps, cy + side * 2.0 * eps)
        w = Point(cx + side * 2.0 * eps, cy + side * eps)
        levels.append(AdversarialLevel(corner, side, p, q, v, w))
        corner = v
        side *= shrink
    return levels


def gen_adversarial(n: int, eps: float, order_key: str = "sum") -> Instance:
    """S_{n,eps}: the origin plus points p_k, q_k, v_k, w_k for k = 1..n.

    Level k+1 repeats the level-1 pattern inside the square between v_k and
    the top-right corner, scaled by (1 - 2 eps)^k.
    """
    levels = adversarial_levels(n, eps)
    pts = [ORIGIN]
    for lv in levels:
        pts.extend([lv.p, lv.q, lv.v, lv.w])
    try:
        inst = Instance(tuple(pts), order_key=order_key)
    except InstanceError as e:
        raise ValueError(f"S_(n={n}, eps={eps}) collapses in double precision: {e}") from None

    key = inst.key
    prev_v = ORIGIN
    for k, lv in enumerate(levels, start=1):
        if not (key(lv.v) > key(lv.w) > key(lv.q) > key(lv.p)):
            raise ValueError(f"level {k} of S_(n={n}, eps={eps}) violates v > w > q > p")
        if k > 1 and not key(lv.p) > key(prev_v):
            raise ValueError(f"level {k} of S_(n={n}, eps={eps}) is not ordered after v_{k - 1}")
        prev_v = lv.v
    return inst


def _infer_adversarial(inst: Instance) -> tuple[int, float, list[AdversarialLevel]]:
    if (inst.n - 1) % 4 or inst.n < 5:
        raise ShapeError(f"expected 4n+1 points, got {inst.n}")
    n = (inst.n - 1) // 4
    on_axis = [p.x for p in inst.points if p.y == 0.0 and p.x > 0.0]
    if len(on_axis) != 1:
        raise ShapeError("cannot locate q_1 on the x-axis")
    eps = on_axis[0]
    try:
        levels = adversarial_levels(n, eps)
    except ValueError as e:
        raise ShapeError(str(e)) from None
    expected = {ORIGIN}
    for lv in levels:
        expected.update((lv.p, lv.q, lv.v, lv.w))
    if expected != set(inst.points):
        raise ShapeError(f"points do not match S_(n={n}, eps={eps})")
    return n, eps, levels


def constructed_solution(inst: Instance) -> Packing:
    """The packing covering about 4 eps per level of S_{n,eps}.

    Per level: q_k reaches the right edge below p_k, p_k reaches the top edge
    left of v_k, w_k reaches the right edge below v_k. The last v_n takes its
    whole subsquare. The origin and v_1..v_{n-1} get degenerate rectangles.
    """
    n, eps, levels = _infer_adversarial(inst)
    rects: dict[Point, Rect] = {}
    for lv in levels:
        rects[lv.q] = Rect(lv.q.x, lv.q.y, 1.0, lv.p.y)
        rects[lv.p] = Rect(lv.p.x, lv.p.y, lv.v.x, 1.0)
        rects[lv.w] = Rect(lv.w.x, lv.w.y, 1.0, lv.v.y)
        rects[lv.v] = Rect(lv.v.x, lv.v.y, lv.v.x, lv.v.y)
    last = levels[-1].v
    rects[last] = Rect(last.x, last.y, 1.0, 1.0)
    rects[ORIGIN] = Rect(0.0, 0.0, 0.0, 0.0)
    return Packing.from_rects([rects[p] for p in inst.points])


# --- other families ---------------------------------------------------------

def gen_diagonal(n: int) -> Instance:
    """Points (i/n, i/n), i = 0..n-1."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    return Instance(tuple(Point(i / n, i / n) for i in range(n)))


def gen_random(
    n: int,
    seed: int,
    dist: Literal["uniform", "clustered"] = "uniform",
    order_key: str = "sum",
) -> Instance:
    """The origin plus n - 1 seeded random points; duplicates are redrawn."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if dist not in ("uniform", "clustered"):
        raise ValueError(f"unknown distribution {dist!r}")
    rng = np.random.default_rng(seed)
    centers = rng.random((max(1, n // 10), 2)) if dist == "clustered" else None
    seen = {ORIGIN}
    pts = [ORIGIN]
    while len(pts) < n:
        if dist == "uniform":
            x, y = rng.random(2)
        else:
            c = centers[rng.integers(len(centers))]
            x, y = np.clip(c + rng.normal(scale=0.05, size=2), 0.0, 1.0)
        p = Point(float(x), float(y))
        if p not in seen:
            seen.add(p)
            pts.append(p)
    return Instance(tuple(pts), order_key=order_key)


def hyperbolic_staircase(m: int, ratio: float) -> Instance:
    """Origin plus the m-1 concave corners of an m-step staircase under xy = const.

    Step k has corner (ratio^(k-m), ratio^(1-k)), so every step rectangle has
    area ratio^(1-m) and the origin's tile has a best-rectangle share near 1/m
    when ``ratio`` is large.
    """
    if m < 1 or ratio <= 1.0:
        raise ValueError("need m >= 1 and ratio > 1")
    xs = [ratio ** (k - m) for k in range(1, m + 1)]
    ys = [ratio ** (1 - k) for k in range(1, m + 1)]
    pts = [ORIGIN] + [Point(xs[k], ys[k + 1]) for k in range(m - 1)]
    return Instance(tuple(pts))


def _hyperbolic_corners(x0: float, y0: float, x1: float, y1: float, m: int, ratio: float) -> list[Point]:
    w, h = x1 - x0, y1 - y0
    return [Point(x0 + w * ratio ** (k - m), y0 + h * ratio ** (-k)) for k in range(1, m)]


def gen_nested_staircases(depth: int, m: int = 13, ratio: float = 10.0, mirrored: bool = False) -> Instance:
    """Hyperbolic staircases nested so that their A-parallelograms chain.

    The origin's tile is an m-step hyperbolic staircase. Each further level
    anchors a scaled copy just above the second-to-last concave corner of the
    previous one, close enough to the previous bottom edge that the new
    parallelogram reaches into the old one. With ``mirrored`` the chain is
    repeated in x <-> y so the B side chains as well.
    """
    if depth < 1 or m < 4:
        raise ValueError("need depth >= 1 and m >= 4")
    pts = [ORIGIN]
    x0, y0, x1, y1 = 0.0, 0.0, 1.0, 1.0
    for level in range(depth):
        corners = _hyperbolic_corners(x0, y0, x1, y1, m, ratio)
        pts.extend(corners)
        if level == depth - 1:
            break
        h = y1 - y0
        # child anchor: on corner m-2's vertical, twice corner m-1's height;
        # its box runs right to corner m-1 and up to the lowest point that
        # precedes it in processing order and lies to its upper left
        nx0 = corners[m - 3].x
        nx1 = corners[m - 2].x
        ny0 = y0 + 2.0 * h * ratio ** (2 - m)
        caps = [q.y for q in pts if q.x <= nx0 and q.y > ny0 and q.x + q.y > nx0 + ny0]
        ny1 = min(caps, default=1.0)
        pts.append(Point(nx0, ny0))
        x0, y0, x1, y1 = nx0, ny0, nx1, ny1
    if mirrored:
        pts += [Point(y, x) for x, y in pts if x != y]
    return Instance(tuple(dict.fromkeys(pts)))


# --- text formats -----------------------------------------------------------

def _fmt(v: float) -> str:
    return repr(float(v))


def serialize_instance(inst: Instance) -> str:
    lines = [INSTANCE_HEADER, str(inst.n)]
    lines += [f"{_fmt(p.x)} {_fmt(p.y)}" for p in inst.points]
    return "\n".join(lines) + "\n"


def parse_instance(text: str, order_key: str = "sum") -> Instance:
    lines = [ln.strip() for ln in text.splitlines()]
    while lines and not lines[-1]:
        lines.pop()
    if not lines or lines[0] != INSTANCE_HEADER:
        raise FormatError(f"line 1: expected header {INSTANCE_HEADER!r}")
    if len(lines) < 2:
        raise FormatError("line 2: missing point count")
    try:
        n = int(lines[1])
    except ValueError:
        raise FormatError(f"line 2: malformed point count {lines[1]!r}") from None
    body = lines[2:]
    if len(body) != n:
        raise FormatError(f"expected {n} point lines, found {len(body)}")
    pts = []
    seen: dict[Point, int] = {}
    for lineno, ln in enumerate(body, start=3):
        fields = ln.split()
        if len(fields) != 2:
            raise FormatError(f"line {lineno}: malformed point line {ln!r}")
        try:
            p = Point(float(fields[0]), float(fields[1]))
        except ValueError:
            raise FormatError(f"line {lineno}: malformed coordinate in {ln!r}") from None
        if not (0.0 <= p.x <= 1.0 and 0.0 <= p.y <= 1.0):
            raise FormatError(f"line {lineno}: coordinate out of range [0, 1] in {ln!r}")
        if p in seen:
            raise FormatError(f"line {lineno}: duplicate point, first seen on line {seen[p]}")
        seen[p] = lineno
        pts.append(p)
    if ORIGIN not in seen:
        raise FormatError("missing origin: the instance must contain the point 0 0")
    return Instance(tuple(pts), order_key=order_key)


def serialize_packing(pk: Packing) -> str:
    lines = [PACKING_HEADER]
    for i, r in pk.entries:
        lines.append(" ".join([str(i)] + [_fmt(v) for v in r]))
    return "\n".join(lines) + "\n"


def parse_packing(text: str) -> Packing:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != PACKING_HEADER:
        raise FormatError(f"line 1: expected header {PACKING_HEADER!r}")
    entries = []
    for lineno, ln in enumerate(lines[1:], start=2):
        fields = ln.split()
        if len(fields) != 5:
            raise FormatError(f"line {lineno}: expected 'i x_lo y_lo x_hi y_hi', got {ln!r}")
        try:
            entries.append((int(fields[0]), Rect(*(float(f) for f in fields[1:]))))
        except ValueError:
            raise FormatError(f"line {lineno}: malformed number in {ln!r}") from None
    return Packing(tuple(entries))
