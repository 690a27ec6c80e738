"""Beta-tile geometry and empirical checks of the tile lemmas.

For a beta-tile the right and upper tips are cut off at concave corners, the
remaining main body has bottom edge a' and left edge b', and the slope -1
parallelograms A (hung below a') and B (hung left of b') carry the tile's
area in the charging argument. All containment and overlap predicates use
exact rational arithmetic, since the parallelogram corners are computed
values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Literal, Sequence

from anchorpack.bounds import BoundParams, eval_F
from anchorpack.geometry import (
    Instance,
    Point,
    StaircaseTile,
    largest_anchored_rect,
    rect_area,
    tile_area,
)
from anchorpack.packing import Tiling, tile_packing_tiling

Polygon = tuple[Point, ...]
Side = Literal["A", "B"]


class AnalysisDegenerate(ValueError):
    """No concave-corner cut reaches the tip area threshold."""


class LemmaViolation(AssertionError):
    """A geometric consequence of the lemmas failed on a concrete tile."""


@dataclass(frozen=True)
class LemmaResult:
    name: str
    passed: bool
    tile: int
    slack: float

    def line(self) -> str:
        tile = "all" if self.tile < 0 else str(self.tile)
        return f"LEMMA {self.name} {'PASS' if self.passed else 'FAIL'} tile={tile} slack={self.slack:.6g}"


@dataclass(frozen=True)
class TileAnalysis:
    index: int
    ratio: float
    is_beta_tile: bool
    area: float
    Delta_triangle: Polygon
    Gamma_triangle: Polygon
    right_tip_cut_x: float | None = None
    upper_tip_cut_y: float | None = None
    right_tip_area: float | None = None
    upper_tip_area: float | None = None
    main_body: StaircaseTile | None = None
    a_len: float | None = None
    b_len: float | None = None
    a_prime_len: float | None = None
    b_prime_len: float | None = None
    A_parallelogram: Polygon | None = None
    B_parallelogram: Polygon | None = None
    anchor: Point = field(default=Point(0.0, 0.0))

    @property
    def has_shapes(self) -> bool:
        return self.A_parallelogram is not None


# --- exact polygon predicates ----------------------------------------------

def _q(p) -> tuple[Fraction, Fraction]:
    return Fraction(p[0]), Fraction(p[1])


def _cross(o, a, b) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def polygon_area(poly: Sequence[Point]) -> float:
    s = 0.0
    for (x0, y0), (x1, y1) in zip(poly, list(poly[1:]) + [poly[0]]):
        s += x0 * y1 - x1 * y0
    return abs(s) / 2.0


def convex_contains(outer: Sequence[Point], inner: Sequence[Point]) -> bool:
    """Every vertex of ``inner`` lies in the closed convex CCW polygon ``outer``."""
    return containment_margin(outer, inner) >= 0


def containment_margin(outer: Sequence[Point], inner: Sequence[Point]) -> Fraction:
    """Smallest edge-normalized signed distance of an inner vertex (>= 0 inside)."""
    o = [_q(p) for p in outer]
    best = None
    for a, b in zip(o, o[1:] + o[:1]):
        length = math.hypot(float(b[0] - a[0]), float(b[1] - a[1]))
        if length == 0:
            continue
        for p in inner:
            c = _cross(a, b, _q(p)) / Fraction(length)
            if best is None or c < best:
                best = c
    return best if best is not None else Fraction(0)


def convex_interiors_overlap(P: Sequence[Point], Q: Sequence[Point]) -> bool:
    """True iff two convex polygons share positive area (touching does not count)."""
    P = [_q(p) for p in P]
    Q = [_q(p) for p in Q]
    for poly in (P, Q):
        for a, b in zip(poly, poly[1:] + poly[:1]):
            nx, ny = a[1] - b[1], b[0] - a[0]
            if nx == 0 and ny == 0:
                continue
            pp = [nx * x + ny * y for x, y in P]
            qq = [nx * x + ny * y for x, y in Q]
            if max(pp) <= min(qq) or max(qq) <= min(pp):
                return False
    return True


def mirror(poly: Sequence[Point]) -> Polygon:
    """Reflect in x = y, keeping counter-clockwise orientation."""
    return tuple(Point(y, x) for x, y in reversed(poly))


def hexagon(lam: float, alpha: float) -> Polygon:
    """Region containing every level-1 parallelogram, counter-clockwise."""
    lam_q, alpha_q = Fraction(lam), Fraction(alpha)
    d = lam_q / (1 + alpha_q)
    c = (lam_q + 1) / (1 + alpha_q)
    return tuple(
        Point(Fraction(x), Fraction(y))
        for x, y in [(0, 0), (d, -d), (c, -d), (1, 0), (1, 1), (0, 1)]
    )


def hexagon_area_bound(lam: float, alpha: float) -> float:
    return (2 * (1 + alpha) ** 2 + lam * (2 + alpha)) / (2 * (1 + alpha) ** 2)


# --- per-tile analysis ------------------------------------------------------

def classify_tile(t: StaircaseTile, beta: float) -> tuple[float, bool]:
    """(best-rectangle share of the tile, whether it is a beta-tile)."""
    area = tile_area(t)
    if area <= 0.0:
        return 1.0, False
    ratio = rect_area(largest_anchored_rect(t)) / area
    return ratio, ratio < 1.0 / beta


def support_triangles(t: StaircaseTile) -> tuple[Polygon, Polygon]:
    """Delta below the bottom edge and Gamma left of the left edge.

    Vertices are exact ``Fraction`` coordinates.
    """
    ax, ay = map(Fraction, t.anchor)
    right, top = Fraction(t.steps[-1].x), Fraction(t.steps[0].y)
    a, b = right - ax, top - ay
    delta = (Point(ax, ay), Point(right, ay - a), Point(right, ay))
    gamma = (Point(ax, ay), Point(ax, top), Point(ax - b, top))
    return delta, gamma


def base_analysis(t: StaircaseTile, beta: float, index: int = -1) -> TileAnalysis:
    ratio, is_beta = classify_tile(t, beta)
    delta, gamma = support_triangles(t)
    return TileAnalysis(
        index=index,
        ratio=ratio,
        is_beta_tile=is_beta,
        area=tile_area(t),
        Delta_triangle=delta,
        Gamma_triangle=gamma,
        a_len=t.width,
        b_len=t.height,
        anchor=t.anchor,
    )


def _merge_steps(steps: list[Point]) -> tuple[Point, ...]:
    out: list[Point] = []
    for s in steps:
        while out and out[-1].y <= s.y:
            out.pop()
        out.append(s)
    return tuple(out)


def compute_tips(t: StaircaseTile, beta: float, alpha: float, index: int = -1) -> TileAnalysis:
    """Cut the right and upper tips off a beta-tile.

    The right tip lies right of the rightmost concave-corner vertical whose
    right-hand part still has area >= alpha/beta * area(t); the upper tip is
    the mirror image. Raises ``LemmaViolation`` if the tip-size consequences
    (each tip < (1+alpha)/beta of the tile, disjoint tips) fail.
    """
    base = base_analysis(t, beta, index)
    if not base.is_beta_tile:
        raise ValueError(f"tile {index} is not a {beta}-tile (ratio {base.ratio:.6g})")
    m = t.m
    if m < 2:
        raise AnalysisDegenerate(f"tile {index} has no concave corner")
    ax, ay = t.anchor
    X = [ax] + [s.x for s in t.steps]          # X[0] = anchor.x, X[k] for k = 1..m
    Y = [None] + [s.y for s in t.steps] + [ay]  # Y[k] for k = 1..m, Y[m+1] = anchor.y
    area = base.area
    threshold = alpha / beta * area

    # right_area[k]: area right of x = X[k]
    right_area = [0.0] * (m + 1)
    for k in range(m - 1, -1, -1):
        right_area[k] = right_area[k + 1] + (X[k + 1] - X[k]) * (Y[k + 1] - ay)
    r = next((k for k in range(m - 1, 0, -1) if right_area[k] >= threshold), None)

    # upper_area[k]: area above y = Y[k]
    upper_area = [0.0] * (m + 2)
    for k in range(2, m + 2):
        upper_area[k] = upper_area[k - 1] + (Y[k - 1] - Y[k]) * (X[k - 1] - ax)
    u = next((k for k in range(2, m + 1) if upper_area[k] >= threshold), None)

    if r is None or u is None:
        raise AnalysisDegenerate(f"tile {index}: no concave-corner cut reaches the tip threshold")

    body_steps = _merge_steps([Point(X[j], min(Y[j], Y[u])) for j in range(1, r + 1)])
    body = StaircaseTile(t.anchor, body_steps)
    res = replace(
        base,
        right_tip_cut_x=X[r],
        upper_tip_cut_y=Y[u],
        right_tip_area=right_area[r],
        upper_tip_area=upper_area[u],
        main_body=body,
        a_prime_len=X[r] - ax,
        b_prime_len=Y[u] - ay,
    )

    tip_cap = (1.0 + alpha) / beta * area
    if not (res.right_tip_area < tip_cap and res.upper_tip_area < tip_cap):
        raise LemmaViolation(f"tile {index}: tip area exceeds (1+alpha)/beta of the tile")
    if u > r + 1:
        raise LemmaViolation(f"tile {index}: right and upper tips overlap")
    if tile_area(body) < (beta - 2.0 - 2.0 * alpha) / beta * area * (1.0 - 1e-12):
        raise LemmaViolation(f"tile {index}: main body below (beta-2-2alpha)/beta of the tile")
    return res


def support_shapes(t: StaircaseTile, analysis: TileAnalysis, lam: float, alpha: float) -> TileAnalysis:
    """Attach the parallelograms A (below a') and B (left of b').

    Both have slope -1 sides and height lambda times their base, so
    area(A) = lambda |a'|^2. Vertices are exact ``Fraction`` coordinates.
    """
    if analysis.a_prime_len is None:
        raise ValueError("compute_tips must run before support_shapes")
    if not (0.0 < lam < alpha):
        raise ValueError("need 0 < lambda < alpha")
    ax, ay = map(Fraction, t.anchor)
    cut_x, cut_y = Fraction(analysis.right_tip_cut_x), Fraction(analysis.upper_tip_cut_y)
    lam_q, alpha_q = Fraction(lam), Fraction(alpha)
    a1, b1 = cut_x - ax, cut_y - ay
    ha, hb = lam_q * a1, lam_q * b1
    A = (Point(ax, ay), Point(ax + ha, ay - ha), Point(cut_x + ha, ay - ha), Point(cut_x, ay))
    B = (Point(ax, ay), Point(ax, cut_y), Point(ax - hb, cut_y + hb), Point(ax - hb, ay + hb))
    res = replace(analysis, A_parallelogram=A, B_parallelogram=B)
    i = analysis.index
    if not (1 + alpha_q) * a1 < Fraction(t.steps[-1].x) - ax:
        raise LemmaViolation(f"tile {i}: (1+alpha)|a'| >= |a|")
    if not (1 + alpha_q) * b1 < Fraction(t.steps[0].y) - ay:
        raise LemmaViolation(f"tile {i}: (1+alpha)|b'| >= |b|")
    if not convex_contains(res.Delta_triangle, A):
        raise LemmaViolation(f"tile {i}: A is not inside Delta")
    if not convex_contains(res.Gamma_triangle, B):
        raise LemmaViolation(f"tile {i}: B is not inside Gamma")
    return res


def parallelogram_area(analysis: TileAnalysis, side: Side, lam: float) -> float:
    length = analysis.a_prime_len if side == "A" else analysis.b_prime_len
    return lam * length * length


# --- single-tile lemma checks ----------------------------------------------

def check_lemma_lb1(t: StaircaseTile, analysis: TileAnalysis, params: BoundParams) -> LemmaResult:
    """area(t) <= beta / (2 lambda e^(beta-3-2alpha)) * (area(A) + area(B))."""
    if not analysis.is_beta_tile or not analysis.has_shapes:
        raise ValueError("lemma lb1 applies to analyzed beta-tiles only")
    beta, lam, alpha = params.beta, params.lam, params.alpha
    rhs = beta / (2.0 * lam * math.exp(beta - 3.0 - 2.0 * alpha)) * (
        parallelogram_area(analysis, "A", lam) + parallelogram_area(analysis, "B", lam)
    )
    slack = rhs - tile_area(t)
    return LemmaResult("lb1", slack >= 0.0, analysis.index, slack)


def check_DT31(t: StaircaseTile, beta: float, index: int = -1) -> LemmaResult:
    """area(t) < beta / e^(beta-1) * height * width for a beta-tile."""
    _, is_beta = classify_tile(t, beta)
    if not is_beta:
        raise ValueError("DT3.1 applies to beta-tiles only")
    rhs = beta / math.exp(beta - 1.0) * t.height * t.width
    slack = rhs - tile_area(t)
    return LemmaResult("DT31", slack > 0.0, index, slack)


def check_DT33(inst: Instance, tiling: Tiling, analyses: Sequence[TileAnalysis] | None = None) -> list[LemmaResult]:
    """No instance point lies strictly inside any Delta_i or Gamma_i."""
    pts = inst.points
    exact = [(Fraction(p.x) + Fraction(p.y), p) for p in pts]
    out = []
    for i, t in enumerate(tiling.tiles):
        ax, ay = t.anchor
        diag = Fraction(ax) + Fraction(ay)
        right, top = t.steps[-1].x, t.steps[0].y
        ok = True
        slack = math.inf
        for s, p in exact:
            # Delta: y < ay, x < right, x + y > ax + ay.  Gamma: mirror.
            if (p.y < ay and p.x < right) or (p.x < ax and p.y < top):
                gap = diag - s
                slack = min(slack, float(gap))
                if gap < 0:
                    ok = False
        out.append(LemmaResult("DT33", ok, i, slack))
    return out


# --- charging graph ---------------------------------------------------------

@dataclass(frozen=True)
class ChargeGraph:
    side: Side
    nodes: tuple[int, ...]
    edges: dict[int, int]
    levels: dict[int, int]

    def roots(self) -> list[int]:
        return [v for v in self.nodes if self.levels[v] == 1]

    def root_of(self, v: int) -> int:
        while v in self.edges:
            v = self.edges[v]
        return v

    def charged_to(self, j: int) -> list[int]:
        """Nodes other than j with a directed path to j."""
        return [v for v in self.nodes if v != j and self._reaches(v, j)]

    def _reaches(self, v: int, j: int) -> bool:
        while v in self.edges:
            v = self.edges[v]
            if v == j:
                return True
        return False


def _side_frame(a: TileAnalysis, side: Side) -> tuple[float, Polygon]:
    """Height key and parallelogram, with B mapped into A's frame by x <-> y."""
    if side == "A":
        return a.anchor.y, a.A_parallelogram
    return a.anchor.x, mirror(a.B_parallelogram)


def build_charge_graph(analyses: Sequence[TileAnalysis], side: Side) -> ChargeGraph:
    """Each parallelogram points to the highest intersecting one below it.

    "Below" compares the anchors' y (x for the B side); equal heights are
    ordered by tile index, lower index counting as higher.
    """
    items = [a for a in analyses if a.is_beta_tile and a.has_shapes]
    frames = {a.index: _side_frame(a, side) for a in items}
    rank = {i: (frames[i][0], -i) for i in frames}
    nodes = tuple(sorted(frames))
    edges: dict[int, int] = {}
    for i in nodes:
        below = sorted((j for j in nodes if rank[j] < rank[i]), key=rank.get, reverse=True)
        for j in below:
            if convex_interiors_overlap(frames[i][1], frames[j][1]):
                edges[i] = j
                break

    levels: dict[int, int] = {}
    remaining = set(nodes)
    level = 1
    while remaining:
        layer = {v for v in remaining if v not in edges or levels.get(edges[v]) == level - 1}
        if not layer:
            raise RuntimeError("charging graph has a cycle")
        for v in layer:
            levels[v] = level
        remaining -= layer
        level += 1
    return ChargeGraph(side, nodes, edges, levels)


def _by_index(analyses: Sequence[TileAnalysis]) -> dict[int, TileAnalysis]:
    return {a.index: a for a in analyses}


def check_lemma_lb2(graph: ChargeGraph, analyses: Sequence[TileAnalysis], params: BoundParams) -> list[LemmaResult]:
    """Level-1 parallelograms: inside the hexagon, pairwise disjoint, bounded total."""
    lam, alpha = params.lam, params.alpha
    idx = _by_index(analyses)
    hexa = hexagon(lam, alpha)
    roots = graph.roots()
    polys = {j: _side_frame(idx[j], graph.side)[1] for j in roots}
    name = f"lb2-{graph.side}"
    out = []
    for j in roots:
        margin = float(containment_margin(hexa, polys[j]))
        out.append(LemmaResult(f"{name}-hexagon", margin >= 0.0, j, margin))
    for x in range(len(roots)):
        for y in range(x + 1, len(roots)):
            if convex_interiors_overlap(polys[roots[x]], polys[roots[y]]):
                out.append(LemmaResult(f"{name}-disjoint", False, roots[x], -1.0))
    total = sum(parallelogram_area(idx[j], graph.side, lam) for j in roots)
    slack = hexagon_area_bound(lam, alpha) - total
    out.append(LemmaResult(name, slack >= 0.0, -1, slack))
    return out


def check_lemma_lb3(graph: ChargeGraph, analyses: Sequence[TileAnalysis], params: BoundParams) -> list[LemmaResult]:
    """Area charged to each level-1 parallelogram is at most area/(2(alpha-lambda))."""
    lam, alpha = params.lam, params.alpha
    idx = _by_index(analyses)
    out = []
    for j in graph.roots():
        charged = sum(parallelogram_area(idx[i], graph.side, lam) for i in graph.charged_to(j))
        cap = parallelogram_area(idx[j], graph.side, lam) / (2.0 * (alpha - lam))
        out.append(LemmaResult(f"lb3-{graph.side}", charged <= cap, j, cap - charged))
    return out


def check_total_beta_area(inst: Instance, tiling: Tiling, params: BoundParams) -> tuple[float, float, bool]:
    """Total area of beta-tiles against F(beta, lambda, alpha)."""
    total = 0.0
    for t in tiling.tiles:
        if classify_tile(t, params.beta)[1]:
            total += tile_area(t)
    F = eval_F(params.beta, params.lam, params.alpha)
    return total, F, total <= F


# --- whole-instance driver --------------------------------------------------

@dataclass
class AnalysisReport:
    results: list[LemmaResult]
    analyses: list[TileAnalysis]
    graphs: dict[str, ChargeGraph]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def beta_tiles(self) -> list[int]:
        return [a.index for a in self.analyses if a.is_beta_tile]

    def lines(self) -> list[str]:
        return [r.line() for r in self.results]

    def failures(self) -> list[LemmaResult]:
        return [r for r in self.results if not r.passed]


def analyze_tile(t: StaircaseTile, params: BoundParams, index: int = -1) -> TileAnalysis:
    """Full analysis for a beta-tile, triangles only otherwise."""
    base = base_analysis(t, params.beta, index)
    if not base.is_beta_tile:
        return base
    tips = compute_tips(t, params.beta, params.alpha, index)
    return support_shapes(t, tips, params.lam, params.alpha)


def analyze_instance(inst: Instance, params: BoundParams, tiling: Tiling | None = None) -> AnalysisReport:
    """Run every lemma check on the TilePacking tiling of ``inst``."""
    if tiling is None:
        tiling = tile_packing_tiling(inst)
    results: list[LemmaResult] = []
    analyses: list[TileAnalysis] = []
    for i, t in enumerate(tiling.tiles):
        try:
            a = analyze_tile(t, params, i)
        except (LemmaViolation, AnalysisDegenerate) as e:
            results.append(LemmaResult(f"shape:{type(e).__name__}", False, i, -1.0))
            analyses.append(base_analysis(t, params.beta, i))
            continue
        analyses.append(a)
        if a.is_beta_tile:
            results.append(check_lemma_lb1(t, a, params))
            results.append(check_DT31(t, params.beta, i))

    results.extend(check_DT33(inst, tiling, analyses))
    graphs = {}
    for side in ("A", "B"):
        g = build_charge_graph(analyses, side)
        graphs[side] = g
        results.extend(check_lemma_lb2(g, analyses, params))
        results.extend(check_lemma_lb3(g, analyses, params))
    total, F, ok = check_total_beta_area(inst, tiling, params)
    results.append(LemmaResult("total", ok, -1, F - total))
    return AnalysisReport(results, analyses, graphs)
