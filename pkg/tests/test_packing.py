from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from anchorpack.geometry import Instance, Packing, Point, Rect, rect_area, tile_area
from anchorpack.instances import gen_adversarial, gen_diagonal
from anchorpack.packing import (
    OracleTooLarge,
    brute_force_optimal,
    greedy_packing,
    max_empty_anchored_rect,
    processing_order,
    tile_packing,
    tile_packing_tiling,
    validate_packing,
)
from strategies import instances, points


# --- ray-cast oracle ----------------------------------------------------------

def raycast_tile_areas(inst: Instance) -> list[Fraction]:
    """Tile areas from the two-ray construction, exactly.

    Each point, in processing order, shoots a ray up and a ray right that
    stop at the square's boundary or at an earlier ray. The rays cut the
    coordinate grid into cells; cells not separated by a ray are merged and
    the component starting at a point's upper-right cell is its tile.
    """
    pts = inst.points
    vert: list[tuple[float, float, float]] = []   # (x, y_lo, y_hi)
    horiz: list[tuple[float, float, float]] = []  # (y, x_lo, x_hi)
    for i in processing_order(inst):
        px, py = pts[i]
        top = min([1.0] + [y for y, x0, x1 in horiz if y > py and x0 <= px <= x1])
        right = min([1.0] + [x for x, y0, y1 in vert if x > px and y0 <= py <= y1])
        vert.append((px, py, top))
        horiz.append((py, px, right))

    xs = sorted({0.0, 1.0} | {p.x for p in pts})
    ys = sorted({0.0, 1.0} | {p.y for p in pts})
    parent = {c: c for c in product(range(len(xs) - 1), range(len(ys) - 1))}

    def find(c):
        while parent[c] != c:
            parent[c] = parent[parent[c]]
            c = parent[c]
        return c

    def walled_v(x, y0, y1):
        return any(sx == x and sy0 <= y0 and y1 <= sy1 for sx, sy0, sy1 in vert)

    def walled_h(y, x0, x1):
        return any(sy == y and sx0 <= x0 and x1 <= sx1 for sy, sx0, sx1 in horiz)

    for i, j in parent:
        if i + 1 < len(xs) - 1 and not walled_v(xs[i + 1], ys[j], ys[j + 1]):
            parent[find((i, j))] = find((i + 1, j))
        if j + 1 < len(ys) - 1 and not walled_h(ys[j + 1], xs[i], xs[i + 1]):
            parent[find((i, j))] = find((i, j + 1))

    comp_area: dict = {}
    for i, j in parent:
        a = (Fraction(xs[i + 1]) - Fraction(xs[i])) * (Fraction(ys[j + 1]) - Fraction(ys[j]))
        comp_area[find((i, j))] = comp_area.get(find((i, j)), 0) + a
    out = []
    claimed = set()
    for p in pts:
        if p.x >= 1.0 or p.y >= 1.0:
            out.append(Fraction(0))
            continue
        c = find((xs.index(p.x), ys.index(p.y)))
        if c in claimed:
            out.append(Fraction(0))  # cell already belongs to an earlier tile
        else:
            claimed.add(c)
            out.append(comp_area[c])
    assert claimed == set(comp_area), "some region belongs to no point"
    return out


def exact_tile_area(t) -> Fraction:
    ax, ay = t.anchor
    left, total = Fraction(ax), Fraction(0)
    for x, y in t.steps:
        total += (Fraction(x) - left) * (Fraction(y) - Fraction(ay))
        left = Fraction(x)
    return total


# --- brute-force empty rectangle oracle --------------------------------------

def brute_max_rect(p: Point, obs_pts, obs_rects) -> float:
    xs = {1.0} | {q.x for q in obs_pts if q.x > p.x} | {r.x_lo for r in obs_rects if r.x_lo > p.x}
    ys = {1.0} | {q.y for q in obs_pts if q.y > p.y} | {r.y_lo for r in obs_rects if r.y_lo > p.y}
    best = 0.0
    for xr, yt in product(xs, ys):
        cand = Rect(p.x, p.y, xr, yt)
        if any(cand.x_lo < q.x < cand.x_hi and cand.y_lo < q.y < cand.y_hi for q in obs_pts):
            continue
        if any(
            r.x_hi > r.x_lo and r.y_hi > r.y_lo
            and cand.x_lo < r.x_hi and r.x_lo < cand.x_hi and cand.y_lo < r.y_hi and r.y_lo < cand.y_hi
            for r in obs_rects
        ):
            continue
        best = max(best, rect_area(cand))
    return best


# --- examples -----------------------------------------------------------------

def test_processing_order_sample8(sample8):
    order = [sample8.points[i] for i in processing_order(sample8)]
    assert order == [
        (0.6, 0.9), (0.65, 0.65), (0.75, 0.3), (0.3, 0.7),
        (0.1, 0.85), (0.55, 0.1), (0.2, 0.35), (0.0, 0.0),
    ]


def test_processing_order_adversarial():
    inst = gen_adversarial(1, 0.1)
    names = dict(zip(inst.points, ["o", "p", "q", "v", "w"]))
    assert [names[inst.points[i]] for i in processing_order(inst)] == ["v", "w", "q", "p", "o"]


def test_processing_order_tie_prefers_larger_y():
    inst = Instance((Point(0, 0), Point(0.7, 0.3), Point(0.3, 0.7)))
    assert [inst.points[i] for i in processing_order(inst)][:2] == [(0.3, 0.7), (0.7, 0.3)]


def test_single_origin():
    inst = Instance((Point(0, 0),))
    t = tile_packing_tiling(inst)
    assert t[0].steps == (Point(1, 1),)
    assert tile_packing(inst).area == 1.0
    assert greedy_packing(inst).area == 1.0
    assert brute_force_optimal(inst)[1] == 1.0


def test_sample8_tiles(sample8):
    tiling = tile_packing_tiling(sample8)
    tile = {sample8.points[i]: tiling[i] for i in range(sample8.n)}
    assert tile[(0.6, 0.9)].steps == ((1.0, 1.0),)
    assert tile[(0.65, 0.65)].steps == ((1.0, 0.9),)
    assert tile[(0.3, 0.7)].steps == ((0.6, 1.0), (0.65, 0.9))
    assert sum(tile_area(t) for t in tiling) == pytest.approx(1.0, abs=1e-12)
    pk = tile_packing(sample8)
    assert pk.rect_for(sample8.index_of(Point(0.3, 0.7))) == Rect(0.3, 0.7, 0.6, 1.0)


def test_sample8_areas(sample8):
    # frozen regression values for the eight-point sample instance
    assert tile_packing(sample8).area == pytest.approx(0.76)
    assert greedy_packing(sample8).area == pytest.approx(0.76)
    assert brute_force_optimal(sample8)[1] == pytest.approx(0.79)


def test_max_rect_no_obstacles():
    assert max_empty_anchored_rect(Point(0, 0), [], []) == Rect(0, 0, 1, 1)


@pytest.mark.parametrize("eps", [0.1, 0.01])
def test_max_rect_adversarial_q1_then_p1(eps):
    inst = gen_adversarial(1, eps)
    p1, q1 = Point(0.0, eps - eps**3), Point(eps, 0.0)
    r_q = max_empty_anchored_rect(q1, inst.points, [])
    # top option bounded by w_1 has area eps; the right option eps - eps^2
    assert r_q == Rect(eps, 0.0, 2 * eps, 1.0)
    assert r_q.area == pytest.approx(eps)
    r_p = max_empty_anchored_rect(p1, inst.points, [r_q])
    assert r_p.area == pytest.approx(eps - eps**2 + eps**4)


def test_greedy_adversarial_level_area():
    eps = 0.01
    inst = gen_adversarial(1, eps)
    pk = greedy_packing(inst)
    idx = {p: i for i, p in enumerate(inst.points)}
    three = sum(pk.rect_for(idx[p]).area for p in [(0, eps - eps**3), (eps, 0), (2 * eps, eps)])
    assert three == pytest.approx(3 * eps - 3 * eps**2 + eps**4)
    assert 0.0297 <= three <= 0.0300
    assert pk.rect_for(idx[(2 * eps, 2 * eps)]).area == pytest.approx((1 - 2 * eps) ** 2)


def test_oracle_two_points():
    pk, area = brute_force_optimal(Instance((Point(0, 0), Point(0.5, 0.5))))
    assert area == 0.75
    assert validate_packing(Instance((Point(0, 0), Point(0.5, 0.5))), pk) == []


def test_oracle_adversarial_beats_greedy():
    eps = 0.01
    inst = gen_adversarial(1, eps)
    _, best = brute_force_optimal(inst)
    assert best >= 4 * eps - 5 * eps**2 + (1 - 2 * eps) ** 2 - 1e-12
    assert best > greedy_packing(inst).area


def test_oracle_guard():
    with pytest.raises(OracleTooLarge):
        brute_force_optimal(gen_diagonal(9))


def test_diagonal_areas():
    assert brute_force_optimal(gen_diagonal(2))[1] == 0.75
    for n in [1, 2, 10, 50]:
        area = greedy_packing(gen_diagonal(n)).area
        assert area == pytest.approx((n + 1) / (2 * n))
    assert 0.5 < greedy_packing(gen_diagonal(50)).area < 0.5 + 2 / 50


def test_validate_reports_each_rule():
    inst = Instance((Point(0, 0), Point(0.5, 0.5)))
    assert validate_packing(inst, Packing.from_rects([Rect(0, 0, 1, 0.5), Rect(0.5, 0.5, 1, 1)])) == []
    side = Instance((Point(0, 0), Point(0.5, 0)))
    overlap = validate_packing(side, Packing.from_rects([Rect(0, 0, 0.6, 0.4), Rect(0.5, 0, 1, 0.4)]))
    assert overlap == [("overlap", (0, 1))]
    anchor = validate_packing(inst, Packing.from_rects([Rect(0, 0, 0.5, 0.5), Rect(0.6, 0.5, 1, 1)]))
    assert [v.rule for v in anchor] == ["anchor"]
    inside = validate_packing(inst, Packing.from_rects([Rect(0, 0, 1, 1), Rect(0.5, 0.5, 0.5, 0.5)]))
    assert [v.rule for v in inside] == ["point-inside"]
    outside = validate_packing(inst, Packing.from_rects([Rect(0, 0, 0.5, 0.5), Rect(0.5, 0.5, 1.5, 1)]))
    assert [v.rule for v in outside] == ["outside"]
    missing = validate_packing(inst, Packing(((0, Rect(0, 0, 1, 0.5)),)))
    assert [v.rule for v in missing] == ["coverage"]


# --- properties ---------------------------------------------------------------

@given(instances(max_size=10))
@settings(max_examples=150, deadline=None)
def test_tiling_matches_raycast(inst):
    tiling = tile_packing_tiling(inst)
    assert [exact_tile_area(t) for t in tiling] == raycast_tile_areas(inst)


@given(instances(max_size=14))
@settings(max_examples=150, deadline=None)
def test_tiling_partition(inst):
    tiling = tile_packing_tiling(inst)
    assert sum(exact_tile_area(t) for t in tiling) == 1
    for i, t in enumerate(tiling):
        assert t.anchor == inst.points[i]
        for c in t.concave_corners:
            assert inst.contains(c)


@given(instances(max_size=10), points)
@settings(max_examples=150, deadline=None)
def test_max_rect_matches_brute_force(inst, p):
    placed = list(greedy_packing(inst).rects)[: inst.n // 2]
    if any(r.x_lo < p.x < r.x_hi and r.y_lo < p.y < r.y_hi for r in placed):
        return
    got = max_empty_anchored_rect(p, inst.points, placed)
    assert rect_area(got) == brute_max_rect(p, inst.points, placed)


@given(instances(max_size=12), st.sampled_from(["sum", "sumsq", "maxsum"]))
@settings(max_examples=100, deadline=None)
def test_packings_valid_and_lemma_2_1(inst, key):
    inst = Instance(inst.points, order_key=key)
    g = greedy_packing(inst)
    t = tile_packing(inst)
    assert validate_packing(inst, g) == []
    assert validate_packing(inst, t) == []
    for i in range(inst.n):
        assert g.rect_for(i).area >= t.rect_for(i).area
    assert t.area >= 0.10390


@given(instances(max_size=6))
@settings(max_examples=60, deadline=None)
def test_oracle_chain(inst):
    pk, best = brute_force_optimal(inst)
    assert validate_packing(inst, pk) == []
    assert tile_packing(inst).area <= greedy_packing(inst).area <= best


@given(instances(max_size=12))
@settings(max_examples=30, deadline=None)
def test_deterministic(inst):
    assert greedy_packing(inst) == greedy_packing(Instance(inst.points))
    assert tile_packing_tiling(inst) == tile_packing_tiling(Instance(inst.points))
