"""Nearest-neighbor estimation on the grid and its quality against brute force.

The grid answers a neighbor query by scanning the cells within Chebyshev
distance k of the query's cell (the k-ring, clipped at the borders, no
wraparound) and returning the closest genuine point found there.  The
quality of that answer is judged against the exact nearest neighbor over
the whole point set; the headline metric is how often the true neighbor
was findable in the one-ring at all.
"""

from __future__ import annotations

import csv
import itertools
import json
import math
import random
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .dynamics import run_until_stable
from .grid import Cell, Grid, build_stable, is_stable
from .points import Number, Point, PointSet, pad_points, padded_side

METRICS: dict[str, Callable[[Sequence[Number], Sequence[Number]], float]] = {
    "euclidean": lambda a, b: math.dist(a, b),
    "chebyshev": lambda a, b: max(abs(x - y) for x, y in zip(a, b)),
    "manhattan": lambda a, b: sum(abs(x - y) for x, y in zip(a, b)),
}

BUILDERS = ("direct", "full-pass", "odd-even", "max-swap")

GENERATORS = ("adversarial-single", "adversarial-all", "random")

DISTRIBUTIONS = ("uniform-box", "integer-ranks")


@dataclass(frozen=True)
class NeighborEstimate:
    """Ring-based estimate for one query, with the exact answer alongside.

    `estimated_id` is None when the ring contains no genuine point.
    `ring_distance_to_true` is the Chebyshev distance between the query's
    cell and the true neighbor's cell: the smallest ring radius that
    would have seen the right answer.
    """

    query_id: int
    ring_radius: int
    estimated_id: int | None
    estimated_distance: float | None
    true_id: int | None = None
    true_distance: float | None = None
    ring_distance_to_true: int | None = None


def exact_nn(ps: PointSet, query_id: int, metric: str = "euclidean") -> tuple[int, float]:
    """Exact nearest neighbor over the whole set; ties pick the smaller id."""
    dist = METRICS[metric]
    q = ps.by_id(query_id)
    best: tuple[float, int] | None = None
    for p in ps:
        if p.id == query_id:
            continue
        cand = (dist(q.coords, p.coords), p.id)
        if best is None or cand < best:
            best = cand
    if best is None:
        raise ValueError("nearest neighbor of a singleton set is undefined")
    return best[1], best[0]


def ring_cells(g: Grid, center: Cell, k: int) -> list[Cell]:
    """Cells within Chebyshev distance k of `center`, clipped, center excluded."""
    spans = [
        range(max(1, c - k), min(g.n, c + k) + 1) for c in center
    ]
    return [
        cell for cell in itertools.product(*spans) if cell != center
    ]


def estimated_nn(
    g: Grid, query_id: int, k: int = 1, metric: str = "euclidean"
) -> NeighborEstimate:
    """Closest genuine point in the k-ring around the query's cell.

    Padding points never qualify; ties pick the smaller id, matching the
    exact oracle, so with k >= n-1 (a ring covering the whole grid) the
    estimate equals the exact answer.
    """
    if k < 1:
        raise ValueError("ring radius must be >= 1")
    dist = METRICS[metric]
    center = g.locate(query_id)
    q = g.point_at(center)
    best: tuple[float, int] | None = None
    for cell in ring_cells(g, center, k):
        p = g.point_at(cell)
        if p.id in g.padding_ids:
            continue
        cand = (dist(q.coords, p.coords), p.id)
        if best is None or cand < best:
            best = cand
    if best is None:
        return NeighborEstimate(query_id, k, None, None)
    return NeighborEstimate(query_id, k, best[1], best[0])


@dataclass(frozen=True)
class QualityReport:
    """Aggregated estimate-vs-oracle comparison over every genuine point."""

    n: int
    d: int
    point_count: int
    k: int
    builder: str
    metric: str
    one_ring_hit_rate: float
    mean_ring_distance: float
    max_ring_distance: int
    no_estimate_count: int
    records: tuple[NeighborEstimate, ...]
    grid: Grid


def build_by_strategy(ps: PointSet | Iterable[Point], builder: str = "direct") -> Grid:
    """Arrange a point set into a stable grid by the chosen route.

    `direct` uses the sorting construction; the iterative builders place
    points in id order (row-major from the bottom-left) and run their
    strategy to a fixed point.
    """
    if not isinstance(ps, PointSet):
        ps = PointSet(ps)
    if builder not in BUILDERS:
        raise ValueError(f"unknown builder {builder!r}; pick one of {BUILDERS}")
    if builder == "direct":
        return build_stable(ps)
    start = initial_grid(ps)
    strategy = {
        "full-pass": "full-pass",
        "odd-even": "odd-even-cycle",
        "max-swap": "max-swap",
    }[builder]
    trace = run_until_stable(start, strategy)
    if not is_stable(trace.final).stable:
        raise RuntimeError(
            f"builder {builder!r} stopped on an unstable grid "
            "(step budget exhausted or tied coordinates)"
        )
    return trace.final


def initial_grid(ps: PointSet | Iterable[Point]) -> Grid:
    """Pad the set and place points in id order, row-major from bottom-left."""
    if not isinstance(ps, PointSet):
        ps = PointSet(ps)
    n = padded_side(len(ps), ps.d)
    padded = pad_points(ps, n)
    padding = frozenset(p.id for p in padded if p.id > len(ps))
    pts = sorted(padded, key=lambda p: p.id)
    dummy = Grid(n, ps.d, dict(zip(_all_cells(n, ps.d), pts)), padding)
    return dummy


def _all_cells(n: int, d: int) -> list[Cell]:
    return [
        tuple(reversed(c))
        for c in itertools.product(range(1, n + 1), repeat=d)
    ]


def grid_quality_report(
    g: Grid, k: int = 1, metric: str = "euclidean", builder: str = "direct"
) -> QualityReport:
    """Estimate-vs-oracle comparison on an already-built grid.

    Fewer than two genuine points leave nothing to compare: the report
    comes back empty rather than failing.
    """
    genuine = PointSet(sorted(g.genuine_points(), key=lambda p: p.id))
    if len(genuine) < 2:
        return QualityReport(
            n=g.n, d=g.d, point_count=len(genuine), k=k, builder=builder,
            metric=metric, one_ring_hit_rate=0.0, mean_ring_distance=0.0,
            max_ring_distance=0, no_estimate_count=0, records=(), grid=g,
        )
    records = []
    hits = 0
    ring_dists = []
    missing = 0
    for p in genuine:
        est = estimated_nn(g, p.id, k, metric)
        true_id, true_dist = exact_nn(genuine, p.id, metric)
        ring_dist = max(
            abs(a - b) for a, b in zip(g.locate(p.id), g.locate(true_id))
        )
        records.append(
            NeighborEstimate(
                query_id=p.id,
                ring_radius=k,
                estimated_id=est.estimated_id,
                estimated_distance=est.estimated_distance,
                true_id=true_id,
                true_distance=true_dist,
                ring_distance_to_true=ring_dist,
            )
        )
        if ring_dist <= 1:
            hits += 1
        ring_dists.append(ring_dist)
        if est.estimated_id is None:
            missing += 1
    return QualityReport(
        n=g.n,
        d=g.d,
        point_count=len(genuine),
        k=k,
        builder=builder,
        metric=metric,
        one_ring_hit_rate=hits / len(genuine),
        mean_ring_distance=sum(ring_dists) / len(ring_dists),
        max_ring_distance=max(ring_dists),
        no_estimate_count=missing,
        records=tuple(records),
        grid=g,
    )


def quality_report(
    ps: PointSet,
    builder: str = "direct",
    k: int = 1,
    metric: str = "euclidean",
) -> QualityReport:
    """Build a grid from the set and measure estimation quality on it."""
    g = build_by_strategy(ps, builder)
    return grid_quality_report(g, k, metric, builder)


# -- generators ---------------------------------------------------------------

def report_to_json(report: QualityReport) -> dict:
    """Summary document for a quality report (no per-point records)."""
    return {
        "n": report.n,
        "d": report.d,
        "point_count": report.point_count,
        "k": report.k,
        "builder": report.builder,
        "metric": report.metric,
        "one_ring_hit_rate": report.one_ring_hit_rate,
        "mean_ring_distance": report.mean_ring_distance,
        "max_ring_distance": report.max_ring_distance,
        "no_estimate_count": report.no_estimate_count,
    }


def write_report_json(path: str, report: QualityReport) -> None:
    from .fsio import atomic_open

    with atomic_open(path) as fh:
        json.dump(report_to_json(report), fh, indent=1)
        fh.write("\n")


def write_report_csv(path: str, report: QualityReport) -> None:
    """Per-point rows: id,estimated_id,true_id,est_dist,true_dist,ring_distance."""
    from .fsio import atomic_open

    with atomic_open(path) as fh:
        w = csv.writer(fh)
        w.writerow(
            ["id", "estimated_id", "true_id", "est_dist", "true_dist", "ring_distance"]
        )
        for rec in report.records:
            w.writerow(
                [
                    rec.query_id,
                    "" if rec.estimated_id is None else rec.estimated_id,
                    rec.true_id,
                    "" if rec.estimated_distance is None else repr(rec.estimated_distance),
                    repr(rec.true_distance),
                    rec.ring_distance_to_true,
                ]
            )


def gen_random(
    n: int, d: int = 2, seed: int = 1, distribution: str = "uniform-box"
) -> PointSet:
    """n**d random points: iid uniform in [0,1]**d, or rank permutations.

    `integer-ranks` fixes axis 1 to 1..N and draws every further axis as
    an independent uniform permutation of 1..N, so all axes satisfy the
    rank restriction exactly.
    """
    if distribution not in DISTRIBUTIONS:
        raise ValueError(
            f"unknown distribution {distribution!r}; pick one of {DISTRIBUTIONS}"
        )
    rng = random.Random(seed)
    N = n**d
    if distribution == "uniform-box":
        return PointSet.from_coords(
            tuple(rng.random() for _ in range(d)) for _ in range(N)
        )
    axes = [list(range(1, N + 1))]
    for _ in range(d - 1):
        perm = list(range(1, N + 1))
        rng.shuffle(perm)
        axes.append(perm)
    return PointSet.from_coords(zip(*axes))


def gen_adversarial_single(n: int) -> PointSet:
    """A set that drives one true nearest-neighbor pair to opposite corners.

    p = (0, 0) and q = (1, 1) sit a distance sqrt(2) apart, while every
    other point keeps a distance above 2 from p: the escorts
    p_i = (0, 2 + i/n) share p's x far above, q_i = (1, -2 - i/n) share
    q's x far below, and the fillers r_(i,j) = (1 - 1/i, 2 + j/n) for
    i = 2..n-1, j = 1..n pack the interior columns.  Every stable
    arrangement then pins p to the bottom-left and q to the top-right
    corner.  Requires n >= 2; emits n**2 points with ids in the order
    p, q, p_1.., q_1.., r_(2,1)..r_(2,n), r_(3,1)..
    """
    if n < 2:
        raise ValueError("the construction needs n >= 2")
    coords: list[tuple[Number, Number]] = [(0, 0), (1, 1)]
    coords += [(0, 2 + i / n) for i in range(1, n)]
    coords += [(1, -2 - i / n) for i in range(1, n)]
    coords += [
        (1 - 1 / i, 2 + j / n) for i in range(2, n) for j in range(1, n + 1)
    ]
    return PointSet.from_coords(coords)


def adversarial_single_grid(n: int) -> Grid:
    """The reference stable arrangement of gen_adversarial_single(n).

    Column 1 carries p under its escorts, interior column c carries the
    r_(c,.) fillers in j order, and column n climbs q_(n-1) .. q_1 with q
    alone at the top; so p and q end up in opposite corners.
    """
    ps = gen_adversarial_single(n)
    by_coords = {p.coords: p for p in ps}

    def P(x: Number, y: Number) -> Point:
        return by_coords[(x, y)]

    def row(j: int) -> list[Point]:
        left = P(0, 0) if j == 1 else P(0, 2 + (j - 1) / n)
        right = P(1, 1) if j == n else P(1, -2 - (n - j) / n)
        interior = [P(1 - 1 / c, 2 + j / n) for c in range(2, n)]
        return [left, *interior, right]

    return Grid.from_rows(row(j) for j in range(1, n + 1))


def _family_coords(n: int, depth: int, i: int, j: int, a: int, b: int) -> tuple[float, float]:
    # one expression shared by the generator and the reference grid, so the
    # float values match exactly (m is a power of two: a/m, b/m are exact)
    m = 1 << depth
    return (i + n * b + a / m, j + n * a + b / m)


def gen_adversarial_all(n: int, depth: int = 1) -> PointSet:
    """Shifted lattice families whose nearest neighbors stay in-family.

    With m = 2**depth, family (a, b) for a, b in 0..m-1 is the unit-spaced
    (n/m)-by-(n/m) lattice at (i + n*b + a/m, j + n*a + b/m).  In-family
    spacing is 1 while distinct families stay >= n - n/m apart on some
    axis, so every point's true neighbor is a sibling from its own family.
    At depth 1 the four families are p = (i, j), q = (i+n, j+0.5),
    r = (i+0.5, j+n), s = (i+n+0.5, j+n+0.5).  Requires n a multiple of m
    with n/m >= 2 (depth 1: even n >= 4); emits n**2 points, families in
    (a, b) order (p, q, r, s at depth 1), each swept j-major
    (p_(0,0), p_(1,0), ..).
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    m = 1 << depth
    if n % m or n // m < 2:
        raise ValueError(
            f"the construction needs n a multiple of {m} with n >= {2 * m}"
        )
    side = n // m
    sweep = [(i, j) for j in range(side) for i in range(side)]
    coords: list[tuple[Number, Number]] = []
    for a in range(m):
        for b in range(m):
            coords += [_family_coords(n, depth, i, j, a, b) for i, j in sweep]
    return PointSet.from_coords(coords)


def adversarial_all_grid(n: int, depth: int = 1) -> Grid:
    """The reference stable arrangement of gen_adversarial_all(n, depth).

    Families interleave in both directions with period m = 2**depth:
    cell (c, r) holds member ((c-1)//m, (r-1)//m) of family
    ((c-1) mod m, (r-1) mod m).  Grid neighbors are always cross-family,
    and the in-family true neighbor sits m cells away, so rings of radius
    < m never see it.  At depth 1: odd rows alternate p and r, even rows
    alternate q and s.
    """
    ps = gen_adversarial_all(n, depth)
    by_coords = {p.coords: p for p in ps}
    m = 1 << depth
    rows = []
    for r in range(1, n + 1):
        b, j = (r - 1) % m, (r - 1) // m
        rows.append(
            [
                by_coords[_family_coords(n, depth, (c - 1) // m, j, (c - 1) % m, b)]
                for c in range(1, n + 1)
            ]
        )
    return Grid.from_rows(rows)
