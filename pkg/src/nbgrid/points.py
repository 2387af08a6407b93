"""Point model, point-set containers and CSV round-tripping.

A point carries a positive integer id and a coordinate tuple.  Ids inside a
PointSet are distinct and form the contiguous range 1..m, which lets the
rest of the package use them as dense array indices and as the universal
tie-break for comparator totality.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

Number = int | float


class ParseError(ValueError):
    """Malformed input file; carries the 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class GuardError(RuntimeError):
    """A resource guard refused the requested problem size."""


@dataclass(frozen=True, slots=True)
class Point:
    """A d-dimensional point with a unique positive id."""

    id: int
    coords: tuple[Number, ...]

    def __post_init__(self):
        if self.id < 1:
            raise ValueError(f"point id must be >= 1, got {self.id}")
        if not self.coords:
            raise ValueError("point needs at least one coordinate")

    @property
    def d(self) -> int:
        return len(self.coords)


class PointSet:
    """An ordered collection of points sharing one dimension.

    Ids must be distinct and cover 1..m exactly; insertion order is
    preserved and is meaningful (iterative builders place points in it).
    """

    __slots__ = ("points", "d")

    def __init__(self, points: Iterable[Point]):
        pts = list(points)
        if not pts:
            raise ValueError("point set may not be empty")
        d = pts[0].d
        for p in pts:
            if p.d != d:
                raise ValueError(f"mixed dimensions: {d} and {p.d}")
        ids = sorted(p.id for p in pts)
        if ids != list(range(1, len(pts) + 1)):
            raise ValueError("ids must be distinct and contiguous from 1")
        self.points = pts
        self.d = d

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[Point]:
        return iter(self.points)

    def __eq__(self, other) -> bool:
        return isinstance(other, PointSet) and self.points == other.points

    def by_id(self, id: int) -> Point:
        for p in self.points:
            if p.id == id:
                return p
        raise KeyError(id)

    @classmethod
    def from_coords(cls, coords: Iterable[Sequence[Number]]) -> "PointSet":
        """Build a set assigning ids 1..m in the given order."""
        return cls(
            Point(i, tuple(c)) for i, c in enumerate(coords, start=1)
        )


def axis_key(p: Point, axis: int) -> tuple:
    """Sort key for the total order along `axis` (1-based).

    Coordinates are compared cyclically starting at `axis`, with the point
    id appended as the final tie-break, so the induced order is total and
    strict even when coordinate values repeat.
    """
    c = p.coords
    return (*c[axis - 1 :], *c[: axis - 1], p.id)


def total_less(p: Point, q: Point, axis: int) -> bool:
    """Strict total comparison of two points along a coordinate axis."""
    if p.d != q.d:
        raise ValueError(f"dimension mismatch: {p.d} vs {q.d}")
    if not 1 <= axis <= p.d:
        raise ValueError(f"axis {axis} out of range 1..{p.d}")
    return axis_key(p, axis) < axis_key(q, axis)


def pad_points(ps: PointSet, n: int) -> PointSet:
    """Pad a set to exactly n**d points with sentinel entries.

    Every auxiliary point sits at (max_1 + 1, ..., max_d + 1), one past the
    coordinate-wise maximum, and takes the next free id; the id tie-break
    keeps the sentinels mutually ordered and strictly after every genuine
    point along every axis.
    """
    target = n**ps.d
    m = len(ps)
    if target < m:
        raise ValueError(f"n={n} gives {target} cells for {m} points")
    if target == m:
        return PointSet(ps.points)
    sentinel = tuple(
        max(p.coords[k] for p in ps) + 1 for k in range(ps.d)
    )
    padded = list(ps.points)
    padded.extend(Point(i, sentinel) for i in range(m + 1, target + 1))
    return PointSet(padded)


def padded_side(m: int, d: int) -> int:
    """Smallest n with n**d >= m."""
    n = 1
    while n**d < m:
        n += 1
    return n


def normalize_ranks(ps: PointSet) -> PointSet:
    """Replace each coordinate axis independently by ranks 1..m.

    Ranking sorts by (value, id), so duplicates get distinct ranks in id
    order and every axis of the result is a permutation of 1..m.  Point
    ids are preserved.
    """
    m = len(ps)
    ranked: dict[int, list[int]] = {p.id: [0] * ps.d for p in ps}
    for k in range(ps.d):
        order = sorted(ps.points, key=lambda p: (p.coords[k], p.id))
        for rank, p in enumerate(order, start=1):
            ranked[p.id][k] = rank
    return PointSet(
        Point(p.id, tuple(ranked[p.id])) for p in ps.points
    )


def read_points_csv(path: str) -> PointSet:
    """Read a point set from CSV.

    Expected header: ``id,x,y[,z,...]`` or just the coordinate columns, in
    which case ids are assigned 1..m in row order.  Coordinate fields parse
    as int when they look integral, float otherwise.
    """
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    rows = [(i, r) for i, r in enumerate(rows, start=1) if any(f.strip() for f in r)]
    if not rows:
        raise ParseError("no data rows", line=1)
    header_line, header = rows[0]
    has_id = header[0].strip().lower() == "id"
    coord_cols = len(header) - (1 if has_id else 0)
    if coord_cols < 1:
        raise ParseError("header has no coordinate columns", line=header_line)
    pts = []
    for line, row in rows[1:]:
        if len(row) != len(header):
            raise ParseError(
                f"expected {len(header)} fields, got {len(row)}", line=line
            )
        try:
            fields = [_parse_number(f) for f in row[1:]] if has_id else [
                _parse_number(f) for f in row
            ]
            pid = int(row[0]) if has_id else len(pts) + 1
        except ValueError as exc:
            raise ParseError(str(exc), line=line) from exc
        pts.append(Point(pid, tuple(fields)))
    if not pts:
        raise ParseError("no point rows after header", line=header_line)
    try:
        return PointSet(pts)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def write_points_csv(path: str, ps: PointSet) -> None:
    """Write a point set with an ``id,x,y[,z,...]`` header."""
    from .fsio import atomic_open

    names = coordinate_names(ps.d)
    with atomic_open(path) as fh:
        w = csv.writer(fh)
        w.writerow(["id", *names])
        for p in ps:
            w.writerow([p.id, *p.coords])


def coordinate_names(d: int) -> list[str]:
    """Column names for d coordinates: x,y,z up to 3, else x1..xd."""
    if d <= 3:
        return ["x", "y", "z"][:d]
    return [f"x{k}" for k in range(1, d + 1)]


def _parse_number(field: str) -> Number:
    text = field.strip()
    if not text:
        raise ValueError("empty coordinate field")
    try:
        return int(text)
    except ValueError:
        return float(text)
