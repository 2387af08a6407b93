"""The neighborhood grid: an n**d lattice holding exactly one point per cell.

Cell addressing is 1-based: a d=2 cell is (column, row) with column 1 on
the left and row 1 at the bottom.  A grid is *stable* when along every
axis, every line of cells is strictly increasing under the cyclic
coordinate comparator for that axis (rows ordered by (x, y), columns by
(y, x) in two dimensions).  All serialized forms state this convention.
"""

from __future__ import annotations

import hashlib
import itertools
import json
from dataclasses import dataclass
from typing import Iterable, Iterator

from .points import (
    Number,
    ParseError,
    Point,
    PointSet,
    axis_key,
    pad_points,
    padded_side,
    total_less,
)

Cell = tuple[int, ...]

LAYOUT_NOTE = (
    "cell = (column, row, ...); index 1 is the left column / bottom row; "
    "cells are listed row-major from the bottom row"
)


class Grid:
    """Immutable n**d grid with one point per cell.

    Internally points are kept flat in serialization order: axis 1 varies
    fastest, so for d=2 the list reads row by row from the bottom-left.
    """

    __slots__ = ("n", "d", "_flat", "_cell_of_id", "padding_ids")

    def __init__(self, n: int, d: int, cells: dict[Cell, Point],
                 padding_ids: frozenset[int] = frozenset()):
        if n < 1 or d < 1:
            raise ValueError("n and d must be positive")
        if len(cells) != n**d:
            raise ValueError(f"expected {n**d} cells, got {len(cells)}")
        flat: list[Point | None] = [None] * n**d
        for cell, p in cells.items():
            if len(cell) != d or not all(1 <= c <= n for c in cell):
                raise ValueError(f"cell {cell} outside the {n}**{d} lattice")
            if p.d != d:
                raise ValueError(f"point {p.id} has dimension {p.d}, grid has {d}")
            flat[self._index(cell, n)] = p
        self.n = n
        self.d = d
        self._flat = tuple(flat)  # fully populated: len(cells) == n**d and indices are unique
        self._cell_of_id: dict[int, Cell] = {}
        for cell in self.cells():
            p = self.point_at(cell)
            if p.id in self._cell_of_id:
                raise ValueError(f"duplicate point id {p.id}")
            self._cell_of_id[p.id] = cell
        self.padding_ids = padding_ids

    @staticmethod
    def _index(cell: Cell, n: int) -> int:
        idx = 0
        for c in reversed(cell):
            idx = idx * n + (c - 1)
        return idx

    def point_at(self, cell: Cell) -> Point:
        return self._flat[self._index(cell, self.n)]

    def cells(self) -> Iterator[Cell]:
        """All cells in serialization order (axis 1 fastest)."""
        for combo in itertools.product(range(1, self.n + 1), repeat=self.d):
            yield tuple(reversed(combo))

    def points(self) -> Iterator[Point]:
        return iter(self._flat)

    def genuine_points(self) -> list[Point]:
        return [p for p in self._flat if p.id not in self.padding_ids]

    def locate(self, id: int) -> Cell:
        """Cell currently holding the point with this id."""
        try:
            return self._cell_of_id[id]
        except KeyError:
            raise KeyError(f"no point with id {id} in grid") from None

    def point_set(self) -> PointSet:
        return PointSet(sorted(self._flat, key=lambda p: p.id))

    def replace(self, assignment: dict[Cell, Point]) -> "Grid":
        """New grid with some cells reassigned."""
        cells = {cell: self.point_at(cell) for cell in self.cells()}
        cells.update(assignment)
        return Grid(self.n, self.d, cells, self.padding_ids)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Grid)
            and self.n == other.n
            and self.d == other.d
            and self._flat == other._flat
            and self.padding_ids == other.padding_ids
        )

    def digest(self) -> str:
        """Short content hash of the full grid state."""
        payload = json.dumps(
            [[p.id, *p.coords] for p in self._flat], separators=(",", ":")
        )
        return hashlib.sha256(payload.encode()).hexdigest()[:16]

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[Point]],
                  padding_ids: frozenset[int] = frozenset()) -> "Grid":
        """d=2 convenience constructor; rows listed bottom row first."""
        rows = [list(r) for r in rows]
        n = len(rows)
        cells = {}
        for r, row in enumerate(rows, start=1):
            if len(row) != n:
                raise ValueError("grid rows must be square")
            for c, p in enumerate(row, start=1):
                cells[(c, r)] = p
        return cls(n, 2, cells, padding_ids)

    def rows(self) -> list[list[Point]]:
        """d=2 view: list of rows bottom-first, each left to right."""
        if self.d != 2:
            raise ValueError("rows() is a d=2 view")
        n = self.n
        return [
            [self._flat[(r - 1) * n + (c - 1)] for c in range(1, n + 1)]
            for r in range(1, n + 1)
        ]


@dataclass(frozen=True)
class StabilityReport:
    """Verdict plus every violating adjacent pair, as (axis, (cell, cell))."""

    stable: bool
    violations: tuple[tuple[int, tuple[Cell, Cell]], ...]


def is_stable(g: Grid) -> StabilityReport:
    """Check every axis-adjacent pair of cells against its axis comparator.

    Adjacent pairs suffice: the comparators are transitive, so a line is
    sorted exactly when each neighboring pair is.
    """
    violations = []
    n, d = g.n, g.d
    for axis in range(1, d + 1):
        others = [k for k in range(d) if k != axis - 1]
        for rest in itertools.product(range(1, n + 1), repeat=d - 1):
            prev_cell = None
            prev_key = None
            for c in range(1, n + 1):
                cell = [0] * d
                cell[axis - 1] = c
                for slot, value in zip(others, rest):
                    cell[slot] = value
                cell = tuple(cell)
                key = axis_key(g.point_at(cell), axis)
                if prev_key is not None and not prev_key < key:
                    violations.append((axis, (prev_cell, cell)))
                prev_cell, prev_key = cell, key
    return StabilityReport(not violations, tuple(violations))


def build_stable(ps: PointSet | Iterable[Point], n: int | None = None) -> Grid:
    """Construct a stable grid directly by recursive sorting and splitting.

    The point set is padded to n**d sentinels-last, sorted along axis 1,
    split into n equal blocks (these become the axis-1 slices), and each
    block is arranged recursively along the next axis.  Cost is dominated
    by the sorts: O(N log N) comparisons for N = n**d.
    """
    if not isinstance(ps, PointSet):
        ps = PointSet(ps)
    d = ps.d
    if n is None:
        n = padded_side(len(ps), d)
    padded = pad_points(ps, n)
    padding = frozenset(p.id for p in padded if p.id > len(ps))
    cells: dict[Cell, Point] = {}

    def arrange(block: list[Point], axis: int, prefix: tuple[int, ...]):
        block = sorted(block, key=lambda p: axis_key(p, axis))
        if axis == d:
            for c, p in enumerate(block, start=1):
                cells[prefix + (c,)] = p
            return
        size = len(block) // n
        for b in range(n):
            arrange(block[b * size : (b + 1) * size], axis + 1, prefix + (b + 1,))

    arrange(list(padded), 1, ())
    # arrange() builds cell tuples axis-1 first
    return Grid(n, d, cells, padding)


def grid_to_json(g: Grid) -> dict:
    """Plain-dict form of a grid, suitable for json.dump."""
    return {
        "n": g.n,
        "d": g.d,
        "layout": LAYOUT_NOTE,
        "cells": [
            {
                "cell": list(cell),
                "id": g.point_at(cell).id,
                "coords": list(g.point_at(cell).coords),
            }
            for cell in g.cells()
        ],
        "padding_ids": sorted(g.padding_ids),
    }


def grid_from_json(doc: dict) -> Grid:
    """Inverse of grid_to_json with schema validation."""
    try:
        n, d = int(doc["n"]), int(doc["d"])
        cells = {}
        for entry in doc["cells"]:
            cell = tuple(int(c) for c in entry["cell"])
            coords = tuple(_coerce(v) for v in entry["coords"])
            cells[cell] = Point(int(entry["id"]), coords)
        padding = frozenset(int(i) for i in doc.get("padding_ids", []))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad grid document: {exc}") from exc
    return Grid(n, d, cells, padding)


def write_grid_json(path: str, g: Grid) -> None:
    from .fsio import atomic_open

    with atomic_open(path) as fh:
        json.dump(grid_to_json(g), fh, indent=1)
        fh.write("\n")


def read_grid_json(path: str) -> Grid:
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}", line=exc.lineno) from exc
    return grid_from_json(doc)


def _coerce(v) -> Number:
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ValueError(f"coordinate {v!r} is not a number")
    return v
