"""Point model, axis comparators, padding and CSV round-trips."""

import random

import pytest

from nbgrid.points import (
    ParseError,
    Point,
    PointSet,
    axis_key,
    coordinate_names,
    normalize_ranks,
    pad_points,
    padded_side,
    read_points_csv,
    total_less,
    write_points_csv,
)


def test_point_validation():
    p = Point(3, (1.5, 2))
    assert p.d == 2
    with pytest.raises(ValueError):
        Point(0, (1, 2))
    with pytest.raises(ValueError):
        Point(1, ())


def test_point_set_requires_contiguous_ids():
    with pytest.raises(ValueError):
        PointSet([])
    with pytest.raises(ValueError):
        PointSet([Point(1, (0, 0)), Point(1, (1, 1))])
    with pytest.raises(ValueError):
        PointSet([Point(1, (0, 0)), Point(3, (1, 1))])
    with pytest.raises(ValueError):
        PointSet([Point(1, (0, 0)), Point(2, (1, 1, 1))])
    # ids may arrive in any order as long as they cover 1..m
    ps = PointSet([Point(2, (1, 1)), Point(1, (0, 0))])
    assert len(ps) == 2 and ps.d == 2


def test_from_coords_assigns_ids_in_order():
    ps = PointSet.from_coords([(5, 6), (7, 8), (9, 10)])
    assert [p.id for p in ps] == [1, 2, 3]
    assert ps.by_id(2).coords == (7, 8)
    with pytest.raises(KeyError):
        ps.by_id(17)


def test_axis_key_cycles_coordinates():
    p = Point(7, (10, 20, 30))
    assert axis_key(p, 1) == (10, 20, 30, 7)
    assert axis_key(p, 2) == (20, 30, 10, 7)
    assert axis_key(p, 3) == (30, 10, 20, 7)


def test_total_less_is_a_strict_total_order():
    rng = random.Random(11)
    # small integer coordinates force plenty of duplicate values
    pts = [Point(i, (rng.randint(0, 3), rng.randint(0, 3))) for i in range(1, 41)]
    for axis in (1, 2):
        for p in pts:
            assert not total_less(p, p, axis)
        for _ in range(200):
            a, b = rng.sample(pts, 2)
            assert total_less(a, b, axis) != total_less(b, a, axis)
        ordered = sorted(pts, key=lambda p: axis_key(p, axis))
        for a, b in zip(ordered, ordered[1:]):
            assert total_less(a, b, axis)
    with pytest.raises(ValueError):
        total_less(pts[0], pts[1], 3)
    with pytest.raises(ValueError):
        total_less(pts[0], Point(1, (1, 2, 3)), 1)


def test_duplicate_coordinates_break_ties_by_id():
    a, b = Point(1, (5, 5)), Point(2, (5, 5))
    assert total_less(a, b, 1) and total_less(a, b, 2)
    assert not total_less(b, a, 1)


def test_pad_points_appends_sentinels_one_past_the_max():
    ps = PointSet.from_coords([(1, 9), (4, 2), (0, 3)])
    padded = pad_points(ps, 2)
    assert len(padded) == 4
    assert padded.points[:3] == ps.points
    sentinel = padded.by_id(4)
    assert sentinel.coords == (5, 10)
    # every sentinel sorts strictly after every genuine point on both axes
    for axis in (1, 2):
        assert all(total_less(p, sentinel, axis) for p in ps)


def test_pad_points_exact_and_undersized():
    ps = PointSet.from_coords([(0, 0), (1, 1), (2, 2), (3, 3)])
    assert pad_points(ps, 2) == ps
    with pytest.raises(ValueError):
        pad_points(ps, 1)


def test_padded_side():
    assert padded_side(1, 2) == 1
    assert padded_side(2, 2) == 2
    assert padded_side(4, 2) == 2
    assert padded_side(5, 2) == 3
    assert padded_side(8, 3) == 2
    assert padded_side(9, 3) == 3


def test_normalize_ranks_makes_each_axis_a_permutation():
    rng = random.Random(23)
    coords = [(rng.randint(0, 5), rng.random()) for _ in range(16)]
    ps = PointSet.from_coords(coords)
    ranked = normalize_ranks(ps)
    assert [p.id for p in ranked] == [p.id for p in ps]
    for k in range(2):
        values = sorted(p.coords[k] for p in ranked)
        assert values == list(range(1, 17))
    # ranking preserves the (value, id) order along each axis
    for k in range(2):
        by_orig = sorted(ps.points, key=lambda p: (p.coords[k], p.id))
        by_rank = sorted(ranked.points, key=lambda p: p.coords[k])
        assert [p.id for p in by_orig] == [p.id for p in by_rank]
    assert normalize_ranks(ranked) == ranked


def test_csv_round_trip(tmp_path):
    ps = PointSet.from_coords([(1, 2.5), (3, 4.25), (0.125, 7)])
    path = tmp_path / "pts.csv"
    write_points_csv(str(path), ps)
    back = read_points_csv(str(path))
    assert back == ps
    # integer coordinates stay integers
    assert isinstance(back.by_id(1).coords[0], int)
    assert isinstance(back.by_id(1).coords[1], float)


def test_csv_round_trip_three_dimensional(tmp_path):
    ps = PointSet.from_coords([(1, 2, 3), (4, 5, 6), (7, 8, 9)])
    path = tmp_path / "pts3.csv"
    write_points_csv(str(path), ps)
    assert path.read_text().splitlines()[0] == "id,x,y,z"
    assert read_points_csv(str(path)) == ps


def test_csv_without_id_column(tmp_path):
    path = tmp_path / "bare.csv"
    path.write_text("x,y\n1,2\n3,4\n")
    ps = read_points_csv(str(path))
    assert [p.id for p in ps] == [1, 2]
    assert ps.by_id(2).coords == (3, 4)


def test_csv_skips_blank_lines(tmp_path):
    path = tmp_path / "blank.csv"
    path.write_text("id,x,y\n\n1,2,3\n\n2,4,5\n")
    assert len(read_points_csv(str(path))) == 2


def test_csv_parse_errors_carry_line_numbers(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("id,x,y\n1,2,3\n2,4\n")
    with pytest.raises(ParseError, match="line 3"):
        read_points_csv(str(path))
    path.write_text("id,x,y\n1,two,3\n")
    with pytest.raises(ParseError, match="line 2"):
        read_points_csv(str(path))
    path.write_text("")
    with pytest.raises(ParseError, match="no data rows"):
        read_points_csv(str(path))
    path.write_text("id,x,y\n")
    with pytest.raises(ParseError, match="no point rows"):
        read_points_csv(str(path))
    path.write_text("id,x,y\n1,2,3\n3,4,5\n")
    with pytest.raises(ParseError, match="contiguous"):
        read_points_csv(str(path))


def test_coordinate_names():
    assert coordinate_names(1) == ["x"]
    assert coordinate_names(3) == ["x", "y", "z"]
    assert coordinate_names(4) == ["x1", "x2", "x3", "x4"]
