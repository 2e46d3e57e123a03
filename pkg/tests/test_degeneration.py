import itertools

import pytest

from galcov.degeneration import (
    DIAGONAL,
    VERTICAL,
    build_complex,
    incidental_pairs,
    three_point_lines,
)


def test_rejects_small_n():
    with pytest.raises(ValueError):
        build_complex(1)


def test_n2_line_records():
    c = build_complex(2)
    assert c.line(1).endpoints == (1, 3) and c.line(1).klass == VERTICAL
    assert c.line(2).endpoints == (2, 3) and c.line(2).klass == DIAGONAL


def test_n3_counts():
    c = build_complex(3)
    assert len(c.lines) == 6
    assert len(c.three_points) == 6
    assert len(c.planes) == 6
    assert len(c.incidental_pairs) == 9


def test_n3_three_point_examples():
    c = build_complex(3)
    assert three_point_lines(c, 1) == (1, 3)
    assert three_point_lines(c, 3) == (6, 2)
    assert three_point_lines(c, 4) == (1, 2)
    assert three_point_lines(c, 5) == (4, 3)


def test_three_point_index_range():
    c = build_complex(2)
    with pytest.raises(ValueError):
        three_point_lines(c, 5)


def test_incidental_examples():
    assert len(incidental_pairs(build_complex(2))) == 2
    pairs = incidental_pairs(build_complex(3))
    assert len(pairs) == 9
    assert (1, 4) in pairs and (2, 5) in pairs
    assert (1, 2) not in pairs  # they meet at V_{n+1}


@pytest.mark.parametrize("n", range(2, 9))
def test_structure_invariants(n):
    c = build_complex(n)
    assert len(c.lines) == 2 * n
    assert len(c.three_points) == 2 * n
    assert len(c.incidental_pairs) == 2 * n * n - 3 * n

    # classification pattern
    assert c.line(1).klass == VERTICAL
    assert c.line(2).klass == DIAGONAL
    for i in range(3, 2 * n + 1):
        assert c.line(i).klass == (DIAGONAL if i % 2 == 1 else VERTICAL)

    # every vertex hosts exactly two lines, every line lies on two 3-points
    on_line = {i: 0 for i in range(1, 2 * n + 1)}
    for t in c.three_points:
        on_line[t.vertical_line] += 1
        on_line[t.diagonal_line] += 1
    assert all(v == 2 for v in on_line.values())

    # pair dichotomy: intersecting at exactly one 3-point, or incidental
    meets = 0
    for i, j in itertools.combinations(range(1, 2 * n + 1), 2):
        shared = set(c.line(i).endpoints) & set(c.line(j).endpoints)
        if shared:
            assert len(shared) == 1
            meets += 1
            assert (i, j) not in c.incidental_pairs
        else:
            assert (i, j) in c.incidental_pairs
    assert meets == 2 * n
    assert meets + len(c.incidental_pairs) == (2 * n) * (2 * n - 1) // 2

    # anchor 3-points
    assert set(three_point_lines(c, 1)) == {1, 3}
    assert set(three_point_lines(c, n)) == {2, 2 * n}
    assert set(three_point_lines(c, n + 1)) == {1, 2}
    assert set(three_point_lines(c, n + 2)) == {4, 3}


@pytest.mark.parametrize("n", range(2, 9))
def test_reverse_lex_sorting_is_identity(n):
    c = build_complex(n)
    order = sorted(c.lines, key=lambda l: (l.endpoints[1], l.endpoints[0]))
    assert [l.index for l in order] == list(range(1, 2 * n + 1))


@pytest.mark.parametrize("n", range(2, 6))
def test_plane_adjacency(n):
    c = build_complex(n)
    assert c.line(1).adjacent_planes == (1, 2)
    assert c.line(2).adjacent_planes == (2 * n, 1)
    for i in range(3, 2 * n + 1):
        assert c.line(i).adjacent_planes == (i - 1, i)
    # each plane borders exactly two numbered lines
    count = {p: 0 for p in c.planes}
    for l in c.lines:
        for p in l.adjacent_planes:
            count[p] += 1
    assert all(v == 2 for v in count.values())


def test_json_dict_shape():
    d = build_complex(2).to_json_dict()
    assert d["n"] == 2
    assert len(d["lines"]) == 4
    assert d["lines"][0]["endpoints"] == [1, 3]
    assert len(d["incidental_pairs"]) == 2
