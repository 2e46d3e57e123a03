"""Incidence combinatorics of the degenerated surface.

The degenerated surface is a cycle of n quadrics, each split into two
triangles: 2n planes glued along 2n lines meeting in 2n triple points.
Vertices are numbered 1..n along the bottom row and n+1..2n along the top;
vertical line k joins (k, n+k), diagonal k joins (k, n+k+1) with diagonal n
wrapping to (n, n+1).  Lines are then renumbered by reverse-lexicographic
order on their endpoint pairs, which is the ordering every downstream
computation assumes.
"""
from __future__ import annotations

from dataclasses import dataclass

VERTICAL = "vertical"
DIAGONAL = "diagonal"


@dataclass(frozen=True)
class LineRecord:
    index: int
    endpoints: tuple[int, int]  # (alpha, beta) with alpha < beta
    klass: str
    adjacent_planes: tuple[int, int]


@dataclass(frozen=True)
class ThreePoint:
    index: int
    vertex: int
    vertical_line: int
    diagonal_line: int


@dataclass(frozen=True)
class IncidenceComplex:
    n: int
    lines: tuple[LineRecord, ...]
    three_points: tuple[ThreePoint, ...]
    planes: tuple[int, ...]
    incidental_pairs: tuple[tuple[int, int], ...]

    def line(self, i: int) -> LineRecord:
        if not 1 <= i <= 2 * self.n:
            raise ValueError(f"line index {i} outside 1..{2 * self.n}")
        return self.lines[i - 1]

    def second_vertex(self, i: int) -> int:
        return self.line(i).endpoints[1]

    def three_point(self, k: int) -> ThreePoint:
        if not 1 <= k <= 2 * self.n:
            raise ValueError(f"3-point index {k} outside 1..{2 * self.n}")
        return self.three_points[k - 1]

    def lines_intersect(self, i: int, j: int) -> bool:
        return bool(set(self.line(i).endpoints) & set(self.line(j).endpoints))

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "lines": [
                {
                    "index": l.index,
                    "endpoints": list(l.endpoints),
                    "class": l.klass,
                    "planes": list(l.adjacent_planes),
                }
                for l in self.lines
            ],
            "three_points": [
                {
                    "index": t.index,
                    "vertex": t.vertex,
                    "vertical": t.vertical_line,
                    "diagonal": t.diagonal_line,
                }
                for t in self.three_points
            ],
            "incidental_pairs": [list(p) for p in self.incidental_pairs],
        }


def build_complex(n: int) -> IncidenceComplex:
    """Construct the 2n-plane incidence complex for n >= 2."""
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")

    raw: list[tuple[tuple[int, int], str]] = []
    for k in range(1, n + 1):
        raw.append(((k, n + k), VERTICAL))
    for k in range(1, n):
        raw.append(((k, n + k + 1), DIAGONAL))
    raw.append(((n, n + 1), DIAGONAL))

    # reverse-lexicographic: sort by second endpoint, then first
    raw.sort(key=lambda item: (item[0][1], item[0][0]))

    lines = []
    for idx, (endpoints, klass) in enumerate(raw, start=1):
        if idx == 1:
            planes = (1, 2)
        elif idx == 2:
            planes = (2 * n, 1)
        else:
            planes = (idx - 1, idx)
        lines.append(LineRecord(idx, endpoints, klass, planes))

    _check_classification(lines, n)

    lines_at_vertex: dict[int, list[LineRecord]] = {v: [] for v in range(1, 2 * n + 1)}
    for l in lines:
        for v in l.endpoints:
            lines_at_vertex[v].append(l)

    three_points = []
    for v in range(1, 2 * n + 1):
        at_v = lines_at_vertex[v]
        if len(at_v) != 2:
            raise AssertionError(f"vertex {v} lies on {len(at_v)} lines, expected 2")
        vert = [l for l in at_v if l.klass == VERTICAL]
        diag = [l for l in at_v if l.klass == DIAGONAL]
        if len(vert) != 1 or len(diag) != 1:
            raise AssertionError(f"vertex {v} is not a vertical/diagonal crossing")
        three_points.append(ThreePoint(v, v, vert[0].index, diag[0].index))

    pairs = []
    for i in range(1, 2 * n + 1):
        for j in range(i + 1, 2 * n + 1):
            if not set(lines[i - 1].endpoints) & set(lines[j - 1].endpoints):
                pairs.append((i, j))
    if len(pairs) != 2 * n * n - 3 * n:
        raise AssertionError(f"incidental pair count {len(pairs)} != 2n^2-3n")

    return IncidenceComplex(
        n=n,
        lines=tuple(lines),
        three_points=tuple(three_points),
        planes=tuple(range(1, 2 * n + 1)),
        incidental_pairs=tuple(pairs),
    )


def _check_classification(lines: list[LineRecord], n: int) -> None:
    # line 1 vertical, line 2 diagonal, then odds diagonal / evens vertical
    expected = {1: VERTICAL, 2: DIAGONAL}
    for l in lines:
        want = expected.get(l.index, DIAGONAL if l.index % 2 == 1 else VERTICAL)
        if l.klass != want:
            raise AssertionError(f"line {l.index} classified {l.klass}, expected {want}")


def three_point_lines(c: IncidenceComplex, k: int) -> tuple[int, int]:
    """(vertical index, diagonal index) of the two lines through V_k."""
    t = c.three_point(k)
    return (t.vertical_line, t.diagonal_line)


def incidental_pairs(c: IncidenceComplex) -> list[tuple[int, int]]:
    """Sorted unordered line pairs sharing no vertex."""
    return list(c.incidental_pairs)
