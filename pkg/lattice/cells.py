# lattice/cells.py
"""Unit triangles of the triangular lattice.

Lattice points are integer pairs (u, v) with u + v even; u counts half
spacings along a row and v counts rows. A cell is named by (u, v): an Up cell
has vertices (u-1, v), (u+1, v), (u, v+1) and a Down cell has vertices
(u, v), (u-1, v+1), (u+1, v+1). The orientation follows from the parity of
u + v, so adjacency and isometries are integer arithmetic.
"""
import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional, Tuple

Point = Tuple[int, int]
LatticeEdge = Tuple[Point, Point]

SQRT3_2 = math.sqrt(3) / 2


class Orient(str, Enum):
    UP = "U"
    DOWN = "D"


def orient_at(u: int, v: int) -> Orient:
    return Orient.UP if (u + v) % 2 else Orient.DOWN


def lattice_edge(p: Point, q: Point) -> LatticeEdge:
    """Canonical (sorted) form of the edge between two lattice points"""
    return (p, q) if p <= q else (q, p)


def to_euclid(point: Point) -> Tuple[float, float]:
    """Plane position of a lattice point, unit lattice spacing; used for drawing only"""
    return point[0] / 2, point[1] * SQRT3_2


@dataclass(frozen=True, order=True)
class TriCell:
    """One unit triangle"""
    u: int
    v: int
    orient: Orient

    def __post_init__(self):
        orient = Orient(self.orient)
        if orient_at(self.u, self.v) is not orient:
            raise ValueError(f"No {orient.name} cell at ({self.u}, {self.v})")
        object.__setattr__(self, "orient", orient)

    @classmethod
    def at(cls, u: int, v: int) -> "TriCell":
        return cls(u, v, orient_at(u, v))

    @classmethod
    def from_vertices(cls, points: Iterable[Point]) -> "TriCell":
        """The cell whose three corners are the given lattice points"""
        pts = sorted(points, key=lambda p: (p[1], p[0]))
        if len(pts) != 3:
            raise ValueError(f"A cell has three vertices, got {len(pts)}")
        if pts[0][1] == pts[1][1]:
            return cls((pts[0][0] + pts[1][0]) // 2, pts[0][1], Orient.UP)
        return cls(pts[0][0], pts[0][1], Orient.DOWN)

    @property
    def is_up(self) -> bool:
        return self.orient is Orient.UP

    def vertices(self) -> Tuple[Point, Point, Point]:
        u, v = self.u, self.v
        if self.is_up:
            return (u - 1, v), (u + 1, v), (u, v + 1)
        return (u, v), (u - 1, v + 1), (u + 1, v + 1)

    def edges(self) -> Tuple[LatticeEdge, LatticeEdge, LatticeEdge]:
        a, b, c = self.vertices()
        return lattice_edge(a, b), lattice_edge(b, c), lattice_edge(a, c)

    def horizontal_edge(self) -> LatticeEdge:
        """Bottom edge of an Up cell, top edge of a Down cell"""
        if self.is_up:
            return lattice_edge((self.u - 1, self.v), (self.u + 1, self.v))
        return lattice_edge((self.u - 1, self.v + 1), (self.u + 1, self.v + 1))

    def neighbours(self) -> Tuple["TriCell", "TriCell", "TriCell"]:
        """The three edge-adjacent cells, listed clockwise around this one"""
        u, v = self.u, self.v
        if self.is_up:
            return (TriCell(u + 1, v, Orient.DOWN), TriCell(u, v - 1, Orient.DOWN),
                    TriCell(u - 1, v, Orient.DOWN))
        return (TriCell(u + 1, v, Orient.UP), TriCell(u - 1, v, Orient.UP),
                TriCell(u, v + 1, Orient.UP))

    def shared_edge(self, other: "TriCell") -> Optional[LatticeEdge]:
        common = set(self.vertices()) & set(other.vertices())
        if len(common) != 2 or other == self:
            return None
        return lattice_edge(*sorted(common))

    def centroid3(self) -> Point:
        """Three times the centroid, in (u, v) units; always integral"""
        return (3 * self.u, 3 * self.v + (1 if self.is_up else 2))

    def centroid(self) -> Tuple[float, float]:
        cu, cv = self.centroid3()
        return cu / 6, cv / 3 * SQRT3_2

    def label(self) -> str:
        return f"{self.orient.value}({self.u},{self.v})"

    def __repr__(self) -> str:
        return self.label()
