# lattice/regions.py
"""Regions of the triangular lattice and the families the lab works with.

Every family is cut out of a hexagon by convex polygons: a cell belongs to a
polygon when its centroid lies strictly inside, which is exact because
centroids never sit on lattice lines.
"""
from dataclasses import dataclass, fields
from enum import Enum
from fractions import Fraction
from functools import cached_property
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from lattice.cells import LatticeEdge, Orient, Point, TriCell, lattice_edge, orient_at
from utils.errors import ConstructionError, ParameterError
from utils.logger import get_logger

logger = get_logger(__name__)

Polygon = Sequence[Point]


class Family(str, Enum):
    HEXAGON = "Hexagon"
    HOLED = "HoledHexagon"
    CORED = "CoredHexagon"
    D_REGION = "DRegion"
    RBAR = "RBarRegion"
    UPPER_HALF = "UpperHalf"


# document key for each RegionParams field
_PARAM_KEYS = {'is_': 'is'}


@dataclass(frozen=True)
class RegionParams:
    """Construction record: the family and the parameters it was built from"""
    family: Family
    a: Optional[int] = None
    b: Optional[int] = None
    c: Optional[int] = None
    ks: Optional[Tuple[int, ...]] = None
    x: Optional[int] = None
    eps: Optional[int] = None
    is_: Optional[Tuple[int, ...]] = None
    l: Optional[Tuple[int, ...]] = None
    q: Optional[Tuple[int, ...]] = None
    base: Optional[int] = None
    source: Optional["RegionParams"] = None

    def as_dict(self) -> Dict[str, Any]:
        """Parameters in declaration order, unset ones left out"""
        out: Dict[str, Any] = {}
        for f in fields(self):
            value = getattr(self, f.name)
            if f.name == 'family' or value is None:
                continue
            if isinstance(value, RegionParams):
                value = {'family': value.family.value, **value.as_dict()}
            elif isinstance(value, tuple):
                value = list(value)
            out[_PARAM_KEYS.get(f.name, f.name)] = value
        return out

    @classmethod
    def from_dict(cls, family: str, params: Dict[str, Any]) -> "RegionParams":
        reverse = {v: k for k, v in _PARAM_KEYS.items()}
        known = {f.name for f in fields(cls)}
        kwargs: Dict[str, Any] = {}
        for key, value in params.items():
            name = reverse.get(key, key)
            if name not in known or name == 'family':
                raise ParameterError(f"Unknown region parameter '{key}'")
            if name == 'source':
                value = cls.from_dict(value.get('family'), {k: v for k, v in value.items() if k != 'family'})
            elif isinstance(value, list):
                value = tuple(value)
            kwargs[name] = value
        try:
            return cls(family=Family(family), **kwargs)
        except ValueError:
            raise ParameterError(f"Unknown region family '{family}'")

    def describe(self) -> str:
        inner = ", ".join(f"{k}={v}" for k, v in self.as_dict().items() if k != 'source')
        return f"{self.family.value}({inner})"


@dataclass(frozen=True)
class Region:
    """A finite set of cells, possibly with free boundary edges and half-weight dual edges"""
    cells: FrozenSet[TriCell]
    params: RegionParams
    free_edges: FrozenSet[LatticeEdge] = frozenset()
    half_edges: FrozenSet[FrozenSet[TriCell]] = frozenset()

    @property
    def family(self) -> Family:
        return self.params.family

    @property
    def is_closed(self) -> bool:
        return not self.free_edges

    @cached_property
    def sorted_cells(self) -> List[TriCell]:
        return sorted(self.cells)

    @cached_property
    def up_count(self) -> int:
        return sum(1 for c in self.cells if c.is_up)

    @property
    def down_count(self) -> int:
        return len(self.cells) - self.up_count

    @property
    def is_balanced(self) -> bool:
        return self.up_count == self.down_count

    def center(self) -> Tuple[Fraction, Fraction]:
        """Mean of the cell centroids in (u, v) units"""
        if not self.cells:
            raise ConstructionError("An empty region has no center")
        su = sum(c.centroid3()[0] for c in self.cells)
        sv = sum(c.centroid3()[1] for c in self.cells)
        n = 3 * len(self.cells)
        return Fraction(su, n), Fraction(sv, n)

    @cached_property
    def adjacency(self) -> Dict[TriCell, Tuple[TriCell, ...]]:
        """Neighbours inside the region, clockwise around each cell"""
        return {c: tuple(n for n in c.neighbours() if n in self.cells) for c in self.sorted_cells}

    def dual_edges(self) -> List[Tuple[TriCell, TriCell]]:
        """Adjacent pairs, each once, Up cell first"""
        return [(c, n) for c in self.sorted_cells if c.is_up for n in self.adjacency[c]]

    def cell_graph(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(self.sorted_cells)
        graph.add_edges_from(self.dual_edges())
        return graph

    def components(self) -> List[FrozenSet[TriCell]]:
        parts = [frozenset(p) for p in nx.connected_components(self.cell_graph())]
        return sorted(parts, key=lambda p: min(p))

    @cached_property
    def boundary_edges(self) -> FrozenSet[LatticeEdge]:
        """Lattice edges with a region cell on exactly one side"""
        out = set()
        for cell in self.cells:
            for neighbour in cell.neighbours():
                if neighbour not in self.cells:
                    out.add(cell.shared_edge(neighbour))
        return frozenset(out)

    def cells_on(self, edge: LatticeEdge) -> List[TriCell]:
        return [c for c in self.cells if edge in c.edges()]


# -- validation ---------------------------------------------------------------

def check_index_list(values: Iterable[int], low: int, high: int, name: str) -> Tuple[int, ...]:
    """Strictly increasing integers in [low, high]"""
    values = tuple(values)
    for v in values:
        if not isinstance(v, int) or isinstance(v, bool):
            raise ParameterError(f"{name} entries must be integers, got {v!r}")
    if len(set(values)) != len(values):
        raise ParameterError(f"{name} has duplicate entries: {list(values)}")
    if list(values) != sorted(values):
        raise ParameterError(f"{name} must be strictly increasing, got {list(values)}")
    for v in values:
        if not low <= v <= high:
            raise ParameterError(f"{name} entry {v} outside [{low}, {high}]")
    return values


def _check_positive(**named: int) -> None:
    for name, value in named.items():
        if not isinstance(value, int) or isinstance(value, bool) or value < 1:
            raise ParameterError(f"{name} must be a positive integer, got {value!r}")


def _finish(cells: FrozenSet[TriCell], params: RegionParams,
            free_edges: FrozenSet[LatticeEdge] = frozenset(),
            half_edges: FrozenSet[FrozenSet[TriCell]] = frozenset()) -> Region:
    region = Region(cells=cells, params=params, free_edges=free_edges, half_edges=half_edges)
    if region.is_closed and not region.is_balanced:
        raise ConstructionError(
            f"{params.describe()} is not balanced: {region.up_count} Up cells, {region.down_count} Down cells"
        )
    stray = free_edges - region.boundary_edges
    if stray:
        raise ConstructionError(f"{params.describe()} has free edges off its boundary: {sorted(stray)[:3]}")
    for pair in half_edges:
        c, d = tuple(pair)
        if c not in cells or d not in cells or c.shared_edge(d) is None:
            raise ConstructionError(f"{params.describe()} has a half-weight edge that is not a dual edge: {sorted(pair)}")
    parts = len(region.components()) if cells else 0
    if parts > 1:
        # holes or a core spanning the whole axis cut the region in two
        logger.debug(f"{params.describe()} splits into {parts} components")
    logger.debug(f"Built {params.describe()} with {len(cells)} cells")
    return region


# -- polygons -----------------------------------------------------------------

def hexagon_polygon(a: int, b: int, c: int) -> List[Point]:
    """Corners of the hexagon with sides c, b, a, c, b, a counter-clockwise from the bottom"""
    return [(0, 0), (2 * c, 0), (2 * c + b, b), (2 * c - a + b, a + b), (b - a, a + b), (-a, a)]


def hole_polygons(side: int, b: int, ks: Sequence[int]) -> List[List[Point]]:
    """The two side-2 triangles removed for each hole index, mirror images through the center"""
    holes = []
    for k in ks:
        v0 = 2 * side - 2 * k
        holes.append([(2 * b - 2, v0), (2 * b + 2, v0), (2 * b, v0 + 2)])
        holes.append([(2 * b, 2 * k - 2), (2 * b + 2, 2 * k), (2 * b - 2, 2 * k)])
    return holes


def core_polygon(side: int, b: int, x: int) -> List[Point]:
    """The central rhombus of side 2x-1"""
    m = 2 * x - 1
    return [(2 * b, side - m), (2 * b + m, side), (2 * b, side + m), (2 * b - m, side)]


def _strictly_inside(poly3: Sequence[Point], p: Point) -> bool:
    n = len(poly3)
    for i in range(n):
        (x1, y1), (x2, y2) = poly3[i], poly3[(i + 1) % n]
        if (x2 - x1) * (p[1] - y1) - (y2 - y1) * (p[0] - x1) <= 0:
            return False
    return True


def cells_in_polygon(poly: Polygon, holes: Sequence[Polygon] = ()) -> FrozenSet[TriCell]:
    """Cells of a convex counter-clockwise polygon minus convex holes"""
    if not poly:
        return frozenset()
    outer = [(3 * u, 3 * v) for u, v in poly]
    inner = [[(3 * u, 3 * v) for u, v in h] for h in holes]
    us = [p[0] for p in poly]
    vs = [p[1] for p in poly]
    cells = set()
    for v in range(min(vs), max(vs)):
        for u in range(min(us) - 1, max(us) + 2):
            cell = TriCell(u, v, orient_at(u, v))
            centroid = cell.centroid3()
            if _strictly_inside(outer, centroid) and not any(_strictly_inside(h, centroid) for h in inner):
                cells.add(cell)
    return frozenset(cells)


# -- families -----------------------------------------------------------------

def hexagon(a: int, b: int, c: int) -> Region:
    """Hexagon with sides a, b, c, a, b, c; 2(ab + bc + ca) cells"""
    _check_positive(a=a, b=b, c=c)
    return _finish(cells_in_polygon(hexagon_polygon(a, b, c)), RegionParams(Family.HEXAGON, a=a, b=b, c=c))


def holed_hexagon(a: int, b: int, ks: Sequence[int] = ()) -> Region:
    """Hexagon with sides a, a, 2b less the 2s side-2 triangles on its hole axis.

    Side a = 0 is accepted and gives the empty region, which is where reduce_k1
    ends when every index is peeled off.
    """
    if not isinstance(a, int) or isinstance(a, bool) or a < 0:
        raise ParameterError(f"a must be a non-negative integer, got {a!r}")
    _check_positive(b=b)
    ks = check_index_list(ks, 1, a // 2, "ks")
    params = RegionParams(Family.HOLED, a=a, b=b, ks=ks)
    if a == 0:
        return _finish(frozenset(), params)
    cells = cells_in_polygon(hexagon_polygon(a, a, 2 * b), hole_polygons(a, b, ks))
    return _finish(cells, params)


def cored_hexagon(a: int, b: int, ks: Sequence[int], x: int) -> Region:
    """Holed hexagon of odd side 2a-1 with the central rhombus of side 2x-1 removed"""
    _check_positive(a=a, b=b, x=x)
    side = 2 * a - 1
    ks = check_index_list(ks, 1, side // 2, "ks")
    if x > a:
        raise ParameterError(f"x must satisfy 1 <= x <= a = {a}, got {x}")
    colliding = [k for k in ks if k >= a - x + 1]
    if colliding:
        raise ConstructionError(f"Core of side {2 * x - 1} meets the hole k={colliding[0]}")
    holes = hole_polygons(side, b, ks) + [core_polygon(side, b, x)]
    cells = cells_in_polygon(hexagon_polygon(side, side, 2 * b), holes)
    return _finish(cells, RegionParams(Family.CORED, a=a, b=b, ks=ks, x=x))


def axis_half(cells: Iterable[TriCell], axis_u: int, centre_row: int, odd_side: bool) -> FrozenSet[TriCell]:
    """One cell from each 180-degree orbit: right of the hole axis, or on it and above the center"""
    threshold = centre_row + 1 if odd_side else centre_row
    return frozenset(c for c in cells if c.u > axis_u or (c.u == axis_u and c.v >= threshold))


def axis_pairs(cells: FrozenSet[TriCell], axis_u: int) -> FrozenSet[FrozenSet[TriCell]]:
    """Dual edges joining two cells of the axis column"""
    pairs = set()
    for cell in cells:
        if cell.u == axis_u and cell.is_up:
            below = TriCell(axis_u, cell.v - 1, Orient.DOWN)
            if below in cells:
                pairs.add(frozenset((cell, below)))
    return frozenset(pairs)


def _hole_indices(a: int, kept: Sequence[int]) -> List[int]:
    """Hole indices k = a + 1 - i for the i in [a] that are not kept"""
    kept_set = set(kept)
    return sorted(a + 1 - i for i in range(1, a + 1) if i not in kept_set)


def rbar_region(l: Sequence[int], q: Sequence[int], base: int) -> Region:
    """Half of a holed hexagon with bumps at l below and q above; axis edges weigh 1/2.

    l = q - 1 (dropping 1) is the even family, side 2 max(q); l = q is the odd
    family, side 2 max(q) + 1, with the central forced pair already removed.
    """
    _check_positive(base=base)
    if not q:
        raise ParameterError("q must not be empty")
    q = check_index_list(q, 1, max(q), "q")
    l = check_index_list(l, 1, max(q), "l")
    a = max(q)
    if list(l) == [r - 1 for r in q if r > 1]:
        side = 2 * a
    elif l == q:
        side = 2 * a + 1
    else:
        raise ParameterError(f"rbar_region only builds the halves of holed hexagons, where l is q shifted down by one "
                             f"(even side) or l equals q (odd side); got l={list(l)}, q={list(q)}")
    ks = _hole_indices(a, q)
    source = holed_hexagon(side, base, ks)
    cells = axis_half(source.cells, 2 * base, side, side % 2 == 1)
    return _finish(cells, RegionParams(Family.RBAR, l=l, q=q, base=base, source=source.params),
                   half_edges=axis_pairs(cells, 2 * base))


def d_region(a: int, b: int, eps: int, is_: Sequence[int]) -> Region:
    """Quarter of a holed hexagon whose cut along the center row is free"""
    _check_positive(a=a, b=b)
    if eps not in (-1, 0):
        raise ParameterError(f"eps must be -1 or 0, got {eps!r}")
    is_ = check_index_list(is_, 1, a, "is")
    side = 2 * a if eps == -1 else 2 * a + 1
    source = holed_hexagon(side, b, _hole_indices(a, is_))
    cells = frozenset(c for c in source.cells if c.u > 2 * b and c.v >= side)
    free = frozenset(c.horizontal_edge() for c in cells if c.is_up and c.v == side)
    return _finish(cells, RegionParams(Family.D_REGION, a=a, b=b, eps=eps, is_=is_, source=source.params),
                   free_edges=free)


def upper_half(region: Region) -> Region:
    """Cells on or above the center row; the cut along that row is free"""
    _, cv = region.center()
    if cv.denominator != 1:
        raise ParameterError(f"{region.params.describe()} has no lattice row through its center")
    row = int(cv)
    cells = frozenset(c for c in region.cells if c.v >= row)
    free = frozenset(c.horizontal_edge() for c in cells if c.is_up and c.v == row)
    return _finish(cells, RegionParams(Family.UPPER_HALF, source=region.params), free_edges=free)


def from_params(params: RegionParams) -> Region:
    """Rebuild a region from its construction record"""
    p = params
    if p.family is Family.HEXAGON:
        return hexagon(p.a, p.b, p.c)
    if p.family is Family.HOLED:
        return holed_hexagon(p.a, p.b, p.ks or ())
    if p.family is Family.CORED:
        return cored_hexagon(p.a, p.b, p.ks or (), p.x)
    if p.family is Family.D_REGION:
        return d_region(p.a, p.b, p.eps, p.is_ or ())
    if p.family is Family.RBAR:
        return rbar_region(p.l or (), p.q or (), p.base)
    if p.family is Family.UPPER_HALF:
        if p.source is None:
            raise ParameterError("UpperHalf needs its source parameters")
        return upper_half(from_params(p.source))
    raise ParameterError(f"Unknown family {p.family}")
