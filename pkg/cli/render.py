# cli/render.py
"""SVG pictures of regions, one of their tilings, or their matching graphs.

The lattice rows run vertically in the picture, so the axis carrying the holes
comes out horizontal. Output is byte-stable for a given region and options.
"""
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from counting.oracle import enumerate_matchings
from counting.tilings import free_boundary_graph
from duality.match_graph import HALF, MatchGraph, dual_graph
from lattice.cells import LatticeEdge, Point, TriCell, to_euclid
from lattice.regions import Family, Region, core_polygon, hole_polygons
from utils.config_loader import load_config
from utils.errors import ParameterError
from utils.logger import get_logger

logger = get_logger(__name__)

OVERLAYS = ("none", "tiling", "dual", "quotient")


def _num(x: float) -> str:
    """Fixed precision, integral values without a decimal point"""
    r = round(x, 3)
    return str(int(r)) if r == int(r) else f"{r:.3f}".rstrip("0")


class _Canvas:
    def __init__(self, points: Iterable[Point], settings: Dict[str, Any]):
        self.spacing = settings.get('spacing', 24)
        self.margin = settings.get('margin', 12)
        coords = [self._raw(p) for p in points] or [(0.0, 0.0)]
        self.x0 = min(x for x, _ in coords)
        self.y0 = min(y for _, y in coords)
        self.width = max(x for x, _ in coords) - self.x0 + 2 * self.margin
        self.height = max(y for _, y in coords) - self.y0 + 2 * self.margin
        self.items: List[str] = []

    def _raw(self, point: Tuple[float, float]) -> Tuple[float, float]:
        x, y = to_euclid(point) if isinstance(point[0], int) else point
        # quarter turn: lattice rows become columns
        return y * self.spacing, x * self.spacing

    def xy(self, point) -> str:
        x, y = self._raw(point)
        return f"{_num(x - self.x0 + self.margin)},{_num(y - self.y0 + self.margin)}"

    def polygon(self, points: Sequence, **attrs: str) -> None:
        self.items.append(f'  <polygon points="{" ".join(self.xy(p) for p in points)}"{_attrs(attrs)} />')

    def line(self, p, q, **attrs: str) -> None:
        (x1, y1), (x2, y2) = self.xy(p).split(","), self.xy(q).split(",")
        self.items.append(f'  <line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"{_attrs(attrs)} />')

    def circle(self, p, r: float, **attrs: str) -> None:
        x, y = self.xy(p).split(",")
        self.items.append(f'  <circle cx="{x}" cy="{y}" r="{_num(r)}"{_attrs(attrs)} />')

    def svg(self, title: str) -> str:
        head = (f'<svg xmlns="http://www.w3.org/2000/svg" width="{_num(self.width)}" height="{_num(self.height)}" '
                f'viewBox="0 0 {_num(self.width)} {_num(self.height)}">')
        return "\n".join([head, f"  <title>{title}</title>", *self.items, "</svg>"]) + "\n"


def _attrs(attrs: Dict[str, str]) -> str:
    return "".join(f' {k.replace("_", "-")}="{v}"' for k, v in attrs.items())


def _holes(region: Region) -> List[List[Point]]:
    p = region.params
    if p.family is Family.HOLED and p.a:
        return hole_polygons(p.a, p.b, p.ks or ())
    if p.family is Family.CORED:
        side = 2 * p.a - 1
        return hole_polygons(side, p.b, p.ks or ()) + [core_polygon(side, p.b, p.x)]
    return []


def _direction(edge: LatticeEdge) -> int:
    """0 for a horizontal shared edge, 1 and 2 for the two slanted ones"""
    (u1, v1), (u2, v2) = edge
    if v1 == v2:
        return 0
    return 1 if (u2 - u1) * (v2 - v1) > 0 else 2


def _first_tiling(region: Region) -> Optional[List[Tuple[int, int]]]:
    g = free_boundary_graph(region) if region.free_edges else dual_graph(region)
    return next(iter(enumerate_matchings(g)), None)


def _draw_tiling(canvas: _Canvas, region: Region, settings: Dict[str, Any]) -> None:
    labels = region.sorted_cells
    fills = settings.get('lozenge_fills', ["#f2d16b", "#7fb3d5", "#c39bd3"])
    matching = _first_tiling(region)
    if matching is None:
        logger.warning(f"{region.params.describe()} has no tiling to draw")
        return
    for i, j in sorted(matching):
        c = labels[i]
        if i == j:
            # a lozenge sticking out through a free edge
            canvas.polygon(c.vertices(), fill=fills[0], stroke="#000", stroke_width="1.5",
                           stroke_dasharray=settings.get('free_edge_dash', "4,3"))
            continue
        d = labels[j]
        shared = c.shared_edge(d)
        fill = fills[_direction(shared) % len(fills)]
        canvas.polygon(c.vertices(), fill=fill, stroke=fill)
        canvas.polygon(d.vertices(), fill=fill, stroke=fill)
        for cell in (c, d):
            for p, q in cell.edges():
                if (p, q) != shared:
                    canvas.line(p, q, stroke="#000", stroke_width="1.5")


def _representative_edges(g: MatchGraph) -> List[Tuple[TriCell, TriCell, bool]]:
    """One drawn segment per graph edge; orbit vertices are drawn at their largest cell"""
    reps = [max(label) if isinstance(label, frozenset) else label for label in g.labels]
    out = []
    for (i, j), w in g.edges.items():
        c = reps[i]
        others = g.labels[j] if isinstance(g.labels[j], frozenset) else [g.labels[j]]
        d = next((o for o in sorted(others) if c.shared_edge(o) is not None), reps[j])
        out.append((c, d, w == HALF))
    return out


def _draw_graph(canvas: _Canvas, g: MatchGraph, settings: Dict[str, Any]) -> None:
    stroke = settings.get('graph_stroke', "#c0392b")
    dash = settings.get('free_edge_dash', "4,3")
    for c, d, half in _representative_edges(g):
        attrs = {"stroke": stroke, "stroke_width": "1.5"}
        if half:
            attrs["stroke_dasharray"] = dash
        canvas.line(c.centroid(), d.centroid(), **attrs)
    for i, label in enumerate(g.labels):
        c = max(label) if isinstance(label, frozenset) else label
        canvas.circle(c.centroid(), 2.5, fill=stroke)
        if i in g.loops:
            canvas.circle(c.centroid(), 6, fill="none", stroke=stroke)


def render_svg(region: Region, overlay: str = "none", graph: Optional[MatchGraph] = None,
               settings: Optional[Dict[str, Any]] = None) -> str:
    """The region's cells, holes and free edges, plus an optional overlay.

    `graph` is drawn for the 'dual' and 'quotient' overlays; the dual graph is
    built when none is given.
    """
    if overlay not in OVERLAYS:
        raise ParameterError(f"Unknown overlay '{overlay}'; expected one of {OVERLAYS}")
    settings = settings if settings is not None else load_config().get('render', {})
    holes = _holes(region)
    points = [p for c in region.cells for p in c.vertices()] + [p for h in holes for p in h]
    canvas = _Canvas(points, settings)

    for cell in region.sorted_cells:
        canvas.polygon(cell.vertices(), fill="#ffffff", stroke=settings.get('cell_stroke', "#9a9a9a"),
                       stroke_width="0.5")
    for hole in holes:
        canvas.polygon(hole, fill=settings.get('hole_fill', "#4a4a4a"), stroke="#000")

    if overlay == "tiling":
        _draw_tiling(canvas, region, settings)
    elif overlay in ("dual", "quotient"):
        if graph is None:
            if overlay == "quotient":
                raise ParameterError("The quotient overlay needs the quotient graph")
            graph = dual_graph(region)
        _draw_graph(canvas, graph, settings)

    for p, q in sorted(region.boundary_edges):
        attrs = {"stroke": "#000", "stroke_width": "2"}
        if (p, q) in region.free_edges:
            attrs["stroke_dasharray"] = settings.get('free_edge_dash', "4,3")
        canvas.line(p, q, **attrs)

    logger.debug(f"Rendered {region.params.describe()} with overlay={overlay}")
    return canvas.svg(region.params.describe())
