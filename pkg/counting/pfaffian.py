# counting/pfaffian.py
"""Planar matching counter.

A Kasteleyn orientation of a plane graph has, on every face but one, an odd
number of edges pointing the way the face is walked. The Pfaffian of the signed
adjacency matrix then counts perfect matchings with their weights. Everything
runs on Python integers: weights are scaled by their common denominator and
determinants are taken by fraction-free elimination.
"""
import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

import networkx as nx

from duality.match_graph import EdgeKey, MatchGraph, edge_key
from utils.config_loader import load_config
from utils.errors import ContractError, EmbeddingRequiredError
from utils.logger import get_logger

logger = get_logger(__name__)

HalfEdge = Tuple[int, int]
Face = List[HalfEdge]


@dataclass(frozen=True)
class KasteleynOrientation:
    """Direction of every edge, with the faces it was built from.

    Each face is the cycle of half-edges met while walking it with the face on
    the right; `outer` holds the index of the one face per component that is
    left unconstrained.
    """
    arcs: Dict[EdgeKey, HalfEdge]
    faces: List[Face]
    outer: FrozenSet[int]

    def sign(self, i: int, j: int) -> int:
        return 1 if self.arcs[edge_key(i, j)] == (i, j) else -1

    def agreeing(self, face: Face) -> int:
        """Edges of `face` oriented along the walk"""
        return sum(1 for v, w in face if self.arcs[edge_key(v, w)] == (v, w))

    def bounded_faces(self) -> List[Face]:
        return [f for k, f in enumerate(self.faces) if k not in self.outer]


def _walk_faces(embedding: nx.PlanarEmbedding, component: Sequence[int]) -> List[Face]:
    seen = set()
    faces: List[Face] = []
    for v in component:
        for w in embedding.neighbors_cw_order(v):
            if (v, w) in seen:
                continue
            nodes = embedding.traverse_face(v, w, seen)
            faces.append([(nodes[k], nodes[(k + 1) % len(nodes)]) for k in range(len(nodes))])
    return faces


def kasteleyn_orientation(g: MatchGraph) -> KasteleynOrientation:
    """Orient a spanning forest arbitrarily, then fix the remaining edges face by face"""
    if g.loops:
        raise ContractError(f"{g.name}: remove loops before orienting")
    embedding = g.planar_embedding()
    graph = g.to_networkx()
    arcs: Dict[EdgeKey, HalfEdge] = {}
    faces: List[Face] = []
    outer = set()

    for component in g.components():
        if len(component) < 2:
            continue
        walked = _walk_faces(embedding, component)
        edge_total = sum(len(f) for f in walked) // 2
        if len(component) - edge_total + len(walked) != 2:
            raise EmbeddingRequiredError(
                f"{g.name}: rotation system is not planar ({len(component)} vertices, {edge_total} edges, {len(walked)} faces)"
            )
        longest = max(range(len(walked)), key=lambda k: len(walked[k]))
        outer.add(len(faces) + longest)
        faces.extend(walked)
        for p, c in nx.bfs_edges(graph, component[0]):
            arcs[edge_key(p, c)] = edge_key(p, c)

    face_of: Dict[HalfEdge, int] = {h: k for k, face in enumerate(faces) for h in face}
    open_edges = [sum(1 for v, w in face if edge_key(v, w) not in arcs) for face in faces]
    queue = deque(k for k in range(len(faces)) if k not in outer and open_edges[k] == 1)
    while queue:
        k = queue.popleft()
        if open_edges[k] != 1:
            continue
        face = faces[k]
        (v, w), = [(v, w) for v, w in face if edge_key(v, w) not in arcs]
        along = sum(1 for x, y in face if arcs.get(edge_key(x, y)) == (x, y))
        arcs[edge_key(v, w)] = (v, w) if along % 2 == 0 else (w, v)
        open_edges[k] = 0
        other = face_of[(w, v)]
        open_edges[other] -= 1
        if other not in outer and open_edges[other] == 1:
            queue.append(other)

    if len(arcs) != g.edge_count:
        raise EmbeddingRequiredError(f"{g.name}: oriented {len(arcs)} of {g.edge_count} edges")
    return KasteleynOrientation(arcs=arcs, faces=faces, outer=frozenset(outer))


def bareiss_determinant(matrix: Sequence[Sequence[int]]) -> int:
    """Determinant of an integer matrix by fraction-free elimination with row swaps"""
    m = [list(row) for row in matrix]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    previous = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        pivot = m[k][k]
        for i in range(k + 1, n):
            row_i, row_k = m[i], m[k]
            factor = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - factor * row_k[j]) // previous
            row_i[k] = 0
        previous = pivot
    return sign * m[n - 1][n - 1]


def _common_denominator(g: MatchGraph, unit_weights: bool) -> int:
    if unit_weights:
        return 1
    return math.lcm(*(w.denominator for w in g.edges.values())) if g.edges else 1


def _connected_value(g: MatchGraph, unit_weights: bool, use_block: bool) -> Fraction:
    n = g.vertex_count
    if n % 2:
        return Fraction(0)
    if n == 0:
        return Fraction(1)
    orientation = kasteleyn_orientation(g)
    scale = _common_denominator(g, unit_weights)

    def entry(i: int, j: int, w: Fraction) -> int:
        return orientation.sign(i, j) * (scale if unit_weights else int(w * scale))

    parts = g.bipartition if use_block else None
    if parts is not None:
        first, second = parts
        if len(first) != len(second):
            return Fraction(0)
        row = {v: r for r, v in enumerate(first)}
        col = {v: c for c, v in enumerate(second)}
        block = [[0] * len(second) for _ in first]
        for (i, j), w in g.edges.items():
            if i in row:
                block[row[i]][col[j]] = entry(i, j, w)
            else:
                block[row[j]][col[i]] = entry(j, i, w)
        det = abs(bareiss_determinant(block))
        return Fraction(det, scale ** (n // 2))

    skew = [[0] * n for _ in range(n)]
    for (i, j), w in g.edges.items():
        skew[i][j] = entry(i, j, w)
        skew[j][i] = -skew[i][j]
    det = bareiss_determinant(skew)
    root = math.isqrt(det) if det >= 0 else -1
    if root < 0 or root * root != det:
        raise ContractError(f"{g.name}: skew determinant {det} is not a square")
    return Fraction(root, scale ** (n // 2))


def _pfaffian_count(g: MatchGraph, unit_weights: bool, use_block: Optional[bool]) -> Fraction:
    if g.loops:
        raise ContractError(f"{g.name}: the Pfaffian counter takes loopless graphs; remove the loop vertex first")
    if use_block is None:
        use_block = bool(load_config().get('pfaffian', {}).get('use_bipartite_block', True))
    components = g.components()
    if len(components) == 1:
        return _connected_value(g, unit_weights, use_block)
    value = Fraction(1)
    for part in components:
        value *= _connected_value(g.subgraph(part), unit_weights, use_block)
        if not value:
            break
    return value


def mgf_pfaffian(g: MatchGraph, use_block: Optional[bool] = None) -> Fraction:
    """Weighted matching sum of a loopless plane graph"""
    value = _pfaffian_count(g, unit_weights=False, use_block=use_block)
    logger.debug(f"Pfaffian MGF of {g.describe()} = {value}")
    return value


def count_matchings_pfaffian(g: MatchGraph, use_block: Optional[bool] = None) -> int:
    """Number of perfect matchings of a loopless plane graph, weights ignored"""
    value = _pfaffian_count(g, unit_weights=True, use_block=use_block)
    logger.debug(f"Pfaffian count of {g.describe()} = {value}")
    return int(value)
