# duality/match_graph.py
"""Weighted matching graphs with optional loops and rotation systems."""
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import networkx as nx

from lattice.cells import TriCell
from lattice.regions import Region
from utils.errors import ContractError, EmbeddingRequiredError
from utils.logger import get_logger

logger = get_logger(__name__)

# str tags the auxiliary vertices of absorb_loops
Label = Union[TriCell, FrozenSet[TriCell], str]
EdgeKey = Tuple[int, int]

ONE = Fraction(1)
HALF = Fraction(1, 2)


def edge_key(i: int, j: int) -> EdgeKey:
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True, eq=False)
class MatchGraph:
    """Vertices are indices 0..n-1 tagged with a cell or an orbit of cells.

    `rotation`, when present, lists each vertex's neighbours clockwise and is a
    planar embedding of the graph.
    """
    labels: Tuple[Label, ...]
    edges: Mapping[EdgeKey, Fraction]
    loops: Mapping[int, Fraction]
    rotation: Optional[Tuple[Tuple[int, ...], ...]] = None
    name: str = ""

    @classmethod
    def build(cls, labels: Sequence[Label], edges: Iterable[Tuple[int, int, Fraction]],
              loops: Optional[Mapping[int, Fraction]] = None,
              rotation: Optional[Sequence[Sequence[int]]] = None, name: str = "") -> "MatchGraph":
        n = len(labels)
        table: Dict[EdgeKey, Fraction] = {}
        for i, j, w in edges:
            if i == j:
                raise ContractError(f"{name}: edge ({i}, {j}) is a loop; pass loops separately")
            if not (0 <= i < n and 0 <= j < n):
                raise ContractError(f"{name}: edge ({i}, {j}) leaves the vertex range 0..{n - 1}")
            key = edge_key(i, j)
            if key in table:
                raise ContractError(f"{name}: parallel edges between {i} and {j}")
            w = Fraction(w)
            if w <= 0:
                raise ContractError(f"{name}: edge ({i}, {j}) has non-positive weight {w}")
            table[key] = w
        loop_table = {}
        for i, w in (loops or {}).items():
            w = Fraction(w)
            if w <= 0:
                raise ContractError(f"{name}: loop at {i} has non-positive weight {w}")
            loop_table[i] = w
        rot = tuple(tuple(r) for r in rotation) if rotation is not None else None
        return cls(labels=tuple(labels), edges=dict(sorted(table.items())), loops=dict(sorted(loop_table.items())),
                   rotation=rot, name=name)

    @property
    def vertex_count(self) -> int:
        return len(self.labels)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @cached_property
    def index(self) -> Dict[Label, int]:
        return {label: i for i, label in enumerate(self.labels)}

    @cached_property
    def adjacency(self) -> Tuple[Tuple[Tuple[int, Fraction], ...], ...]:
        adj: List[List[Tuple[int, Fraction]]] = [[] for _ in self.labels]
        for (i, j), w in self.edges.items():
            adj[i].append((j, w))
            adj[j].append((i, w))
        return tuple(tuple(sorted(a)) for a in adj)

    def weight(self, i: int, j: int) -> Optional[Fraction]:
        return self.edges.get(edge_key(i, j))

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.vertex_count))
        for (i, j), w in self.edges.items():
            graph.add_edge(i, j, weight=w)
        return graph

    @cached_property
    def bipartition(self) -> Optional[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
        """Colour classes when the loopless graph is bipartite, else None"""
        if self.loops:
            return None
        graph = self.to_networkx()
        if not nx.is_bipartite(graph):
            return None
        colour = nx.bipartite.color(graph)
        first = tuple(i for i in range(self.vertex_count) if colour[i] == 0)
        second = tuple(i for i in range(self.vertex_count) if colour[i] == 1)
        return first, second

    def components(self) -> List[Tuple[int, ...]]:
        parts = [tuple(sorted(p)) for p in nx.connected_components(self.to_networkx())]
        return sorted(parts)

    def subgraph(self, keep: Iterable[int], name: Optional[str] = None) -> "MatchGraph":
        """Induced subgraph on `keep`, reindexed in increasing order"""
        keep = sorted(set(keep))
        new = {old: i for i, old in enumerate(keep)}
        edges = [(new[i], new[j], w) for (i, j), w in self.edges.items() if i in new and j in new]
        loops = {new[i]: w for i, w in self.loops.items() if i in new}
        rotation = None
        if self.rotation is not None:
            rotation = [[new[j] for j in self.rotation[old] if j in new] for old in keep]
        return MatchGraph.build([self.labels[i] for i in keep], edges, loops, rotation,
                                name if name is not None else self.name)

    def planar_embedding(self) -> nx.PlanarEmbedding:
        """The stored rotation system, or one found by the planarity test.

        A stored rotation is only checked to list each vertex's neighbours; the
        face count check happens where the faces are walked.
        """
        if self.rotation is not None:
            for i, order in enumerate(self.rotation):
                if sorted(order) != [j for j, _ in self.adjacency[i]]:
                    raise EmbeddingRequiredError(f"{self.name}: rotation at vertex {i} does not list its neighbours")
            embedding = nx.PlanarEmbedding()
            embedding.add_nodes_from(range(self.vertex_count))
            embedding.set_data({i: list(order) for i, order in enumerate(self.rotation)})
            return embedding
        is_planar, embedding = nx.check_planarity(self.to_networkx())
        if not is_planar:
            raise EmbeddingRequiredError(f"{self.name}: graph is not planar")
        return embedding

    def describe(self) -> str:
        return f"{self.name or 'graph'}[V={self.vertex_count}, E={self.edge_count}, loops={len(self.loops)}]"


def dual_graph(region: Region) -> MatchGraph:
    """Cells as vertices, shared lattice edges as edges; half-weight pairs weigh 1/2"""
    labels = region.sorted_cells
    index = {c: i for i, c in enumerate(labels)}
    edges = []
    for c, d in region.dual_edges():
        w = HALF if frozenset((c, d)) in region.half_edges else ONE
        edges.append((index[c], index[d], w))
    rotation = [[index[n] for n in region.adjacency[c]] for c in labels]
    graph = MatchGraph.build(labels, edges, rotation=rotation, name=f"dual {region.params.describe()}")
    logger.debug(f"Built {graph.describe()}")
    return graph
