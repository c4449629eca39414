# utils/data_generator.py
import random
from fractions import Fraction
from typing import Iterator, Optional, Set

from duality.match_graph import MatchGraph, dual_graph
from lattice.regions import hexagon
from utils.config_loader import load_config


class DataGenerator:
    """Seeded random sub-regions of hexagon dual graphs, for counter agreement tests"""

    def __init__(self, seed: Optional[int] = None, max_vertices: Optional[int] = None):
        settings = load_config().get('data_generation', {})
        self.seed = settings.get('seed', 0) if seed is None else seed
        self.max_vertices = max_vertices or settings.get('max_vertices', 40)
        self.random = random.Random(self.seed)

    def random_hexagon_graph(self, largest_side: int = 3) -> MatchGraph:
        """Dual graph of a hexagon with sides drawn from 1..largest_side"""
        a, b, c = (self.random.randint(1, largest_side) for _ in range(3))
        return dual_graph(hexagon(a, b, c))

    def random_subgraph(self, g: MatchGraph) -> MatchGraph:
        """Connected induced subgraph of g grown from a random vertex"""
        size = self.random.randint(2, min(self.max_vertices, g.vertex_count))
        start = self.random.randrange(g.vertex_count)
        kept: Set[int] = {start}
        frontier = {j for j, _ in g.adjacency[start]}
        while frontier and len(kept) < size:
            vertex = self.random.choice(sorted(frontier))
            kept.add(vertex)
            frontier.discard(vertex)
            frontier.update(j for j, _ in g.adjacency[vertex] if j not in kept)
        return g.subgraph(kept, name=f"random {len(kept)} of {g.name}")

    def reweighted(self, g: MatchGraph, largest: int = 3) -> MatchGraph:
        """Same graph and embedding with edge weights p/q drawn from 1..largest"""
        edges = [(i, j, Fraction(self.random.randint(1, largest), self.random.randint(1, largest)))
                 for i, j in g.edges]
        return MatchGraph.build(g.labels, edges, rotation=g.rotation, name=f"weighted {g.name}")

    def sub_regions(self, count: int, largest_side: int = 3) -> Iterator[MatchGraph]:
        for _ in range(count):
            yield self.random_subgraph(self.random_hexagon_graph(largest_side))
