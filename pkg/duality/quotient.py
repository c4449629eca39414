# duality/quotient.py
"""Orbit graphs of matching graphs under groups of automorphisms.

Perfect matchings of the orbit graph correspond to the matchings of the
original graph that the group maps to themselves. An edge orbit can take part
in such a matching only if its edges are pairwise disjoint; an orbit whose
edges all lie inside one vertex orbit becomes a loop there.
"""
from collections import defaultdict
from fractions import Fraction
from typing import Dict, FrozenSet, List, Sequence, Tuple

import networkx as nx

from duality.match_graph import ONE, Label, MatchGraph, edge_key
from duality.symmetry import Permutation, SymmetryElement, group_closure
from lattice.cells import TriCell
from utils.errors import ContractError, EmbeddingRequiredError, SymmetryAbsentError, UnsupportedActionError
from utils.logger import get_logger

logger = get_logger(__name__)

QUOTIENT_ORDERS = (2, 3, 6)


def _orbit_label(labels: Sequence[Label], members: Sequence[int]) -> FrozenSet[TriCell]:
    cells = set()
    for i in members:
        label = labels[i]
        cells.update(label if isinstance(label, frozenset) else (label,))
    return frozenset(cells)


def orbit_graph(g: MatchGraph, group: Sequence[Permutation], name: str = "") -> MatchGraph:
    """Vertex orbits joined by the usable edge orbits; parallel orbits add their weights"""
    n = g.vertex_count
    orbit_of = [-1] * n
    members: List[List[int]] = []
    for i in range(n):
        if orbit_of[i] >= 0:
            continue
        orbit = sorted({p[i] for p in group})
        for j in orbit:
            orbit_of[j] = len(members)
        members.append(orbit)

    weights: Dict[Tuple[int, int], Fraction] = defaultdict(Fraction)
    loops: Dict[int, Fraction] = defaultdict(Fraction)
    seen = set()
    for (i, j), w in g.edges.items():
        if (i, j) in seen:
            continue
        images = {edge_key(p[i], p[j]) for p in group}
        seen.update(images)
        if any(g.edges.get(e) != w for e in images):
            raise SymmetryAbsentError(f"{g.name}: group action does not preserve the weight of edge ({i}, {j})")
        covered = [v for e in images for v in e]
        if len(covered) != len(set(covered)):
            continue
        oi, oj = orbit_of[i], orbit_of[j]
        if oi == oj:
            loops[oi] += w
        else:
            weights[edge_key(oi, oj)] += w

    # loops of g (free boundary cells) carry over once per vertex orbit
    for i, w in g.loops.items():
        if any(g.loops.get(p[i]) != w for p in group):
            raise SymmetryAbsentError(f"{g.name}: group action does not preserve the loop at {i}")
        if i == members[orbit_of[i]][0]:
            loops[orbit_of[i]] += w

    labels = [_orbit_label(g.labels, m) for m in members]
    quotient = MatchGraph.build(labels, [(i, j, w) for (i, j), w in weights.items()], dict(loops),
                                name=name or f"{g.name} / {len(group)}")
    logger.debug(f"Built {quotient.describe()} from {g.describe()} under a group of order {len(group)}")
    return quotient


def quotient_graph(g: MatchGraph, gen: SymmetryElement) -> MatchGraph:
    """Quotient of a dual graph by the cyclic group generated by `gen`"""
    for label in g.labels:
        if not isinstance(label, TriCell):
            raise ContractError(f"{g.name}: quotient_graph takes a graph whose vertices are cells")
    perm = gen.permutation(g.labels)
    group = group_closure([perm], g.vertex_count)
    if len(group) not in QUOTIENT_ORDERS:
        raise UnsupportedActionError(f"{gen.kind} generates a group of order {len(group)}, expected one of {QUOTIENT_ORDERS}")
    identity = tuple(range(g.vertex_count))
    fixed = [g.labels[i] for i in range(g.vertex_count) if any(p[i] == i for p in group if p != identity)]
    if fixed:
        raise UnsupportedActionError(f"{gen.kind} fixes the vertex {fixed[0]} of {g.name}")
    return orbit_graph(g, group, name=f"{g.name} / {gen.kind}")


def remove_loop_vertex(g: MatchGraph) -> Tuple[MatchGraph, Fraction]:
    """Drop the single loop vertex, which every perfect matching must use"""
    if len(g.loops) != 1:
        raise ContractError(f"{g.name}: expected exactly one loop, found {len(g.loops)}")
    if g.vertex_count % 2 == 0:
        raise ContractError(f"{g.name}: a loop vertex is only forced when the vertex count is odd, got {g.vertex_count}")
    (vertex, weight), = g.loops.items()
    rest = g.subgraph([i for i in range(g.vertex_count) if i != vertex], name=f"{g.name} - loop")
    logger.debug(f"Removed loop vertex {vertex} of weight {weight} from {g.describe()}")
    return rest, weight


def _loop_order(g: MatchGraph) -> List[int]:
    """Loop vertices in the cyclic order of a face they all lie on"""
    graph = g.to_networkx()
    hub = g.vertex_count
    graph.add_edges_from((hub, i) for i in g.loops)
    is_planar, embedding = nx.check_planarity(graph)
    if not is_planar:
        raise EmbeddingRequiredError(f"{g.name}: the {len(g.loops)} loop vertices do not share a face")
    return list(embedding.neighbors_cw_order(hub))


def absorb_loops(g: MatchGraph) -> MatchGraph:
    """Loopless plane graph with the same weighted matching sum.

    Each loop vertex v gets a pendant p weighted like the loop. The pendants
    hang off a chain of triangles (p, c, d) linked d -> next c, which matches
    its free pendants in exactly one way when their number is even; a tail
    vertex fixes that parity when the vertex count asks for an odd number.
    """
    if not g.loops:
        return g
    order = _loop_order(g)
    labels: List[Label] = list(g.labels)
    edges = [(i, j, w) for (i, j), w in g.edges.items()]

    def add(label: str) -> int:
        labels.append(label)
        return len(labels) - 1

    previous = None
    for k, v in enumerate(order):
        p, c, d = add(f"pendant {k}"), add(f"chain {k}a"), add(f"chain {k}b")
        edges += [(v, p, g.loops[v]), (p, c, ONE), (p, d, ONE), (c, d, ONE)]
        if previous is not None:
            edges.append((previous, c, ONE))
        previous = d
    if (len(order) - g.vertex_count) % 2:
        edges.append((previous, add("chain tail"), ONE))

    unlooped = MatchGraph.build(labels, edges, name=f"{g.name} unlooped")
    logger.debug(f"Absorbed {len(order)} loops of {g.describe()} into {unlooped.describe()}")
    return unlooped
