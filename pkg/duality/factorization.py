# duality/factorization.py
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, List, Tuple

from duality.match_graph import HALF, MatchGraph
from duality.symmetry import SymmetryElement, SymmetryKind
from lattice.cells import TriCell
from utils.errors import ContractError, SymmetryAbsentError
from utils.logger import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class FactorSplit:
    """Half of a symmetric quotient: M(quotient) = 2**multiplier_log2 * MGF(subgraph)"""
    subgraph: MatchGraph
    multiplier_log2: int
    removed_edges: int

    @property
    def multiplier(self) -> int:
        return 2 ** self.multiplier_log2


def factorization_split(g: MatchGraph, axis: SymmetryElement) -> FactorSplit:
    """Split the 180-degree quotient of a region along its hole axis.

    Each orbit is represented by its cell right of the axis, or on the axis
    and above the center. Quotient edges realised between representatives
    are kept, the others are deleted, and edges joining two axis cells get
    half their weight.
    """
    if axis.word != (SymmetryKind.REFL_H,):
        raise ContractError(f"factorization_split only supports the hole axis (reflh); splitting along {axis.kind} is not implemented")
    if g.loops:
        raise ContractError(f"{g.name}: remove the loop vertex before splitting")
    orbits: List[FrozenSet[TriCell]] = []
    for label in g.labels:
        if not isinstance(label, frozenset):
            raise ContractError(f"{g.name}: factorization_split takes a quotient graph, got cell vertex {label}")
        orbits.append(label)

    index = g.index
    mirrored = []
    for orbit in orbits:
        image = frozenset(axis.apply(c) for c in orbit)
        if image not in index:
            raise SymmetryAbsentError(f"{axis.kind} does not map orbit {sorted(orbit)} to an orbit of {g.name}")
        mirrored.append(index[image])
    for (i, j), w in g.edges.items():
        if g.weight(mirrored[i], mirrored[j]) != w:
            raise SymmetryAbsentError(f"{g.name} is not symmetric under {axis.kind}: edge ({i}, {j})")

    axis_u = axis.center[0]
    if axis_u.denominator != 1:
        raise ContractError(f"{g.name}: the hole axis u={axis_u} does not pass through cells")
    axis_u = int(axis_u)

    reps = [max(orbit) for orbit in orbits]
    rep_index: Dict[TriCell, int] = {c: i for i, c in enumerate(reps)}
    edges: List[Tuple[int, int, Fraction]] = []
    halved = 0
    for (i, j), w in g.edges.items():
        if reps[i].shared_edge(reps[j]) is None:
            continue
        if reps[i].u == axis_u and reps[j].u == axis_u:
            w = w * HALF
            halved += 1
        edges.append((i, j, w))

    rotation = [[rep_index[n] for n in c.neighbours() if n in rep_index and g.weight(i, rep_index[n]) is not None]
                for i, c in enumerate(reps)]
    subgraph = MatchGraph.build(reps, edges, rotation=rotation, name=f"split {g.name}")
    removed = g.edge_count - len(edges)
    logger.debug(f"Split {g.describe()}: kept {len(edges)} edges, removed {removed}, halved {halved}")
    return FactorSplit(subgraph=subgraph, multiplier_log2=halved, removed_edges=removed)
