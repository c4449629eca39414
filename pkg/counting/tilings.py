# counting/tilings.py
"""Tiling counts of regions, plain, symmetric and with a free boundary.

Tilings are perfect matchings of the dual graph. Symmetric tilings are counted
either on the orbit graph of the symmetry group or by listing every tiling
and keeping the invariant ones; the two routes are independent of each other.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from counting.oracle import enumerate_matchings, mgf_oracle
from counting.pfaffian import mgf_pfaffian
from duality.match_graph import MatchGraph, dual_graph
from duality.quotient import absorb_loops, orbit_graph, remove_loop_vertex
from duality.symmetry import (Permutation, SymmetryElement, SymmetryKind, group_closure, parse_word,
                              symmetry)
from lattice.regions import Region
from utils.config_loader import budget, load_config
from utils.errors import BudgetExceededError, ContractError, EmbeddingRequiredError, ParameterError
from utils.logger import get_logger

logger = get_logger(__name__)

METHODS = ("auto", "pfaffian", "oracle")
SYMMETRIC_METHODS = ("auto", "quotient", "enumerate")

Word = Tuple[SymmetryKind, ...]


@dataclass(frozen=True)
class SymmetrySpec:
    """Generators of a symmetry group, each a word such as 'rot180' or 'rot60*reflh'"""
    generators: Tuple[Word, ...]

    @classmethod
    def parse(cls, text: Union[str, "SymmetrySpec", Iterable[Union[str, SymmetryKind]]]) -> "SymmetrySpec":
        """'rot180,reflv' -> two generators; an empty text is the trivial group"""
        if isinstance(text, SymmetrySpec):
            return text
        parts = text.split(",") if isinstance(text, str) else list(text)
        words = []
        for part in parts:
            if isinstance(part, str) and not part.strip():
                continue
            word = parse_word(part)
            if word and any(k is not SymmetryKind.IDENTITY for k in word):
                words.append(word)
        return cls(tuple(words))

    @property
    def is_trivial(self) -> bool:
        return not self.generators

    @property
    def is_rotation_group(self) -> bool:
        return all(k.is_rotation for word in self.generators for k in word)

    def elements(self, region: Region) -> List[SymmetryElement]:
        return [symmetry(region, word) for word in self.generators]

    def describe(self) -> str:
        if self.is_trivial:
            return SymmetryKind.IDENTITY.value
        return ",".join("*".join(k.value for k in word) for word in self.generators)


def _integral(value: Fraction, what: str) -> int:
    if value.denominator != 1:
        raise ContractError(f"{what} = {value} is not an integer; use the weighted count")
    return value.numerator


def _resolve(g: MatchGraph, method: str) -> str:
    if method not in METHODS:
        raise ParameterError(f"Unknown counting method '{method}'; expected one of {METHODS}")
    return "pfaffian" if method == "auto" else method


def _loopless(g: MatchGraph) -> Tuple[MatchGraph, Fraction]:
    """Drop a forced loop vertex, or absorb optional loops into a parity chain"""
    if len(g.loops) == 1 and g.vertex_count % 2:
        return remove_loop_vertex(g)
    return absorb_loops(g), Fraction(1)


def matching_mgf(g: MatchGraph, method: str = "auto") -> Fraction:
    """Weighted sum over perfect matchings, loops included.

    The Pfaffian route first makes the graph loopless: a single loop on an odd
    vertex set is used by every matching and is removed, several loops must
    share a face and are absorbed. Graphs that offer no planar embedding fall
    back to the oracle under 'auto'.
    """
    chosen = _resolve(g, method)
    if chosen == "oracle":
        return mgf_oracle(g)
    try:
        plain, factor = _loopless(g) if g.loops else (g, Fraction(1))
        value = factor * mgf_pfaffian(plain)
    except EmbeddingRequiredError:
        if method != "auto":
            raise
        logger.warning(f"{g.describe()} has no usable embedding; counting with the oracle")
        return mgf_oracle(g)

    settings = load_config().get('pfaffian', {})
    if settings.get('cross_check_oracle') and g.vertex_count < budget('oracle_max_vertices'):
        check = mgf_oracle(g)
        if check != value:
            raise ContractError(f"{g.describe()}: Pfaffian gives {value}, oracle gives {check}")
    return value


def count_matchings(g: MatchGraph, method: str = "auto") -> int:
    """Matching count of a graph whose edge weights are multiplicities"""
    value = matching_mgf(g, method)
    logger.debug(f"Counted {g.describe()} with method={_resolve(g, method)}: {value}")
    return _integral(value, f"MGF of {g.name}")


def _closed(region: Region) -> None:
    if not region.is_closed:
        raise ContractError(f"{region.params.describe()} has a free boundary; use count_tilings_free")


def count_tilings(region: Region, method: str = "auto") -> int:
    """Number of lozenge tilings of a closed region"""
    _closed(region)
    if region.half_edges:
        raise ContractError(f"{region.params.describe()} has half-weight edges; use weighted_tiling_count")
    if not region.cells:
        return 1
    return count_matchings(dual_graph(region), method)


def weighted_tiling_count(region: Region, method: str = "auto") -> Fraction:
    """Tilings weighted by the product of their lozenge weights"""
    _closed(region)
    if not region.cells:
        return Fraction(1)
    return matching_mgf(dual_graph(region), method)


def _group(g: MatchGraph, elements: Sequence[SymmetryElement]) -> List[Permutation]:
    return group_closure([e.permutation(g.labels) for e in elements], g.vertex_count)


def _count_invariant(g: MatchGraph, group: Sequence[Permutation]) -> int:
    cap = budget('enumeration_max_tilings')
    total = invariant = 0
    for matching in enumerate_matchings(g):
        total += 1
        if cap and total > cap:
            raise BudgetExceededError(f"{g.describe()} has more than {cap} tilings to list", budget=cap, requested=total)
        pairs = set(matching)
        if all({(min(p[i], p[j]), max(p[i], p[j])) for i, j in pairs} == pairs for p in group):
            invariant += 1
    logger.debug(f"{invariant} of {total} tilings of {g.describe()} are invariant")
    return invariant


def count_symmetric_tilings(region: Region, spec: Union[SymmetrySpec, str], method: str = "auto") -> int:
    """Tilings fixed by every generator of `spec`.

    'quotient' counts matchings of the orbit graph and works for any group,
    fixed cells included; 'enumerate' filters the listed tilings.
    """
    if method not in SYMMETRIC_METHODS:
        raise ParameterError(f"Unknown symmetric counting method '{method}'; expected one of {SYMMETRIC_METHODS}")
    spec = SymmetrySpec.parse(spec)
    _closed(region)
    if region.half_edges:
        raise ContractError(f"{region.params.describe()} has half-weight edges; symmetric counts are unweighted")
    if not region.cells:
        return 1
    elements = spec.elements(region)
    if spec.is_trivial:
        return count_tilings(region)

    g = dual_graph(region)
    group = _group(g, elements)
    if method == "enumerate":
        value = _count_invariant(g, group)
    else:
        value = count_matchings(orbit_graph(g, group, name=f"{g.name} / <{spec.describe()}>"))
    logger.debug(f"M_{{{spec.describe()}}}({region.params.describe()}) = {value} via {method}")
    return value


def free_boundary_graph(region: Region) -> MatchGraph:
    """Dual graph with a loop on every cell that may protrude through a free edge.

    A loop weighs the number of free edges of its cell.
    """
    g = dual_graph(region)
    loops: Dict[int, int] = {}
    for i, cell in enumerate(g.labels):
        free = sum(1 for e in cell.edges() if e in region.free_edges)
        if free:
            loops[i] = free
    edges = [(i, j, w) for (i, j), w in g.edges.items()]
    return MatchGraph.build(g.labels, edges, loops, g.rotation, name=f"free {region.params.describe()}")


def count_tilings_free(region: Region, spec: Optional[Union[SymmetrySpec, str]] = None) -> int:
    """Tilings in which lozenges may stick out halfway across free edges"""
    if not region.cells:
        return 1
    g = free_boundary_graph(region)
    name = region.params.describe()
    spec = SymmetrySpec.parse(spec or "")
    if not spec.is_trivial:
        g = orbit_graph(g, _group(g, spec.elements(region)), name=f"{g.name} / <{spec.describe()}>")
    value = mgf_oracle(g, budget_name="free_max_vertices")
    logger.debug(f"M_f({name}) with symmetry {spec.describe()} = {value}")
    return _integral(value, f"M_f({name})")

