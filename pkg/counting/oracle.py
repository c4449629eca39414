# counting/oracle.py
"""Exhaustive matching counter.

Vertices are eliminated one at a time, always the one with fewest live
neighbours; the remaining vertex set is a bitmask, split into connected
components and memoised. Loops are allowed and count as an optional way to
cover their vertex.
"""
import sys
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Tuple

from duality.match_graph import MatchGraph
from utils.config_loader import budget
from utils.errors import BudgetExceededError, ContractError
from utils.logger import get_logger

logger = get_logger(__name__)

ZERO = Fraction(0)
ONE = Fraction(1)

Matching = Tuple[Tuple[int, int], ...]


def _check_budget(g: MatchGraph, max_vertices: Optional[int], budget_name: str) -> None:
    limit = budget(budget_name) if max_vertices is None else max_vertices
    if limit and g.vertex_count >= limit:
        raise BudgetExceededError(
            f"{g.describe()} has {g.vertex_count} vertices; the exhaustive counter stops below {limit}",
            budget=limit, requested=g.vertex_count,
        )


def _allow_depth(g: MatchGraph) -> None:
    # one frame per eliminated vertex plus one per component split
    needed = 4 * g.vertex_count + 200
    if sys.getrecursionlimit() < needed:
        sys.setrecursionlimit(needed)


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class _Counter:
    def __init__(self, g: MatchGraph, unit_weights: bool):
        self.n = g.vertex_count
        self.adj: List[List[Tuple[int, Fraction]]] = [
            [(j, ONE if unit_weights else w) for j, w in nbrs] for nbrs in g.adjacency
        ]
        self.nbr_mask = [sum(1 << j for j, _ in nbrs) for nbrs in self.adj]
        if unit_weights:
            self.loop = [ONE if i in g.loops else ZERO for i in range(self.n)]
        else:
            self.loop = [g.loops.get(i, ZERO) for i in range(self.n)]
        self.loop_mask = sum(1 << i for i in g.loops)
        self.side_mask = 0
        if g.bipartition is not None:
            self.side_mask = sum(1 << i for i in g.bipartition[0])
        self.memo: Dict[int, Fraction] = {}

    def component(self, mask: int) -> int:
        start = mask & -mask
        comp = frontier = start
        while frontier:
            reach = 0
            for i in _bits(frontier):
                reach |= self.nbr_mask[i]
            frontier = reach & mask & ~comp
            comp |= frontier
        return comp

    def solve(self, mask: int) -> Fraction:
        if mask == 0:
            return ONE
        cached = self.memo.get(mask)
        if cached is not None:
            return cached

        comp = self.component(mask)
        if comp != mask:
            first = self.solve(comp)
            result = first * self.solve(mask & ~comp) if first else ZERO
            self.memo[mask] = result
            return result

        if not mask & self.loop_mask:
            size = bin(mask).count("1")
            if size % 2:
                self.memo[mask] = ZERO
                return ZERO
            if self.side_mask and 2 * bin(mask & self.side_mask).count("1") != size:
                self.memo[mask] = ZERO
                return ZERO

        best, best_degree = -1, self.n + 2
        for i in _bits(mask):
            degree = bin(self.nbr_mask[i] & mask).count("1") + (1 if self.loop[i] else 0)
            if degree < best_degree:
                best, best_degree = i, degree
                if degree <= 1:
                    break

        rest = mask & ~(1 << best)
        total = ZERO
        if self.loop[best]:
            total += self.loop[best] * self.solve(rest)
        for j, w in self.adj[best]:
            if rest >> j & 1:
                total += w * self.solve(rest & ~(1 << j))
        self.memo[mask] = total
        return total

    def matchings(self, mask: int) -> Iterator[List[Tuple[int, int]]]:
        if mask == 0:
            yield []
            return
        best, best_degree = -1, self.n + 2
        for i in _bits(mask):
            degree = bin(self.nbr_mask[i] & mask).count("1") + (1 if self.loop[i] else 0)
            if degree < best_degree:
                best, best_degree = i, degree
        if best_degree == 0:
            return
        rest = mask & ~(1 << best)
        if self.loop[best]:
            for tail in self.matchings(rest):
                yield [(best, best)] + tail
        for j, _ in self.adj[best]:
            if rest >> j & 1:
                for tail in self.matchings(rest & ~(1 << j)):
                    yield [(min(best, j), max(best, j))] + tail


def mgf_oracle(g: MatchGraph, max_vertices: Optional[int] = None,
               budget_name: str = "oracle_max_vertices") -> Fraction:
    """Sum over perfect matchings of the product of edge and loop weights.

    `max_vertices` overrides the configured budget; 0 means no limit.
    """
    _check_budget(g, max_vertices, budget_name)
    _allow_depth(g)
    counter = _Counter(g, unit_weights=False)
    value = counter.solve((1 << g.vertex_count) - 1)
    logger.debug(f"Oracle MGF of {g.describe()} = {value} ({len(counter.memo)} states)")
    return value


def count_matchings_oracle(g: MatchGraph, max_vertices: Optional[int] = None) -> int:
    """Number of perfect matchings of a loopless graph, weights ignored"""
    if g.loops:
        raise ContractError(f"{g.name}: remove loops before counting plain matchings")
    _check_budget(g, max_vertices, "oracle_max_vertices")
    _allow_depth(g)
    counter = _Counter(g, unit_weights=True)
    value = counter.solve((1 << g.vertex_count) - 1)
    logger.debug(f"Oracle count of {g.describe()} = {value} ({len(counter.memo)} states)")
    return int(value)


def enumerate_matchings(g: MatchGraph, max_vertices: Optional[int] = None) -> Iterator[Matching]:
    """Every perfect matching as sorted index pairs; a loop used at i appears as (i, i)"""
    _check_budget(g, max_vertices, "enumeration_max_cells")
    _allow_depth(g)
    counter = _Counter(g, unit_weights=True)
    for matching in counter.matchings((1 << g.vertex_count) - 1):
        yield tuple(sorted(matching))
