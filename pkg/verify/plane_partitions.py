# verify/plane_partitions.py
"""Plane partitions in a box and their ten symmetry classes.

Counted by listing, independently of any tiling code, so that the four-class
identities can be checked in the language they were first stated in.
"""
from typing import Callable, Dict, FrozenSet, Iterator, Optional, Sequence, Tuple

from utils.config_loader import budget
from utils.errors import BudgetExceededError, ParameterError
from utils.logger import get_logger

logger = get_logger(__name__)

PlanePartition = Tuple[Tuple[int, ...], ...]

CLASSES = ("P", "S", "CS", "TS", "SC", "TC", "SSC", "CSTC", "CSSC", "TSSC")


def _rows(width: int, top: int, above: Optional[Sequence[int]]) -> Iterator[Tuple[int, ...]]:
    """Weakly decreasing rows bounded by `top` and, entry by entry, by the row above"""
    def extend(prefix: Tuple[int, ...], cap: int) -> Iterator[Tuple[int, ...]]:
        j = len(prefix)
        if j == width:
            yield prefix
            return
        limit = min(cap, above[j]) if above is not None else cap
        for value in range(limit, -1, -1):
            yield from extend(prefix + (value,), value)

    yield from extend((), top)


def plane_partitions(r: int, s: int, t: int) -> Iterator[PlanePartition]:
    """Every r x s array with entries in [0, t], weakly decreasing along rows and columns"""
    for name, value in (("r", r), ("s", s), ("t", t)):
        if not isinstance(value, int) or value < 0:
            raise ParameterError(f"{name} must be a non-negative integer, got {value!r}")

    def extend(prefix: PlanePartition) -> Iterator[PlanePartition]:
        if len(prefix) == r:
            yield prefix
            return
        above = prefix[-1] if prefix else None
        for row in _rows(s, t, above):
            yield from extend(prefix + (row,))

    yield from extend(())


def transpose(pi: PlanePartition, s: int) -> PlanePartition:
    return tuple(tuple(row[j] for row in pi) for j in range(s))


def complement(pi: PlanePartition, t: int) -> PlanePartition:
    """pi'_{ij} = t - pi_{r+1-i, s+1-j}"""
    return tuple(tuple(t - v for v in reversed(row)) for row in reversed(pi))


def cubes(pi: PlanePartition) -> FrozenSet[Tuple[int, int, int]]:
    return frozenset((i, j, k) for i, row in enumerate(pi, 1) for j, v in enumerate(row, 1) for k in range(1, v + 1))


def is_cyclic(pi: PlanePartition) -> bool:
    stack = cubes(pi)
    return all((j, k, i) in stack for i, j, k in stack)


def _predicates(r: int, s: int, t: int) -> Dict[str, Callable[[PlanePartition], bool]]:
    square = r == s
    cube = r == s == t

    def symmetric(pi):
        return square and transpose(pi, s) == pi

    def self_complementary(pi):
        return complement(pi, t) == pi

    def transpose_complementary(pi):
        return square and complement(pi, t) == transpose(pi, s)

    def cyclic(pi):
        return cube and is_cyclic(pi)

    return {
        "P": lambda pi: True,
        "S": symmetric,
        "CS": cyclic,
        "TS": lambda pi: cyclic(pi) and symmetric(pi),
        "SC": self_complementary,
        "TC": transpose_complementary,
        "SSC": lambda pi: symmetric(pi) and self_complementary(pi),
        "CSTC": lambda pi: cyclic(pi) and transpose_complementary(pi),
        "CSSC": lambda pi: cyclic(pi) and self_complementary(pi),
        "TSSC": lambda pi: cyclic(pi) and symmetric(pi) and self_complementary(pi),
    }


def count_classes(r: int, s: int, t: int, classes: Sequence[str] = CLASSES) -> Dict[str, int]:
    """Size of each requested symmetry class in the r x s x t box"""
    unknown = [c for c in classes if c not in CLASSES]
    if unknown:
        raise ParameterError(f"Unknown symmetry classes {unknown}; known: {', '.join(CLASSES)}")
    tests = _predicates(r, s, t)
    counts = {c: 0 for c in classes}
    cap = budget('enumeration_max_tilings')
    seen = 0
    for pi in plane_partitions(r, s, t):
        seen += 1
        if cap and seen > cap:
            raise BudgetExceededError(f"More than {cap} plane partitions in the {r}x{s}x{t} box", budget=cap, requested=seen)
        for c in classes:
            if tests[c](pi):
                counts[c] += 1
    logger.debug(f"Symmetry classes in the {r}x{s}x{t} box: {counts}")
    return counts
