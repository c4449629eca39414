# formulas/reduction.py
"""Peeling off the hole index k = 1.

A hole pair at k = 1 touches the boundary and forces two rows of lozenges
along the left and right sides. Removing them leaves the hexagon of side
a - 2 and width b + 1 whose holes have their indices lowered by one; tiling
counts, symmetric ones included, are unchanged.
"""
from typing import Sequence, Tuple

from lattice.regions import check_index_list
from utils.errors import ParameterError
from utils.logger import get_logger

logger = get_logger(__name__)


def reduce_k1(a: int, b: int, ks: Sequence[int]) -> Tuple[int, int, Tuple[int, ...]]:
    """Parameters of holed_hexagon(a, b, ks) with every leading k = 1 stripped; a no-op when k_1 != 1"""
    ks = check_index_list(ks, 1, max(a // 2, 0), "ks")
    start = (a, b, ks)
    while ks and ks[0] == 1:
        if a < 2:
            raise ParameterError(f"Cannot reduce side {a} below zero")
        a, b, ks = a - 2, b + 1, tuple(k - 1 for k in ks[1:])
    if (a, b, ks) != start:
        logger.debug(f"reduce_k1{start} -> {(a, b, ks)}")
    return a, b, ks


def reduce_k1_cored(a: int, b: int, ks: Sequence[int], x: int) -> Tuple[int, int, Tuple[int, ...], int]:
    """Same peeling for cored_hexagon(a, b, ks, x); the core keeps its size"""
    ks = check_index_list(ks, 1, max(a - 1, 0), "ks")
    start = (a, b, ks, x)
    while ks and ks[0] == 1:
        if a - 1 < x:
            raise ParameterError(f"Cannot reduce a={a} below the core size x={x}")
        a, b, ks = a - 1, b + 1, tuple(k - 1 for k in ks[1:])
    if (a, b, ks, x) != start:
        logger.debug(f"reduce_k1_cored{start} -> {(a, b, ks, x)}")
    return a, b, ks, x
