# duality/symmetry.py
"""Isometries of regions realised as permutations of their cells.

All maps act about the region's center, which is a rational point; images of
lattice points are computed exactly and must come out integral.
"""
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Dict, Iterable, List, Sequence, Tuple, Union

from lattice.cells import Point, TriCell, lattice_edge
from lattice.regions import Region
from utils.errors import ParameterError, SymmetryAbsentError
from utils.logger import get_logger

logger = get_logger(__name__)

Permutation = Tuple[int, ...]


class SymmetryKind(str, Enum):
    IDENTITY = "identity"
    ROT60 = "rot60"
    ROT120 = "rot120"
    ROT180 = "rot180"
    REFL_H = "reflh"   # "-": mirror in the hole axis, u -> -u about the center
    REFL_V = "reflv"   # "|": mirror in the center row, v -> -v about the center

    @property
    def is_rotation(self) -> bool:
        return self is not SymmetryKind.REFL_H and self is not SymmetryKind.REFL_V


ROTATION_STEPS = {
    SymmetryKind.IDENTITY: 0,
    SymmetryKind.ROT60: 1,
    SymmetryKind.ROT120: 2,
    SymmetryKind.ROT180: 3,
}


def parse_word(text: Union[str, SymmetryKind, Sequence[SymmetryKind]]) -> Tuple[SymmetryKind, ...]:
    """'rot180*reflv' -> (ROT180, REFL_V); the rightmost factor acts first"""
    if isinstance(text, SymmetryKind):
        return (text,)
    if not isinstance(text, str):
        return tuple(SymmetryKind(k) for k in text)
    try:
        return tuple(SymmetryKind(part.strip().lower()) for part in text.split("*") if part.strip())
    except ValueError:
        known = ", ".join(k.value for k in SymmetryKind)
        raise ParameterError(f"Unknown symmetry '{text}'; known kinds: {known}")


def _map_point(kind: SymmetryKind, du: Fraction, dv: Fraction) -> Tuple[Fraction, Fraction]:
    if kind is SymmetryKind.REFL_H:
        return -du, dv
    if kind is SymmetryKind.REFL_V:
        return du, -dv
    for _ in range(ROTATION_STEPS[kind]):
        du, dv = (du - 3 * dv) / 2, (du + dv) / 2
    return du, dv


def map_point(word: Sequence[SymmetryKind], point: Point, center: Tuple[Fraction, Fraction]) -> Point:
    cu, cv = center
    du, dv = point[0] - cu, point[1] - cv
    for kind in reversed(word):
        du, dv = _map_point(kind, du, dv)
    u, v = du + cu, dv + cv
    if u.denominator != 1 or v.denominator != 1:
        raise SymmetryAbsentError(f"{'*'.join(k.value for k in word)} does not map lattice point {point} to a lattice point")
    return int(u), int(v)


@dataclass(frozen=True, eq=False)
class SymmetryElement:
    """An isometry fixing a region, stored as the cell mapping it induces"""
    word: Tuple[SymmetryKind, ...]
    mapping: Dict[TriCell, TriCell]
    center: Tuple[Fraction, Fraction]

    @property
    def kind(self) -> str:
        return "*".join(k.value for k in self.word) or SymmetryKind.IDENTITY.value

    @property
    def is_rotation(self) -> bool:
        return all(k.is_rotation for k in self.word)

    def apply(self, cell: TriCell) -> TriCell:
        return self.mapping[cell]

    def compose(self, other: "SymmetryElement") -> "SymmetryElement":
        """self after other"""
        if set(self.mapping) != set(other.mapping):
            raise ParameterError("Cannot compose symmetries of different regions")
        mapping = {c: self.mapping[other.mapping[c]] for c in other.mapping}
        return SymmetryElement(self.word + other.word, mapping, self.center)

    def fixed_cells(self) -> List[TriCell]:
        return sorted(c for c, d in self.mapping.items() if c == d)

    def order(self) -> int:
        current = dict(self.mapping)
        for k in range(1, 13):
            if all(c == d for c, d in current.items()):
                return k
            current = {c: self.mapping[d] for c, d in current.items()}
        raise SymmetryAbsentError(f"{self.kind} has no finite order up to 12")

    def same_as(self, other: "SymmetryElement") -> bool:
        return self.mapping == other.mapping

    def permutation(self, labels: Sequence[TriCell]) -> Permutation:
        """The induced permutation of label indices"""
        index = {c: i for i, c in enumerate(labels)}
        try:
            return tuple(index[self.mapping[c]] for c in labels)
        except KeyError as e:
            raise SymmetryAbsentError(f"{self.kind} moves {e.args[0]} outside the labelled cells")


def symmetry(region: Region, kind: Union[str, SymmetryKind, Sequence[SymmetryKind]]) -> SymmetryElement:
    """The isometry `kind` about the region's center, checked to fix the region"""
    word = parse_word(kind)
    name = "*".join(k.value for k in word) or "identity"
    center = region.center()
    mapping: Dict[TriCell, TriCell] = {}
    for cell in region.sorted_cells:
        image = TriCell.from_vertices(map_point(word, p, center) for p in cell.vertices())
        if image not in region.cells:
            raise SymmetryAbsentError(f"{name} does not fix {region.params.describe()}: {cell} maps to {image}")
        mapping[cell] = image

    for c, d in region.dual_edges():
        if mapping[c].shared_edge(mapping[d]) is None:
            raise SymmetryAbsentError(f"{name} breaks the adjacency of {c} and {d}")
    for p, q in region.free_edges:
        image = lattice_edge(map_point(word, p, center), map_point(word, q, center))
        if image not in region.free_edges:
            raise SymmetryAbsentError(f"{name} does not preserve the free boundary of {region.params.describe()}")
    for pair in region.half_edges:
        if frozenset(mapping[c] for c in pair) not in region.half_edges:
            raise SymmetryAbsentError(f"{name} does not preserve the half-weight edges of {region.params.describe()}")

    element = SymmetryElement(word, mapping, center)
    logger.debug(f"{name} fixes {region.params.describe()} with {len(element.fixed_cells())} fixed cells")
    return element


def group_closure(generators: Iterable[Permutation], size: int) -> List[Permutation]:
    """All products of the generating permutations of range(size)"""
    identity = tuple(range(size))
    seen = {identity}
    frontier = [identity]
    gens = list(generators)
    while frontier:
        p = frontier.pop()
        for g in gens:
            r = tuple(g[i] for i in p)
            if r not in seen:
                seen.add(r)
                frontier.append(r)
    return sorted(seen)
