# verify/identities.py
"""Exact checks of the factorisation identities.

Each check computes its two sides along separate code paths and records
which path produced each side, so a reader of a report can tell a formula
evaluation from an enumeration or a Pfaffian.
"""
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Callable, Dict, Mapping, NamedTuple, Optional, Sequence, Tuple, Union

from counting.pfaffian import mgf_pfaffian
from counting.tilings import (count_matchings, count_symmetric_tilings, count_tilings, count_tilings_free,
                              weighted_tiling_count)
from duality.factorization import factorization_split
from duality.match_graph import dual_graph
from duality.quotient import quotient_graph, remove_loop_vertex
from duality.symmetry import symmetry
from formulas.products import (cored_count, d_count, hole_lists, holed_count_even, holed_count_odd)
from formulas.reduction import reduce_k1
from lattice.regions import Region, cored_hexagon, d_region, hexagon, holed_hexagon, rbar_region
from utils.config_loader import budget
from utils.errors import ParameterError
from utils.logger import get_logger
from verify.plane_partitions import count_classes

logger = get_logger(__name__)

Value = Union[int, Fraction, Tuple[int, ...]]


class IdentityId(str, Enum):
    I1_9 = "I1_9"
    I1_10 = "I1_10"
    I1_11 = "I1_11"
    I1_12 = "I1_12"
    I2_1 = "I2_1"
    I2_2 = "I2_2"
    T2_1_EVEN = "T2_1_even"
    T2_1_CORED = "T2_1_cored"
    E3_1 = "E3_1"
    E3_5 = "E3_5"
    E3_7 = "E3_7"
    E3_9 = "E3_9"
    E3_10 = "E3_10"
    E3_12 = "E3_12"
    E3_13 = "E3_13"
    SQUARE_EVEN = "SQUARE_EVEN"
    SQUARE_ODD = "SQUARE_ODD"
    HALF_FREE = "HALF_FREE"
    K1_REDUCE = "K1_REDUCE"
    FOUR_CLASS = "FOUR_CLASS"


def format_value(value: Value) -> str:
    """Exact decimal for integers, num/den for fractions, parenthesised tuples"""
    if isinstance(value, tuple):
        return "(" + ", ".join(format_value(v) for v in value) + ")"
    if isinstance(value, Fraction):
        return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
    return str(value)


@dataclass(frozen=True)
class IdentityCheck:
    identity_id: IdentityId
    params: Dict[str, Any]
    lhs: Value
    rhs: Value
    verdict: bool
    lhs_from: str
    rhs_from: str
    rhs_form: str
    details: Dict[str, Any] = field(default_factory=dict)

    def summary(self) -> str:
        """'3 = 3 × 1 OK'"""
        return f"{format_value(self.lhs)} = {self.rhs_form} {'OK' if self.verdict else 'FAIL'}"

    def as_dict(self) -> Dict[str, Any]:
        return {
            "identity": self.identity_id.value,
            "params": self.params,
            "lhs": format_value(self.lhs),
            "rhs": format_value(self.rhs),
            "verdict": self.verdict,
            "lhs_from": self.lhs_from,
            "rhs_from": self.rhs_from,
            "details": {k: format_value(v) if isinstance(v, (int, Fraction, tuple)) else v
                        for k, v in self.details.items()},
        }


class Sides(NamedTuple):
    lhs: Value
    rhs: Value
    rhs_form: str
    lhs_from: str
    rhs_from: str
    details: Optional[Dict[str, Any]] = None
    consistent: bool = True


# identity -> (parameter names, check function)
_REGISTRY: Dict[IdentityId, Tuple[Tuple[str, ...], Callable[..., Sides]]] = {}


def identity(identity_id: IdentityId, *params: str):
    def register(func: Callable[..., Sides]) -> Callable[..., Sides]:
        _REGISTRY[identity_id] = (params, func)
        return func
    return register


def parameters(identity_id: Union[str, IdentityId]) -> Tuple[str, ...]:
    return _REGISTRY[parse_identity(identity_id)][0]


def parse_identity(identity_id: Union[str, IdentityId]) -> IdentityId:
    try:
        return IdentityId(identity_id)
    except ValueError:
        known = ", ".join(i.value for i in IdentityId)
        raise ParameterError(f"Unknown identity '{identity_id}'; known: {known}")


# -- shared counting paths ----------------------------------------------------

def _listed(region: Region, spec: str) -> Tuple[int, str]:
    """Symmetric count by listing tilings when the region is small enough, else on the orbit graph"""
    if len(region.cells) < budget('enumeration_max_cells'):
        return count_symmetric_tilings(region, spec, method="enumerate"), "enumerate"
    return count_symmetric_tilings(region, spec, method="quotient"), "orbit-graph"


def _quotient_count(region: Region, kind: str) -> int:
    """Matchings of the orbit graph of one rotation, by the Pfaffian"""
    return count_matchings(quotient_graph(dual_graph(region), symmetry(region, kind)), method="pfaffian")


def _is_from_ks(a: int, ks: Sequence[int]) -> Tuple[int, ...]:
    return tuple(i for i in range(1, a + 1) if a + 1 - i not in set(ks))


def _product(lhs: int, first: int, second: int, lhs_from: str, rhs_from: str) -> Sides:
    return Sides(lhs, first * second, f"{first} × {second}", lhs_from, rhs_from)


def _square(lhs: Value, root: int, lhs_from: str, rhs_from: str) -> Sides:
    return Sides(lhs, root * root, f"{root}²", lhs_from, rhs_from)


# -- the hexagon identities -----------------------------------------------------

@identity(IdentityId.I1_9, "a", "b")
def _i1_9(a: int, b: int) -> Sides:
    region = hexagon(a, a, 2 * b)
    vertical, how = _listed(region, "reflv")
    horizontal, _ = _listed(region, "reflh")
    return _product(count_tilings(region, method="pfaffian"), vertical, horizontal, "pfaffian:dual", how)


@identity(IdentityId.I1_10, "a", "b")
def _i1_10(a: int, b: int) -> Sides:
    region = hexagon(a, a, 2 * b)
    root, how = _listed(region, "rot180,reflv")
    return _square(_quotient_count(region, "rot180"), root, "pfaffian:quotient-rot180", how)


@identity(IdentityId.I1_11, "a")
def _i1_11(a: int) -> Sides:
    region = hexagon(2 * a, 2 * a, 2 * a)
    vertical, how = _listed(region, "rot120,reflv")
    horizontal, _ = _listed(region, "rot120,reflh")
    return _product(_quotient_count(region, "rot120"), vertical, horizontal, "pfaffian:quotient-rot120", how)


@identity(IdentityId.I1_12, "a")
def _i1_12(a: int) -> Sides:
    region = hexagon(2 * a, 2 * a, 2 * a)
    root, how = _listed(region, "rot60,reflv")
    return _square(_quotient_count(region, "rot60"), root, "pfaffian:quotient-rot60", how)


@identity(IdentityId.FOUR_CLASS, "a", "b")
def _four_class(a: int, b: int) -> Sides:
    """Both boxes counted as plane partitions; every class also recounted as tilings"""
    flat = count_classes(a, a, 2 * b, ("P", "S", "TC", "SC", "SSC"))
    cube = count_classes(2 * a, 2 * a, 2 * a, ("CS", "TS", "CSTC", "CSSC", "TSSC"))
    lhs = (flat["P"], flat["SC"], cube["CS"], cube["CSSC"])
    rhs = (flat["S"] * flat["TC"], flat["SSC"] ** 2, cube["TS"] * cube["CSTC"], cube["TSSC"] ** 2)
    form = (f"({flat['S']} × {flat['TC']}, {flat['SSC']}², "
            f"{cube['TS']} × {cube['CSTC']}, {cube['TSSC']}²)")

    box, hexa = hexagon(a, a, 2 * b), hexagon(2 * a, 2 * a, 2 * a)
    tiled = {
        "P": count_tilings(box),
        "S": _listed(box, "reflv")[0],
        "TC": _listed(box, "reflh")[0],
        "SC": _listed(box, "rot180")[0],
        "SSC": _listed(box, "rot180,reflv")[0],
        "CS": _listed(hexa, "rot120")[0],
        "TS": _listed(hexa, "rot120,reflv")[0],
        "CSTC": _listed(hexa, "rot120,reflh")[0],
        "CSSC": _listed(hexa, "rot60")[0],
        "TSSC": _listed(hexa, "rot60,reflv")[0],
    }
    partitions = {**flat, **cube}
    mismatched = sorted(c for c in tiled if tiled[c] != partitions[c])
    details: Dict[str, Any] = {f"{c}": partitions[c] for c in partitions}
    details["tiling_mismatches"] = ",".join(mismatched)
    return Sides(lhs, rhs, form, "plane-partitions", "plane-partitions+tilings", details, consistent=not mismatched)


# -- holed and cored hexagons ---------------------------------------------------

@identity(IdentityId.I2_1, "a", "b", "ks")
def _i2_1(a: int, b: int, ks: Sequence[int]) -> Sides:
    region = holed_hexagon(a, b, ks)
    vertical, how = _listed(region, "reflv")
    horizontal, _ = _listed(region, "reflh")
    return _product(count_tilings(region, method="pfaffian"), vertical, horizontal, "pfaffian:dual", how)


@identity(IdentityId.I2_2, "a", "b", "ks", "x")
def _i2_2(a: int, b: int, ks: Sequence[int], x: int) -> Sides:
    region = cored_hexagon(a, b, ks, x)
    vertical, how = _listed(region, "reflv")
    horizontal, _ = _listed(region, "reflh")
    return _product(count_tilings(region, method="pfaffian"), vertical, horizontal, "pfaffian:dual", how)


def _central_square(region: Region) -> Sides:
    lhs = count_symmetric_tilings(region, "rot180", method="quotient")
    root, how = _listed(region, "rot180,reflv")
    return _square(lhs, root, "orbit-graph:rot180", how)


@identity(IdentityId.T2_1_EVEN, "a", "b", "ks")
def _t2_1_even(a: int, b: int, ks: Sequence[int]) -> Sides:
    return _central_square(holed_hexagon(a, b, ks))


@identity(IdentityId.T2_1_CORED, "a", "b", "ks", "x")
def _t2_1_cored(a: int, b: int, ks: Sequence[int], x: int) -> Sides:
    return _central_square(cored_hexagon(a, b, ks, x))


# -- the formula pipelines --------------------------------------------------------

@identity(IdentityId.E3_1, "a", "b", "ks", "odd")
def _e3_1(a: int, b: int, ks: Sequence[int], odd: bool = False) -> Sides:
    """M_⊙ against 2^m times the weighted count of the split half"""
    region = holed_hexagon(2 * a + (1 if odd else 0), b, ks)
    lhs, how = _listed(region, "rot180")
    quotient = quotient_graph(dual_graph(region), symmetry(region, "rot180"))
    forced = Fraction(1)
    if quotient.loops:
        quotient, forced = remove_loop_vertex(quotient)
    split = factorization_split(quotient, symmetry(region, "reflh"))
    weighted = mgf_pfaffian(split.subgraph)
    rhs = forced * split.multiplier * weighted
    details = {"multiplier_log2": split.multiplier_log2, "removed_edges": split.removed_edges}
    return Sides(lhs, rhs, f"2^{split.multiplier_log2} × {format_value(weighted)}", how, "pfaffian:split", details)


@identity(IdentityId.E3_5, "a", "b", "ks")
def _e3_5(a: int, b: int, ks: Sequence[int]) -> Sides:
    value, how = _listed(holed_hexagon(2 * a, b, ks), "rot180")
    lhs = holed_count_even(a, b, ks)
    return Sides(lhs, value, str(value), "formula:holed_count_even", how)


def _free_pipeline(a: int, b: int, eps: int, is_: Sequence[int]) -> Sides:
    value = count_tilings_free(d_region(a, b, eps, is_))
    return Sides(d_count(a, b, eps, is_), value, str(value), "formula:d_count", "oracle:free-boundary")


@identity(IdentityId.E3_7, "a", "b", "is")
def _e3_7(a: int, b: int, is_: Sequence[int]) -> Sides:
    return _free_pipeline(a, b, -1, is_)


@identity(IdentityId.E3_12, "a", "b", "is")
def _e3_12(a: int, b: int, is_: Sequence[int]) -> Sides:
    return _free_pipeline(a, b, 0, is_)


@identity(IdentityId.E3_9, "a", "b", "ks")
def _e3_9(a: int, b: int, ks: Sequence[int]) -> Sides:
    """M_⊙ of the odd holed hexagon against 2^(a-s) times the weighted half region"""
    lhs, how = _listed(holed_hexagon(2 * a + 1, b, ks), "rot180")
    side, base, kept = reduce_k1(2 * a + 1, b, ks)
    half = side // 2
    q = hole_lists(half, kept).q
    weighted = weighted_tiling_count(rbar_region(q, q, base)) if q else Fraction(1)
    exponent = half - len(kept)
    rhs = 2 ** exponent * weighted
    return Sides(lhs, rhs, f"2^{exponent} × {format_value(weighted)}", how, "pfaffian:rbar")


@identity(IdentityId.E3_10, "a", "b", "ks")
def _e3_10(a: int, b: int, ks: Sequence[int]) -> Sides:
    value, how = _listed(holed_hexagon(2 * a + 1, b, ks), "rot180")
    return Sides(holed_count_odd(a, b, ks), value, str(value), "formula:holed_count_odd", how)


@identity(IdentityId.E3_13, "a", "b", "ks", "x")
def _e3_13(a: int, b: int, ks: Sequence[int], x: int) -> Sides:
    value, how = _listed(cored_hexagon(a, b, ks, x), "rot180")
    return Sides(cored_count(a, b, ks, x), value, str(value), "formula:cored_count", how)


@identity(IdentityId.SQUARE_EVEN, "a", "b", "ks")
def _square_even(a: int, b: int, ks: Sequence[int]) -> Sides:
    root = d_count(a, b, -1, _is_from_ks(a, ks))
    return _square(holed_count_even(a, b, ks), root, "formula:holed_count_even", "formula:d_count")


@identity(IdentityId.SQUARE_ODD, "a", "b", "ks")
def _square_odd(a: int, b: int, ks: Sequence[int]) -> Sides:
    root = d_count(a, b, 0, _is_from_ks(a, ks))
    return _square(holed_count_odd(a, b, ks), root, "formula:holed_count_odd", "formula:d_count")


@identity(IdentityId.HALF_FREE, "a", "b", "ks")
def _half_free(a: int, b: int, ks: Sequence[int]) -> Sides:
    """Doubly symmetric tilings of the side-a holed hexagon against the free-boundary quarter"""
    if a < 2:
        raise ParameterError(f"HALF_FREE needs side a >= 2, got {a}")
    lhs, how = _listed(holed_hexagon(a, b, ks), "rot180,reflv")
    half = a // 2
    eps = -1 if a % 2 == 0 else 0
    value = count_tilings_free(d_region(half, b, eps, _is_from_ks(half, ks)))
    return Sides(lhs, value, str(value), how, "oracle:free-boundary")


@identity(IdentityId.K1_REDUCE, "a", "b", "ks")
def _k1_reduce(a: int, b: int, ks: Sequence[int]) -> Sides:
    """Plain, centrally symmetric and doubly symmetric counts survive peeling k = 1"""
    def counts(region: Region) -> Tuple[int, int, int]:
        return (count_tilings(region), count_symmetric_tilings(region, "rot180"),
                count_symmetric_tilings(region, "rot180,reflv"))

    reduced = reduce_k1(a, b, ks)
    rhs = counts(holed_hexagon(*reduced))
    details = {"reduced": f"a={reduced[0]}, b={reduced[1]}, ks={list(reduced[2])}"}
    return Sides(counts(holed_hexagon(a, b, ks)), rhs, format_value(rhs), "pfaffian+orbit-graph",
                 "pfaffian+orbit-graph:reduced", details)


# -- entry point ------------------------------------------------------------------

def _normalise(identity_id: IdentityId, params: Mapping[str, Any]) -> Dict[str, Any]:
    names = _REGISTRY[identity_id][0]
    unknown = sorted(set(params) - set(names))
    if unknown:
        raise ParameterError(f"{identity_id.value} takes {', '.join(names)}; unexpected {', '.join(unknown)}")
    out: Dict[str, Any] = {}
    for name in names:
        if name in ("ks", "is"):
            out[name] = list(params.get(name) or [])
        elif name == "odd":
            out[name] = bool(params.get(name, False))
        elif name not in params:
            raise ParameterError(f"{identity_id.value} needs parameter '{name}'")
        else:
            out[name] = params[name]
    return out


def check(identity_id: Union[str, IdentityId], params: Mapping[str, Any]) -> IdentityCheck:
    """Compute both sides of one identity at one parameter point"""
    ident = parse_identity(identity_id)
    clean = _normalise(ident, params)
    _, func = _REGISTRY[ident]
    kwargs = {("is_" if k == "is" else k): v for k, v in clean.items()}
    sides = func(**kwargs)
    result = IdentityCheck(
        identity_id=ident, params=clean, lhs=sides.lhs, rhs=sides.rhs, verdict=sides.consistent and sides.lhs == sides.rhs,
        lhs_from=sides.lhs_from, rhs_from=sides.rhs_from, rhs_form=sides.rhs_form, details=dict(sides.details or {}),
    )
    if result.verdict:
        logger.info(f"{ident.value} {clean}: {result.summary()}")
    else:
        logger.error(f"{ident.value} {clean}: {result.summary()} (lhs via {result.lhs_from}, rhs via {result.rhs_from})")
    return result
