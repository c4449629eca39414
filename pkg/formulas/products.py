# formulas/products.py
"""Closed-form tiling counts, evaluated exactly.

Every product is accumulated as a Fraction and must clear to an integer; a
remainder means the formula was applied outside the range where it holds.
"""
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Tuple

from formulas.reduction import reduce_k1
from lattice.regions import check_index_list
from utils.errors import FormulaApplicationError, ParameterError
from utils.logger import get_logger

logger = get_logger(__name__)

VARIANTS = ("printed", "oracle")


@lru_cache(maxsize=None)
def factorial(n: int) -> int:
    if n < 0:
        raise FormulaApplicationError(f"factorial of negative number {n}")
    return math.factorial(n)


def binomial(n: int, k: int) -> int:
    if k < 0 or n < 0 or k > n:
        return 0
    return factorial(n) // (factorial(k) * factorial(n - k))


def _clear(value: Fraction, what: str) -> int:
    if value.denominator != 1:
        raise FormulaApplicationError(f"{what} evaluates to {value}, which is not an integer")
    if value < 0:
        raise FormulaApplicationError(f"{what} evaluates to the negative number {value}")
    return value.numerator


def _check_sizes(**named: int) -> None:
    for name, value in named.items():
        if not isinstance(value, int) or isinstance(value, bool) or value < 0:
            raise ParameterError(f"{name} must be a non-negative integer, got {value!r}")


def macmahon_box(a: int, b: int, c: int) -> int:
    """Plane partitions in an a x b x c box: prod (i+j+k-1)/(i+j+k-2)"""
    _check_sizes(a=a, b=b, c=c)
    value = Fraction(1)
    for i in range(1, a + 1):
        for j in range(1, b + 1):
            for k in range(1, c + 1):
                value *= Fraction(i + j + k - 1, i + j + k - 2)
    return _clear(value, f"macmahon_box({a}, {b}, {c})")


@dataclass(frozen=True)
class HoleLists:
    """Bump positions on the two zig-zag cuts of a half region"""
    l: Tuple[int, ...]
    q: Tuple[int, ...]


def hole_lists(a: int, ks: Sequence[int]) -> HoleLists:
    """l = [a-1] minus {a-k}, q = [a] minus {a-k+1}"""
    _check_sizes(a=a)
    ks = check_index_list(ks, 1, a, "ks")
    l = tuple(i for i in range(1, a) if i not in {a - k for k in ks})
    q = tuple(i for i in range(1, a + 1) if i not in {a - k + 1 for k in ks})
    return HoleLists(l=l, q=q)


def _vandermonde(values: Sequence[int]) -> int:
    out = 1
    for i in range(len(values)):
        for j in range(i + 1, len(values)):
            out *= values[j] - values[i]
    return out


def _check_variant(variant: str) -> None:
    if variant not in VARIANTS:
        raise ParameterError(f"Unknown variant '{variant}'; expected one of {VARIANTS}")


def _ramp(x: int, top: int, peak: int) -> int:
    """prod_{t=1}^{top} (x+t)^min(t, peak-t)"""
    out = 1
    for t in range(1, top + 1):
        out *= (x + t) ** min(t, peak - t)
    return out


def _inner(values: Sequence[int], x: int, low: int, high: int) -> int:
    """prod_i prod_{j=1}^{v_i - i} (x - i - j + low)(x + i + j + high)"""
    out = 1
    for i, v in enumerate(values, start=1):
        for j in range(1, v - i + 1):
            out *= (x - i - j + low) * (x + i + j + high)
    return out


def eval_Q(l: Sequence[int], q: Sequence[int], x: int, a: int, s: int, variant: str = "printed") -> int:
    """The polynomial Q_{l,q} at x.

    The 'printed' variant pairs the shifted factors with l; the 'oracle'
    variant, which agrees with enumeration, pairs them with q.
    """
    _check_variant(variant)
    m = a - s
    value = _ramp(x, 2 * m - 1, 2 * m) ** 2
    if variant == "printed":
        value *= _inner(l, x, m + 1, m - 1) * _inner(q, x, m, m)
    else:
        value *= _inner(l, x, m, m) * _inner(q, x, m + 1, m - 1)
    return value


def eval_S(q: Sequence[int], x: int, a: int, s: int, variant: str = "printed") -> int:
    """The polynomial S_q at x; a perfect square in both variants"""
    _check_variant(variant)
    m = a - s
    prefix = _ramp(x, 2 * m, 2 * m + 1)
    if variant == "printed":
        inner = _inner(q, x, m, m)
    else:
        inner = _inner(q, x, m + 1, m)
    return (prefix * inner) ** 2


def _reciprocal(values: Iterable[int]) -> Fraction:
    out = Fraction(1)
    for v in values:
        out /= v
    return out


def holed_count_even(a: int, b: int, ks: Sequence[int] = ()) -> int:
    """Centrally symmetric tilings of the holed hexagon of side 2a.

    An index k_1 = 1 is first peeled off with reduce_k1. The formula needs
    k_s < a; at k_s = a the two central holes touch.
    """
    _check_sizes(a=a, b=b)
    side, b, ks = reduce_k1(2 * a, b, ks)
    a = side // 2
    if a == 0:
        return 1
    lists = hole_lists(a, ks)
    if len(lists.l) == len(lists.q):
        raise FormulaApplicationError(f"holed_count_even needs k_s < a; got a={a}, ks={list(ks)}")
    l, q, s = lists.l, lists.q, len(ks)
    value = Fraction(2)
    value *= _reciprocal(factorial(2 * li - 1) for li in l)
    value *= _reciprocal(factorial(2 * qi) for qi in q)
    value *= _vandermonde(l) * _vandermonde(q)
    value *= _reciprocal(li + qj for li in l for qj in q)
    value *= eval_Q(l, q, b + s, a, s, variant="oracle")
    result = _clear(value, f"holed_count_even({a}, {b}, {list(ks)})")
    logger.debug(f"holed_count_even({a}, {b}, {list(ks)}) = {result}")
    return result


def _odd_value(q: Sequence[int], b: int, a: int, what: str) -> int:
    s = a - len(q)
    value = Fraction(1)
    value *= _reciprocal(factorial(2 * qi - 1) * factorial(2 * qi) for qi in q)
    value *= _vandermonde(q) ** 2
    value *= _reciprocal(qi + qj for qi in q for qj in q)
    value *= eval_S(q, b + s, a, s, variant="oracle")
    result = _clear(value, what)
    logger.debug(f"{what} = {result}")
    return result


def holed_count_odd(a: int, b: int, ks: Sequence[int] = ()) -> int:
    """Centrally symmetric tilings of the holed hexagon of side 2a+1"""
    _check_sizes(a=a, b=b)
    ks = check_index_list(ks, 1, a, "ks")
    q = hole_lists(a, ks).q
    return _odd_value(q, b, a, f"holed_count_odd({a}, {b}, {list(ks)})")


def cored_indices(a: int, ks: Sequence[int], x: int) -> Tuple[int, ...]:
    """[a-1] minus the hole positions {a-k} and the core positions [1..x-1]"""
    removed = {a - k for k in ks} | set(range(1, x))
    return tuple(i for i in range(1, a) if i not in removed)


def cored_count(a: int, b: int, ks: Sequence[int], x: int) -> int:
    """Centrally symmetric tilings of the cored hexagon of side 2a-1 and core 2x-1"""
    _check_sizes(a=a, b=b, x=x)
    if a < 1 or x < 1 or x > a:
        raise ParameterError(f"cored_count needs 1 <= x <= a, got a={a}, x={x}")
    ks = check_index_list(ks, 1, a - 1, "ks")
    colliding = [k for k in ks if k >= a - x + 1]
    if colliding:
        raise ParameterError(f"Core of side {2 * x - 1} meets the hole k={colliding[0]}")
    q = cored_indices(a, ks, x)
    return _odd_value(q, b, a - 1, f"cored_count({a}, {b}, {list(ks)}, {x})")


def d_count(a: int, b: int, eps: int, is_: Sequence[int]) -> int:
    """Free-boundary tilings of the quarter region: prod C(a+b+i+eps, 2i+eps) prod (i_k-i_j)/(i_j+i_k+eps)"""
    _check_sizes(a=a, b=b)
    if eps not in (-1, 0):
        raise ParameterError(f"eps must be -1 or 0, got {eps!r}")
    is_ = check_index_list(is_, 1, a, "is")
    value = Fraction(1)
    for i in is_:
        value *= binomial(a + b + i + eps, 2 * i + eps)
    for j in range(len(is_)):
        for k in range(j + 1, len(is_)):
            value *= Fraction(is_[k] - is_[j], is_[j] + is_[k] + eps)
    result = _clear(value, f"d_count({a}, {b}, {eps}, {list(is_)})")
    logger.debug(f"d_count({a}, {b}, {eps}, {list(is_)}) = {result}")
    return result
