# verify/sweep.py
"""Run one identity over a grid of parameters and write a CSV report.

A grid names value lists per parameter, e.g. {a: [1, 2], b: [1]}. Index
lists left out of the grid are filled with every legal choice for the
other parameters. Failing rows are recorded, never raised.
"""
import csv
import json
import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Any, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from formulas.reduction import reduce_k1
from utils.config_loader import load_config
from utils.errors import ParameterError
from utils.logger import get_logger
from utils.performance_monitor import PerformanceMonitor
from verify.identities import IdentityCheck, IdentityId, check, format_value, parameters, parse_identity

logger = get_logger(__name__)

REPORT_FIELDS = ["identity", "params", "lhs", "rhs", "verdict"]

# identities whose ks index the holes of holed_hexagon(a, b, ks) directly
_HOLED = {IdentityId.I2_1, IdentityId.T2_1_EVEN, IdentityId.HALF_FREE, IdentityId.K1_REDUCE}
_CORED = {IdentityId.I2_2, IdentityId.T2_1_CORED, IdentityId.E3_13}
# even-side formulas stop where the two central holes meet
_EVEN_FORMULA = {IdentityId.E3_5, IdentityId.SQUARE_EVEN}


@dataclass(frozen=True)
class SweepRow:
    identity_id: IdentityId
    params: Dict[str, Any]
    lhs: str
    rhs: str
    verdict: str

    @property
    def passed(self) -> bool:
        return self.verdict == "OK"

    def as_csv(self) -> Dict[str, str]:
        return {
            "identity": self.identity_id.value,
            "params": json.dumps(self.params, separators=(",", ":"), sort_keys=True),
            "lhs": self.lhs,
            "rhs": self.rhs,
            "verdict": self.verdict,
        }


@dataclass
class SweepReport:
    identity_id: IdentityId
    rows: List[SweepRow] = field(default_factory=list)
    path: Optional[str] = None
    timing_path: Optional[str] = None

    @property
    def failures(self) -> List[SweepRow]:
        return [r for r in self.rows if not r.passed]

    @property
    def exit_code(self) -> int:
        return 1 if self.failures else 0


def _subsets(values: Sequence[int]) -> Iterator[Tuple[int, ...]]:
    for size in range(len(values) + 1):
        yield from combinations(values, size)


def _index_lists(ident: IdentityId, point: Mapping[str, Any]) -> Iterator[Tuple[int, ...]]:
    """Every legal ks (or is) for the other parameters of `point`"""
    a = point["a"]
    if ident in _HOLED:
        for ks in _subsets(range(1, a // 2 + 1)):
            if ident is IdentityId.K1_REDUCE and 1 not in ks:
                continue
            if ident is IdentityId.HALF_FREE and len(ks) == a // 2:
                continue
            yield ks
    elif ident in _CORED:
        yield from _subsets(range(1, a - point["x"] + 1))
    elif "is" in parameters(ident):
        for is_ in _subsets(range(1, a + 1)):
            if is_:
                yield is_
    else:
        for ks in _subsets(range(1, a + 1)):
            if ident in _EVEN_FORMULA:
                side, _, kept = reduce_k1(2 * a, point["b"], ks)
                if kept and max(kept) == side // 2:
                    continue
            if ident is IdentityId.E3_1 and not point.get("odd") and a in ks:
                continue
            yield ks


def expand_grid(identity_id: Union[str, IdentityId], grid: Mapping[str, Sequence[Any]]) -> List[Dict[str, Any]]:
    """Parameter points of a grid in a stable order"""
    ident = parse_identity(identity_id)
    names = parameters(ident)
    unknown = sorted(set(grid) - set(names))
    if unknown:
        raise ParameterError(f"{ident.value} grids take {', '.join(names)}; unexpected {', '.join(unknown)}")
    if not grid:
        return []
    for name, values in grid.items():
        if isinstance(values, (str, bytes)) or not isinstance(values, Sequence):
            raise ParameterError(f"{ident.value} grid values for '{name}' must be a list, got {values!r}")
        if name in ("ks", "is") and not all(isinstance(v, Sequence) and not isinstance(v, str) for v in values):
            raise ParameterError(f"{ident.value} grid values for '{name}' must be lists of indices, got {values!r}")

    scalars = [n for n in names if n not in ("ks", "is")]
    axes: List[Sequence[Any]] = []
    for name in scalars:
        if name == "odd":
            axes.append(grid.get("odd", [False, True]))
        elif name == "x" and "x" not in grid:
            axes.append([None])
        else:
            if name not in grid:
                raise ParameterError(f"{ident.value} grid needs values for '{name}'")
            axes.append(grid[name])

    points: List[Dict[str, Any]] = []
    lists_name = next((n for n in names if n in ("ks", "is")), None)
    for values in product(*axes):
        base = dict(zip(scalars, values))
        xs = range(1, base["a"] + 1) if "x" in base and base["x"] is None else [base.get("x")]
        for x in xs:
            point = dict(base)
            if "x" in point:
                point["x"] = x
            if lists_name is None:
                points.append(point)
                continue
            chosen = grid.get(lists_name)
            lists = [tuple(v) for v in chosen] if chosen is not None else list(_index_lists(ident, point))
            for index_list in lists:
                points.append({**point, lists_name: list(index_list)})
    return points


def _run_one(ident: IdentityId, params: Dict[str, Any], monitor: PerformanceMonitor) -> SweepRow:
    timer = monitor.start_timer(ident.value)
    try:
        result: IdentityCheck = check(ident, params)
    except Exception as e:
        # any failure of a single point becomes an ERROR row
        monitor.end_timer(timer, success=False, metadata={"params": json.dumps(params, sort_keys=True)})
        logger.error(f"{ident.value} {params}: {type(e).__name__}: {e}")
        return SweepRow(ident, params, "", str(e), f"ERROR {type(e).__name__}")
    monitor.end_timer(timer, success=result.verdict, metadata={"params": json.dumps(params, sort_keys=True)})
    return SweepRow(ident, result.params, format_value(result.lhs), format_value(result.rhs),
                    "OK" if result.verdict else "FAIL")


def default_grid(identity_id: Union[str, IdentityId], config: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
    ident = parse_identity(identity_id)
    config = config if config is not None else load_config()
    return dict(config.get('sweep', {}).get('grids', {}).get(ident.value, {}))


def sweep(identity_id: Union[str, IdentityId], grid: Optional[Mapping[str, Sequence[Any]]] = None,
          out: Optional[str] = None, workers: Optional[int] = None) -> SweepReport:
    """Check every point of the grid and write `identity,params,lhs,rhs,verdict` rows"""
    ident = parse_identity(identity_id)
    config = load_config()
    settings = config.get('sweep', {})
    grid = default_grid(ident, config) if grid is None else grid
    points = expand_grid(ident, grid)
    workers = workers or int(settings.get('workers', 1))
    if workers < 1:
        raise ParameterError(f"workers must be at least 1, got {workers}")

    path = out or os.path.join(settings.get('report_dir', 'reports/sweeps'), f"{ident.value}.csv")
    stem, _ = os.path.splitext(path)
    monitor = PerformanceMonitor(f"{stem}_timings.csv")

    logger.info(f"Sweeping {ident.value} over {len(points)} points with {workers} worker(s)")
    with logger.log_time(f"Sweep of {ident.value}", level=logging.INFO):
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(lambda p: _run_one(ident, p, monitor), points))

    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, 'w', newline='') as csvfile:
        writer = csv.DictWriter(csvfile, fieldnames=REPORT_FIELDS)
        writer.writeheader()
        writer.writerows(row.as_csv() for row in rows)

    report = SweepReport(ident, rows, path=path, timing_path=monitor.save_metrics())
    if report.failures:
        logger.error(f"{ident.value}: {len(report.failures)} of {len(rows)} points failed; report at {path}")
    else:
        logger.info(f"{ident.value}: all {len(rows)} points OK; report at {path}")
    return report
