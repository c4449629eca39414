# lattice/serialization.py
import json
from typing import Union

from lattice.cells import Orient, TriCell, lattice_edge
from lattice.regions import Region, RegionParams, from_params
from utils.errors import LabError, RegionParseError
from utils.logger import get_logger
from utils.schema_validation import RegionDocument, validate_schema

logger = get_logger(__name__)

FORMAT_VERSION = 1


def _cell_entry(cell: TriCell) -> list:
    return [cell.u, cell.v, cell.orient.value]


def region_document(region: Region) -> dict:
    """The JSON-ready document, cells and edges sorted for byte-stable output"""
    return {
        "v": FORMAT_VERSION,
        "family": region.family.value,
        "params": region.params.as_dict(),
        "cells": [_cell_entry(c) for c in region.sorted_cells],
        "free_edges": [[list(p), list(q)] for p, q in sorted(region.free_edges)],
        "half_edges": sorted([_cell_entry(c) for c in sorted(pair)] for pair in region.half_edges),
    }


def serialize_region(region: Region) -> bytes:
    return json.dumps(region_document(region), separators=(",", ":")).encode("utf-8")


def deserialize_region(data: Union[bytes, str]) -> Region:
    """Parse a region document and check it against its own construction record"""
    raw = data.encode("utf-8") if isinstance(data, str) else data
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as e:
        raise RegionParseError("document is not UTF-8", offset=e.start)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise RegionParseError(f"invalid JSON: {e.msg}", offset=len(text[:e.pos].encode("utf-8")))

    ok, error, model = validate_schema(doc, RegionDocument)
    if not ok:
        raise RegionParseError(f"document does not match the region schema: {error}", offset=0)

    try:
        params = RegionParams.from_dict(model.family, model.params)
        cells = frozenset(TriCell(u, v, Orient(o)) for u, v, o in model.cells)
        free = frozenset(lattice_edge(tuple(p), tuple(q)) for p, q in model.free_edges)
        half = frozenset(frozenset(TriCell(u, v, Orient(o)) for u, v, o in pair) for pair in model.half_edges)
    except (LabError, ValueError) as e:
        raise RegionParseError(f"bad region content: {e}", offset=0)

    region = Region(cells=cells, params=params, free_edges=free, half_edges=half)
    try:
        rebuilt = from_params(params)
    except LabError as e:
        raise RegionParseError(f"parameters do not build a region: {e}", offset=0)
    if rebuilt != region:
        raise RegionParseError(f"cells do not match {params.describe()}", offset=0)
    logger.debug(f"Parsed {params.describe()} with {len(cells)} cells")
    return rebuilt
