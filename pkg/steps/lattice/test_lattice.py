# steps/lattice/test_lattice.py
import json

import pytest
from hypothesis import given as given_data, settings, strategies as st
from pytest_bdd import scenarios, when, then, parsers

from lattice.cells import TriCell
from lattice.regions import cored_hexagon, hexagon, holed_hexagon, rbar_region
from lattice.serialization import deserialize_region, serialize_region
from steps.shared.values import ints
from utils import errors
from utils.errors import RegionParseError

scenarios('lattice.feature')


def _build(family, params):
    parts = params.split(";")
    if family == "hexagon":
        return hexagon(*(int(p) for p in parts))
    if family == "holed":
        return holed_hexagon(int(parts[0]), int(parts[1]), ints(parts[2]))
    return cored_hexagon(int(parts[0]), int(parts[1]), ints(parts[2]), int(parts[3]))


@when(parsers.parse('the {family} region is built with "{params}"'))
def build_bad_region(context, family, params):
    with pytest.raises(errors.LabError) as caught:
        _build(family, params)
    context['error'] = caught.value


@then(parsers.parse('the construction fails with {error}'))
def construction_fails(context, error):
    assert isinstance(context['error'], getattr(errors, error))


@then('the region has as many up cells as down cells')
def balanced(region):
    assert region.up_count == region.down_count


@then('the region has free edges on its cut')
def has_free_edges(region):
    assert region.free_edges
    assert not region.is_closed


@then('every free edge lies on the region boundary')
def free_edges_on_boundary(region):
    assert region.free_edges <= region.boundary_edges


@when('the region is serialized')
def serialize(context, region):
    context['document'] = serialize_region(region)


@then(parsers.parse('the document names the family "{family}" with a={a:d}, b={b:d} and ks "{ks}"'))
def document_names_family(context, family, a, b, ks):
    doc = json.loads(context['document'])
    assert doc['v'] == 1
    assert doc['family'] == family
    assert doc['params']['a'] == a and doc['params']['b'] == b
    assert doc['params']['ks'] == ints(ks)


@then('reading the document back gives the same region')
def round_trip(context, region):
    assert deserialize_region(context['document']) == region


@when(parsers.parse('the document "{text}" is read'))
def read_document(context, text):
    with pytest.raises(RegionParseError) as caught:
        deserialize_region(text)
    context['error'] = caught.value


@then('reading fails with a parse error')
def parse_error(context):
    assert isinstance(context['error'], RegionParseError)


# --- Properties ---

@settings(max_examples=30, deadline=None)
@given_data(st.integers(1, 4), st.integers(1, 4), st.integers(1, 4))
def test_hexagon_cell_count(a, b, c):
    region = hexagon(a, b, c)
    assert len(region.cells) == 2 * (a * b + b * c + c * a)
    assert region.is_balanced


@settings(max_examples=30, deadline=None)
@given_data(st.integers(2, 8), st.integers(1, 3), st.data())
def test_holed_cell_count(a, b, data):
    ks = data.draw(st.lists(st.integers(1, a // 2), unique=True).map(sorted))
    region = holed_hexagon(a, b, ks)
    assert len(region.cells) == 2 * (a * a + 4 * a * b) - 8 * len(ks)


@settings(max_examples=20, deadline=None)
@given_data(st.integers(1, 3), st.integers(1, 3), st.integers(1, 3))
def test_adjacency_is_symmetric_and_at_most_three(a, b, c):
    region = hexagon(a, b, c)
    for cell, neighbours in region.adjacency.items():
        assert len(neighbours) <= 3
        for n in neighbours:
            assert cell in region.adjacency[n]
            assert cell.is_up != n.is_up


def test_cell_orientation_follows_parity():
    assert TriCell.at(1, 0).is_up
    assert not TriCell.at(0, 0).is_up
    with pytest.raises(ValueError):
        TriCell(0, 0, "U")


def test_empty_holed_hexagon():
    assert not holed_hexagon(0, 3).cells


def test_malformed_json_reports_offset():
    with pytest.raises(RegionParseError) as caught:
        deserialize_region(b'{"v": 1, "family": ')
    assert caught.value.offset > 0


def test_tampered_cells_are_rejected():
    doc = json.loads(serialize_region(hexagon(1, 1, 1)))
    doc['cells'] = doc['cells'][:-1]
    with pytest.raises(RegionParseError):
        deserialize_region(json.dumps(doc))


@pytest.mark.parametrize("l, q", [([2], [1, 2]), ([1, 3], [2, 3]), ([], [2])])
def test_rbar_takes_only_the_holed_halves(l, q):
    with pytest.raises(errors.ParameterError, match="only builds the halves of holed hexagons"):
        rbar_region(l, q, 1)
