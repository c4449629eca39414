# steps/counting/test_counting.py
from fractions import Fraction

import pytest
from hypothesis import given as given_data, settings, strategies as st
from pytest_bdd import scenarios, then, parsers

from counting.oracle import count_matchings_oracle, enumerate_matchings, mgf_oracle
from counting.pfaffian import bareiss_determinant, count_matchings_pfaffian, kasteleyn_orientation, mgf_pfaffian
from counting.tilings import (SymmetrySpec, count_matchings, count_symmetric_tilings, count_tilings,
                              count_tilings_free, free_boundary_graph, matching_mgf)
from duality.match_graph import HALF, MatchGraph, dual_graph
from duality.quotient import absorb_loops
from lattice.cells import TriCell
from lattice.regions import d_region, hexagon
from utils import errors
from utils.errors import BudgetExceededError, ParameterError

scenarios('counting.feature')


@then(parsers.parse('the region has {count:d} tilings by the Pfaffian'))
def pfaffian_count(region, count):
    assert count_tilings(region, "pfaffian") == count


@then(parsers.parse('the region has {count:d} tilings by the exhaustive counter'))
def oracle_count(region, count):
    assert count_tilings(region, "oracle") == count


@then(parsers.parse('the region has {count:d} tilings fixed by "{symmetry}" on the orbit graph'))
def quotient_count(region, count, symmetry):
    assert count_symmetric_tilings(region, symmetry, method="quotient") == count


@then(parsers.parse('the region has {count:d} tilings fixed by "{symmetry}" when listing tilings'))
def listed_count(region, count, symmetry):
    assert count_symmetric_tilings(region, symmetry, method="enumerate") == count


@then(parsers.parse('the region has {count:d} tilings with its free boundary'))
def free_count(region, count):
    assert count_tilings_free(region) == count


@then(parsers.parse('counting it as a closed region fails with {error}'))
def closed_count_fails(region, error):
    with pytest.raises(getattr(errors, error)):
        count_tilings(region)


# --- Counter agreement ---

def _edge_graph(weight):
    return MatchGraph.build([TriCell.at(1, 0), TriCell.at(0, 0)], [(0, 1, weight)], name="K2")


def test_half_weight_edge():
    g = _edge_graph(HALF)
    assert mgf_oracle(g) == Fraction(1, 2)
    assert mgf_pfaffian(g) == Fraction(1, 2)
    assert matching_mgf(g) == Fraction(1, 2)


def test_non_integral_count_is_refused():
    with pytest.raises(errors.ContractError):
        count_matchings(_edge_graph(HALF))


def test_random_subgraphs_agree(data_generator):
    for g in data_generator.sub_regions(200, largest_side=4):
        assert g.vertex_count <= 40
        expected = count_matchings_oracle(g)
        assert count_matchings_pfaffian(g, use_block=True) == expected, g.describe()
        assert count_matchings_pfaffian(g, use_block=False) == expected, g.describe()
        if g.vertex_count <= 16:
            assert sum(1 for _ in enumerate_matchings(g)) == expected


def test_random_weights_agree(data_generator):
    for g in data_generator.sub_regions(100, largest_side=4):
        weighted = data_generator.reweighted(g)
        assert mgf_pfaffian(weighted) == mgf_oracle(weighted), weighted.describe()


def _path(n, loops):
    cells = [TriCell.at(u, 0) for u in range(n)]
    return MatchGraph.build(cells, [(i, i + 1, 1) for i in range(n - 1)], loops, name=f"P{n}")


@pytest.mark.parametrize("g, expected", [
    (MatchGraph.build([TriCell.at(1, 0), TriCell.at(0, 0)], [(0, 1, 1)], {0: 2, 1: 3}, name="K2"), 7),
    (_path(3, {0: 1, 2: 1}), 2),
    (_path(3, {0: 1, 1: 1, 2: 1}), 3),
    (_path(4, {0: 1, 3: 1}), 2),
    (_path(4, {0: 2, 1: 1, 2: 1, 3: 5}), 28),
])
def test_optional_loops_on_the_pfaffian(g, expected):
    assert mgf_oracle(g) == expected
    assert matching_mgf(g, "pfaffian") == expected


def test_unlooped_graph_has_a_pendant_chain():
    g = _path(4, {0: 1, 3: 1})
    unlooped = absorb_loops(g)
    assert not unlooped.loops
    assert unlooped.vertex_count == 4 + 3 * 2
    odd = absorb_loops(_path(3, {0: 1, 2: 1}))
    assert odd.vertex_count == 3 + 3 * 2 + 1


@pytest.mark.parametrize("a, b, eps, is_, count", [
    (1, 1, -1, [1], 2),
    (2, 1, -1, [1], 3),
    (2, 1, 0, [1], 6),
])
def test_free_boundaries_on_the_pfaffian(a, b, eps, is_, count):
    g = free_boundary_graph(d_region(a, b, eps, is_))
    assert matching_mgf(g, "pfaffian") == count
    assert mgf_oracle(g) == count


@pytest.mark.parametrize("a, b", [(1, 1), (2, 1), (1, 2), (3, 1), (2, 2)])
def test_reflection_quotients_agree_with_listing(a, b):
    region = hexagon(a, a, 2 * b)
    for spec in ("reflv", "rot180,reflv"):
        listed = count_symmetric_tilings(region, spec, method="enumerate")
        assert count_symmetric_tilings(region, spec, method="quotient") == listed



@settings(max_examples=25, deadline=None)
@given_data(st.integers(1, 3), st.integers(1, 3), st.integers(1, 3))
def test_kasteleyn_faces_are_odd(a, b, c):
    g = dual_graph(hexagon(a, b, c))
    orientation = kasteleyn_orientation(g)
    for face in orientation.bounded_faces():
        assert orientation.agreeing(face) % 2 == 1


def test_bareiss_determinant():
    assert bareiss_determinant([]) == 1
    assert bareiss_determinant([[2, 1], [1, 2]]) == 3
    assert bareiss_determinant([[0, 1], [1, 0]]) == -1
    assert bareiss_determinant([[1, 2], [2, 4]]) == 0
    assert bareiss_determinant([[2, 0, 1], [1, 3, 2], [1, 1, 2]]) == 6


def test_odd_graph_has_no_matching():
    g = MatchGraph.build([TriCell.at(1, 0)], [], name="point")
    assert count_matchings_pfaffian(g) == 0
    assert count_matchings_oracle(g) == 0


def test_empty_region_has_one_tiling():
    region = hexagon(1, 1, 1)
    empty = MatchGraph.build([], [], name="empty")
    assert count_matchings(empty) == 1
    assert count_tilings(region) == 2


def test_oracle_budget():
    g = dual_graph(hexagon(2, 2, 2))
    with pytest.raises(BudgetExceededError) as caught:
        count_matchings_oracle(g, max_vertices=10)
    assert caught.value.budget == 10
    assert caught.value.requested == g.vertex_count


def test_symmetry_spec_parsing():
    spec = SymmetrySpec.parse("rot180, reflv")
    assert spec.describe() == "rot180,reflv"
    assert SymmetrySpec.parse("").is_trivial
    assert SymmetrySpec.parse("identity").is_trivial
    assert not spec.is_rotation_group
    with pytest.raises(ParameterError):
        SymmetrySpec.parse("twist")


def test_unknown_method():
    with pytest.raises(ParameterError):
        count_tilings(hexagon(1, 1, 1), "guess")
