# steps/duality/test_duality.py
import pytest
from hypothesis import given as given_data, settings, strategies as st
from pytest_bdd import scenarios, when, then, parsers

from duality.factorization import factorization_split
from duality.match_graph import dual_graph
from duality.quotient import orbit_graph, quotient_graph, remove_loop_vertex
from duality.symmetry import group_closure, symmetry
from lattice.regions import hexagon, holed_hexagon, rbar_region
from steps.shared.values import ints
from utils import errors
from utils.errors import UnsupportedActionError

scenarios('duality.feature')


@when('the dual graph is built')
def build_dual(context, region):
    context['graph'] = dual_graph(region)


@when(parsers.parse('the symmetry "{kind}" is taken'))
def take_symmetry(context, region, kind):
    context['symmetry'] = symmetry(region, kind)


@when(parsers.parse('the quotient by "{kind}" is built'))
def build_quotient(context, region, kind):
    context['region'] = region
    context['graph'] = quotient_graph(dual_graph(region), symmetry(region, kind))


@when('the loop vertex is removed')
def remove_loop(context):
    context['graph'], context['forced'] = remove_loop_vertex(context['graph'])


@when('the quotient is split along the hole axis')
def split(context, region):
    context['split'] = factorization_split(context['graph'], symmetry(region, "reflh"))


@then(parsers.parse('the graph has {vertices:d} vertices and {edges:d} edges'))
def graph_size(context, vertices, edges):
    assert context['graph'].vertex_count == vertices
    assert context['graph'].edge_count == edges


@then(parsers.parse('the graph has {vertices:d} vertices'))
def graph_vertices(context, vertices):
    assert context['graph'].vertex_count == vertices


@then(parsers.parse('the graph has {loops:d} loops'))
def graph_loops(context, loops):
    assert len(context['graph'].loops) == loops


@then(parsers.parse('every vertex of the graph has degree {degree:d}'))
def regular(context, degree):
    assert all(len(n) == degree for n in context['graph'].adjacency)


@then(parsers.parse('the graph is bipartite with classes of size {left:d} and {right:d}'))
def bipartite(context, left, right):
    sides = context['graph'].bipartition
    assert sides is not None
    assert sorted(len(s) for s in sides) == sorted([left, right])


@then(parsers.parse('the symmetry has order {order:d}'))
def symmetry_order(context, order):
    assert context['symmetry'].order() == order


@then(parsers.parse('taking the symmetry "{kind}" fails with {error}'))
def symmetry_fails(region, kind, error):
    with pytest.raises(getattr(errors, error)):
        symmetry(region, kind)


@then(parsers.parse('"{left}" and "{right}" act the same'))
def same_action(region, left, right):
    assert symmetry(region, left).same_as(symmetry(region, right))


@then('the symmetry fixes no cell')
def no_fixed_cell(context):
    assert context['symmetry'].fixed_cells() == []


@then(parsers.parse('removing the loop vertex fails with {error}'))
def removal_fails(context, error):
    with pytest.raises(getattr(errors, error)):
        remove_loop_vertex(context['graph'])


@then(parsers.parse('the split halves {count:d} axis edges'))
def split_multiplier(context, count):
    result = context['split']
    assert result.multiplier_log2 == count
    assert result.multiplier == 2 ** count


@then('the split graph keeps one cell of every orbit')
def one_per_orbit(context):
    reps = context['split'].subgraph.labels
    assert len(reps) == context['graph'].vertex_count
    assert all(rep in orbit for rep, orbit in zip(reps, context['graph'].labels))


@then(parsers.parse('the split cells are the cells of the half region with l "{l}", q "{q}" and base {base:d}'))
def split_matches_half_region(context, l, q, base):
    half = rbar_region(ints(l), ints(q), base)
    assert set(context['split'].subgraph.labels) == set(half.cells)


# --- Properties ---

@settings(max_examples=15, deadline=None)
@given_data(st.integers(1, 3), st.integers(1, 3), st.integers(1, 3))
def test_rot180_quotient_halves_every_hexagon(a, b, c):
    region = hexagon(a, b, c)
    g = dual_graph(region)
    element = symmetry(region, "rot180")
    assert element.order() == 2
    assert not element.fixed_cells()
    q = quotient_graph(g, element)
    assert q.vertex_count == g.vertex_count // 2
    assert all(len(orbit) == 2 for orbit in q.labels)


@settings(max_examples=10, deadline=None)
@given_data(st.integers(2, 6), st.integers(1, 3))
def test_holed_quotient_has_a_loop_exactly_for_odd_sides(a, b):
    region = holed_hexagon(a, b)
    q = quotient_graph(dual_graph(region), symmetry(region, "rot180"))
    assert len(q.loops) == a % 2


def test_orbit_graph_of_the_trivial_group_is_the_graph():
    g = dual_graph(hexagon(1, 2, 2))
    group = group_closure([tuple(range(g.vertex_count))], g.vertex_count)
    q = orbit_graph(g, group)
    assert q.vertex_count == g.vertex_count
    assert q.edge_count == g.edge_count


def test_reflection_through_cells_has_no_quotient():
    region = hexagon(1, 1, 2)
    element = symmetry(region, "reflh")
    assert element.fixed_cells()
    with pytest.raises(UnsupportedActionError):
        quotient_graph(dual_graph(region), element)


def test_split_needs_the_hole_axis():
    region = holed_hexagon(4, 1, [2])
    q = quotient_graph(dual_graph(region), symmetry(region, "rot180"))
    with pytest.raises(errors.ContractError, match="only supports the hole axis"):
        factorization_split(q, symmetry(region, "reflv"))
