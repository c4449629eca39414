# steps/conftest.py
from pytest_bdd import given, then, parsers

from duality.symmetry import symmetry
from lattice.regions import cored_hexagon, d_region, hexagon, holed_hexagon
from steps.shared.values import ints


@given(parsers.parse('the hexagon with sides {a:d}, {b:d}, {c:d}'), target_fixture="region")
def given_hexagon(a, b, c):
    return hexagon(a, b, c)


@given(parsers.parse('the holed hexagon with side {a:d}, width {b:d} and holes "{ks}"'), target_fixture="region")
def given_holed(a, b, ks):
    return holed_hexagon(a, b, ints(ks))


@given(parsers.parse('the cored hexagon with a={a:d}, b={b:d}, holes "{ks}" and core x={x:d}'), target_fixture="region")
def given_cored(a, b, ks, x):
    return cored_hexagon(a, b, ints(ks), x)


@given(parsers.parse('the region D with a={a:d}, b={b:d}, eps={eps:d} and indices "{is_}"'), target_fixture="region")
def given_d_region(a, b, eps, is_):
    return d_region(a, b, eps, ints(is_))


@then(parsers.parse('the region has {cells:d} cells'))
def region_has_cells(region, cells):
    assert len(region.cells) == cells


@then(parsers.parse('the region is fixed by "{kind}"'))
def region_fixed_by(region, kind):
    element = symmetry(region, kind)
    assert {element.apply(c) for c in region.cells} == set(region.cells)
