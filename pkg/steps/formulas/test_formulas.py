# steps/formulas/test_formulas.py
import pytest
from hypothesis import given as given_data, settings, strategies as st
from pytest_bdd import scenarios, when, then, parsers

from counting.tilings import count_symmetric_tilings, count_tilings, count_tilings_free
from formulas import products
from formulas.products import cored_count, d_count, hole_lists, holed_count_even, holed_count_odd, macmahon_box
from formulas.reduction import reduce_k1, reduce_k1_cored
from lattice.regions import cored_hexagon, d_region, hexagon, holed_hexagon
from steps.shared.values import ints
from utils import errors
from utils.errors import ParameterError

scenarios('formulas.feature')


@then(parsers.parse('macmahon_box({a:d}, {b:d}, {c:d}) is {count:d}'))
def macmahon(a, b, c, count):
    assert macmahon_box(a, b, c) == count


@when(parsers.parse('the hole lists are taken for a={a:d} and ks "{ks}"'))
def take_hole_lists(context, a, ks):
    context['lists'] = hole_lists(a, ints(ks))


@then(parsers.parse('l is "{l}" and q is "{q}"'))
def lists_are(context, l, q):
    assert list(context['lists'].l) == ints(l)
    assert list(context['lists'].q) == ints(q)


@then(parsers.parse('{name:w}({a:d}, {b:d}, "{ks}") is {count:d}'))
def holed_formula(context, name, a, b, ks, count):
    value = getattr(products, name)(a, b, ints(ks))
    context['value'] = value
    assert value == count


@then(parsers.parse('it matches the central count of the holed hexagon with side {side:d}, width {b:d} and holes "{ks}"'))
def matches_count(context, side, b, ks):
    assert count_symmetric_tilings(holed_hexagon(side, b, ints(ks)), "rot180") == context['value']


@then(parsers.parse('cored_count({a:d}, {b:d}, "{ks}", {x:d}) is {count:d}'))
def cored_formula(a, b, ks, x, count):
    assert cored_count(a, b, ints(ks), x) == count


@then(parsers.parse('d_count({a:d}, {b:d}, {eps:d}, "{is_}") is {count:d}'))
def d_formula(a, b, eps, is_, count):
    assert d_count(a, b, eps, ints(is_)) == count
    assert count_tilings_free(d_region(a, b, eps, ints(is_))) == count


@when(parsers.parse('the holed hexagon with side {a:d}, width {b:d} and holes "{ks}" is reduced'))
def reduce(context, a, b, ks):
    context['reduced'] = reduce_k1(a, b, ints(ks))


@then(parsers.parse('the reduced parameters are side {side:d}, width {width:d} and holes "{kept}"'))
def reduced_to(context, side, width, kept):
    assert context['reduced'] == (side, width, tuple(ints(kept)))


@then(parsers.parse('{name:w}({a:d}, {b:d}, "{ks}") fails with {error}'))
def formula_fails(name, a, b, ks, error):
    with pytest.raises(getattr(errors, error)):
        getattr(products, name)(a, b, ints(ks))


# --- Properties ---

@settings(max_examples=30, deadline=None)
@given_data(st.integers(0, 4), st.integers(0, 4), st.integers(0, 4))
def test_macmahon_is_symmetric(a, b, c):
    assert macmahon_box(a, b, c) == macmahon_box(b, c, a) == macmahon_box(b, a, c)


@settings(max_examples=10, deadline=None)
@given_data(st.integers(1, 2), st.integers(1, 2), st.integers(1, 2))
def test_macmahon_counts_hexagon_tilings(a, b, c):
    assert macmahon_box(a, b, c) == count_tilings(hexagon(a, b, c))


@settings(max_examples=20, deadline=None)
@given_data(st.integers(2, 5), st.integers(1, 3), st.data())
def test_reduction_keeps_the_tiling_count(a, b, data):
    rest = data.draw(st.lists(st.integers(2, a // 2), unique=True).map(sorted)) if a >= 4 else []
    ks = [1] + rest
    side, width, kept = reduce_k1(a, b, ks)
    assert side == a - 2 * (1 + sum(1 for i, k in enumerate(rest) if k == i + 2))
    if a <= 4:
        assert count_tilings(holed_hexagon(a, b, ks)) == count_tilings(holed_hexagon(side, width, kept))


def test_cored_reduction_matches_formula():
    a, b, ks, x = reduce_k1_cored(3, 1, [1], 1)
    assert (a, b, ks, x) == (2, 2, (), 1)
    assert cored_count(3, 1, [1], 1) == cored_count(a, b, ks, x)


def test_cored_formula_counts_the_region():
    assert count_symmetric_tilings(cored_hexagon(2, 1, [], 1), "rot180") == cored_count(2, 1, [], 1)


def test_core_meeting_a_hole_is_refused():
    with pytest.raises(ParameterError):
        cored_count(3, 1, [2], 2)


def test_bad_eps_is_refused():
    with pytest.raises(ParameterError):
        d_count(1, 1, 1, [1])


def test_negative_box_is_refused():
    with pytest.raises(ParameterError):
        macmahon_box(-1, 1, 1)
