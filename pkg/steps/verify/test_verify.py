# steps/verify/test_verify.py
import csv
import json
from fractions import Fraction

import pytest
from pytest_bdd import scenarios, when, then, parsers

from utils import errors
from verify.identities import IdentityId, check, format_value, parameters
from verify.plane_partitions import complement, count_classes, cubes, plane_partitions, transpose
from verify import sweep as sweep_module
from verify.sweep import REPORT_FIELDS, expand_grid, sweep

scenarios('verify.feature')


@when(parsers.parse('identity "{identity}" is checked with {params}'))
def run_check(context, identity, params):
    context['check'] = check(identity, json.loads(params))


@then(parsers.parse('the check reads "{summary}"'))
def check_reads(context, summary):
    assert context['check'].summary() == summary


@then('the check passes')
def check_passes(context):
    result = context['check']
    assert result.verdict, result.as_dict()


@then('the left side came from the orbit graph')
def lhs_from_orbit_graph(context):
    assert context['check'].lhs_from.startswith("orbit-graph")


@then('the right side came from the orbit graph')
def rhs_from_orbit_graph(context):
    assert context['check'].rhs_from.startswith("orbit-graph")


@then(parsers.parse('checking identity "{identity}" with {params} fails with {error}'))
def check_fails(identity, params, error):
    with pytest.raises(getattr(errors, error)):
        check(identity, json.loads(params))


@when(parsers.parse('identity "{identity}" is swept over {grid}'))
def run_sweep(context, report_dir, identity, grid):
    context['report'] = sweep(identity, json.loads(grid), out=str(report_dir / f"{identity}.csv"), workers=2)


@then(parsers.parse('the sweep has {rows:d} rows and every row is OK'))
def sweep_rows(context, rows):
    report = context['report']
    assert len(report.rows) == rows
    assert not report.failures, [r.as_csv() for r in report.failures]


@then('the sweep report lists identity, params, lhs, rhs and verdict')
def sweep_csv(context):
    with open(context['report'].path, newline='') as file:
        reader = csv.DictReader(file)
        assert reader.fieldnames == REPORT_FIELDS
        rows = list(reader)
    assert [json.loads(r['params']) for r in rows] == [{"a": 1, "b": 1}, {"a": 2, "b": 1}]
    assert [r['verdict'] for r in rows] == ["OK", "OK"]


@then(parsers.parse('the sweep exits with status {status:d}'))
def sweep_status(context, status):
    assert context['report'].exit_code == status


# --- Plane partitions and helpers ---

def test_plane_partitions_in_small_boxes():
    assert sum(1 for _ in plane_partitions(1, 1, 1)) == 2
    assert sum(1 for _ in plane_partitions(2, 2, 2)) == 20


def test_complement_and_transpose_are_involutions():
    for pp in plane_partitions(2, 2, 2):
        assert complement(complement(pp, 2), 2) == pp
        assert transpose(transpose(pp, 2), 2) == pp


def test_cube_count_of_the_full_box():
    full = ((2, 2), (2, 2))
    assert len(cubes(full)) == 8


def test_symmetry_classes_of_the_cube():
    counts = count_classes(2, 2, 2, ("P", "S", "CS", "TS", "SC"))
    assert counts == {"P": 20, "S": 10, "CS": 5, "TS": 5, "SC": 4}


def test_every_identity_is_registered():
    for ident in IdentityId:
        assert "a" in parameters(ident)


def test_grid_expansion_fills_core_sizes():
    points = expand_grid("T2_1_cored", {"a": [2], "b": [1]})
    assert {p["x"] for p in points} == {1, 2}
    assert all(p["ks"] == [] or max(p["ks"]) <= 2 - p["x"] for p in points)


def test_grid_with_unknown_parameter_is_refused():
    with pytest.raises(errors.ParameterError):
        expand_grid("I1_9", {"a": [1], "b": [1], "c": [1]})


def test_failures_are_recorded_not_raised(report_dir):
    report = sweep("I1_9", {"a": [1], "b": [-1]}, out=str(report_dir / "bad.csv"))
    assert len(report.failures) == 1
    assert report.failures[0].verdict.startswith("ERROR")
    assert report.exit_code == 1


def test_unexpected_exceptions_become_error_rows(report_dir, monkeypatch):
    real_check = sweep_module.check

    def flaky_check(ident, params):
        if params["a"] == 2:
            raise ZeroDivisionError("division by zero")
        return real_check(ident, params)

    monkeypatch.setattr(sweep_module, "check", flaky_check)
    report = sweep("I1_9", {"a": [1, 2], "b": [1]}, out=str(report_dir / "flaky.csv"), workers=2)
    assert len(report.rows) == 2
    assert [r.verdict for r in report.failures] == ["ERROR ZeroDivisionError"]
    assert report.exit_code == 1


@pytest.mark.parametrize("grid", [{"a": 2, "b": [1]}, {"a": "12", "b": [1]}])
def test_scalar_grid_values_are_refused(grid):
    with pytest.raises(errors.ParameterError):
        expand_grid("I1_9", grid)


def test_index_lists_must_be_lists():
    with pytest.raises(errors.ParameterError):
        expand_grid("T2_1_even", {"a": [4], "b": [1], "ks": [1, 2]})


def test_format_value():
    assert format_value(Fraction(1, 2)) == "1/2"
    assert format_value(Fraction(4, 2)) == "2"
    assert format_value((1, 2)) == "(1, 2)"
