# steps/cli/test_cli.py
import io
import json
import re
import shlex

from pytest_bdd import scenarios, when, then, parsers

from cli.main import run
from lattice.regions import hexagon
from lattice.serialization import deserialize_region

scenarios('cli.feature')


def _run(arguments):
    out, err = io.StringIO(), io.StringIO()
    status = run(shlex.split(arguments), out=out, err=err)
    return status, out.getvalue(), err.getvalue()


@when(parsers.parse('the lab is run with "{arguments}"'))
def run_lab(context, arguments):
    context['status'], context['out'], context['err'] = _run(arguments)


@then(parsers.parse('it exits with status {status:d}'))
def exit_status(context, status):
    assert context['status'] == status, context['err']


@then(parsers.parse('it prints "{output}"'))
def prints(context, output):
    assert context['out'] == output + "\n"


@then(parsers.parse('the first line is "{line}"'))
def first_line(context, line):
    assert context['out'].splitlines()[0] == line


def test_count_as_json():
    status, out, _ = _run("count --family hexagon --a 2 --b 2 --c 2 --json")
    assert status == 0
    doc = json.loads(out)
    assert doc["command"] == "count"
    assert doc["params"]["a"] == 2 and doc["params"]["family"] == "hexagon"
    assert doc["result"]["count"] == "20"
    assert doc["result"]["method"] == "auto"


def test_verify_as_json():
    status, out, _ = _run("verify --id T2_1_even --a 4 --b 1 --ks 1 --json")
    assert status == 0
    result = json.loads(out)["result"]
    assert result["verdict"] is True
    assert result["lhs"] == "9" and result["rhs"] == "9"


def test_quotient_lists_one_label_per_orbit():
    status, out, _ = _run("quotient --family hexagon --a 2 --b 2 --c 2 --sym rot120 --labels")
    assert status == 0
    labels = [line for line in out.splitlines() if re.match(r"# \d+ ", line)]
    assert len(labels) == 8
    edges = [line for line in out.splitlines() if not line.startswith("#")]
    assert all(re.fullmatch(r"\d+ \d+ \d+/\d+", line) for line in edges)


def test_identity_quotient_is_the_dual_graph():
    status, out, _ = _run("quotient --family hexagon --a 1 --b 1 --c 1 --sym identity")
    assert status == 0
    assert len([line for line in out.splitlines() if not line.startswith("#")]) == 6


def test_render_is_deterministic(tmp_path):
    arguments = "render --family holed --a 4 --b 1 --ks 2 --overlay dual"
    first, second = _run(arguments), _run(arguments)
    assert first[0] == 0
    assert first[1] == second[1]
    assert first[1].startswith("<svg")
    assert first[1].rstrip().endswith("</svg>")


def test_render_writes_files(tmp_path):
    svg, doc = tmp_path / "h.svg", tmp_path / "h.json"
    status, out, _ = _run(f"render --family hexagon --a 1 --b 1 --c 1 --overlay tiling --out {svg} --save-region {doc}")
    assert status == 0
    assert out == ""
    assert "<polygon" in svg.read_text()
    assert deserialize_region(doc.read_bytes()) == hexagon(1, 1, 1)


def test_sweep_from_the_command_line(tmp_path):
    report = tmp_path / "i19.csv"
    status, out, _ = _run(f"sweep --id I1_9 --grid '{{a: [1], b: [1]}}' --out {report}")
    assert status == 0
    assert "1/1 OK" in out
    assert report.exists()


def test_render_holed_hexagon_with_three_hole_pairs():
    status, out, _ = _run("render --family holed --a 15 --b 5 --ks 2,5,7")
    assert status == 0
    # three hole pairs drawn as filled triangles
    assert out.count('fill="#4a4a4a"') == 6
