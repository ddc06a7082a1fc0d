import io
import json
import os
import shlex
from pathlib import Path

import pytest

from spgkit.cli import run
from spgkit.core import build_spg
from spgkit.formats import dump_spg
from spgkit.generators import gen_hypercube

HERE = Path(__file__).parent
DATA = HERE / "data"
GOLDEN = HERE / "golden"

GOLDEN_CASES = {
    "validate": "validate {data}/cube3.spg --machine",
    "properties_fail": "properties {data}/path3.spg --machine",
    "diameter": "diameter {data}/cube3.spg --machine",
    "restrict": "restrict {data}/cube3.spg --symbols 1 --reduce --machine",
    "path": "path {data}/cube3.spg --from 0 --to 7 --certified --machine",
    "bounds": "bounds --d 3 --n 6 --machine",
    "table": "table --max-d 3 --max-n 8 --machine",
    "lemmas": "lemmas --max-d 10 --machine",
    "chain": "chain --d 3 --n 6 --machine",
    "search_exact": "search exact --d 2 --n 3 --machine",
    "search_random": "search random --d 2 --n 4 --budget 300 --seed 1 --machine",
    "gen_hypercube": "gen hypercube --d 2 --machine",
    "gen_incidence": "gen incidence {data}/square.inc --machine",
    "bounds_json": "bounds --d 3 --n 6 --json",
}


def call(cmd):
    out, err = io.StringIO(), io.StringIO()
    code = run(shlex.split(cmd.format(data=DATA)), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


@pytest.mark.parametrize("name", sorted(GOLDEN_CASES))
def test_golden(name):
    code, out, _ = call(GOLDEN_CASES[name])
    path = GOLDEN / f"{name}.txt"
    if os.environ.get("UPDATE_GOLDEN"):
        path.write_text(out)
    assert out == path.read_text()
    assert code == (1 if name == "properties_fail" else 0)


def test_human_validate():
    code, out, _ = call("validate {data}/cube3.spg")
    assert code == 0
    assert out.splitlines()[0] == "valid SPG: d=3 n=6 classes=8 edges=12"


def test_property_failure_exit_code():
    code, out, _ = call("validate {data}/path3.spg --machine")
    assert code == 1
    assert "property DimensionReduction false F={2};classes=0,2" in out


def test_invalid_file_lists_violations():
    code, out, err = call("validate {data}/broken.spg")
    assert code == 2 and out == ""
    for kind in ("OverlappingClasses", "SymbolOutOfRange", "BadEdge"):
        assert kind in err


def test_parse_error_exit_code(tmp_path):
    bad = tmp_path / "bad.spg"
    bad.write_text("spg 2 4\nvertex 0 1,2\n")
    code, _, err = call(f"diameter {bad}")
    assert code == 2 and "line 2" in err


@pytest.mark.parametrize(
    "cmd",
    [
        "",
        "frobnicate",
        "bounds --d 3",
        "bounds --d 4 --n 3",
        "chain --d 2 --n 10",
        "search exact --d 2 --n 6",
        "diameter {data}/missing.spg",
        "bounds --d 3 --n 6 --machine --json",
        "path {data}/cube3.spg --from 0 --to 99",
    ],
)
def test_usage_errors_exit_2(cmd):
    code, _, err = call(cmd)
    assert code == 2 and err


def test_stuck_recursion_exit_1(tmp_path):
    # d = 2 always takes the BFS base, so use a 4-cube whose facet 1 is cut apart
    f = tmp_path / "g.spg"
    cube = gen_hypercube(4)
    inside = {c.id for c in cube.classes if 1 in c.symbols()}
    edges = [e for e in cube.edges if not (e[0] in inside and e[1] in inside)]
    f.write_text(dump_spg(build_spg(4, 8, {c.id: c.dsets for c in cube.classes}, edges)))
    code, out, _ = call(f"path {f} --from 0 --to 15 --certified --machine")
    assert code == 1 and out == "stuck 1\n"


def test_json_records_are_one_per_line():
    code, out, _ = call("validate {data}/cube3.spg --json")
    assert code == 0
    records = [json.loads(line) for line in out.splitlines()]
    assert records[0]["record"] == "structure"
    assert [r["holds"] for r in records[1:]] == [True] * 4


def test_workers_match_single_worker():
    one = call("search exact --d 2 --n 4 --machine")
    two = call("search exact --d 2 --n 4 --workers 2 --machine")
    assert one == two


def test_human_table_floor():
    code, out, _ = call("table --max-d 3 --max-n 6 --floor")
    assert code == 0
    assert out.splitlines()[-1].split() == ["3", "6", "3", "15", "5", "17", "102", "11"]
