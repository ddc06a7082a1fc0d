import pytest
from hypothesis import given, settings

from conftest import spgs
from spgkit.errors import InvalidSpg, ParseError
from spgkit.formats import dump_incidence, dump_spg, parse_incidence, parse_spg
from spgkit.generators import gen_hypercube

CUBE_TEXT = """\
# the square, written by hand
spg 2 4
vertex 0: 1,2
vertex 1: 1,4   # comment after a record
vertex 2: 2,3
vertex 3: 3,4

edge 0 1
edge 0 2
edge 1 3
edge 2 3
"""


def test_parse_square():
    g = parse_spg(CUBE_TEXT)
    assert g == gen_hypercube(2)


def test_multi_dset_class():
    g = parse_spg("spg 2 4\nvertex 7: 1,2; 3,4\nvertex 8: 2,3\nedge 7 8\n")
    assert g.dsets(7) == {(1, 2), (3, 4)}


@settings(max_examples=60, deadline=None)
@given(g=spgs())
def test_round_trip(g):
    assert parse_spg(dump_spg(g)) == g


@pytest.mark.parametrize(
    "text,line,fragment",
    [
        ("", 1, "header"),
        ("graph 2 4\n", 1, "header"),
        ("spg 2 4\nvertex 0: 1,2\nvertex 0: 3,4\n", 3, "duplicate vertex id 0"),
        ("spg 2 4\nvertex 0: 1,2,3\n", 2, "does not have 2 distinct symbols"),
        ("spg 2 4\nvertex 0: 1,1\n", 2, "does not have 2"),
        ("spg 2 4\nvertex 0: 1,2\nface 0 1\n", 3, "unknown directive 'face'"),
        ("spg 2 4\nvertex 0: 1,2\nedge 0\n", 3, "two ids"),
        ("spg 2 x\n", 1, "integer"),
        ("# c\nspg 2 4\nvertex 0 1,2\n", 3, "vertex <id>:"),
    ],
)
def test_strict_parse_errors(text, line, fragment):
    with pytest.raises(ParseError) as exc:
        parse_spg(text)
    assert exc.value.lineno == line
    assert fragment in str(exc.value)


def test_structural_errors_go_through_build():
    with pytest.raises(InvalidSpg) as exc:
        parse_spg("spg 2 4\nvertex 0: 1,2\nvertex 1: 3,4\n")
    assert [v.kind for v in exc.value.violations] == ["Disconnected"]


def test_incidence_round_trip():
    text = "incidence 3 3 2\n1 2\n1 3\n2 3\n"
    d, m = parse_incidence(text)
    assert d == 2
    assert m == [[True, True, False], [True, False, True], [False, True, True]]
    assert dump_incidence(d, m) == text


def test_incidence_errors():
    with pytest.raises(ParseError):
        parse_incidence("incidence 2 3 2\n1 2\n")
    with pytest.raises(ParseError):
        parse_incidence("incidence 1 3 2\n1 4\n")
