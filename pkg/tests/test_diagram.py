import pytest
from hypothesis import given
from hypothesis import strategies as st

from coxkit.diagram import (
    INF,
    CoxeterDiagram,
    DiagramError,
    bits,
    connected_components,
    half_label,
    induced,
    odd_closure,
    parse_diagram,
    parse_label,
    perp,
    serialize,
)

from .conftest import chain


def test_parse_minimal():
    d = parse_diagram("node a\nnode b\nedge a b 4")
    assert d.rank == 2
    assert d.m(0, 1) == 4
    assert d.m(0, 0) == 1


def test_absent_pair_defaults_to_two():
    d = parse_diagram("node a\nnode b")
    assert d.m(0, 1) == 2


def test_comments_and_infinity_spellings():
    d = parse_diagram("# header\nnode a  # first\nnode b\nnode c\nedge a b inf\nedge b c oo\n")
    assert d.m(0, 1) is INF and d.m(1, 2) is INF


def test_example_labels(example):
    i = example.index
    assert example.m(i("t1"), i("s2")) is INF
    assert example.m(i("s8"), i("t2")) == 4
    for a, b in zip(["s2", "s3", "s4", "s5", "s6", "s7"], ["s3", "s4", "s5", "s6", "s7", "s8"]):
        assert example.m(i(a), i(b)) == 3
    assert example.m(i("s4"), i("b4")) == 3
    assert example.neighbors(i("s4")) == sorted([i("s3"), i("s5"), i("b4")])
    assert example.names_of(example.T) == ["t1", "t2"]


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("node a\nnode a", "duplicate node"),
        ("node a\nnode b\nedge a b 3\nedge b a 4", "duplicate edge"),
        ("node a\nnode b\nedge a b 1", "label"),
        ("node a\nnode b\nedge a b x", "label"),
        ("node a\nedge a b 3", "unknown node"),
        ("node a\nnode b\nedge a a 3", "itself"),
        ("nodes a", "unknown keyword"),
        ("node a b", "node"),
        ("node a\nT b", "unknown node"),
    ],
)
def test_parse_errors(text, fragment):
    with pytest.raises(DiagramError) as info:
        parse_diagram(text)
    assert fragment in str(info.value)


def test_parse_error_reports_line():
    with pytest.raises(DiagramError) as info:
        parse_diagram("node a\nnode b\n\nedge a b 1")
    assert info.value.line == 4


def test_partition_must_be_allowable_and_names_the_odd_path():
    text = "node a\nnode b\nnode c\nedge a b 3\nedge b c 5\nclass x : a\nclass y : c\nclass x : b"
    with pytest.raises(DiagramError) as info:
        parse_diagram(text)
    msg = str(info.value)
    assert "not allowable" in msg and "b - c" in msg


def test_partition_defaults_for_unlisted_generators():
    d = parse_diagram("node a\nnode b\nnode c\nedge a b 4\nT a\nclass y : a")
    assert d.phi() == ("y", "x0", "x0")


def test_default_partition():
    assert chain([4], t=["s1"]).phi() == ("x", "x0")
    assert chain([4]).phi() == ("x", "x")


def test_labels():
    assert half_label(INF) is INF
    assert half_label(6) == 3
    assert parse_label("inf") is INF
    assert str(INF) == "inf"
    with pytest.raises(ValueError):
        parse_label("2.5")


def test_odd_closure_examples(example):
    a2 = chain([3])
    assert odd_closure(a2, 0b01) == 0b11
    assert odd_closure(chain([4]), 0b01) == 0b01
    t1 = example.mask(["t1"])
    assert odd_closure(example, t1) == t1


def test_perp_examples(example):
    assert perp(chain([4]), 0b01) == 0
    assert perp(example, example.mask(["t1"])) == example.full & ~example.mask(["t1", "s2"])
    assert perp(example, 0) == example.full


def test_induced(example):
    other = induced(example, example.full & ~example.T)
    assert other.rank == 8 and "t1" not in other.names
    assert induced(example, 0).rank == 0
    b = induced(chain([4]), 0b01)
    assert b.rank == 1


def test_components(example):
    d = CoxeterDiagram.from_edges(["a", "b", "c"], [("a", "b", 4)])
    assert connected_components(d, d.full) == [0b011, 0b100]
    mask = example.full & ~example.T & ~example.mask(["s2"])
    comps = connected_components(example, mask)
    assert len(comps) == 1 and bin(comps[0]).count("1") == 7
    assert connected_components(d, 0) == []


# -- properties ---------------------------------------------------------------------

LABELS = st.sampled_from([2, 2, 3, 4, 5, 6, INF])


@st.composite
def diagrams(draw, max_rank=6):
    n = draw(st.integers(1, max_rank))
    names = [f"g{i}" for i in range(n)]
    matrix = [[1 if i == j else 2 for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            matrix[i][j] = matrix[j][i] = draw(LABELS)
    t = draw(st.integers(0, (1 << n) - 1))
    return CoxeterDiagram.from_matrix(names, matrix, t_set=t or None)


@given(diagrams())
def test_serialize_round_trip(d):
    text = serialize(d)
    again = parse_diagram(text)
    assert again == d
    assert serialize(again) == text


@given(diagrams(), st.data())
def test_odd_closure_idempotent_and_monotone(d, data):
    a = data.draw(st.integers(0, d.full))
    b = data.draw(st.integers(0, d.full)) | a
    ca = odd_closure(d, a)
    assert odd_closure(d, ca) == ca
    assert ca & a == a
    assert odd_closure(d, b) & ca == ca


@given(diagrams(), st.data())
def test_double_perp_contains(d, data):
    a = data.draw(st.integers(0, d.full))
    assert perp(d, perp(d, a)) & a == a


@given(diagrams(), st.data())
def test_components_refine(d, data):
    b = data.draw(st.integers(0, d.full))
    a = data.draw(st.integers(0, d.full)) & b
    big = connected_components(d, b)
    small = connected_components(d, a)
    assert sum(small) == a
    for c in small:
        assert sum(1 for c2 in big if c & c2) == 1
    for c in small:
        for i in bits(c):
            assert any(c2 >> i & 1 for c2 in big)
