import time

import pytest

from coxkit.classify import (
    INFINITE,
    FiniteType,
    NotFinite,
    classify_all,
    classify_component,
    cyclotomic,
    describe,
    finiteness_report,
    group_order,
    poincare_single,
)
from coxkit.diagram import INF, CoxeterDiagram

from .conftest import chain


def star(arms):
    """Simply-laced star with the given arm lengths around a centre c."""
    names = ["c"]
    edges = []
    for a, n in enumerate(arms):
        prev = "c"
        for k in range(n):
            name = f"a{a}_{k}"
            names.append(name)
            edges.append((prev, name, 3))
            prev = name
    return CoxeterDiagram.from_edges(names, edges)


def kind(d, mask=None):
    return classify_component(d, d.full if mask is None else mask)


def test_example_subdiagram_orders(example):
    other = example.full & ~example.T
    start = time.perf_counter()
    e8 = kind(example, other)
    e7 = kind(example, other & ~example.mask(["s8"]))
    d7 = kind(example, other & ~example.mask(["s2"]))
    assert time.perf_counter() - start < 1
    assert (e8.tag, e8.order) == ("E8", 696729600)
    assert (e7.tag, e7.order) == ("E7", 2903040)
    assert (d7.tag, d7.order) == ("D7", 322560)


def test_single_node():
    t = kind(CoxeterDiagram(("a",)))
    assert t.tag == "A1" and t.order == 2 and t.degrees == (2,)


@pytest.mark.parametrize(
    "d, tag, order",
    [
        (chain([3, 3, 3]), "A4", 120),
        (chain([4, 3, 3]), "B4", 384),
        (chain([3, 3, 4]), "B4", 384),
        (chain([3, 4, 3]), "F4", 1152),
        (chain([5, 3]), "H3", 120),
        (chain([3, 5]), "H3", 120),
        (chain([5, 3, 3]), "H4", 14400),
        (chain([3]), "A2", 6),
        (chain([4]), "B2", 8),
        (chain([5]), "I2(5)", 10),
        (chain([6]), "I2(6)", 12),
        (star([1, 1, 2]), "D5", 1920),
        (star([1, 1, 1]), "D4", 192),
        (star([1, 2, 2]), "E6", 51840),
        (star([1, 2, 3]), "E7", 2903040),
        (star([1, 2, 4]), "E8", 696729600),
    ],
)
def test_finite_types(d, tag, order):
    t = kind(d)
    assert isinstance(t, FiniteType)
    assert t.tag == tag and t.order == order
    assert len(t.degrees) == t.rank


@pytest.mark.parametrize(
    "d",
    [
        chain([INF]),
        chain([3, 3, 3, 4, 3]),
        chain([4, 4]),
        chain([5, 3, 3, 3]),
        chain([3, 6]),
        star([2, 2, 2]),
        star([1, 3, 3]),
        star([1, 1, 1, 1]),
        CoxeterDiagram.from_edges(["a", "b", "c"], [("a", "b", 3), ("b", "c", 3), ("a", "c", 3)]),
    ],
)
def test_infinite_types(d):
    assert isinstance(kind(d), NotFinite)
    assert group_order(d) is INFINITE


def test_reports_and_description():
    d = CoxeterDiagram.from_edges(["a", "b", "c"], [("a", "b", 4)])
    rep = finiteness_report(d)
    assert rep.is_finite and len(rep.components) == 2
    assert describe(d) == "B2 x A1, order 16"
    assert describe(chain([4])) == "B2, order 8"
    assert describe(d, 0) == "trivial group, order 1"
    assert [names for names, _ in classify_all(d)] == [["a", "b"], ["c"]]
    assert describe(chain([INF])) == "not finite (infinite label), order inf"


def test_poincare_value_at_one_is_order():
    for labels in ([3, 3, 3], [4, 3, 3], [3, 4, 3], [5, 3, 3]):
        d = chain(labels)
        assert poincare_single(d, None).evaluate({"x": 1}) == group_order(d)


def test_cyclotomic():
    assert cyclotomic(1).coefficients("x") == [-1, 1]
    assert cyclotomic(6).coefficients("x") == [1, -1, 1]
    assert cyclotomic(12).coefficients("x") == [1, 0, -1, 0, 1]
