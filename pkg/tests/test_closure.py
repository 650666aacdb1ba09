import random

import pytest

from coxkit.classify import group_order
from coxkit.closure import (
    ClosureError,
    check_hypothesis,
    closure_diagram,
    closure_matrix,
    enumerate_generators,
    expand,
    generator_count,
    is_right_angled_closure,
    project_phi_T,
    rewrite_in_closure,
    serialize_closure,
)
from coxkit.diagram import INF, CoxeterDiagram, parse_diagram
from coxkit.words import reduce

from .conftest import chain


def test_b2_closure(b2):
    pres = closure_matrix(b2)
    assert [g.name(b2) for g in pres.generators] == ["s1@", "s1@s2"]
    assert pres.matrix == [[1, 2], [2, 1]]
    assert pres.right_angled
    assert generator_count(b2) == {"s1": 2}


def test_b3_closure_is_three_commuting_reflections(b3):
    pres = closure_matrix(b3)
    assert len(pres.generators) == 3
    assert all(pres.matrix[a][b] == 2 for a in range(3) for b in range(3) if a != b)


def test_dihedral_six_is_not_right_angled():
    d = chain([6], t=["s1"])
    pres = closure_matrix(d)
    assert pres.matrix == [[1, 3], [3, 1]]
    assert not pres.right_angled
    assert not is_right_angled_closure(d)


def test_infinite_label_between_t_and_rest():
    d = CoxeterDiagram.from_edges(["t", "s", "u"], [("t", "s", INF), ("s", "u", 3)], t=["t"])
    pres = closure_matrix(d)
    assert len(pres.generators) == 3
    assert all(pres.matrix[a][b] is INF for a in range(3) for b in range(3) if a != b)


def test_odd_label_violation():
    v = check_hypothesis(chain([3, 4], t=["s1"]))
    assert v is not None and (v.t, v.s, v.label) == ("s1", "s2", 3)
    assert v.suggested == ("s1", "s2")
    with pytest.raises(ClosureError, match="odd closure"):
        enumerate_generators(chain([3], t=["s1"]))


def test_infinite_complement_rejected():
    d = CoxeterDiagram.from_edges(["t", "a", "b"], [("a", "b", INF)], t=["t"])
    with pytest.raises(ClosureError, match="infinite"):
        generator_count(d)


def test_t_must_be_subset():
    with pytest.raises(ClosureError):
        generator_count(chain([4]), 0b100)


def test_example_generator_counts(example):
    assert generator_count(example) == {"t1": 2160, "t2": 240}
    assert is_right_angled_closure(example)


@pytest.mark.parametrize("labels", [[4], [4, 3], [4, 4], [INF, 3], [4, 3, 3]])
def test_order_multiplies(labels):
    d = chain(labels, t=["s1"])
    cd = closure_diagram(d)
    if group_order(d) is INF:
        assert group_order(cd) is INF
    else:
        assert group_order(cd) * group_order(d, d.full & ~d.T) == group_order(d)


def test_project_and_rewrite(b2):
    assert project_phi_T(b2, None, "s1 s2 s1").word == (1,)
    gens = rewrite_in_closure(b2, None, "s2 s1 s2")
    assert [g.name(b2) for g in gens] == ["s1@s2"]
    with pytest.raises(ClosureError):
        rewrite_in_closure(b2, None, "s2")


@pytest.mark.parametrize("labels", [[4, 3], [INF, 3], [4, 4]])
def test_rewrite_then_expand_is_identity(labels):
    d = chain(labels, t=["s1"])
    rng = random.Random(7)
    for _ in range(200):
        w = tuple(rng.randrange(d.rank) for _ in range(rng.randrange(1, 9)))
        kernel = w + tuple(reversed(project_phi_T(d, None, w).word))
        assert project_phi_T(d, None, kernel).length == 0
        gens = rewrite_in_closure(d, None, kernel)
        assert expand(d, gens) == reduce(d, kernel)


def test_emit_diagram_roundtrip(b3):
    pres = closure_matrix(b3)
    text = serialize_closure(b3, pres)
    again = parse_diagram(text)
    assert again.matrix == closure_diagram(b3).matrix
    assert list(again.names) == [g.name(b3) for g in pres.generators]


def test_pair_limit_skips_matrix(example):
    pres = closure_matrix(example, pair_limit=10)
    assert pres.matrix is None and len(pres.generators) == 2400
    with pytest.raises(ClosureError):
        serialize_closure(example, pres)


def test_worker_count_does_not_change_matrix(example):
    from coxkit.diagram import induced

    d = induced(example, example.full & ~example.mask(["t1"]))
    serial = closure_matrix(d)
    assert len(serial.generators) == 240
    assert closure_matrix(d, workers=2).matrix == serial.matrix


@pytest.mark.parametrize("labels", [[4, 3], [INF, 4], [4, 3, 3]])
def test_orbit_method_matches_direct(labels):
    d = chain(labels, t=["s1"])
    assert closure_matrix(d).matrix == closure_matrix(d, method="direct", workers=2).matrix
    with pytest.raises(ValueError):
        closure_matrix(d, method="other")
