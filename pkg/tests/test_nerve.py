import pytest

from coxkit import fixtures
from coxkit.closure import closure_matrix, enumerate_generators
from coxkit.diagram import INF, CoxeterDiagram
from coxkit.growth import closure_growth_by_specialization, growth_from_f
from coxkit.nerve import (
    NerveError,
    SigmaFamily,
    b_chains,
    brute_force_nerve,
    enumerate_sigma,
    f_by_grade,
    f_closure,
    f_link,
    load_linkspec,
    parse_linkspec,
)
from coxkit.series import MultiPoly

from .conftest import chain
from .sweep import right_angled_closure_diagrams

t = MultiPoly.var("t")
one = MultiPoly.const(1)


def two_var(d, coeffs):
    return MultiPoly.from_exponents(("t1", "t2"), coeffs)


@pytest.mark.parametrize(
    "labels, expected",
    [([4], (one + t) ** 2), ([4, 3], (one + t) ** 3), ([4, 3, 3], (one + t) ** 4), ([INF], one + 2 * t)],
)
def test_small_f_polynomials(labels, expected):
    d = chain(labels, t=["s1"])
    assert f_closure(d, phi="t") == expected
    assert brute_force_nerve(d, phi="t") == expected


def test_b2_families(b2):
    fams = enumerate_sigma(b2)
    assert [f.paths for f in fams] == [(), ((0,),), ((0, 1),)]
    assert [f.sigma0 for f in fams] == [0b10, 0, 0]


def test_isolated_generator(a1a1):
    assert len(enumerate_sigma(a1a1)) == 2
    assert f_closure(a1a1, phi="t") == one + t


def test_b_chain_rejects_chord():
    d = CoxeterDiagram.from_edges(["t", "a", "b"], [("t", "a", 4), ("a", "b", 3), ("t", "b", INF)], t=["t"])
    assert b_chains(d, d.T, 0) == [(0,), (0, 1)]


def test_b_chains_follow_both_branches():
    d = CoxeterDiagram.from_edges(["t", "a", "b", "c"], [("t", "a", 4), ("a", "b", 3), ("a", "c", 3)], t=["t"])
    assert b_chains(d, d.T, 0) == [(0,), (0, 1), (0, 1, 2), (0, 1, 3)]


def test_requires_right_angled_closure():
    with pytest.raises(NerveError):
        f_closure(chain([6], t=["s1"]))
    with pytest.raises(NerveError):
        f_closure(CoxeterDiagram.from_edges(["t", "a", "b"], [("a", "b", INF)], t=["t"]))


def test_brute_force_cap(example):
    with pytest.raises(NerveError, match="cap"):
        brute_force_nerve(example)


def test_example_families(example):
    assert len(enumerate_sigma(example)) == fixtures.SIGMA_FAMILY_COUNT


def test_example_two_variable(example):
    assert f_closure(example) == two_var(example, fixtures.F_TWO_VAR)


def test_example_by_grade(example):
    grades = f_by_grade(example)
    assert sorted(grades) == sorted(fixtures.F_BY_GRADE)
    for g, terms in fixtures.F_BY_GRADE.items():
        expected = two_var(example, {e: c * fixtures.F_PREFACTOR for e, c in terms.items()})
        assert grades[g] == expected


def test_example_diagonal(example):
    f = f_closure(example, phi="t")
    assert f.coefficients("t") == fixtures.F_DIAGONAL
    assert f.evaluate({"t": -1}) == 1


def test_linear_coefficients_count_generators(b3, example):
    for d in (b3, example, chain([INF, 3], t=["s1"])):
        f = f_closure(d, phi="t")
        assert f.coefficients("t")[1] == len(enumerate_generators(d))


def test_link_of_empty_family_is_whole(b3, example):
    for d in (b3, example):
        empty = SigmaFamily((), d.full & ~d.T)
        assert f_link(d, None, empty) == f_closure(d)


def test_link_of_maximal_family_is_trivial(b3):
    top = enumerate_sigma(b3)[-1]
    assert f_link(b3, None, top) == one


def test_example_links(example):
    k = load_linkspec(example, fixtures.data_text(fixtures.LINK_K))
    assert f_link(example, None, k, phi="t").coefficients("t") == fixtures.F_LINK_K
    l_ = load_linkspec(example, fixtures.data_text(fixtures.LINK_L))
    assert f_link(example, None, l_, phi="t").evaluate({"t": fixtures.F_LINK_L_AT}) != 0


def test_linkspec_forms(example):
    by_size = parse_linkspec(example, "t2:2")
    by_path = parse_linkspec(example, "t2:t2/s8")
    assert by_size == by_path
    assert parse_linkspec(example, "t1:0, t2:1").paths == ((example.index("t2"),),)


@pytest.mark.parametrize(
    "spec, message",
    [
        ("t2", "expected t:k"),
        ("s2:1", "not in T"),
        ("t2:9", "no B_9"),
        ("t2:t2/s7", "not a B-chain"),
        ("t1:1, t2:t2/s8/s7/s6/s5/s4/s3/s2", "perpendicular"),
    ],
)
def test_linkspec_errors(example, spec, message):
    with pytest.raises(NerveError, match=message):
        parse_linkspec(example, spec)


def test_ambiguous_linkspec():
    d = CoxeterDiagram.from_edges(["t", "a", "b", "c"], [("t", "a", 4), ("a", "b", 3), ("a", "c", 3)], t=["t"])
    with pytest.raises(NerveError, match="ambiguous"):
        parse_linkspec(d, "t:3")
    assert parse_linkspec(d, "t:t/a/c").paths == ((0, 1, 3),)


@pytest.mark.parametrize("labels", [[4, 3], [INF, 3], [4, 4], [4, 3, 3]])
def test_orbit_and_direct_matrices_agree(labels):
    d = chain(labels, t=["s1"])
    assert closure_matrix(d).matrix == closure_matrix(d, method="direct").matrix


def test_orbit_and_direct_matrices_agree_on_sweep():
    for n, d in enumerate(right_angled_closure_diagrams(4)):
        if n % 7 == 0:
            assert closure_matrix(d).matrix == closure_matrix(d, method="direct").matrix


def test_f_route_matches_specialization_on_sweep():
    for d in right_angled_closure_diagrams(3):
        f = f_closure(d, phi="x")
        assert growth_from_f(f, ["x"]) == closure_growth_by_specialization(d).series


def test_sweep_matches_brute_force(small_nerve_sweep):
    count, bad, _ = small_nerve_sweep
    assert count > 4000
    assert bad == []


def brute_link(d, fam):
    """Cliques of the commutation graph containing the simplex of ``fam``."""
    pres = closure_matrix(d)
    gens = pres.generators
    n = len(gens)
    chains = {p[0]: sum(1 << v for v in p[1:]) for p in fam.paths}
    simplex = [a for a, g in enumerate(gens) if g.base in chains and g.rep.support() & ~chains[g.base] == 0]
    assert len(simplex) == fam.total
    assert all(pres.matrix[a][b] == 2 for a in simplex for b in simplex if a != b)
    start = 0
    for a in range(n):
        if all(pres.matrix[a][b] == 2 for b in simplex) and a not in simplex:
            start |= 1 << a
    names = [d.names[g.base] for g in gens]
    out = MultiPoly()

    def walk(exps, candidates):
        nonlocal out
        vars = tuple(sorted(exps))
        out = out + MultiPoly.from_exponents(vars, {tuple(exps[v] for v in vars): 1})
        while candidates:
            low = candidates & -candidates
            v = low.bit_length() - 1
            candidates ^= low
            nxt = dict(exps)
            nxt[names[v]] = nxt.get(names[v], 0) + 1
            walk(nxt, candidates & sum(1 << b for b in range(n) if pres.matrix[v][b] == 2))

    walk({}, start)
    return out


def test_link_matches_brute_force_on_sweep():
    checked = 0
    for d in right_angled_closure_diagrams(4):
        for fam in enumerate_sigma(d):
            assert f_link(d, None, fam) == brute_link(d, fam)
            checked += 1
    assert checked > 500


def test_link_matches_brute_force_b3(b3):
    for fam in enumerate_sigma(b3):
        assert f_link(b3, None, fam) == brute_link(b3, fam)
