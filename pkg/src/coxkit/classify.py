"""Recognition of finite irreducible Coxeter types from diagram shape."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from math import prod
from typing import List, Optional, Tuple, Union

from .diagram import INF, CoxeterDiagram, bits, connected_components, popcount
from .series import MultiPoly

_EXCEPTIONAL_DEGREES = {
    "E6": (2, 5, 6, 8, 9, 12),
    "E7": (2, 6, 8, 10, 12, 14, 18),
    "E8": (2, 8, 12, 14, 18, 20, 24, 30),
    "F4": (2, 6, 8, 12),
    "H3": (2, 6, 10),
    "H4": (2, 12, 20, 30),
}


@dataclass(frozen=True)
class FiniteType:
    family: str  # A, B, D, E, F, H or I2
    rank: int
    m: Optional[int] = None  # dihedral label, for I2 only

    @property
    def tag(self) -> str:
        if self.family == "I2":
            return f"I2({self.m})"
        return f"{self.family}{self.rank}"

    @property
    def degrees(self) -> Tuple[int, ...]:
        n = self.rank
        if self.family == "A":
            return tuple(range(2, n + 2))
        if self.family == "B":
            return tuple(range(2, 2 * n + 1, 2))
        if self.family == "D":
            return tuple(sorted(list(range(2, 2 * n - 1, 2)) + [n]))
        if self.family == "I2":
            return (2, self.m)
        return _EXCEPTIONAL_DEGREES[self.tag]

    @property
    def order(self) -> int:
        return prod(self.degrees)

    def __str__(self):
        return self.tag


@dataclass(frozen=True)
class NotFinite:
    """Witness that a connected diagram is not of finite type."""

    reason: str

    def __str__(self):
        return f"not finite ({self.reason})"


INFINITE = INF  # group_order of an infinite parabolic


@dataclass
class FinitenessReport:
    is_finite: bool
    components: List[Tuple[int, Union[FiniteType, NotFinite]]] = field(default_factory=list)


def _type_from_labels(n: int, m: int) -> FiniteType:
    if m == 3:
        return FiniteType("A", 2)
    if m == 4:
        return FiniteType("B", 2)
    return FiniteType("I2", 2, m)


def classify_component(d: CoxeterDiagram, comp: int) -> Union[FiniteType, NotFinite]:
    """Type of a connected subdiagram, by structural pattern matching."""
    nodes = list(bits(comp))
    n = len(nodes)
    if n == 0:
        raise ValueError("empty component")
    if n == 1:
        return FiniteType("A", 1)
    edges = []
    for a, i in enumerate(nodes):
        for j in nodes[a + 1:]:
            m = d.m(i, j)
            if m != 2:
                edges.append((i, j, m))
    if any(m is INF for _, _, m in edges):
        return NotFinite("infinite label")
    if len(edges) != n - 1:
        return NotFinite("diagram contains a cycle")
    if n == 2:
        return _type_from_labels(n, edges[0][2])

    degree = Counter()
    for i, j, _ in edges:
        degree[i] += 1
        degree[j] += 1
    heavy = [(i, j, m) for i, j, m in edges if m != 3]
    branch = [v for v in nodes if degree[v] >= 3]

    if not heavy:
        if not branch:
            return FiniteType("A", n)
        if len(branch) > 1 or degree[branch[0]] > 3:
            return NotFinite("simply-laced tree with more than one branch point")
        arms = sorted(_arm_lengths(edges, branch[0]))
        if arms[0] == 1 and arms[1] == 1:
            return FiniteType("D", n)
        if arms[0] == 1 and arms[1] == 2 and arms[2] in (2, 3, 4):
            return FiniteType("E", n)
        return NotFinite(f"simply-laced tree with arms {arms}")

    if len(heavy) > 1:
        return NotFinite("more than one label above 3")
    if branch:
        return NotFinite("branched tree with a label above 3")
    i, j, m = heavy[0]
    at_end = degree[i] == 1 or degree[j] == 1
    if m == 4:
        if at_end:
            return FiniteType("B", n)
        if n == 4:
            return FiniteType("F", 4)
        return NotFinite("label 4 inside a long path")
    if m == 5 and at_end and n in (3, 4):
        return FiniteType("H", n)
    return NotFinite(f"label {m} on a path of {n} nodes")


def _arm_lengths(edges, center) -> List[int]:
    adj = {}
    for i, j, _ in edges:
        adj.setdefault(i, []).append(j)
        adj.setdefault(j, []).append(i)
    arms = []
    for start in adj[center]:
        length, prev, cur = 1, center, start
        while True:
            nxt = [v for v in adj[cur] if v != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    return arms


def finiteness_report(d: CoxeterDiagram, a: Optional[int] = None) -> FinitenessReport:
    a = d.full if a is None else a
    comps = [(c, classify_component(d, c)) for c in connected_components(d, a)]
    return FinitenessReport(all(isinstance(t, FiniteType) for _, t in comps), comps)


def is_finite(d: CoxeterDiagram, a: Optional[int] = None) -> bool:
    return finiteness_report(d, a).is_finite


def group_order(d: CoxeterDiagram, a: Optional[int] = None):
    """Order of the parabolic subgroup on ``a``, or ``INFINITE``."""
    a = d.full if a is None else a
    total = 1
    for comp in connected_components(d, a):
        t = classify_component(d, comp)
        if isinstance(t, NotFinite):
            return INFINITE
        total *= t.order
    return total


def cyclotomic(n: int, var: str = "x") -> MultiPoly:
    """The n-th cyclotomic polynomial."""
    return MultiPoly.from_coeffs(_cyclotomic_coeffs(n), var)


_CYCLO_CACHE = {}


def _cyclotomic_coeffs(n: int) -> Tuple[int, ...]:
    if n in _CYCLO_CACHE:
        return _CYCLO_CACHE[n]
    from .series import uexact_div

    num = [-1] + [0] * (n - 1) + [1]
    for e in range(1, n):
        if n % e == 0:
            num = uexact_div(num, _cyclotomic_coeffs(e))
    _CYCLO_CACHE[n] = tuple(int(c) for c in num)
    return _CYCLO_CACHE[n]


def q_integer(n: int, var: str = "x") -> MultiPoly:
    """1 + x + ... + x^(n-1)."""
    return MultiPoly.from_coeffs([1] * n, var)


def poincare_single(d: CoxeterDiagram, a: Optional[int], var: str = "x") -> MultiPoly:
    """Length generating polynomial of a finite parabolic, from its degrees."""
    a = d.full if a is None else a
    out = MultiPoly.const(1)
    for comp in connected_components(d, a):
        t = classify_component(d, comp)
        if isinstance(t, NotFinite):
            raise ValueError(f"parabolic on {d.names_of(comp)} is {t}")
        for deg in t.degrees:
            out = out * q_integer(deg, var)
    return out


def classify_all(d: CoxeterDiagram, a: Optional[int] = None) -> List[Tuple[List[str], Union[FiniteType, NotFinite]]]:
    """Per-component classification, with generator names."""
    return [(d.names_of(c), t) for c, t in finiteness_report(d, a).components]


def describe(d: CoxeterDiagram, a: Optional[int] = None) -> str:
    a = d.full if a is None else a
    if popcount(a) == 0:
        return "trivial group, order 1"
    rep = finiteness_report(d, a)
    tags = " x ".join(str(t) for _, t in rep.components)
    order = group_order(d, a)
    return f"{tags}, order {'inf' if order is INFINITE else order}"
