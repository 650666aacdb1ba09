"""Single- and multi-variable growth series of Coxeter groups.

Finite parabolics use closed forms per connected component; infinite groups
go through the alternating sum over finite parabolics, accumulated over an
explicitly factored common denominator.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Optional, Sequence, Tuple

from .classify import (
    INFINITE,
    FiniteType,
    NotFinite,
    _cyclotomic_coeffs,
    classify_component,
    group_order,
)
from .diagram import (
    CoxeterDiagram,
    bits,
    check_allowable,
    connected_components,
    popcount,
    submasks,
)
from .series import MultiPoly, RationalFn
from .words import growth_by_enumeration


class GrowthError(ValueError):
    pass


@dataclass
class GrowthResult:
    series: RationalFn
    route: str  # product-formula | serre | specialization | f-substitution | bfs-oracle
    fingerprint: str = ""
    extras: Dict[str, RationalFn] = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"route": self.route, "fingerprint": self.fingerprint, "series": self.series.to_json()}
        for k, v in self.extras.items():
            out[k] = v.to_json()
        return out


# -- finite parabolics -------------------------------------------------------------


class _Factors:
    """Registry of irreducible-ish factors, keyed by small tuples."""

    def __init__(self):
        self.polys: Dict[tuple, MultiPoly] = {}

    def get(self, key: tuple) -> MultiPoly:
        p = self.polys.get(key)
        if p is None:
            kind = key[0]
            if kind == "cyc":
                _, e, v = key
                p = MultiPoly.from_coeffs(_cyclotomic_coeffs(e), v)
            elif kind == "lin":
                _, vu, v0, j = key
                p = MultiPoly.const(1) + MultiPoly.from_exponents((vu, v0), {(1, j): 1})
            else:
                raise KeyError(key)
            self.polys[key] = p
        return p

    def add_opaque(self, key: tuple, p: MultiPoly):
        self.polys[key] = p

    def product(self, counts: Dict[tuple, int]) -> MultiPoly:
        out = MultiPoly.const(1)
        for key in sorted(counts, key=repr):
            for _ in range(counts[key]):
                out = out * self.get(key)
        return out


def _q_integer_factors(n: int, v: str, into: Counter):
    for e in range(2, n + 1):
        if n % e == 0:
            into[("cyc", e, v)] += 1


def _bk_two_class(d: CoxeterDiagram, comp: int, t: FiniteType, phi: Sequence[str]):
    """(sign-end generator, its class, class of the rest) for a two-class B_k."""
    if t.family != "B":
        return None
    nodes = list(bits(comp))
    classes = {phi[i] for i in nodes}
    if len(classes) != 2:
        return None
    for i in nodes:
        for j in nodes:
            if i != j and d.m(i, j) == 4:
                deg_i = sum(1 for k in nodes if k != i and d.m(i, k) != 2)
                if deg_i != 1:
                    continue
                rest = {phi[k] for k in nodes if k != i}
                if len(rest) == 1 and phi[i] not in rest:
                    return i, phi[i], rest.pop()
    return None


def _component_factors(d: CoxeterDiagram, comp: int, phi: Sequence[str], reg: _Factors) -> Counter:
    t = classify_component(d, comp)
    if isinstance(t, NotFinite):
        raise GrowthError(f"parabolic on {d.names_of(comp)} is {t}")
    out: Counter = Counter()
    classes = {phi[i] for i in bits(comp)}
    if len(classes) == 1:
        v = classes.pop()
        for deg in t.degrees:
            _q_integer_factors(deg, v, out)
        return out
    bk = _bk_two_class(d, comp, t, phi)
    if bk is not None:
        _, vu, v0 = bk
        for i in range(1, t.rank + 1):
            _q_integer_factors(i, v0, out)
            out[("lin", vu, v0, i - 1)] += 1
        return out
    key = ("bfs", d.names_of(comp).__repr__(), tuple(phi[i] for i in bits(comp)))
    reg.add_opaque(key, growth_by_enumeration(d, comp, phi))
    out[key] += 1
    return out


def _resolve_phi(d: CoxeterDiagram, phi) -> Tuple[str, ...]:
    if phi is None:
        phi = d.phi()
    elif isinstance(phi, dict):
        phi = tuple(phi[s] for s in d.names)
    phi = tuple(phi)
    check_allowable(d, phi)
    return phi


def bk_closed_form(k: int, var_sign: str = "x", var_perm: str = "x0") -> MultiPoly:
    """prod_{i=1..k} (1 + y + ... + y^(i-1)) (1 + x y^(i-1)) with y = ``var_perm``."""
    reg = _Factors()
    counts: Counter = Counter()
    for i in range(1, k + 1):
        _q_integer_factors(i, var_perm, counts)
        counts[("lin", var_sign, var_perm, i - 1)] += 1
    return reg.product(counts)


def growth_finite_multi(d: CoxeterDiagram, a: Optional[int] = None, phi=None) -> MultiPoly:
    """Multi-variable growth polynomial of a finite parabolic subgroup."""
    a = d.full if a is None else a
    phi = _resolve_phi(d, phi)
    if group_order(d, a) is INFINITE:
        raise GrowthError("parabolic subgroup is infinite; use growth_infinite")
    reg = _Factors()
    counts: Counter = Counter()
    for comp in connected_components(d, a):
        counts.update(_component_factors(d, comp, phi, reg))
    return reg.product(counts)


# -- infinite groups -----------------------------------------------------------------


def _merge(a, b, reg: _Factors):
    (na, da), (nb, db) = a, b
    lcm = da | db  # Counter union = max of multiplicities
    ma = lcm - da
    mb = lcm - db
    return reg_mul(na, ma, reg) + reg_mul(nb, mb, reg), lcm


def reg_mul(p: MultiPoly, counts: Counter, reg: _Factors) -> MultiPoly:
    for key, e in counts.items():
        f = reg.get(key)
        for _ in range(e):
            p = p * f
    return p


def serre_sum(d: CoxeterDiagram, a: Optional[int] = None, phi=None):
    """R = sum over finite parabolics T of (-1)^|T| / W_T(x), as (numerator, factor counts, registry)."""
    a = d.full if a is None else a
    phi = _resolve_phi(d, phi)
    reg = _Factors()
    comp_cache: Dict[int, Counter] = {}
    leaves = []
    for sub in sorted(submasks(a)):
        counts: Counter = Counter()
        finite = True
        for comp in connected_components(d, sub):
            if comp not in comp_cache:
                t = classify_component(d, comp)
                comp_cache[comp] = None if isinstance(t, NotFinite) else _component_factors(d, comp, phi, reg)
            cf = comp_cache[comp]
            if cf is None:
                finite = False
                break
            counts.update(cf)
        if finite:
            sign = -1 if popcount(sub) % 2 else 1
            leaves.append((MultiPoly.const(sign), counts))
    while len(leaves) > 1:
        merged = []
        for i in range(0, len(leaves) - 1, 2):
            merged.append(_merge(leaves[i], leaves[i + 1], reg))
        if len(leaves) % 2:
            merged.append(leaves[-1])
        leaves = merged
    num, den = leaves[0]
    return num, den, reg


def growth_infinite(d: CoxeterDiagram, a: Optional[int] = None, phi=None) -> RationalFn:
    """Rational growth series of an infinite parabolic via the alternating finite-parabolic sum."""
    a = d.full if a is None else a
    phi = _resolve_phi(d, phi)
    if group_order(d, a) is not INFINITE:
        raise GrowthError("parabolic subgroup is finite; use growth_finite_multi")
    num, den, reg = serre_sum(d, a, phi)
    if num.is_zero():
        raise GrowthError("alternating sum vanishes identically")
    lcm = reg.product(den)
    # W(x) = 1 / R(1/x)
    r = RationalFn(lcm, num, normalize=False)
    for v in sorted({phi[i] for i in bits(a)}):
        r = r.invert_variable(v)
    return r


def growth(d: CoxeterDiagram, a: Optional[int] = None, phi=None) -> GrowthResult:
    a = d.full if a is None else a
    if group_order(d, a) is INFINITE:
        return GrowthResult(growth_infinite(d, a, phi), "serre", d.fingerprint())
    return GrowthResult(RationalFn(growth_finite_multi(d, a, phi)), "product-formula", d.fingerprint())


# -- normal closure of a parabolic ---------------------------------------------------------


def _closure_phi(d: CoxeterDiagram, t: int, phi) -> Tuple[Tuple[str, ...], str]:
    """Partition with S - T as one class; returns (phi, that class's variable)."""
    phi = _resolve_phi(d, phi)
    other = d.full & ~t
    classes = {phi[i] for i in bits(other)}
    if len(classes) > 1:
        raise GrowthError("S - T must form a single class of the partition")
    if not classes:
        return phi, "x0"
    v0 = classes.pop()
    if any(phi[i] == v0 for i in bits(t)):
        raise GrowthError(f"class {v0!r} of S - T also contains members of T")
    return phi, v0


def closure_growth_by_specialization(d: CoxeterDiagram, t: Optional[int] = None, phi=None) -> GrowthResult:
    """Growth of the normal closure of W_T: W_phi(x0 := 1) / #W_{S-T}."""
    from .closure import check_hypothesis

    t = d.T if t is None else t
    violation = check_hypothesis(d, t)
    if violation is not None:
        raise GrowthError(str(violation))
    other = d.full & ~t
    order = group_order(d, other)
    if order is INFINITE:
        raise GrowthError("W_{S-T} is infinite: the closure has infinitely many generators")
    phi, v0 = _closure_phi(d, t, phi)
    if group_order(d) is INFINITE:
        w = growth_infinite(d, None, phi)
    else:
        w = RationalFn(growth_finite_multi(d, None, phi))
    closure = w.specialize_limit(v0, 1) * RationalFn(Fraction(1, order))
    parabolic = w.specialize_limit(v0, 0)
    return GrowthResult(closure, "specialization", d.fingerprint(), {"parabolic": parabolic, "multi": w})


def growth_from_f(f: MultiPoly, vars: Optional[Sequence[str]] = None) -> RationalFn:
    """Growth series of a right-angled group from the f-polynomial of its nerve."""
    vars = tuple(f.used_vars() if vars is None else vars)
    r = RationalFn(f)
    for v in vars:
        r = r.substitute(v, RationalFn(-1, MultiPoly.const(1) + MultiPoly.var(v)))
    if r.is_zero():
        raise GrowthError("f-polynomial vanishes after substitution")
    r = r.inverse()
    for v in vars:
        r = r.invert_variable(v)
    return r


def closure_growth_by_bfs(d: CoxeterDiagram, t: Optional[int] = None, radius: int = 8, var: str = "x"):
    """BFS over the closure's own Coxeter presentation.

    Returns the growth polynomial when the closure is finite, else the list of
    element counts by length up to ``radius``.
    """
    from .closure import closure_diagram
    from .words import ball, enumerate_group, length_histogram

    t = d.T if t is None else t
    cd = closure_diagram(d, t)
    if group_order(cd) is not INFINITE:
        return MultiPoly.from_coeffs(length_histogram(enumerate_group(cd)), var)
    return length_histogram(ball(cd, radius))
