"""f-polynomials of nerves of right-angled normal closures.

Simplices of the nerve are families of pairwise commuting closure
generators.  Up to the action of W_{S-T} such a family is described by a
``SigmaFamily``: for each active t in T a B_k chain starting at t (the label-4
edge first, then label-3 edges), the chains pairwise perpendicular.  Each
family contributes ``[W_{S-T} : W_{Sigma_0}] * prod x_t^k / k!``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import factorial
from typing import Dict, List, Optional, Sequence, Tuple

from .classify import INFINITE, FiniteType, classify_component, group_order
from .closure import closure_matrix, is_right_angled_closure, _t_mask
from .diagram import CoxeterDiagram, bits, perp
from .series import MultiPoly

DEFAULT_GENERATOR_CAP = 64


class NerveError(ValueError):
    pass


@dataclass(frozen=True)
class SigmaFamily:
    """Chains ``(t, v2, ..., vk)`` for the active generators of T, plus Sigma_0."""

    paths: Tuple[Tuple[int, ...], ...]
    sigma0: int

    @property
    def active(self) -> Tuple[int, ...]:
        return tuple(p[0] for p in self.paths)

    def k(self, t: int) -> int:
        for p in self.paths:
            if p[0] == t:
                return len(p)
        return 0

    @property
    def total(self) -> int:
        return sum(len(p) for p in self.paths)

    def support(self) -> int:
        out = 0
        for p in self.paths:
            for v in p:
                out |= 1 << v
        return out

    def describe(self, d: CoxeterDiagram) -> str:
        if not self.paths:
            body = "empty"
        else:
            body = ", ".join(f"{d.names[p[0]]}:" + "/".join(d.names[v] for v in p) for p in self.paths)
        return f"{body}; Sigma_0 = {{{' '.join(d.names_of(self.sigma0))}}}"


def _require(d: CoxeterDiagram, t: int) -> int:
    if not is_right_angled_closure(d, t):
        raise NerveError("normal closure of W_T is not right-angled")
    other = d.full & ~t
    if group_order(d, other) is INFINITE:
        raise NerveError("W_{S-T} is infinite")
    return other


def b_chains(d: CoxeterDiagram, t: int, i: int) -> List[Tuple[int, ...]]:
    """All chains from ``i`` whose induced diagram is B_k with ``i`` as the sign end."""
    out = [(i,)]

    def extend(path):
        last = path[-1]
        want = 4 if len(path) == 1 else 3
        for u in range(d.rank):
            if t >> u & 1 or u in path or d.m(last, u) != want:
                continue
            if any(d.m(u, v) != 2 for v in path[:-1]):
                continue
            new = path + (u,)
            out.append(new)
            extend(new)

    extend((i,))
    for p in out:
        mask = sum(1 << v for v in p)
        ft = classify_component(d, mask)
        expected = ("A", 1) if len(p) == 1 else ("B", len(p))
        if not isinstance(ft, FiniteType) or (ft.family, ft.rank) != expected:
            raise AssertionError(f"chain {d.word_names(p)} classified as {ft}")
    return out


def _perpendicular(d: CoxeterDiagram, p: Sequence[int], q: Sequence[int]) -> bool:
    return all(d.m(a, b) == 2 for a in p for b in q)


def _sigma0(d: CoxeterDiagram, t: int, paths) -> int:
    union = 0
    for p in paths:
        for v in p:
            union |= 1 << v
    return perp(d, union) & ~t


def enumerate_sigma(d: CoxeterDiagram, t: Optional[int] = None) -> List[SigmaFamily]:
    """All Sigma-families, ordered by total size then by chains."""
    t = _t_mask(d, t)
    _require(d, t)
    options = [[None] + b_chains(d, t, i) for i in bits(t)]
    out = []
    for choice in product(*options):
        paths = [p for p in choice if p is not None]
        ok = all(
            _perpendicular(d, paths[a], paths[b])
            for a in range(len(paths))
            for b in range(a + 1, len(paths))
        )
        if ok:
            out.append(SigmaFamily(tuple(paths), _sigma0(d, t, paths)))
    out.sort(key=lambda f: (f.total, [(p[0], len(p), p) for p in f.paths]))
    return out


def default_nerve_phi(d: CoxeterDiagram, t: int) -> Dict[int, str]:
    """Declared classes when present, else one variable per member of T named after it."""
    if d.partition is not None:
        return {i: d.partition[i] for i in bits(t)}
    return {i: d.names[i] for i in bits(t)}


def _resolve(d: CoxeterDiagram, t: int, phi) -> Dict[int, str]:
    if phi is None:
        return default_nerve_phi(d, t)
    if isinstance(phi, str):
        return {i: phi for i in bits(t)}
    if isinstance(phi, dict):
        return {(d.index(k) if isinstance(k, str) else k): v for k, v in phi.items()}
    phi = tuple(phi)
    return {i: phi[i] for i in bits(t)}


def _integral(p: MultiPoly) -> MultiPoly:
    for c in p.terms.values():
        if isinstance(c, Fraction):
            raise NerveError(f"non-integral f-polynomial coefficient {c}")
    return p


def _monomial(exps: Dict[str, int], coeff) -> MultiPoly:
    vars = tuple(sorted(exps))
    return MultiPoly.from_exponents(vars, {tuple(exps[v] for v in vars): coeff})


def family_term(d: CoxeterDiagram, fam: SigmaFamily, phi: Dict[int, str], index: Fraction,
                base: Optional[SigmaFamily] = None) -> MultiPoly:
    exps: Dict[str, int] = {}
    coeff = Fraction(index)
    for p in fam.paths:
        k = len(p) - (base.k(p[0]) if base is not None else 0)
        coeff /= factorial(k)
        if k:
            v = phi[p[0]]
            exps[v] = exps.get(v, 0) + k
    return _monomial(exps, coeff)


def f_closure(d: CoxeterDiagram, t: Optional[int] = None, phi=None) -> MultiPoly:
    """f-polynomial of the nerve of the right-angled closure, from Sigma-families."""
    t = _t_mask(d, t)
    other = _require(d, t)
    phi = _resolve(d, t, phi)
    total = group_order(d, other)
    out = MultiPoly()
    for fam in enumerate_sigma(d, t):
        out = out + family_term(d, fam, phi, Fraction(total, group_order(d, fam.sigma0)))
    return _integral(out)


def f_by_grade(d: CoxeterDiagram, t: Optional[int] = None, phi=None) -> Dict[int, MultiPoly]:
    """Contributions to the f-polynomial grouped by total chain size."""
    t = _t_mask(d, t)
    other = _require(d, t)
    phi = _resolve(d, t, phi)
    total = group_order(d, other)
    out: Dict[int, MultiPoly] = {}
    for fam in enumerate_sigma(d, t):
        term = family_term(d, fam, phi, Fraction(total, group_order(d, fam.sigma0)))
        out[fam.total] = out.get(fam.total, MultiPoly()) + term
    return out


def contains(big: SigmaFamily, small: SigmaFamily) -> bool:
    """Chainwise containment: every chain of ``small`` is a prefix of the chain of ``big``."""
    for p in small.paths:
        q = next((q for q in big.paths if q[0] == p[0]), None)
        if q is None or q[: len(p)] != p:
            return False
    return True


def f_link(d: CoxeterDiagram, t: Optional[int], sigma: SigmaFamily, phi=None) -> MultiPoly:
    """f-polynomial of the link of the simplex described by ``sigma``.

    Uses the index [W_{sigma_0} : W_{Sigma_0}] of centralizers.
    """
    t = _t_mask(d, t)
    _require(d, t)
    phi = _resolve(d, t, phi)
    fams = enumerate_sigma(d, t)
    if sigma not in fams:
        raise NerveError("sigma is not a valid family")
    base_order = group_order(d, sigma.sigma0)
    out = MultiPoly()
    for fam in fams:
        if contains(fam, sigma):
            index = Fraction(base_order, group_order(d, fam.sigma0))
            out = out + family_term(d, fam, phi, index, base=sigma)
    return _integral(out)


def parse_linkspec(d: CoxeterDiagram, spec: str, t: Optional[int] = None) -> SigmaFamily:
    """``t:k`` or ``t:v1/v2/...`` items separated by commas."""
    t = _t_mask(d, t)
    paths = []
    for item in spec.split(","):
        item = item.strip()
        if not item:
            continue
        if ":" not in item:
            raise NerveError(f"bad link item {item!r}; expected t:k or t:v1/v2/...")
        name, rhs = (x.strip() for x in item.split(":", 1))
        i = d.index(name)
        if not t >> i & 1:
            raise NerveError(f"{name} is not in T")
        chains = b_chains(d, t, i)
        if rhs.isdigit():
            k = int(rhs)
            if k == 0:
                continue
            match = [p for p in chains if len(p) == k]
            if not match:
                raise NerveError(f"no B_{k} chain starts at {name}")
            if len(match) > 1:
                options = "; ".join("/".join(d.word_names(p)) for p in match)
                raise NerveError(f"ambiguous chain of size {k} at {name}: {options}")
            path = match[0]
        else:
            path = tuple(d.index(v) for v in rhs.split("/"))
            if path not in chains:
                raise NerveError(f"{rhs} is not a B-chain starting at {name}")
        paths.append(path)
    paths.sort()
    fam = SigmaFamily(tuple(paths), _sigma0(d, t, paths))
    if fam not in enumerate_sigma(d, t):
        raise NerveError("chains are not pairwise perpendicular")
    return fam


def load_linkspec(d: CoxeterDiagram, text: str, t: Optional[int] = None) -> SigmaFamily:
    """Link specification text: '#' comments, items separated by commas or newlines."""
    items = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            items.append(line)
    return parse_linkspec(d, ",".join(items), t)


def brute_force_nerve(d: CoxeterDiagram, t: Optional[int] = None, phi=None,
                      cap: int = DEFAULT_GENERATOR_CAP) -> MultiPoly:
    """Sum over cliques of the closure's commutation graph (oracle)."""
    t = _t_mask(d, t)
    _require(d, t)
    phi = _resolve(d, t, phi)
    pres = closure_matrix(d, t)
    n = len(pres.generators)
    if n > cap:
        raise NerveError(f"{n} closure generators exceed the cap {cap}")
    adj = [0] * n
    for a in range(n):
        for b in range(n):
            if a != b and pres.matrix[a][b] == 2:
                adj[a] |= 1 << b
    vars = [phi[g.base] for g in pres.generators]
    counts: Dict[Tuple[Tuple[str, int], ...], int] = {}

    def walk(clique: Dict[str, int], candidates: int):
        key = tuple(sorted(clique.items()))
        counts[key] = counts.get(key, 0) + 1
        while candidates:
            low = candidates & -candidates
            v = low.bit_length() - 1
            candidates ^= low
            nxt = dict(clique)
            nxt[vars[v]] = nxt.get(vars[v], 0) + 1
            walk(nxt, candidates & adj[v])

    walk({}, (1 << n) - 1)
    out = MultiPoly()
    for key, c in counts.items():
        out = out + _monomial(dict(key), c)
    return out
