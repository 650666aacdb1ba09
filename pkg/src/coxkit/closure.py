"""Normal closure of a standard parabolic subgroup as a Coxeter system.

When every label between T and S - T is even or infinite, deleting the
T-letters is a homomorphism onto W_{S-T} whose kernel is the normal closure of
W_T.  Its Coxeter generators are the conjugates ``w t w^-1`` with ``t`` in T and
``w`` a minimal coset representative of W_{S-T} modulo W_{t-perp - T}.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .classify import INFINITE, group_order
from .diagram import (
    INF,
    CoxeterDiagram,
    Label,
    bits,
    half_label,
    is_odd,
    odd_closure,
    perp,
    serialize,
)
from .words import (
    IDENTITY,
    Element,
    RootEngine,
    engine,
    inverse,
    min_coset_rep,
    min_coset_reps,
    min_double_coset,
    multiply,
    reduce,
)

DEFAULT_PAIR_LIMIT = 10 ** 6


class ClosureError(ValueError):
    pass


@dataclass(frozen=True)
class Violation:
    t: str
    s: str
    label: Label
    suggested: Tuple[str, ...]

    def __str__(self):
        return (
            f"label {self.label} between {self.t} in T and {self.s} outside T is odd; "
            f"enlarge T to its odd closure {{{', '.join(self.suggested)}}}"
        )


@dataclass(frozen=True, order=True)
class ClosureGenerator:
    """The reflection ``rep * base * rep^-1``."""

    base: int
    rep: Element = IDENTITY

    def name(self, d: CoxeterDiagram) -> str:
        return f"{d.names[self.base]}@" + ".".join(d.word_names(self.rep.word))

    def word(self) -> Tuple[int, ...]:
        w = self.rep.word
        return w + (self.base,) + tuple(reversed(w))


@dataclass
class ClosurePresentation:
    generators: List[ClosureGenerator]
    matrix: Optional[List[List[Label]]]
    right_angled: bool


def _t_mask(d: CoxeterDiagram, t: Optional[int]) -> int:
    t = d.T if t is None else t
    if t & ~d.full:
        raise ClosureError("T is not a subset of S")
    return t


def check_hypothesis(d: CoxeterDiagram, t: Optional[int] = None) -> Optional[Violation]:
    """None when every T / (S - T) label is even or infinite, else a witness."""
    t = _t_mask(d, t)
    for i in bits(t):
        for j in bits(d.full & ~t):
            if is_odd(d.m(i, j)):
                return Violation(d.names[i], d.names[j], d.m(i, j), tuple(d.names_of(odd_closure(d, t))))
    return None


def _require(d: CoxeterDiagram, t: int) -> int:
    v = check_hypothesis(d, t)
    if v is not None:
        raise ClosureError(str(v))
    other = d.full & ~t
    if group_order(d, other) is INFINITE:
        raise ClosureError("W_{S-T} is infinite, so the closure has infinitely many generators")
    return other


@lru_cache(maxsize=4096)
def stabilizer_mask(d: CoxeterDiagram, t: int, i: int) -> int:
    """Generators of S - T commuting with the T-generator ``i``."""
    return perp(d, 1 << i) & ~t


def generator_count(d: CoxeterDiagram, t: Optional[int] = None) -> Dict[str, int]:
    """Number of closure generators over each t, from group orders only."""
    t = _t_mask(d, t)
    other = _require(d, t)
    total = group_order(d, other)
    return {d.names[i]: total // group_order(d, stabilizer_mask(d, t, i)) for i in bits(t)}


def enumerate_generators(d: CoxeterDiagram, t: Optional[int] = None) -> List[ClosureGenerator]:
    t = _t_mask(d, t)
    other = _require(d, t)
    out = []
    for i in bits(t):
        for rep in min_coset_reps(d, other, stabilizer_mask(d, t, i)):
            out.append(ClosureGenerator(i, rep))
    return out


def is_right_angled_closure(d: CoxeterDiagram, t: Optional[int] = None) -> bool:
    t = _t_mask(d, t)
    for i in bits(t):
        for j in bits(d.full & ~t):
            if d.m(i, j) not in (2, 4, INF):
                return False
        for j in bits(t):
            if j != i and d.m(i, j) not in (2, INF):
                return False
    return True


def closure_entry(d: CoxeterDiagram, t: int, g1: ClosureGenerator, g2: ClosureGenerator) -> Label:
    """Coxeter label between two closure generators (1 when they coincide)."""
    w = g2.rep if g1.rep.length == 0 else multiply(d, inverse(d, g1.rep), g2.rep)
    wstar = min_double_coset(d, stabilizer_mask(d, t, g1.base), w, stabilizer_mask(d, t, g2.base))
    if g1.base != g2.base:
        return d.m(g1.base, g2.base) if wstar.length == 0 else INF
    if wstar.length == 0:
        return 1
    if wstar.length == 1:
        return half_label(d.m(wstar.word[0], g1.base))
    return INF


def _row(args) -> List[Label]:
    d, t, gens, a, start, stop = args
    return [closure_entry(d, t, gens[a], gens[b]) for b in range(start, stop)]


def generator_action(d: CoxeterDiagram, t: int, gens: Sequence[ClosureGenerator]) -> Dict[int, np.ndarray]:
    """Permutation of ``gens`` induced by conjugating with each s in S - T."""
    eng = engine(d)
    out = {}
    if isinstance(eng, RootEngine):
        # t@w is the reflection in the positive root w(alpha_t); s moves that root to s(root)
        roots = [eng.from_word(g.rep.word)[0][g.base] for g in gens]
        index = {(g.base, r): k for k, (g, r) in enumerate(zip(gens, roots))}
        for s in bits(d.full & ~t):
            moved = eng._left(roots, s)
            out[s] = np.array([index[(g.base, r)] for g, r in zip(gens, moved)], dtype=np.int64)
        return out
    index = {g: k for k, g in enumerate(gens)}
    for s in bits(d.full & ~t):
        out[s] = np.array(
            [index[ClosureGenerator(g.base, min_coset_rep(d, (s,) + g.rep.word, stabilizer_mask(d, t, g.base)))]
             for g in gens],
            dtype=np.int64,
        )
    return out


def _direct_matrix(d, t, gens, workers) -> List[List[Label]]:
    n = len(gens)
    jobs = [(d, t, gens, a, a + 1, n) for a in range(n)]
    if workers > 1 and n > 64:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_row, jobs, chunksize=max(1, n // (4 * workers))))
    else:
        rows = [_row(job) for job in jobs]
    mat: List[List[Label]] = [[1] * n for _ in range(n)]
    for a, row in enumerate(rows):
        for off, m in enumerate(row):
            mat[a][a + 1 + off] = mat[a + 1 + off][a] = m
    return mat


def _orbit_matrix(d, t, gens, workers) -> List[List[Label]]:
    # Conjugating by rep^-1 moves generator a to its base t@e, so every row is
    # a permuted copy of one of the |T| base rows.
    n = len(gens)
    base_index = {g.base: k for k, g in enumerate(gens) if g.rep.length == 0}
    step = max(1, -(-n // (4 * workers)))
    jobs = [(d, t, gens, k, lo, min(n, lo + step)) for k in base_index.values() for lo in range(0, n, step)]
    if workers > 1 and n > 64:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_row, jobs))
    else:
        parts = [_row(job) for job in jobs]
    base_rows = {}
    for (_, _, _, k, _, _), part in zip(jobs, parts):
        base_rows.setdefault(gens[k].base, []).extend(part)
    action = generator_action(d, t, gens)
    mat: List[List[Label]] = []
    for g in gens:
        image = np.arange(n)
        for s in g.rep.word:
            image = action[s][image]
        row = base_rows[g.base]
        mat.append([row[c] for c in image.tolist()])
    return mat


def closure_matrix(d: CoxeterDiagram, t: Optional[int] = None, pair_limit: int = DEFAULT_PAIR_LIMIT,
                   workers: int = 1, method: str = "orbit") -> ClosurePresentation:
    """Closure generators with their Coxeter matrix.

    ``method="orbit"`` computes the rows of the generators ``t@e`` and moves
    them around by the conjugation action of S - T; ``"direct"`` evaluates
    every pair on its own.  Either spreads its entries over ``workers``
    processes when that is above 1 and there are more than 64 generators.  Above
    ``pair_limit`` generator pairs the matrix is left as None and only the
    right-angledness test from T-labels is reported.
    """
    t = _t_mask(d, t)
    gens = enumerate_generators(d, t)
    ra = is_right_angled_closure(d, t)
    n = len(gens)
    if n * (n - 1) // 2 > pair_limit:
        return ClosurePresentation(gens, None, ra)
    if method == "orbit":
        mat = _orbit_matrix(d, t, gens, workers)
    elif method == "direct":
        mat = _direct_matrix(d, t, gens, workers)
    else:
        raise ValueError(f"unknown method {method!r}")
    for a in range(n):
        if mat[a][a] != 1 or any(mat[a][b] == 1 for b in range(n) if b != a):
            raise AssertionError("canonical closure generators coincide")
        if any(mat[a][b] != mat[b][a] for b in range(a)):
            raise AssertionError("closure matrix is not symmetric")
    ra_matrix = all(mat[a][b] in (1, 2, INF) for a in range(n) for b in range(n))
    if ra_matrix != ra:
        raise AssertionError("matrix right-angledness disagrees with the label criterion")
    return ClosurePresentation(gens, mat, ra)


def closure_diagram(d: CoxeterDiagram, t: Optional[int] = None, pair_limit: int = DEFAULT_PAIR_LIMIT,
                    workers: int = 1) -> CoxeterDiagram:
    """The closure as a diagram on generators named ``t@w`` (letters of w joined by '.')."""
    t = _t_mask(d, t)
    pres = closure_matrix(d, t, pair_limit, workers)
    if pres.matrix is None:
        raise ClosureError(f"{len(pres.generators)} generators exceed the pair limit")
    return _as_diagram(d, pres)


def _as_diagram(d: CoxeterDiagram, pres: ClosurePresentation) -> CoxeterDiagram:
    names = [g.name(d) for g in pres.generators]
    phi = [d.phi()[g.base] for g in pres.generators] if d.partition is not None else None
    return CoxeterDiagram.from_matrix(names, pres.matrix, partition=phi)


def serialize_closure(d: CoxeterDiagram, pres: ClosurePresentation) -> str:
    """DSL text of the closure presentation."""
    if pres.matrix is None:
        raise ClosureError("closure matrix was not built")
    return serialize(_as_diagram(d, pres))


def project_phi_T(d: CoxeterDiagram, t: Optional[int], w) -> Element:
    """Image under the homomorphism deleting T-letters, reduced in W_{S-T}."""
    t = _t_mask(d, t)
    word = d.word(w) if isinstance(w, str) else tuple(w.word if isinstance(w, Element) else w)
    return reduce(d, tuple(s for s in word if not t >> s & 1))


def rewrite_in_closure(d: CoxeterDiagram, t: Optional[int], w) -> List[ClosureGenerator]:
    """Spell a kernel element as a word in canonical closure generators."""
    t = _t_mask(d, t)
    _require(d, t)
    word = d.word(w) if isinstance(w, str) else tuple(w.word if isinstance(w, Element) else w)
    if project_phi_T(d, t, word).length:
        raise ClosureError("word is not in the normal closure of W_T")
    out = []
    prefix: Tuple[int, ...] = ()
    for s in word:
        if t >> s & 1:
            rep = min_coset_rep(d, prefix, stabilizer_mask(d, t, s))
            out.append(ClosureGenerator(s, rep))
        else:
            prefix = reduce(d, prefix + (s,)).word
    return out


def expand(d: CoxeterDiagram, gens: Sequence[ClosureGenerator]) -> Element:
    """Multiply closure generators out in the ambient group."""
    word: Tuple[int, ...] = ()
    for g in gens:
        word += g.word()
    return reduce(d, word)
