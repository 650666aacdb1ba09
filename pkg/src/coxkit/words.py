"""Element arithmetic in Coxeter groups.

Elements are stored by their ShortLex-least reduced word (generator ordinals).
Two backends compute normal forms:

* ``TitsEngine`` works for every Coxeter matrix: it explores the class of a
  word under braid moves and deletes ``ss`` pairs (Tits's solution of the word
  problem).  Cost grows with the number of reduced words, so it is an
  oracle-scale tool.
* ``RootEngine`` handles diagrams whose labels lie in {2, 3, 4, 6, inf}.  It
  acts on the integer root lattice of a generalized Cartan matrix with
  ``a_ij * a_ji = 4 cos^2(pi / m_ij)``; descents are read off root signs.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .classify import INFINITE, group_order
from .diagram import INF, CoxeterDiagram, bits, check_allowable
from .series import MultiPoly

Word = Tuple[int, ...]

DEFAULT_CAP = 10 ** 5


def oracle_cap() -> int:
    """Enumeration cap; ``COXKIT_ORACLE_CAP`` overrides the default."""
    raw = os.environ.get("COXKIT_ORACLE_CAP")
    return int(raw) if raw else DEFAULT_CAP


class CapExceeded(RuntimeError):
    pass


@dataclass(frozen=True, order=True)
class Element:
    """A group element, held by its ShortLex normal form."""

    word: Word = ()

    def __len__(self):
        return len(self.word)

    @property
    def length(self) -> int:
        return len(self.word)

    def support(self) -> int:
        out = 0
        for s in self.word:
            out |= 1 << s
        return out

    def names(self, d: CoxeterDiagram) -> List[str]:
        return d.word_names(self.word)

    def format(self, d: CoxeterDiagram) -> str:
        return " ".join(self.names(d)) or "e"


IDENTITY = Element(())


# -- backends ----------------------------------------------------------------


class TitsEngine:
    """Normal forms by closure under the moves of Tits's lemma."""

    name = "tits"

    def __init__(self, d: CoxeterDiagram):
        self.d = d
        m = d.matrix
        self._m = m

    def _braid_neighbors(self, w: Word):
        m = self._m
        n = len(w)
        for i in range(n - 1):
            s, t = w[i], w[i + 1]
            if s == t:
                continue
            mst = m[s][t]
            if mst is INF or i + mst > n:
                continue
            ok = True
            for k in range(mst):
                if w[i + k] != (s if k % 2 == 0 else t):
                    ok = False
                    break
            if ok:
                swapped = tuple(t if k % 2 == 0 else s for k in range(mst))
                yield w[:i] + swapped + w[i + mst:]

    def _class_or_cancel(self, w: Word):
        """Braid class of ``w``, or a shorter word if some member has ``ss``."""
        seen = {w}
        queue = deque([w])
        while queue:
            u = queue.popleft()
            for i in range(len(u) - 1):
                if u[i] == u[i + 1]:
                    return None, u[:i] + u[i + 2:]
            for v in self._braid_neighbors(u):
                if v not in seen:
                    seen.add(v)
                    queue.append(v)
        return seen, None

    def reduce_word(self, word: Iterable[int]) -> Word:
        nf: Word = ()
        for s in word:
            nf = self._append(nf, s)
        return nf

    def _append(self, nf: Word, s: int) -> Word:
        w = nf + (s,)
        while True:
            cls, shorter = self._class_or_cancel(w)
            if cls is not None:
                return min(cls)
            w = shorter

    # state interface: the state is the normal form itself
    def identity(self):
        return ()

    def from_word(self, word: Iterable[int]):
        return self.reduce_word(word)

    def mul_right(self, state, s):
        return self._append(state, s)

    def mul_left(self, state, s):
        return self.reduce_word((s,) + state)

    def right_descent(self, state, s) -> bool:
        return len(self._append(state, s)) < len(state)

    def left_descent(self, state, s) -> bool:
        return len(self.reduce_word((s,) + state)) < len(state)

    def key(self, state):
        return state

    def normal_form(self, state) -> Word:
        return state


_CARTAN_PRODUCT = {2: 0, 3: 1, 4: 2, 6: 3}


def crystallographic(d: CoxeterDiagram) -> bool:
    return all(m is INF or m in _CARTAN_PRODUCT for _, m in d.labels)


class RootEngine:
    """Exact action on the root lattice; state = (M, M^-1) as column tuples."""

    name = "roots"

    def __init__(self, d: CoxeterDiagram):
        if not crystallographic(d):
            raise ValueError("root engine needs labels in {2,3,4,6,inf}")
        n = d.rank
        a = [[0] * n for _ in range(n)]
        for i in range(n):
            a[i][i] = 2
        for (i, j), m in d.labels:
            if m is INF:
                a[i][j] = a[j][i] = -2
            else:
                c = _CARTAN_PRODUCT[m]
                if c:
                    a[i][j], a[j][i] = -1, -c
        self.d = d
        self.n = n
        self.a = a
        self.row = [[(j, a[i][j]) for j in range(n) if j != i and a[i][j]] for i in range(n)]
        ident = tuple(tuple(1 if r == c else 0 for r in range(n)) for c in range(n))
        self._identity = (ident, ident)

    # columns: M[j] = w(alpha_j) in simple-root coordinates

    def _right(self, cols, i):
        ci = cols[i]
        out = list(cols)
        out[i] = tuple([-x for x in ci])
        for j, c in self.row[i]:
            out[j] = tuple([x - c * y for x, y in zip(cols[j], ci)])
        return tuple(out)

    def _left(self, cols, i):
        row = self.row[i]
        out = []
        for v in cols:
            delta = 2 * v[i]
            for j, c in row:
                delta += c * v[j]
            if delta:
                lv = list(v)
                lv[i] -= delta
                out.append(tuple(lv))
            else:
                out.append(v)
        return tuple(out)

    @staticmethod
    def _negative(v) -> bool:
        for x in v:
            if x:
                return x < 0
        raise AssertionError("zero root")

    def identity(self):
        return self._identity

    def mul_right(self, state, s):
        m, minv = state
        return self._right(m, s), self._left(minv, s)

    def mul_left(self, state, s):
        m, minv = state
        return self._left(m, s), self._right(minv, s)

    def from_word(self, word: Iterable[int]):
        st = self._identity
        for s in word:
            st = self.mul_right(st, s)
        return st

    def right_descent(self, state, s) -> bool:
        return self._negative(state[0][s])

    def left_descent(self, state, s) -> bool:
        return self._negative(state[1][s])

    def key(self, state):
        return state[0]

    def normal_form(self, state) -> Word:
        word = []
        minv = state[1]
        n = self.n
        while True:
            for i in range(n):
                if self._negative(minv[i]):
                    break
            else:
                return tuple(word)
            word.append(i)
            minv = self._right(minv, i)

    def reduce_word(self, word: Iterable[int]) -> Word:
        return self.normal_form(self.from_word(word))


@lru_cache(maxsize=256)
def engine(d: CoxeterDiagram, prefer: str = "auto"):
    """Backend for ``d``: the root engine when labels allow, else Tits moves."""
    if prefer == "tits" or (prefer == "auto" and not crystallographic(d)):
        return TitsEngine(d)
    return RootEngine(d)


# -- element operations ---------------------------------------------------------


def _as_word(d: CoxeterDiagram, w) -> Word:
    if isinstance(w, Element):
        return w.word
    if isinstance(w, str):
        return d.word(w)
    word = tuple(w)
    for s in word:
        if not 0 <= s < d.rank:
            raise ValueError(f"letter {s} outside the diagram")
    return word


def reduce(d: CoxeterDiagram, w, backend: str = "auto") -> Element:
    """ShortLex normal form of the element represented by ``w``."""
    return Element(engine(d, backend).reduce_word(_as_word(d, w)))


def reduce_tits(d: CoxeterDiagram, w) -> Element:
    return reduce(d, w, backend="tits")


def multiply(d: CoxeterDiagram, a, b) -> Element:
    return reduce(d, _as_word(d, a) + _as_word(d, b))


def inverse(d: CoxeterDiagram, a) -> Element:
    return reduce(d, tuple(reversed(_as_word(d, a))))


def support(a: Element) -> int:
    return a.support()


def length(d: CoxeterDiagram, w) -> int:
    return len(reduce(d, w).word)


def refined_length(d: CoxeterDiagram, a, phi: Optional[Sequence[str]] = None) -> Dict[str, int]:
    """Letter counts of a reduced word, grouped by the partition ``phi``."""
    phi = tuple(d.phi() if phi is None else phi)
    check_allowable(d, phi)
    out = {v: 0 for v in dict.fromkeys(phi)}
    for s in reduce(d, a).word:
        out[phi[s]] += 1
    return out


def monomial(d: CoxeterDiagram, a: Element, phi: Sequence[str]) -> MultiPoly:
    counts: Dict[str, int] = {}
    for s in a.word:
        counts[phi[s]] = counts.get(phi[s], 0) + 1
    vars = tuple(sorted(counts))
    return MultiPoly.from_exponents(vars, {tuple(counts[v] for v in vars): 1})


# -- enumeration -----------------------------------------------------------------


def _bfs(d: CoxeterDiagram, a: int, max_len: Optional[int], cap: int) -> List[Element]:
    eng = engine(d)
    gens = list(bits(a))
    start = eng.identity()
    seen = {eng.key(start)}
    level = [((), start)]
    out = [IDENTITY]
    depth = 0
    while level and (max_len is None or depth < max_len):
        nxt = []
        for word, st in level:
            for s in gens:
                if eng.right_descent(st, s):
                    continue
                st2 = eng.mul_right(st, s)
                k = eng.key(st2)
                if k in seen:
                    continue
                seen.add(k)
                w2 = word + (s,)
                nxt.append((w2, st2))
                out.append(Element(w2))
                if len(out) > cap:
                    raise CapExceeded(f"more than {cap} elements")
        level = nxt
        depth += 1
    return out


def enumerate_group(d: CoxeterDiagram, a: Optional[int] = None, cap: Optional[int] = None) -> List[Element]:
    """All elements of the finite parabolic on ``a``, by length then ShortLex."""
    a = d.full if a is None else a
    cap = oracle_cap() if cap is None else cap
    order = group_order(d, a)
    if order is INFINITE:
        raise ValueError("parabolic subgroup is infinite")
    if order > cap:
        raise CapExceeded(f"order {order} exceeds cap {cap}")
    return _bfs(d, a, None, cap)


def ball(d: CoxeterDiagram, radius: int, a: Optional[int] = None, cap: Optional[int] = None) -> List[Element]:
    """Elements of length at most ``radius`` (works for infinite groups)."""
    a = d.full if a is None else a
    cap = oracle_cap() if cap is None else cap
    return _bfs(d, a, radius, cap)


def length_histogram(elements: Iterable[Element]) -> List[int]:
    hist: List[int] = []
    for e in elements:
        while len(hist) <= e.length:
            hist.append(0)
        hist[e.length] += 1
    return hist


def min_coset_reps(d: CoxeterDiagram, a: int, sub: int, cap: Optional[int] = None) -> List[Element]:
    """Minimal-length representatives of the left cosets ``w W_sub`` in ``W_a``."""
    if sub & ~a:
        raise ValueError("sub is not contained in a")
    cap = oracle_cap() if cap is None else cap
    oa = group_order(d, a)
    if oa is INFINITE:
        raise ValueError("parabolic subgroup is infinite")
    eng = engine(d)
    gens = list(bits(a))
    subgens = list(bits(sub))
    start = eng.identity()
    seen = {eng.key(start)}
    level = [start]
    out = [IDENTITY]
    # reps are closed under taking suffixes, so grow by left multiplication
    while level:
        nxt = []
        for st in level:
            for s in gens:
                if eng.left_descent(st, s):
                    continue
                st2 = eng.mul_left(st, s)
                k = eng.key(st2)
                if k in seen:
                    continue
                seen.add(k)
                if any(eng.right_descent(st2, j) for j in subgens):
                    continue
                nxt.append(st2)
                out.append(Element(eng.normal_form(st2)))
                if len(out) > cap:
                    raise CapExceeded(f"more than {cap} coset representatives")
        level = nxt
    out.sort(key=lambda e: (e.length, e.word))
    return out


def min_coset_rep(d: CoxeterDiagram, w, sub: int) -> Element:
    """Minimal element of the left coset ``w W_sub``."""
    eng = engine(d)
    st = eng.from_word(_as_word(d, w))
    changed = True
    while changed:
        changed = False
        for s in bits(sub):
            if eng.right_descent(st, s):
                st = eng.mul_right(st, s)
                changed = True
    return Element(eng.normal_form(st))


def min_double_coset(d: CoxeterDiagram, left: int, w, right: int) -> Element:
    """Unique minimal element of ``W_left w W_right`` by greedy descent."""
    eng = engine(d)
    st = eng.from_word(_as_word(d, w))
    changed = True
    while changed:
        changed = False
        for s in bits(left):
            if eng.left_descent(st, s):
                st = eng.mul_left(st, s)
                changed = True
        for s in bits(right):
            if eng.right_descent(st, s):
                st = eng.mul_right(st, s)
                changed = True
    assert not any(eng.left_descent(st, s) for s in bits(left))
    assert not any(eng.right_descent(st, s) for s in bits(right))
    return Element(eng.normal_form(st))


def growth_by_enumeration(d: CoxeterDiagram, a: Optional[int] = None, phi: Optional[Sequence[str]] = None,
                          cap: Optional[int] = None) -> MultiPoly:
    """Sum of refined-length monomials over a finite parabolic (BFS oracle)."""
    a = d.full if a is None else a
    phi = tuple(d.phi() if phi is None else phi)
    check_allowable(d, phi)
    vars = tuple(sorted({phi[i] for i in bits(a)}))
    pos = {v: k for k, v in enumerate(vars)}
    counts: Dict[Tuple[int, ...], int] = {}
    for e in enumerate_group(d, a, cap):
        exps = [0] * len(vars)
        for s in e.word:
            exps[pos[phi[s]]] += 1
        key = tuple(exps)
        counts[key] = counts.get(key, 0) + 1
    return MultiPoly.from_exponents(vars, counts)


# -- signed permutations (type B oracle) -----------------------------------------------


def signed_permutations(k: int):
    for perm in permutations(range(1, k + 1)):
        for signs in product((1, -1), repeat=k):
            yield tuple(p * s for p, s in zip(perm, signs))


def signed_length(w: Sequence[int]) -> int:
    """Type-B length: inversions plus the absolute values of negative entries."""
    n = len(w)
    inv = sum(1 for i in range(n) for j in range(i + 1, n) if w[i] > w[j])
    return inv - sum(x for x in w if x < 0)


def signed_neg(w: Sequence[int]) -> int:
    return sum(1 for x in w if x < 0)


def signed_permutation_growth(k: int, var_sign: str = "x", var_perm: str = "x0") -> MultiPoly:
    """Two-variable growth of B_k from signed-permutation statistics.

    The sign-change generator contributes ``neg(w)`` letters and the
    transpositions the remaining ``length - neg``.
    """
    counts: Dict[Tuple[int, int], int] = {}
    for w in signed_permutations(k):
        neg = signed_neg(w)
        key = (neg, signed_length(w) - neg)
        counts[key] = counts.get(key, 0) + 1
    return MultiPoly.from_exponents((var_sign, var_perm), counts)
