"""Decorated Dynkin diagrams: parsing, validation and subset queries.

Subsets of generators are plain ``int`` bitmasks over declaration ordinals.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Optional, Tuple, Union

MAX_RANK = 64

_NAME_RE = re.compile(r"^[A-Za-z0-9_@.]+$")
_VAR_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")

DEFAULT_OTHER_VAR = "x0"
DEFAULT_T_VAR = "x"


class _Infinity:
    """The label of a pair of generators with no relation imposed."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"

    def __hash__(self):
        return hash("coxkit.INF")

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __floordiv__(self, other):
        return self

    __truediv__ = __floordiv__

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()
Label = Union[int, _Infinity]


def half_label(m: Label) -> Label:
    """m/2 with inf/2 = inf; m must be even or infinite."""
    if m is INF:
        return INF
    if m % 2:
        raise ValueError(f"label {m} is odd")
    return m // 2


def is_odd(m: Label) -> bool:
    return m is not INF and m % 2 == 1


def parse_label(token: str) -> Label:
    if token in ("inf", "oo", "∞"):
        return INF
    if not token.isdigit():
        raise ValueError(f"malformed label {token!r}")
    m = int(token)
    if m < 2:
        raise ValueError(f"label {m} < 2")
    return m


class DiagramError(ValueError):
    """Raised for malformed or inconsistent diagram input."""

    def __init__(self, message: str, line: Optional[int] = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


def bits(mask: int) -> Iterator[int]:
    """Ordinals set in ``mask``, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def submasks(mask: int) -> Iterator[int]:
    """All submasks of ``mask`` (including 0 and ``mask``)."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


@dataclass(frozen=True)
class CoxeterDiagram:
    """A Coxeter matrix on named generators.

    ``labels`` holds only the pairs ``(i, j)``, ``i < j``, whose label is not 2.
    ``partition`` (when present) maps every ordinal to a variable name.
    """

    names: Tuple[str, ...]
    labels: Tuple[Tuple[Tuple[int, int], Label], ...] = ()
    t_set: Optional[int] = None
    partition: Optional[Tuple[str, ...]] = None
    _matrix: Tuple[Tuple[Label, ...], ...] = field(default=(), init=False, repr=False, compare=False)
    _index: Dict[str, int] = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        if len(self.names) > MAX_RANK:
            raise DiagramError(f"rank {len(self.names)} exceeds {MAX_RANK}")
        if len(set(self.names)) != len(self.names):
            raise DiagramError("duplicate generator names")
        n = len(self.names)
        rows = [[2] * n for _ in range(n)]
        for i in range(n):
            rows[i][i] = 1
        for (i, j), m in self.labels:
            if not 0 <= i < j < n:
                raise DiagramError(f"bad label pair {(i, j)}")
            rows[i][j] = rows[j][i] = m
        object.__setattr__(self, "_matrix", tuple(tuple(r) for r in rows))
        object.__setattr__(self, "_index", {s: i for i, s in enumerate(self.names)})
        if self.partition is not None and len(self.partition) != n:
            raise DiagramError("partition does not cover every generator")

    # -- construction ------------------------------------------------------

    @classmethod
    def from_matrix(cls, names: Iterable[str], matrix, t_set=None, partition=None) -> "CoxeterDiagram":
        names = tuple(names)
        labels = []
        for i in range(len(names)):
            for j in range(i + 1, len(names)):
                m = matrix[i][j]
                if m != 2:
                    labels.append(((i, j), m))
        return cls(names, tuple(labels), t_set, None if partition is None else tuple(partition))

    @classmethod
    def from_edges(cls, names: Iterable[str], edges: Iterable[Tuple[str, str, Label]], t=None, partition=None):
        """Build from ``(a, b, m)`` triples; ``t`` is an iterable of names."""
        names = tuple(names)
        index = {s: i for i, s in enumerate(names)}
        labels = {}
        for a, b, m in edges:
            i, j = sorted((index[a], index[b]))
            if m != 2:
                labels[(i, j)] = m
        t_set = None
        if t is not None:
            t_set = 0
            for s in t:
                t_set |= 1 << index[s]
        if isinstance(partition, dict):
            partition = tuple(partition[s] for s in names)
        return cls(names, tuple(sorted(labels.items())), t_set, partition)

    # -- queries -----------------------------------------------------------

    @property
    def rank(self) -> int:
        return len(self.names)

    @property
    def full(self) -> int:
        return (1 << len(self.names)) - 1

    @property
    def T(self) -> int:
        return self.t_set or 0

    def m(self, i: int, j: int) -> Label:
        return self._matrix[i][j]

    @property
    def matrix(self) -> Tuple[Tuple[Label, ...], ...]:
        return self._matrix

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise DiagramError(f"unknown generator {name!r}") from None

    def mask(self, names: Iterable[str]) -> int:
        out = 0
        for s in names:
            out |= 1 << self.index(s)
        return out

    def names_of(self, mask: int) -> List[str]:
        return [self.names[i] for i in bits(mask)]

    def word(self, text: Union[str, Iterable[str]]) -> Tuple[int, ...]:
        """Space-separated (or iterable) generator names to an ordinal word."""
        if isinstance(text, str):
            text = text.split()
        return tuple(self.index(s) for s in text)

    def word_names(self, word: Iterable[int]) -> List[str]:
        return [self.names[i] for i in word]

    def neighbors(self, i: int) -> List[int]:
        """Generators joined to ``i`` by an edge (label other than 2)."""
        row = self._matrix[i]
        return [j for j in range(self.rank) if j != i and row[j] != 2]

    def phi(self) -> Tuple[str, ...]:
        """The partition, or the default when absent: x on T and x0 on S - T, all x without T."""
        if self.partition is not None:
            return self.partition
        if self.t_set is None:
            return (DEFAULT_T_VAR,) * self.rank
        t = self.T
        return tuple(DEFAULT_T_VAR if t >> i & 1 else DEFAULT_OTHER_VAR for i in range(self.rank))

    def is_right_angled(self, mask: Optional[int] = None) -> bool:
        mask = self.full if mask is None else mask
        idx = list(bits(mask))
        return all(self.m(i, j) in (2, INF) for a, i in enumerate(idx) for j in idx[a + 1:])

    def fingerprint(self) -> str:
        import hashlib

        return hashlib.sha256(serialize(self).encode()).hexdigest()[:16]

    def __str__(self):
        return serialize(self)


# -- subset operations -----------------------------------------------------


def odd_closure(d: CoxeterDiagram, t0: int) -> int:
    """Union of the odd-conjugacy classes meeting ``t0``."""
    seen = t0
    queue = deque(bits(t0))
    while queue:
        i = queue.popleft()
        for j in range(d.rank):
            if not seen >> j & 1 and is_odd(d.m(i, j)):
                seen |= 1 << j
                queue.append(j)
    return seen


def odd_path(d: CoxeterDiagram, a: int, b: int) -> Optional[List[int]]:
    """Shortest path of odd-labelled edges from ``a`` to ``b``, if any."""
    prev = {a: None}
    queue = deque([a])
    while queue:
        i = queue.popleft()
        if i == b:
            path = []
            while i is not None:
                path.append(i)
                i = prev[i]
            return path[::-1]
        for j in range(d.rank):
            if j not in prev and is_odd(d.m(i, j)):
                prev[j] = i
                queue.append(j)
    return None


def perp(d: CoxeterDiagram, a: int) -> int:
    """Generators commuting with every member of ``a`` (label 2)."""
    out = 0
    members = list(bits(a))
    for s in range(d.rank):
        if all(d.m(s, t) == 2 for t in members):
            out |= 1 << s
    return out


def induced(d: CoxeterDiagram, a: int) -> CoxeterDiagram:
    """The parabolic subdiagram on ``a``."""
    idx = list(bits(a))
    pos = {i: k for k, i in enumerate(idx)}
    labels = tuple(
        ((pos[i], pos[j]), m) for (i, j), m in d.labels if i in pos and j in pos
    )
    t_set = None
    if d.t_set is not None:
        t_set = sum(1 << pos[i] for i in bits(d.t_set & a))
    partition = None if d.partition is None else tuple(d.partition[i] for i in idx)
    return CoxeterDiagram(tuple(d.names[i] for i in idx), labels, t_set, partition)


def connected_components(d: CoxeterDiagram, a: int) -> List[int]:
    """Components of ``a`` in the graph of edges with label other than 2."""
    comps = []
    left = a
    while left:
        start = (left & -left).bit_length() - 1
        comp = 1 << start
        stack = [start]
        while stack:
            i = stack.pop()
            for j in bits(left & ~comp):
                if d.m(i, j) != 2:
                    comp |= 1 << j
                    stack.append(j)
        comps.append(comp)
        left &= ~comp
    return comps


def check_allowable(d: CoxeterDiagram, partition: Tuple[str, ...]) -> None:
    """Raise DiagramError unless ``partition`` is constant on odd-conjugacy classes."""
    for (i, j), m in d.labels:
        if is_odd(m) and partition[i] != partition[j]:
            raise DiagramError(
                f"partition not allowable: {d.names[i]} ({partition[i]}) and "
                f"{d.names[j]} ({partition[j]}) are conjugate via odd edge label {m}"
            )


# -- DSL -------------------------------------------------------------------


def parse_diagram(text: str) -> CoxeterDiagram:
    names: List[str] = []
    index: Dict[str, int] = {}
    labels: Dict[Tuple[int, int], Label] = {}
    t_names: Optional[List[Tuple[str, int]]] = None
    classes: Dict[str, str] = {}
    class_lines: Dict[str, int] = {}
    pending: List[Tuple[int, str, str, str]] = []

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        kw = tok[0]
        if kw == "node":
            if len(tok) != 2:
                raise DiagramError("expected 'node NAME'", lineno)
            name = tok[1]
            if not _NAME_RE.match(name):
                raise DiagramError(f"bad generator name {name!r}", lineno)
            if name in index:
                raise DiagramError(f"duplicate node {name!r}", lineno)
            index[name] = len(names)
            names.append(name)
        elif kw == "edge":
            if len(tok) != 4:
                raise DiagramError("expected 'edge NAME NAME LABEL'", lineno)
            pending.append((lineno, tok[1], tok[2], tok[3]))
        elif kw == "T":
            if len(tok) < 2:
                raise DiagramError("expected 'T NAME+'", lineno)
            t_names = (t_names or []) + [(s, lineno) for s in tok[1:]]
        elif kw == "class":
            rest = line[len("class"):]
            if ":" not in rest:
                raise DiagramError("expected 'class VAR : NAME+'", lineno)
            var, members = rest.split(":", 1)
            var = var.strip()
            members = members.split()
            if not _VAR_RE.match(var) or not members:
                raise DiagramError("expected 'class VAR : NAME+'", lineno)
            for s in members:
                if s in classes:
                    raise DiagramError(f"generator {s!r} assigned to two classes", lineno)
                classes[s] = var
                class_lines[s] = lineno
        else:
            raise DiagramError(f"unknown keyword {kw!r}", lineno)

    if len(names) > MAX_RANK:
        raise DiagramError(f"rank {len(names)} exceeds {MAX_RANK}")

    for lineno, a, b, lab in pending:
        for s in (a, b):
            if s not in index:
                raise DiagramError(f"edge references unknown node {s!r}", lineno)
        if a == b:
            raise DiagramError(f"edge from {a!r} to itself", lineno)
        try:
            m = parse_label(lab)
        except ValueError as exc:
            raise DiagramError(str(exc), lineno) from None
        key = tuple(sorted((index[a], index[b])))
        if key in labels:
            raise DiagramError(f"duplicate edge {a} {b}", lineno)
        labels[key] = m

    t_set = None
    if t_names is not None:
        t_set = 0
        for s, lineno in t_names:
            if s not in index:
                raise DiagramError(f"T references unknown node {s!r}", lineno)
            t_set |= 1 << index[s]

    partition = None
    if classes:
        for s, lineno in class_lines.items():
            if s not in index:
                raise DiagramError(f"class references unknown node {s!r}", lineno)
        default = CoxeterDiagram(tuple(names), (), t_set).phi()
        partition = tuple(classes.get(s, default[i]) for i, s in enumerate(names))

    d = CoxeterDiagram(
        tuple(names),
        tuple(sorted((k, v) for k, v in labels.items() if v != 2)),
        t_set,
        partition,
    )
    if partition is not None:
        for (i, j), m in d.labels:
            if is_odd(m) and partition[i] != partition[j]:
                path = odd_path(d, i, j)
                witness = " - ".join(d.names[k] for k in path)
                raise DiagramError(
                    f"partition not allowable: {d.names[i]} in class {partition[i]!r} and "
                    f"{d.names[j]} in class {partition[j]!r} are conjugate via odd path {witness}"
                )
    return d


def serialize(d: CoxeterDiagram) -> str:
    """Canonical DSL text; ``parse_diagram`` inverts it."""
    lines = [f"node {s}" for s in d.names]
    edges = sorted(
        tuple(sorted((d.names[i], d.names[j]))) + (m,) for (i, j), m in d.labels
    )
    lines += [f"edge {a} {b} {m}" for a, b, m in edges]
    if d.t_set is not None and d.t_set:
        lines.append("T " + " ".join(d.names_of(d.t_set)))
    if d.partition is not None:
        groups: Dict[str, List[str]] = {}
        for s, var in zip(d.names, d.partition):
            groups.setdefault(var, []).append(s)
        for var in sorted(groups):
            lines.append(f"class {var} : " + " ".join(groups[var]))
    return "\n".join(lines) + "\n"


def load_diagram(path) -> CoxeterDiagram:
    with open(path, encoding="utf-8") as fh:
        return parse_diagram(fh.read())
