"""Exact real-root counting and floating root approximation.

Real counts come from Sturm chains over exact rationals and never from the
floating roots; the floating roots are checked against them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from .series import MultiPoly, RationalFn, uderiv, udivmod, ugcd, uexact_div, utrim

Coeffs = Sequence[Union[int, Fraction]]

REAL_TOL = 1e-6
RESIDUAL_TOL = 1e-8
MAX_ITER = 500


class RootError(ValueError):
    pass


def _coeffs(p) -> List[Fraction]:
    if isinstance(p, MultiPoly):
        p = p.coefficients()
    out = utrim([Fraction(c) for c in p])
    if not out:
        raise RootError("zero polynomial")
    return out


def _content_positive(a: List[Fraction]) -> List[Fraction]:
    """Divide by a positive rational content; signs are preserved."""
    den = 1
    for c in a:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in a]
    g = 0
    for c in ints:
        g = gcd(g, c)
    return [Fraction(c, g) for c in ints]


def squarefree(p) -> List[Fraction]:
    a = _coeffs(p)
    if len(a) <= 2:
        return a
    g = ugcd(a, uderiv(a))
    return [Fraction(c) for c in uexact_div(a, g)] if len(g) > 1 else a


def sturm_chain(p) -> List[List[Fraction]]:
    """Sturm sequence of the square-free part of ``p``."""
    chain = [_content_positive(squarefree(p))]
    if len(chain[0]) == 1:
        return chain
    chain.append(_content_positive([Fraction(c) for c in uderiv(chain[0])]))
    while len(chain[-1]) > 1:
        _, r = udivmod(chain[-2], chain[-1])
        r = utrim([-Fraction(c) for c in r])
        if not r:
            break
        chain.append(_content_positive(r))
    return chain


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _variations(signs: Sequence[int]) -> int:
    signs = [s for s in signs if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _signs_at(chain, x) -> List[int]:
    if x == math.inf:
        return [_sign(q[-1]) for q in chain]
    if x == -math.inf:
        return [_sign(q[-1]) * (-1) ** (len(q) - 1) for q in chain]
    x = Fraction(x)
    out = []
    for q in chain:
        acc = Fraction(0)
        for c in reversed(q):
            acc = acc * x + c
        out.append(_sign(acc))
    return out


def sturm_real_count(p, interval: Optional[Tuple] = None) -> int:
    """Number of distinct real roots of ``p`` in ``(lo, hi]`` (default: all of R)."""
    chain = sturm_chain(p)
    lo, hi = interval if interval is not None else (-math.inf, math.inf)
    return _variations(_signs_at(chain, lo)) - _variations(_signs_at(chain, hi))


def squarefree_factors(p) -> List[Tuple[int, List[Fraction]]]:
    """Yun's decomposition: [(i, a_i)] with p = c * prod a_i^i, a_i square-free and coprime."""
    a = _coeffs(p)

    def fr(x):
        return [Fraction(c) for c in x]

    def div(x, y):
        return fr(uexact_div(x, y)) if len(y) > 1 else x

    b = fr(ugcd(a, uderiv(a))) if len(a) > 1 else [Fraction(1)]
    c = div(a, b)
    out = []
    i = 1
    while len(c) > 1:
        y = fr(ugcd(b, c)) if len(b) > 1 else [Fraction(1)]
        z = div(c, y)
        if len(z) > 1:
            out.append((i, z))
        b = div(b, y)
        c = y
        i += 1
    return out


def real_root_multiplicities(p) -> dict:
    """{multiplicity: number of distinct real roots with it}."""
    out = {}
    for i, z in squarefree_factors(p):
        n = sturm_real_count(z)
        if n:
            out[i] = n
    return out


@dataclass
class RootReport:
    real_count: int
    roots: List[complex] = field(default_factory=list)
    residual: float = 0.0
    precision: int = 2
    converged: bool = True
    multiplicities: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "real_count": self.real_count,
            "roots": [{"re": r.real, "im": r.imag} for r in self.roots],
            "residual": self.residual,
        }

    def rounded(self) -> List[str]:
        return [format_root(r, self.precision) for r in self.roots]


def round_sig(x: float, digits: int) -> float:
    if x == 0 or not math.isfinite(x):
        return x
    return round(x, digits - 1 - math.floor(math.log10(abs(x))))


def format_root(z: complex, digits: int = 2) -> str:
    re = f"{round_sig(z.real, digits):.{digits}g}"
    if z.imag == 0:
        return re
    im = f"{round_sig(abs(z.imag), digits):.{digits}g}"
    return f"{re}{'+' if z.imag > 0 else '-'}{im}i"


def _horner(a: Sequence[complex], z: complex) -> Tuple[complex, complex]:
    p = 0j
    dp = 0j
    for c in reversed(a):
        dp = dp * z + p
        p = p * z + c
    return p, dp


def _aberth(a: Sequence[float], start: Sequence[complex]) -> Tuple[List[complex], bool]:
    z = list(start)
    n = len(z)
    for _ in range(MAX_ITER):
        moved = 0.0
        for i in range(n):
            p, dp = _horner(a, z[i])
            if p == 0:
                continue
            ratio = p / dp if dp != 0 else complex(1e-12, 1e-12)
            s = sum(1 / (z[i] - z[j]) for j in range(n) if j != i and z[i] != z[j])
            step = ratio / (1 - ratio * s)
            z[i] -= step
            moved = max(moved, abs(step) / (1 + abs(z[i])))
        if moved < 1e-15:
            return z, True
    return z, False


def _exact_residual(a: Sequence[Fraction], z: complex) -> float:
    """|p(z)| / sum |c_i| |z|^i with z taken as exact rationals."""
    re, im = Fraction(z.real), Fraction(z.imag)
    pr, pi = Fraction(0), Fraction(0)
    for c in reversed(a):
        pr, pi = pr * re - pi * im + c, pr * im + pi * re
    scale = sum(abs(float(c)) * abs(z) ** k for k, c in enumerate(a))
    return math.hypot(float(pr), float(pi)) / scale if scale else 0.0


def _pair_conjugates(roots: List[complex]) -> List[complex]:
    real = []
    upper = []
    lower = []
    for r in roots:
        if abs(r.imag) < REAL_TOL * (1 + abs(r)):
            real.append(complex(r.real, 0.0))
        elif r.imag > 0:
            upper.append(r)
        else:
            lower.append(r)
    if len(upper) != len(lower):
        raise RootError("non-real roots do not pair into conjugates")
    paired = []
    for u in upper:
        best = min(lower, key=lambda w: abs(w - u.conjugate()))
        lower.remove(best)
        re = (u.real + best.real) / 2
        im = (u.imag - best.imag) / 2
        paired += [complex(re, im), complex(re, -im)]
    return sorted(real + paired, key=lambda r: (abs(r), r.real, r.imag))


def _simple_roots(a: List[Fraction]) -> Tuple[List[complex], bool]:
    zeros = 0
    while a[0] == 0:
        a = a[1:]
        zeros += 1
    roots = [0j] * zeros
    if len(a) == 1:
        return roots, True
    monic = [float(c / a[-1]) for c in a]
    start = np.roots(monic[::-1])
    found, ok = _aberth(monic, [complex(z) for z in start])
    return _pair_conjugates(roots + found), ok


def approx_roots(p, precision: int = 2) -> RootReport:
    """All complex roots with multiplicity; real count from the exact Sturm chain."""
    a = _coeffs(p)
    if len(a) < 2:
        raise RootError("polynomial has degree 0")
    roots: List[complex] = []
    distinct_real = 0
    converged = True
    for mult, z in squarefree_factors(a):
        found, ok = _simple_roots(z)
        converged &= ok
        distinct_real += sum(1 for r in found if r.imag == 0)
        roots += found * mult
    roots = _pair_conjugates(roots)
    full = _coeffs(p)
    residual = max((_exact_residual(full, r) for r in roots), default=0.0)
    report = RootReport(
        real_count=sturm_real_count(full),
        roots=roots,
        residual=residual,
        precision=precision,
        converged=converged and residual <= RESIDUAL_TOL,
        multiplicities=real_root_multiplicities(full),
    )
    if distinct_real != report.real_count:
        raise RootError(f"floating roots show {distinct_real} real values, exact count is {report.real_count}")
    return report


def poles_of_growth(r: RationalFn, precision: int = 2) -> RootReport:
    """Roots of the reduced denominator of a single-variable rational function."""
    if len(r.vars) > 1:
        raise RootError(f"expected one variable, got {r.vars}")
    den = r.den.coefficients()
    if len(utrim(den)) < 2:
        return RootReport(real_count=0, precision=precision)
    return approx_roots(den, precision)
