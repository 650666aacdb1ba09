"""Exact multivariate polynomials and rational functions over the rationals.

A ``MultiPoly`` stores its terms in a dict keyed by packed exponent vectors:
the exponent of the i-th variable lives in bits ``[32*i, 32*i+32)``, so a
monomial product is a single integer addition.  Coefficients are ``int`` or
``Fraction`` (integral fractions are stored as ``int``).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

SHIFT = 32
EXP_MASK = (1 << SHIFT) - 1
MAX_EXP = EXP_MASK

Number = Union[int, Fraction]


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _unpack(key: int, n: int) -> Tuple[int, ...]:
    return tuple((key >> (SHIFT * i)) & EXP_MASK for i in range(n))


def _pack(exps: Sequence[int]) -> int:
    key = 0
    for i, e in enumerate(exps):
        if e < 0:
            raise ValueError("negative exponent")
        if e > MAX_EXP:
            raise OverflowError("exponent exceeds 32 bits")
        key |= e << (SHIFT * i)
    return key


def _degs(terms: Mapping[int, Number], n: int) -> List[int]:
    degs = [0] * n
    for k in terms:
        for i in range(n):
            e = (k >> (SHIFT * i)) & EXP_MASK
            if e > degs[i]:
                degs[i] = e
    return degs


def _parse_coeff(text: str) -> Number:
    return _norm(Fraction(text))


def _format_coeff(c: Number) -> str:
    return str(c)


class MultiPoly:
    """Immutable sparse polynomial in named variables."""

    __slots__ = ("vars", "terms", "_degs")

    def __init__(self, vars: Sequence[str] = (), terms: Optional[Mapping[int, Number]] = None):
        self.vars = tuple(vars)
        self.terms = {k: _norm(c) for k, c in (terms or {}).items() if c != 0}
        self._degs = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def const(cls, c: Number) -> "MultiPoly":
        return cls((), {0: c})

    @classmethod
    def var(cls, name: str, power: int = 1) -> "MultiPoly":
        return cls((name,), {_pack((power,)): 1})

    @classmethod
    def from_exponents(cls, vars: Sequence[str], terms: Mapping[Tuple[int, ...], Number]) -> "MultiPoly":
        out: Dict[int, Number] = {}
        for e, c in terms.items():
            k = _pack(e)
            out[k] = out.get(k, 0) + c
        return cls(vars, out)

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[Number], var: str) -> "MultiPoly":
        """Univariate polynomial from coefficients of degrees 0, 1, 2, ..."""
        return cls((var,), {_pack((i,)): c for i, c in enumerate(coeffs) if c != 0})

    @classmethod
    def coerce(cls, x) -> "MultiPoly":
        if isinstance(x, MultiPoly):
            return x
        if isinstance(x, (int, Fraction)):
            return cls.const(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to MultiPoly")

    # -- basic queries -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def items(self):
        """(exponent tuple, coefficient) pairs."""
        n = len(self.vars)
        for k, c in self.terms.items():
            yield _unpack(k, n), c

    def degrees(self) -> Tuple[int, ...]:
        if self._degs is None:
            self._degs = tuple(_degs(self.terms, len(self.vars)))
        return self._degs

    def degree(self, var: Optional[str] = None) -> int:
        """Degree in ``var``, or total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        if var is None:
            n = len(self.vars)
            return max(sum(_unpack(k, n)) for k in self.terms)
        if var not in self.vars:
            return 0
        return self.degrees()[self.vars.index(var)]

    def used_vars(self) -> Tuple[str, ...]:
        degs = self.degrees()
        return tuple(v for v, d in zip(self.vars, degs) if d > 0)

    def constant_term(self) -> Number:
        return self.terms.get(0, 0)

    def is_constant(self) -> bool:
        return all(k == 0 for k in self.terms)

    def coefficients(self, var: Optional[str] = None) -> List[Number]:
        """Coefficient list (degree 0 upward) of a univariate polynomial."""
        used = self.used_vars()
        if var is None:
            if len(used) > 1:
                raise ValueError(f"polynomial is not univariate: {used}")
            var = used[0] if used else (self.vars[0] if self.vars else "x")
        elif any(v != var for v in used):
            raise ValueError(f"polynomial involves variables other than {var!r}")
        if not self.terms:
            return []
        pos = self.vars.index(var) if var in self.vars else None
        out = [0] * (self.degree(var) + 1)
        for k, c in self.terms.items():
            e = 0 if pos is None else (k >> (SHIFT * pos)) & EXP_MASK
            out[e] = c
        return out

    # -- canonical form ----------------------------------------------------

    def canonical(self):
        n = len(self.vars)
        out = []
        for k, c in self.terms.items():
            exps = _unpack(k, n)
            mono = tuple(sorted((v, e) for v, e in zip(self.vars, exps) if e))
            out.append((mono, c))
        out.sort()
        return tuple(out)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.const(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        if self.vars == other.vars:
            return self.terms == other.terms
        return self.canonical() == other.canonical()

    def __hash__(self):
        return hash(self.canonical())

    # -- variable alignment ------------------------------------------------

    def with_vars(self, vars: Sequence[str]) -> "MultiPoly":
        """Re-express over ``vars`` (a superset of the variables actually used)."""
        vars = tuple(vars)
        if vars == self.vars:
            return self
        n = len(self.vars)
        degs = self.degrees()
        pos = []
        for v, dg in zip(self.vars, degs):
            if v in vars:
                pos.append(vars.index(v))
            elif dg:
                raise ValueError(f"variable {v!r} is used but missing from {vars}")
            else:
                pos.append(None)
        if all(p == i for i, p in enumerate(pos)):
            out = MultiPoly(vars)
            out.terms = dict(self.terms)
            return out
        terms = {}
        for k, c in self.terms.items():
            newk = 0
            for i in range(n):
                e = (k >> (SHIFT * i)) & EXP_MASK
                if e:
                    newk |= e << (SHIFT * pos[i])
            terms[newk] = c
        out = MultiPoly(vars)
        out.terms = terms
        return out

    def _aligned(self, other: "MultiPoly"):
        if self.vars == other.vars:
            return self.vars, self.terms, other.terms
        if not other.vars or not other.used_vars():
            return self.vars, self.terms, other.with_vars(self.vars).terms
        if not self.vars or not self.used_vars():
            return other.vars, self.with_vars(other.vars).terms, other.terms
        vars = self.vars + tuple(v for v in other.vars if v not in self.vars)
        return vars, self.with_vars(vars).terms, other.with_vars(vars).terms

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        try:
            other = MultiPoly.coerce(other)
        except TypeError:
            return NotImplemented
        vars, a, b = self._aligned(other)
        out = dict(a)
        for k, c in b.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return MultiPoly(vars, out)

    __radd__ = __add__

    def __neg__(self):
        out = MultiPoly(self.vars)
        out.terms = {k: -c for k, c in self.terms.items()}
        return out

    def __sub__(self, other):
        try:
            other = MultiPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return MultiPoly.coerce(other) - self

    def scale(self, c: Number) -> "MultiPoly":
        if c == 0:
            return MultiPoly(self.vars)
        out = MultiPoly(self.vars)
        out.terms = {k: _norm(v * c) for k, v in self.terms.items()}
        return out

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        vars, a, b = self._aligned(other)
        if not a or not b:
            return MultiPoly(vars)
        if len(a) < len(b):
            a, b = b, a
        if any(x + y > MAX_EXP for x, y in zip(_degs(a, len(vars)), _degs(b, len(vars)))):
            raise OverflowError("exponent exceeds 32 bits")
        out: Dict[int, Number] = {}
        get = out.get
        for kb, cb in b.items():
            for ka, ca in a.items():
                k = ka + kb
                out[k] = get(k, 0) + ca * cb
        return MultiPoly(vars, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = MultiPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self.scale(Fraction(1) / other)
        return NotImplemented

    # -- substitution ------------------------------------------------------

    def subs(self, var: str, value: Number) -> "MultiPoly":
        """Substitute a number for ``var``; the variable is dropped."""
        if var not in self.vars:
            return self
        pos = self.vars.index(var)
        newvars = self.vars[:pos] + self.vars[pos + 1:]
        out: Dict[int, Number] = {}
        low = (1 << (SHIFT * pos)) - 1
        powers: Dict[int, Number] = {}
        for k, c in self.terms.items():
            e = (k >> (SHIFT * pos)) & EXP_MASK
            rest = (k & low) | ((k >> (SHIFT * (pos + 1))) << (SHIFT * pos))
            if e not in powers:
                powers[e] = Fraction(value) ** e if isinstance(value, Fraction) else value ** e
            out[rest] = out.get(rest, 0) + c * powers[e]
        return MultiPoly(newvars, out)

    def __call__(self, **values) -> "MultiPoly":
        p = self
        for v, x in values.items():
            p = p.subs(v, x)
        return p

    def evaluate(self, values: Mapping[str, Number]) -> Number:
        p = self
        for v, x in values.items():
            p = p.subs(v, x)
        if p.used_vars():
            raise ValueError(f"unassigned variables {p.used_vars()}")
        return p.constant_term()

    def split(self, var: str) -> Dict[int, "MultiPoly"]:
        """Group terms by the exponent of ``var``: {e: coefficient polynomial}."""
        if var not in self.vars:
            return {0: self} if self.terms else {}
        pos = self.vars.index(var)
        groups: Dict[int, Dict[int, Number]] = {}
        clear = ~(EXP_MASK << (SHIFT * pos))
        for k, c in self.terms.items():
            e = (k >> (SHIFT * pos)) & EXP_MASK
            groups.setdefault(e, {})[k & clear] = c
        return {e: MultiPoly(self.vars, t) for e, t in groups.items()}

    def compose(self, var: str, value: "MultiPoly") -> "MultiPoly":
        """Substitute a polynomial for ``var``."""
        value = MultiPoly.coerce(value)
        groups = self.split(var)
        if not groups:
            return MultiPoly()
        result = MultiPoly()
        for e in range(max(groups), -1, -1):
            result = result * value
            if e in groups:
                result = result + groups[e]
        return result

    def reversed(self, var: str, degree: Optional[int] = None) -> "MultiPoly":
        """``var**degree * p(1/var)``; ``degree`` defaults to the degree in ``var``."""
        if var not in self.vars:
            if degree:
                return self * MultiPoly.var(var, degree)
            return self
        pos = self.vars.index(var)
        dg = self.degree(var) if degree is None else degree
        out = {}
        for k, c in self.terms.items():
            e = (k >> (SHIFT * pos)) & EXP_MASK
            if e > dg:
                raise ValueError("degree too small for reversal")
            out[k + ((dg - e - e) << (SHIFT * pos))] = c
        return MultiPoly(self.vars, out)

    def rename(self, mapping: Mapping[str, str]) -> "MultiPoly":
        """Rename variables; names mapped together are merged."""
        newnames = [mapping.get(v, v) for v in self.vars]
        target = tuple(dict.fromkeys(newnames))
        if len(target) == len(newnames):
            out = MultiPoly(target)
            out.terms = dict(self.terms)
            return out
        pos = [target.index(v) for v in newnames]
        out: Dict[int, Number] = {}
        n = len(self.vars)
        for k, c in self.terms.items():
            exps = [0] * len(target)
            for i, e in enumerate(_unpack(k, n)):
                exps[pos[i]] += e
            nk = _pack(exps)
            out[nk] = out.get(nk, 0) + c
        return MultiPoly(target, {k: c for k, c in out.items() if c != 0})

    def divide_linear(self, var: str, value: Number) -> "MultiPoly":
        """Exact quotient by ``(var - value)``; raises if the remainder is nonzero."""
        if not self.terms:
            return MultiPoly(self.vars)
        if var not in self.vars:
            raise ArithmeticError(f"not divisible by ({var} - {value})")
        pos = self.vars.index(var)
        clear = ~(EXP_MASK << (SHIFT * pos))
        buckets: Dict[int, Dict[int, Number]] = {}
        for k, c in self.terms.items():
            e = (k >> (SHIFT * pos)) & EXP_MASK
            buckets.setdefault(k & clear, {})[e] = c
        terms: Dict[int, Number] = {}
        for rest, coeffs in buckets.items():
            top = max(coeffs)
            carry = 0
            # synthetic division from the top degree down
            for e in range(top, 0, -1):
                carry = coeffs.get(e, 0) + carry * value
                if carry:
                    terms[rest | ((e - 1) << (SHIFT * pos))] = carry
            remainder = coeffs.get(0, 0) + carry * value
            if remainder != 0:
                raise ArithmeticError(f"not divisible by ({var} - {value})")
        return MultiPoly(self.vars, terms)

    # -- content -----------------------------------------------------------

    def denominator_lcm(self) -> int:
        out = 1
        for c in self.terms.values():
            if isinstance(c, Fraction):
                out = out * c.denominator // gcd(out, c.denominator)
        return out

    def integer_content(self) -> int:
        g = 0
        for c in self.terms.values():
            g = gcd(g, int(c))
            if g == 1:
                break
        return g

    def leading_key(self) -> int:
        return max(self.terms)

    def leading_coefficient(self) -> Number:
        return self.terms[max(self.terms)] if self.terms else 0

    def min_exponents(self) -> Tuple[int, ...]:
        n = len(self.vars)
        if not self.terms:
            return (0,) * n
        mins = [MAX_EXP] * n
        for k in self.terms:
            for i in range(n):
                e = (k >> (SHIFT * i)) & EXP_MASK
                if e < mins[i]:
                    mins[i] = e
        return tuple(mins)

    def shift_down(self, exps: Sequence[int]) -> "MultiPoly":
        """Divide by the monomial with exponents ``exps``."""
        k0 = _pack(exps)
        return MultiPoly(self.vars, {k - k0: c for k, c in self.terms.items()})

    # -- (de)serialization -------------------------------------------------

    def to_json(self) -> dict:
        vars = self.used_vars()
        p = self.with_vars(vars)
        rows = sorted(p.items())
        return {"vars": list(vars), "terms": [{"e": list(e), "c": _format_coeff(c)} for e, c in rows]}

    @classmethod
    def from_json(cls, obj: Mapping) -> "MultiPoly":
        vars = tuple(obj["vars"])
        return cls.from_exponents(vars, {tuple(t["e"]): _parse_coeff(t["c"]) for t in obj["terms"]})

    def __repr__(self):
        return f"MultiPoly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        vars = self.used_vars()
        p = self.with_vars(vars)
        rows = sorted(p.items(), key=lambda ec: (sum(ec[0]), ec[0]))
        parts = []
        for exps, c in rows:
            mono = "*".join(v if e == 1 else f"{v}^{e}" for v, e in zip(vars, exps) if e)
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text


def var(name: str) -> MultiPoly:
    return MultiPoly.var(name)


def product(polys: Iterable[MultiPoly]) -> MultiPoly:
    out = MultiPoly.const(1)
    for p in polys:
        out = out * p
    return out


# -- univariate helpers on coefficient lists (degree 0 first) ------------------


def utrim(a: List[Number]) -> List[Number]:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def uderiv(a: Sequence[Number]) -> List[Number]:
    return [i * a[i] for i in range(1, len(a))]


def ueval(a: Sequence[Number], x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def uprimitive(a: Sequence[Number]) -> List[int]:
    """Integer primitive part with positive leading coefficient."""
    a = utrim(a)
    if not a:
        return []
    den = 1
    for c in a:
        if isinstance(c, Fraction):
            den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in a]
    g = 0
    for c in ints:
        g = gcd(g, c)
    if ints[-1] < 0:
        g = -g
    return [c // g for c in ints]


def udivmod(a: Sequence[Number], b: Sequence[Number]):
    a = utrim(a)
    b = utrim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return [], a
    q = [0] * (len(a) - len(b) + 1)
    r = list(a)
    lead = b[-1]
    for i in range(len(a) - len(b), -1, -1):
        c = r[i + len(b) - 1]
        if c == 0:
            continue
        c = _norm(Fraction(c) / lead) if not (isinstance(c, int) and isinstance(lead, int) and c % lead == 0) else c // lead
        q[i] = c
        for j, bj in enumerate(b):
            r[i + j] = _norm(r[i + j] - c * bj)
    return utrim(q), utrim(r)


def uprem(a: List[int], b: List[int]) -> List[int]:
    """Pseudo-remainder of integer polynomials."""
    r = list(a)
    lb = b[-1]
    db = len(b) - 1
    while len(r) - 1 >= db and r:
        lr = r[-1]
        shift = len(r) - 1 - db
        r = [c * lb for c in r]
        for j, bj in enumerate(b):
            r[shift + j] -= lr * bj
        r = utrim(r)
    return r


def ugcd(a: Sequence[Number], b: Sequence[Number]) -> List[int]:
    """Primitive integer gcd (positive leading coefficient) via primitive PRS."""
    a = uprimitive(a)
    b = uprimitive(b)
    if not a:
        return b
    if not b:
        return a
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = uprem(a, b)
        a, b = b, uprimitive(r)
    return a


def uexact_div(a: Sequence[Number], b: Sequence[Number]) -> List[Number]:
    q, r = udivmod(a, b)
    if r:
        raise ArithmeticError("inexact polynomial division")
    return q


# -- rational functions --------------------------------------------------------


class RationalFn:
    """Quotient of two MultiPolys.

    Univariate values are kept fully reduced with integer, content-free
    coefficients and a positive denominator leading coefficient.  Multivariate
    values are only content- and monomial-normalized.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=1, normalize: bool = True):
        num = MultiPoly.coerce(num)
        den = MultiPoly.coerce(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        self.num = num
        self.den = den
        if normalize:
            self._normalize()

    @classmethod
    def coerce(cls, x) -> "RationalFn":
        if isinstance(x, RationalFn):
            return x
        return cls(x)

    def _normalize(self):
        num, den = self.num, self.den
        if num.is_zero():
            self.num, self.den = MultiPoly(), MultiPoly.const(1)
            return
        vars = tuple(dict.fromkeys(num.used_vars() + den.used_vars()))
        num = num.with_vars(vars)
        den = den.with_vars(vars)
        if len(vars) <= 1:
            v = vars[0] if vars else "x"
            a = num.coefficients(v) if vars else [num.constant_term()]
            b = den.coefficients(v) if vars else [den.constant_term()]
            g = ugcd(a, b)
            if len(g) > 1:
                a = uexact_div(a, g)
                b = uexact_div(b, g)
            # clear denominators and common integer content
            pa, pb = uprimitive(a), uprimitive(b)
            ca = Fraction(a[-1]) / pa[-1]
            cb = Fraction(b[-1]) / pb[-1]
            ratio = ca / cb
            a = [c * ratio.numerator for c in pa]
            b = [c * ratio.denominator for c in pb]
            if vars:
                self.num = MultiPoly.from_coeffs(a, v).with_vars(vars)
                self.den = MultiPoly.from_coeffs(b, v).with_vars(vars)
            else:
                self.num = MultiPoly.const(a[0])
                self.den = MultiPoly.const(b[0])
            return
        # multivariate: drop common monomial factor, then integer content
        mn = num.min_exponents()
        md = den.min_exponents()
        common = tuple(min(x, y) for x, y in zip(mn, md))
        if any(common):
            num = num.shift_down(common)
            den = den.shift_down(common)
        lcm = 1
        for p in (num, den):
            dl = p.denominator_lcm()
            lcm = lcm * dl // gcd(lcm, dl)
        if lcm != 1:
            num, den = num.scale(lcm), den.scale(lcm)
        g = gcd(num.integer_content(), den.integer_content())
        if den.leading_coefficient() < 0:
            g = -g
        if g != 1:
            num = num.scale(Fraction(1, g))
            den = den.scale(Fraction(1, g))
        self.num, self.den = num, den

    # -- queries -----------------------------------------------------------

    @property
    def vars(self) -> Tuple[str, ...]:
        return tuple(dict.fromkeys(self.num.used_vars() + self.den.used_vars()))

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def as_polynomial(self) -> MultiPoly:
        if not self.den.is_constant():
            raise ValueError("not a polynomial")
        return self.num.scale(Fraction(1) / Fraction(self.den.constant_term()))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, MultiPoly)):
            other = RationalFn(other)
        if not isinstance(other, RationalFn):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        raise TypeError("RationalFn is unhashable")

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        other = RationalFn.coerce(other)
        if self.den == other.den:
            return RationalFn(self.num + other.num, self.den)
        return RationalFn(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFn(-self.num, self.den, normalize=False)

    def __sub__(self, other):
        return self + (-RationalFn.coerce(other))

    def __rsub__(self, other):
        return RationalFn.coerce(other) - self

    def __mul__(self, other):
        other = RationalFn.coerce(other)
        return RationalFn(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFn":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RationalFn(self.den, self.num)

    def __truediv__(self, other):
        return self * RationalFn.coerce(other).inverse()

    def __rtruediv__(self, other):
        return RationalFn.coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return RationalFn(self.num ** n, self.den ** n)

    # -- substitution ------------------------------------------------------

    def substitute(self, var: str, value) -> "RationalFn":
        """Exact composition ``self(var := value)`` with ``value`` a RationalFn."""
        value = RationalFn.coerce(value)
        a, b = value.num, value.den
        dn = self.num.degree(var) if var in self.num.used_vars() else 0
        dd = self.den.degree(var) if var in self.den.used_vars() else 0

        def homogenize(p: MultiPoly, deg: int) -> MultiPoly:
            # b**deg * p(a/b)
            groups = p.split(var)
            out = MultiPoly()
            apow = MultiPoly.const(1)
            bpows = [MultiPoly.const(1)]
            for _ in range(deg):
                bpows.append(bpows[-1] * b)
            for e in range(deg + 1):
                if e in groups:
                    out = out + groups[e] * apow * bpows[deg - e]
                apow = apow * a
            return out

        n = homogenize(self.num, dn)
        d = homogenize(self.den, dd)
        if dd >= dn:
            n = n * (b ** (dd - dn))
        else:
            d = d * (b ** (dn - dd))
        if d.is_zero():
            raise ZeroDivisionError("substitution makes the denominator vanish")
        return RationalFn(n, d)

    def rename(self, mapping: Mapping[str, str]) -> "RationalFn":
        return RationalFn(self.num.rename(mapping), self.den.rename(mapping))

    def invert_variable(self, var: str) -> "RationalFn":
        """``self(var := 1/var)``, clearing denominators with powers of ``var``."""
        dn = self.num.degree(var) if var in self.num.used_vars() else 0
        dd = self.den.degree(var) if var in self.den.used_vars() else 0
        top = max(dn, dd)
        return RationalFn(self.num.reversed(var, top), self.den.reversed(var, top))

    def specialize_limit(self, var: str, value: Number) -> "RationalFn":
        """Set ``var := value``, cancelling common factors ``(var - value)`` first."""
        num, den = self.num, self.den
        while True:
            n0 = num.subs(var, value)
            d0 = den.subs(var, value)
            if not d0.is_zero():
                return RationalFn(n0, d0)
            if not n0.is_zero():
                raise ZeroDivisionError(f"pole at {var} = {value}")
            num = num.divide_linear(var, value)
            den = den.divide_linear(var, value)

    def evaluate(self, values: Mapping[str, Number]) -> Number:
        n = self.num.evaluate(values)
        d = self.den.evaluate(values)
        if d == 0:
            raise ZeroDivisionError("pole")
        return _norm(Fraction(n) / Fraction(d))

    def taylor(self, var: str, n: int) -> List[Number]:
        """Coefficients of degrees 0..n of the expansion at ``var = 0``."""
        num = self.num.coefficients(var)
        den = self.den.coefficients(var)
        if not den or den[0] == 0:
            raise ZeroDivisionError("denominator has zero constant term")
        out: List[Number] = []
        d0 = Fraction(den[0])
        for k in range(n + 1):
            acc = Fraction(num[k]) if k < len(num) else Fraction(0)
            for j in range(1, min(k, len(den) - 1) + 1):
                acc -= den[j] * out[k - j]
            out.append(_norm(acc / d0))
        return out

    # -- output ------------------------------------------------------------

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, obj: Mapping) -> "RationalFn":
        return cls(MultiPoly.from_json(obj["num"]), MultiPoly.from_json(obj["den"]))

    def __repr__(self):
        return f"RationalFn({self})"

    def __str__(self):
        if self.den == 1:
            return str(self.num)
        return f"({self.num}) / ({self.den})"


def as_rational(x) -> RationalFn:
    return RationalFn.coerce(x)
