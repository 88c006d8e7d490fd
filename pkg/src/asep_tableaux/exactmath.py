"""Exact rationals and sparse integer polynomials in alpha, beta, gamma, delta, q, u.

Rationals are :class:`fractions.Fraction`.  Polynomials are :class:`GfPoly`,
an immutable map from exponent vectors (six non-negative ints in the fixed
order alpha, beta, gamma, delta, q, u) to non-zero integer coefficients.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from operator import add
from typing import Iterable, Iterator, Mapping, Sequence, Union

from .errors import DomainError

NVARS = 6
VAR_NAMES = ("a", "b", "g", "d", "q", "u")
ALPHA, BETA, GAMMA, DELTA, Q, U = range(NVARS)

Monomial = tuple  # tuple[int, int, int, int, int, int]
ZERO_EXP: Monomial = (0,) * NVARS

Scalar = Union[int, Fraction]


_BITS = 16
_MASK = (1 << _BITS) - 1
_SHIFTS = tuple(_BITS * (NVARS - 1 - i) for i in range(NVARS))
_U_FIELD = _MASK << _SHIFTS[-1]


def monomial_degree(m: Monomial) -> int:
    return sum(m)


def grlex_key(m: Monomial) -> tuple:
    """Sort key for graded-lex order with alpha > beta > gamma > delta > q > u."""
    return (sum(m), m)


def _check_monomial(m) -> Monomial:
    m = tuple(m)
    if len(m) != NVARS or any((not isinstance(e, int)) or e < 0 or e > _MASK for e in m):
        raise DomainError(f"bad exponent vector {m!r}")
    return m


# Exponent vectors are packed into one int, alpha in the most significant
# field, so monomial multiplication is integer addition and, within one
# degree, integer order is lex order.  Exponents must stay below 2**16.

def _pack(m: Sequence[int]) -> int:
    k = 0
    for e in m:
        k = (k << _BITS) | e
    return k


def _unpack(k: int) -> Monomial:
    return tuple((k >> s) & _MASK for s in _SHIFTS)


def _packed_degree(k: int) -> int:
    total = 0
    while k:
        total += k & _MASK
        k >>= _BITS
    return total


class GfPoly:
    """Sparse multivariate polynomial with integer coefficients.

    Instances are immutable and hashable; no stored coefficient is zero.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, int] | Iterable[tuple[Monomial, int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[int, int] = {}
        for m, c in items:
            k = _pack(_check_monomial(m))
            if not isinstance(c, int):
                raise DomainError(f"coefficient must be an integer, got {c!r}")
            acc[k] = acc.get(k, 0) + c
        self._terms = {k: c for k, c in acc.items() if c}
        self._hash = None

    @classmethod
    def _wrap(cls, terms: dict) -> "GfPoly":
        # caller guarantees packed keys and no zero coefficients
        p = object.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def from_counts(cls, counts: Mapping[Monomial, int]) -> "GfPoly":
        """Build from an accumulator such as a Counter keyed by exponent tuples."""
        return cls._wrap({_pack(m): c for m, c in counts.items() if c})

    @classmethod
    def constant(cls, c: int) -> "GfPoly":
        return cls._wrap({0: c} if c else {})

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff: int = 1) -> "GfPoly":
        return cls._wrap({_pack(_check_monomial(exps)): coeff} if coeff else {})

    @classmethod
    def var(cls, index: int, power: int = 1) -> "GfPoly":
        e = [0] * NVARS
        e[index] = power
        return cls.monomial(e)

    # -- container protocol -------------------------------------------------

    def terms(self) -> Iterator[tuple[Monomial, int]]:
        """Terms in canonical (descending graded-lex) order."""
        keyed = sorted(((_packed_degree(k), k) for k in self._terms), reverse=True)
        for _, k in keyed:
            yield _unpack(k), self._terms[k]

    def coeff(self, m: Monomial) -> int:
        return self._terms.get(_pack(_check_monomial(m)), 0)

    def as_dict(self) -> dict[Monomial, int]:
        return {_unpack(k): c for k, c in self._terms.items()}

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = GfPoly.constant(other)
        if not isinstance(other, GfPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"GfPoly({self.to_text()!r})"

    def __str__(self) -> str:
        return self.to_text()

    # -- ring operations ----------------------------------------------------

    def __add__(self, other) -> "GfPoly":
        if isinstance(other, int):
            other = GfPoly.constant(other)
        if not isinstance(other, GfPoly):
            return NotImplemented
        if len(other._terms) > len(self._terms):
            self, other = other, self
        out = dict(self._terms)
        get = out.get
        for k, c in other._terms.items():
            s = get(k, 0) + c
            if s:
                out[k] = s
            else:
                del out[k]
        return GfPoly._wrap(out)

    __radd__ = __add__

    def __neg__(self) -> "GfPoly":
        return GfPoly._wrap({k: -c for k, c in self._terms.items()})

    def __sub__(self, other) -> "GfPoly":
        if isinstance(other, int):
            other = GfPoly.constant(other)
        if not isinstance(other, GfPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "GfPoly":
        return (-self) + other

    def __mul__(self, other) -> "GfPoly":
        if isinstance(other, int):
            if not other:
                return GfPoly()
            return GfPoly._wrap({k: c * other for k, c in self._terms.items()})
        if not isinstance(other, GfPoly):
            return NotImplemented
        if len(self._terms) < len(other._terms):
            self, other = other, self
        if len(other._terms) == 1:
            ((k2, c2),) = other._terms.items()
            if c2 == 1:
                return GfPoly._wrap({k + k2: c for k, c in self._terms.items()})
            return GfPoly._wrap({k + k2: c * c2 for k, c in self._terms.items()})
        out: dict[int, int] = {}
        get = out.get
        big = self._terms.items()
        for k2, c2 in other._terms.items():
            for k1, c1 in big:
                k = k1 + k2
                out[k] = get(k, 0) + c1 * c2
        return GfPoly._wrap({k: c for k, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "GfPoly":
        if k < 0:
            raise DomainError("negative power of a polynomial")
        result = GfPoly.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- structure ----------------------------------------------------------

    def degree(self) -> int:
        """Maximum total degree; -1 for the zero polynomial."""
        return max((_packed_degree(k) for k in self._terms), default=-1)

    def is_homogeneous(self, degree: int) -> bool:
        return all(_packed_degree(k) == degree for k in self._terms)

    def permute_vars(self, perm: Sequence[int]) -> "GfPoly":
        """Rename variable ``i`` to ``perm[i]``."""
        out: dict[int, int] = {}
        for k, c in self._terms.items():
            e = [0] * NVARS
            for i, x in enumerate(_unpack(k)):
                e[perm[i]] += x
            out[_pack(e)] = c
        return GfPoly._wrap(out)

    def swap(self, *pairs: tuple[int, int]) -> "GfPoly":
        """Exchange the variables in each pair, e.g. ``p.swap((ALPHA, DELTA))``."""
        perm = list(range(NVARS))
        for i, j in pairs:
            perm[i], perm[j] = perm[j], perm[i]
        return self.permute_vars(perm)

    def set_u1(self) -> "GfPoly":
        """Specialize u = 1 by dropping the u exponent."""
        out: dict[int, int] = {}
        for k, c in self._terms.items():
            k &= ~_U_FIELD
            out[k] = out.get(k, 0) + c
        return GfPoly._wrap({k: c for k, c in out.items() if c})

    def homogenize_u(self, degree: int) -> "GfPoly":
        """Inverse of :meth:`set_u1` for a polynomial known to be homogeneous of ``degree``."""
        out = {}
        for k, c in self._terms.items():
            if k & _U_FIELD:
                raise DomainError("polynomial already contains u")
            gap = degree - _packed_degree(k)
            if gap < 0:
                raise DomainError(f"term of degree {_packed_degree(k)} exceeds {degree}")
            out[k + gap] = c
        return GfPoly._wrap(out)

    def eval(self, point: Sequence[Scalar]) -> Fraction:
        return poly_eval(self, point)

    # -- serialization ------------------------------------------------------

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        return " + ".join(_term_text(m, c) for m, c in self.terms())

    @classmethod
    def from_text(cls, text: str) -> "GfPoly":
        text = text.strip()
        if text == "0":
            return cls()
        acc: dict[int, int] = {}
        for raw in text.split(" + "):
            m, c = _parse_term(raw.strip())
            k = _pack(m)
            acc[k] = acc.get(k, 0) + c
        return cls._wrap({k: c for k, c in acc.items() if c})

    def to_json(self) -> list[dict]:
        return [{"exp": list(m), "coeff": str(c)} for m, c in self.terms()]

    @classmethod
    def from_json(cls, data) -> "GfPoly":
        if isinstance(data, str):
            data = json.loads(data)
        return cls((tuple(t["exp"]), int(t["coeff"])) for t in data)


def _term_text(m: Monomial, c: int) -> str:
    factors = []
    for name, e in zip(VAR_NAMES, m):
        if e == 1:
            factors.append(name)
        elif e > 1:
            factors.append(f"{name}^{e}")
    if not factors:
        return str(c)
    body = " ".join(factors)
    if c == 1:
        return body
    if c == -1:
        return "-" + body
    return f"{c}*{body}"


_FACTOR_RE = re.compile(r"^([abgdqu])(?:\^(\d+))?$")


def _parse_term(raw: str) -> tuple[Monomial, int]:
    if not raw:
        raise DomainError("empty term")
    coeff = 1
    body = raw
    if "*" in raw:
        head, body = raw.split("*", 1)
        coeff = int(head)
    elif re.fullmatch(r"-?\d+", raw):
        return ZERO_EXP, int(raw)
    elif raw.startswith("-"):
        coeff, body = -1, raw[1:]
    e = [0] * NVARS
    for tok in body.split():
        mt = _FACTOR_RE.match(tok)
        if not mt:
            raise DomainError(f"cannot parse factor {tok!r} in {raw!r}")
        e[VAR_NAMES.index(mt.group(1))] += int(mt.group(2) or 1)
    return tuple(e), coeff


def sum_of_products(pairs: Iterable[tuple[GfPoly, GfPoly]]) -> GfPoly:
    """Sum of ``x * y`` over the pairs, accumulated in a single term map."""
    out: dict[int, int] = {}
    get = out.get
    for x, y in pairs:
        xt, yt = x._terms, y._terms
        if len(xt) < len(yt):
            xt, yt = yt, xt
        big = xt.items()
        for k2, c2 in yt.items():
            for k1, c1 in big:
                k = k1 + k2
                out[k] = get(k, 0) + c1 * c2
    return GfPoly._wrap({k: c for k, c in out.items() if c})


# -- module-level operations ------------------------------------------------

def poly_add(p: GfPoly, q: GfPoly) -> GfPoly:
    return p + q


def poly_mul(p: GfPoly, q: GfPoly) -> GfPoly:
    return p * q


def poly_eval(p: GfPoly, point: Sequence[Scalar]) -> Fraction:
    """Substitute six exact values for (alpha, beta, gamma, delta, q, u)."""
    if len(point) != NVARS:
        raise DomainError(f"expected {NVARS} values, got {len(point)}")
    if not p._terms:
        return Fraction(0)
    vals = [Fraction(v) for v in point]
    # integer arithmetic over the common denominator prod_i den_i^maxexp_i
    exps = [_unpack(k) for k in p._terms]
    top = [max(e[i] for e in exps) for i in range(NVARS)]
    nums = [v.numerator for v in vals]
    dens = [v.denominator for v in vals]
    num_pw = [[1] * (t + 1) for t in top]
    den_pw = [[1] * (t + 1) for t in top]
    for i in range(NVARS):
        for e in range(1, top[i] + 1):
            num_pw[i][e] = num_pw[i][e - 1] * nums[i]
            den_pw[i][e] = den_pw[i][e - 1] * dens[i]
    total = 0
    for m, c in zip(exps, p._terms.values()):
        t = c
        for i in range(NVARS):
            e = m[i]
            t *= num_pw[i][e] * den_pw[i][top[i] - e]
        total += t
    common = 1
    for i in range(NVARS):
        common *= den_pw[i][top[i]]
    return Fraction(total, common)


# -- variables and handy constants ------------------------------------------

a = GfPoly.var(ALPHA)
b = GfPoly.var(BETA)
g = GfPoly.var(GAMMA)
d = GfPoly.var(DELTA)
q = GfPoly.var(Q)
u = GfPoly.var(U)
ONE = GfPoly.constant(1)
ZERO = GfPoly()


# -- rationals --------------------------------------------------------------

def parse_rational(text: str) -> Fraction:
    """Parse ``p/q`` or an integer; decimals and floats are rejected."""
    s = str(text).strip()
    if not re.fullmatch(r"[+-]?\d+(/\d+)?", s):
        raise DomainError(f"not an exact rational: {text!r}")
    try:
        return Fraction(s)
    except ZeroDivisionError:
        raise DomainError(f"zero denominator in {text!r}") from None


def format_rational(x: Fraction | int) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
