"""Exact integer polynomials, Sturm sequences and integer-root extraction.

Scalars are :class:`fractions.Fraction`; polynomials keep integer
coefficients in degree-ascending order.  Every routine here is exact, so
root counts on open intervals are trustworthy even when a root sits
exactly on an interval endpoint.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

Number = Union[int, Fraction]


def as_rational(value: Number | str) -> Fraction:
    """Parse ``"p/q"``, an integer literal, or pass a number through.

    Decimal strings like ``"0.1"`` are rejected so floats never sneak in.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if "." in text or "e" in text.lower():
            raise ValueError(f"not an exact rational: {value!r}")
        return Fraction(text)
    raise TypeError(f"cannot interpret {value!r} as a rational")


def rational_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class IntPolynomial:
    """Immutable polynomial with integer coefficients, index = degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(a) for a in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs: tuple[int, ...] = tuple(c)

    @classmethod
    def x(cls) -> "IntPolynomial":
        return cls((0, 1))

    @classmethod
    def constant(cls, a: int) -> "IntPolynomial":
        return cls((a,))

    @classmethod
    def from_roots(cls, roots: Iterable[int]) -> "IntPolynomial":
        p = cls((1,))
        for r in roots:
            p = p * cls((-r, 1))
        return p

    # -- basic protocol -------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree; the zero polynomial has degree -1."""
        return len(self.coeffs) - 1

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = IntPolynomial((other,))
        return isinstance(other, IntPolynomial) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"IntPolynomial({list(self.coeffs)})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            a = self.coeffs[k]
            if a == 0:
                continue
            mag = abs(a)
            if k == 0:
                body = str(mag)
            else:
                body = ("" if mag == 1 else str(mag)) + ("x" if k == 1 else f"x^{k}")
            sign = "-" if a < 0 else "+"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    # -- ring operations ------------------------------------------------

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(-a for a in self.coeffs)

    def __add__(self, other: "IntPolynomial | int") -> "IntPolynomial":
        other = _coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPolynomial(out)

    __radd__ = __add__

    def __sub__(self, other: "IntPolynomial | int") -> "IntPolynomial":
        return self + (-_coerce(other))

    def __rsub__(self, other: "IntPolynomial | int") -> "IntPolynomial":
        return _coerce(other) - self

    def __mul__(self, other: "IntPolynomial | int") -> "IntPolynomial":
        other = _coerce(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPolynomial()
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "IntPolynomial":
        out = IntPolynomial((1,))
        for _ in range(e):
            out = out * self
        return out

    def shift(self, k: int) -> "IntPolynomial":
        """Multiply by x**k."""
        if not self.coeffs:
            return self
        return IntPolynomial((0,) * k + self.coeffs)

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial(k * a for k, a in enumerate(self.coeffs) if k > 0)

    def reflect(self) -> "IntPolynomial":
        """p(-x)."""
        return IntPolynomial(-a if k % 2 else a for k, a in enumerate(self.coeffs))

    # -- evaluation -----------------------------------------------------

    def __call__(self, x: Number) -> Fraction:
        x = Fraction(x)
        if not self.coeffs:
            return Fraction(0)
        # homogeneous Horner: sum c_k p^k q^(d-k), then one division
        p, q = x.numerator, x.denominator
        num = 0
        qpow = 1
        for c in reversed(self.coeffs):
            num = num * p + c * qpow
            qpow *= q
        return Fraction(num, q**self.degree)

    eval = __call__

    def sign_at(self, x: Number) -> int:
        if not isinstance(x, Fraction):
            x = Fraction(x)
        if not self.coeffs:
            return 0
        p, q = x.numerator, x.denominator
        num = 0
        qpow = 1
        for c in reversed(self.coeffs):
            num = num * p + c * qpow
            qpow *= q
        return (num > 0) - (num < 0)

    # -- content and division -------------------------------------------

    def content(self) -> int:
        g = 0
        for a in self.coeffs:
            g = math.gcd(g, a)
        return g

    def primitive(self) -> "IntPolynomial":
        """Divide out the content and make the leading coefficient positive."""
        if not self.coeffs:
            return self
        g = self.content()
        if self.lead < 0:
            g = -g
        return IntPolynomial(a // g for a in self.coeffs)

    def pseudo_rem(self, other: "IntPolynomial") -> "IntPolynomial":
        """Remainder of |lc(other)|**(deg self - deg other + 1) * self by other.

        Using the absolute value keeps the sign of the true remainder, which
        is what Sturm chains need.
        """
        if other.is_zero():
            raise ZeroDivisionError("pseudo-remainder by zero polynomial")
        r = list(self.coeffs)
        db = other.degree
        b = other.coeffs
        lb = abs(b[-1])
        sb = 1 if b[-1] > 0 else -1
        steps = 0
        while len(r) - 1 >= db and r:
            shift = len(r) - 1 - db
            top = r[-1]
            r = [c * lb for c in r]
            f = top * sb
            for i, bi in enumerate(b):
                r[i + shift] -= f * bi
            steps += 1
            while r and r[-1] == 0:
                r.pop()
        extra = max(self.degree - db + 1, 0) - steps
        if extra > 0:
            scale = lb**extra
            r = [c * scale for c in r]
        return IntPolynomial(r)

    def exact_div(self, other: "IntPolynomial") -> "IntPolynomial":
        """Quotient when ``other`` divides ``self`` in Z[x]; raises otherwise."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        r = list(self.coeffs)
        db = other.degree
        b = other.coeffs
        q = [0] * max(len(r) - db, 0)
        while r and len(r) - 1 >= db:
            shift = len(r) - 1 - db
            c, rem = divmod(r[-1], b[-1])
            if rem:
                raise ValueError(f"{other} does not divide {self} over the integers")
            q[shift] = c
            for i, bi in enumerate(b):
                r[i + shift] -= c * bi
            while r and r[-1] == 0:
                r.pop()
        if r:
            raise ValueError(f"{other} does not divide {self}")
        return IntPolynomial(q)

    def divmod_linear(self, root: int) -> tuple["IntPolynomial", int]:
        """Synthetic division by (x - root): quotient and remainder p(root)."""
        if not self.coeffs:
            return IntPolynomial(), 0
        acc = 0
        out = []
        for c in reversed(self.coeffs):
            acc = acc * root + c
            out.append(acc)
        rem = out.pop()
        return IntPolynomial(reversed(out)), rem

    # -- serialization --------------------------------------------------

    def to_json(self) -> list[str]:
        return [str(a) for a in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence[str | int]) -> "IntPolynomial":
        return cls(int(a) for a in data)


def _coerce(p: IntPolynomial | int) -> IntPolynomial:
    return p if isinstance(p, IntPolynomial) else IntPolynomial((p,))


def add(p: IntPolynomial, q: IntPolynomial) -> IntPolynomial:
    return p + q


def mul(p: IntPolynomial, q: IntPolynomial) -> IntPolynomial:
    return p * q


def evaluate(p: IntPolynomial, x: Number) -> Fraction:
    return p(x)


def derivative(p: IntPolynomial) -> IntPolynomial:
    return p.derivative()


def product(polys: Iterable[IntPolynomial]) -> IntPolynomial:
    out = IntPolynomial((1,))
    for p in polys:
        out = out * p
    return out


def poly_gcd(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    """Primitive gcd with positive leading coefficient (primitive PRS)."""
    a, b = a.primitive(), b.primitive()
    if a.degree < b.degree:
        a, b = b, a
    while not b.is_zero():
        a, b = b, a.pseudo_rem(b).primitive()
    if a.is_zero():
        return a
    if a.degree == 0:
        return IntPolynomial((1,))
    return a


def squarefree_part(p: IntPolynomial) -> IntPolynomial:
    """p / gcd(p, p'), primitive with positive leading coefficient."""
    if p.is_zero():
        raise ValueError("squarefree part of the zero polynomial")
    if p.degree == 0:
        return IntPolynomial((1,))
    g = poly_gcd(p, p.derivative())
    return p.primitive().exact_div(g).primitive()


def sturm_sequence(p: IntPolynomial) -> list[IntPolynomial]:
    """Sturm chain p, p', -prem(...), ... with positive-content rescaling."""
    if p.is_zero():
        raise ValueError("Sturm sequence of the zero polynomial")
    chain = [p, p.derivative()]
    while not chain[-1].is_zero() and chain[-1].degree > 0:
        r = -chain[-2].pseudo_rem(chain[-1])
        if r.is_zero():
            break
        g = r.content()
        chain.append(IntPolynomial(c // g for c in r.coeffs))
    if chain[-1].is_zero():
        chain.pop()
    return chain


def _variations(chain: Sequence[IntPolynomial], x: Fraction) -> int:
    signs = [s for s in (c.sign_at(x) for c in chain) if s]
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


class SturmCounter:
    """Distinct-root counter for one polynomial, reusing its Sturm chain."""

    def __init__(self, p: IntPolynomial):
        self.poly = squarefree_part(p)
        self.chain = sturm_sequence(self.poly)

    def count(self, a: Number, b: Number) -> int:
        """Distinct real roots in the open interval (a, b)."""
        a, b = Fraction(a), Fraction(b)
        if a >= b:
            raise ValueError(f"empty interval ({a}, {b})")
        if self.poly.degree <= 0:
            return 0
        # V(a) - V(b) counts roots in (a, b]
        n = _variations(self.chain, a) - _variations(self.chain, b)
        if self.poly.sign_at(b) == 0:
            n -= 1
        return n


def sturm_count_distinct(p: IntPolynomial, a: Number, b: Number) -> int:
    """Number of distinct real roots of p strictly between a and b."""
    if p.is_zero():
        raise ValueError("root count of the zero polynomial")
    return SturmCounter(p).count(a, b)


def count_roots_with_multiplicity(p: IntPolynomial, a: Number, b: Number) -> int:
    """Roots of p in (a, b) counted with multiplicity.

    Sum over k of the distinct-root counts of g_k, where g_0 = p and
    g_{k+1} = gcd(g_k, g_k'); g_k vanishes exactly at roots of
    multiplicity > k.
    """
    if p.is_zero():
        raise ValueError("root count of the zero polynomial")
    total = 0
    g = p.primitive()
    while g.degree > 0:
        total += sturm_count_distinct(g, a, b)
        g = poly_gcd(g, g.derivative())
    return total


def root_multiplicity(p: IntPolynomial, x: Number) -> int:
    """Multiplicity of x as a root of p (0 if not a root)."""
    if p.is_zero():
        raise ValueError("multiplicity in the zero polynomial")
    x = Fraction(x)
    m = 0
    while p.sign_at(x) == 0:
        m += 1
        p = p.derivative()
    return m


def isolate_roots(p: IntPolynomial, a: Number, b: Number) -> list[tuple[Fraction, Fraction]]:
    """Disjoint open intervals (l, r) in (a, b), each holding one distinct root.

    Every returned endpoint other than a and b is a non-root, so any point
    outside the intervals is safe to evaluate at.  Intervals are ordered.
    """
    counter = SturmCounter(p)
    sf = counter.poly
    out: list[tuple[Fraction, Fraction]] = []
    stack = [(Fraction(a), Fraction(b))]
    while stack:
        lo, hi = stack.pop()
        c = counter.count(lo, hi)
        if c == 0:
            continue
        if c == 1:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        if sf.sign_at(mid) == 0:
            # exact rational root: wall it off with a tiny interval
            delta = (hi - lo) / 4
            while (
                sf.sign_at(mid - delta) == 0
                or sf.sign_at(mid + delta) == 0
                or counter.count(mid - delta, mid + delta) != 1
            ):
                delta /= 2
            out.append((mid - delta, mid + delta))
            stack.append((lo, mid - delta))
            stack.append((mid + delta, hi))
        else:
            stack.append((lo, mid))
            stack.append((mid, hi))
    out.sort()
    return out


def refine_interval(
    counter: SturmCounter, lo: Fraction, hi: Fraction, width: Fraction
) -> tuple[Fraction, Fraction]:
    """Shrink an isolating interval of one root until hi - lo <= width.

    The root is simple and the endpoints are non-roots, so plain sign
    bisection suffices.
    """
    sf = counter.poly
    while hi - lo > width:
        mid = (lo + hi) / 2
        s = sf.sign_at(mid)
        if s == 0:
            # the root is mid itself: centre a non-root window on it
            half = width / 2
            while sf.sign_at(mid - half) == 0 or sf.sign_at(mid + half) == 0 or counter.count(mid - half, mid + half) != 1:
                half /= 2
            return mid - half, mid + half
        # an outer endpoint may itself be a root lying outside the open interval
        ref = sf.sign_at(lo) or -sf.sign_at(hi)
        if ref == 0:
            left = counter.count(lo, mid) == 1
        else:
            left = s != ref
        if left:
            hi = mid
        else:
            lo = mid
    return lo, hi


@dataclass(frozen=True)
class IntegerRoots:
    """Integer roots with multiplicities and the deflated cofactor."""

    roots: tuple[tuple[int, int], ...]
    cofactor: IntPolynomial

    def total(self) -> int:
        return sum(m for _, m in self.roots)

    def as_dict(self) -> dict[int, int]:
        return dict(self.roots)


def _divisors(m: int, bound: int) -> list[int]:
    m = abs(m)
    out = set()
    for d in range(1, math.isqrt(m) + 1):
        if m % d == 0:
            out.update(e for e in (d, m // d) if e <= bound)
    return sorted(out)


def integer_roots(p: IntPolynomial) -> IntegerRoots:
    """All integer roots of a monic polynomial with multiplicities."""
    if p.is_zero() or p.lead != 1:
        raise ValueError(f"integer_roots needs a monic polynomial, got {p}")
    coeffs = p.coeffs
    m = 0
    while coeffs[m] == 0:
        m += 1
    rest = IntPolynomial(coeffs[m:])
    found: dict[int, int] = {}
    if m:
        found[0] = m
    if rest.degree > 0:
        # Cauchy bound for a monic polynomial
        bound = 1 + max(abs(c) for c in rest.coeffs[:-1])
        for d in _divisors(rest.coeffs[0], bound):
            for r in (d, -d):
                while rest.degree > 0:
                    q, rem = rest.divmod_linear(r)
                    if rem:
                        break
                    rest = q
                    found[r] = found.get(r, 0) + 1
    return IntegerRoots(tuple(sorted(found.items())), rest)
