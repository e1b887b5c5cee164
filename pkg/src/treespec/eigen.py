"""Eigenvalue location on trees.

Every vertex i of a rooted tree carries the rational function

    d_i(x) = x - sum_{j child of i} 1 / d_j(x)

which equals phi(T(i)) / phi(T(i) - i), the ratio of characteristic
polynomials of the subtree at i and of that subtree with i deleted.
Evaluated at a rational point theta, the d_i are the diagonal of a matrix
congruent to theta*I - A, so their signs give the inertia of A - theta*I.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Literal

from .poly import (
    IntPolynomial,
    Number,
    SturmCounter,
    integer_roots,
    poly_gcd,
    rational_str,
    sturm_count_distinct,
)
from .tree import RootedTree, Tree, root_at

SCHEMA = "treespec/1"

X = IntPolynomial.x()
ONE = IntPolynomial.constant(1)


class PoleError(ZeroDivisionError):
    """The requested point is a pole of the rational function; resample."""


@dataclass(frozen=True)
class DiagValue:
    """d_v at one point.

    ``value`` is the diagonal entry used for inertia.  A vertex whose raw
    d-value is infinite has ``kind == "pole"`` and value -1/2 after the
    zero-fix; the child that triggered it has ``zeroed_by_fix`` set and
    value 2 although its raw d-value is 0.
    """

    vertex: int
    kind: Literal["finite", "pole"]
    value: Fraction
    zeroed_by_fix: bool = False

    @property
    def raw_sign(self) -> int | None:
        """Sign of the unmodified d-value: -1, 0, 1, or None for a pole."""
        if self.kind == "pole":
            return None
        if self.zeroed_by_fix:
            return 0
        return (self.value > 0) - (self.value < 0)


@dataclass(frozen=True)
class Inertia:
    below: int
    at: int
    above: int

    @property
    def n(self) -> int:
        return self.below + self.at + self.above


def jt_evaluate(rt: RootedTree, theta: Number) -> tuple[list[DiagValue], Inertia]:
    """Diagonalize theta*I - A along the postorder with exact rationals.

    When a child c of v has d_c = 0, the smallest such child gets d_c = 2,
    v gets -1/2 and v's edge to its parent is dropped.  Values are returned
    indexed by vertex order 1..n.
    """
    theta = Fraction(theta)
    n = rt.n
    val: list[Fraction] = [Fraction(0)] * (n + 1)
    pole = [False] * (n + 1)
    fixed = [False] * (n + 1)
    for v in rt.postorder:
        kids = [c for c in rt.children[v] if not pole[c]]
        zeros = [c for c in kids if val[c] == 0]
        if zeros:
            c = min(zeros)
            val[c] = Fraction(2)
            fixed[c] = True
            val[v] = Fraction(-1, 2)
            pole[v] = True
        else:
            s = theta
            for c in kids:
                s -= 1 / val[c]
            val[v] = s
    values = [
        DiagValue(v, "pole" if pole[v] else "finite", val[v], fixed[v]) for v in range(1, n + 1)
    ]
    pos = sum(1 for d in values if d.value > 0)
    neg = sum(1 for d in values if d.value < 0)
    return values, Inertia(below=pos, at=n - pos - neg, above=neg)


def inertia(t: Tree, theta: Number) -> Inertia:
    return jt_evaluate(root_at(t, 1), theta)[1]


@dataclass(frozen=True)
class RationalFunction:
    """num / den, deliberately left unreduced (they may share factors)."""

    num: IntPolynomial
    den: IntPolynomial

    def __call__(self, theta: Number) -> Fraction:
        d = self.den(theta)
        if d == 0:
            raise PoleError(f"denominator vanishes at {theta}")
        return self.num(theta) / d

    def reduced(self) -> "RationalFunction":
        g = poly_gcd(self.num, self.den)
        num, den = self.num.exact_div(g), self.den.exact_div(g)
        if den.lead < 0:
            num, den = -num, -den
        return RationalFunction(num, den)

    def derivative_at(self, theta: Number) -> Fraction:
        theta = Fraction(theta)
        den = self.den(theta)
        if den == 0:
            raise PoleError(f"denominator vanishes at {theta}")
        top = self.num.derivative()(theta) * den - self.num(theta) * self.den.derivative()(theta)
        return top / (den * den)


def d_symbolic_all(rt: RootedTree) -> dict[int, RationalFunction]:
    """num/den for every vertex, bottom-up.

    den_i = prod of children's num; num_i = x*den_i - sum_j den_j * prod_{k != j} num_k.
    """
    out: dict[int, RationalFunction] = {}
    for v in rt.postorder:
        kids = rt.children[v]
        nums = [out[c].num for c in kids]
        # prefix/suffix products of the children's numerators
        prefix = [ONE]
        for p in nums:
            prefix.append(prefix[-1] * p)
        suffix = [ONE]
        for p in reversed(nums):
            suffix.append(suffix[-1] * p)
        suffix.reverse()
        den = prefix[-1]
        num = X * den
        for j, c in enumerate(kids):
            num = num - out[c].den * prefix[j] * suffix[j + 1]
        out[v] = RationalFunction(num, den)
    return out


def d_symbolic(rt: RootedTree, i: int) -> RationalFunction:
    if not 1 <= i <= rt.n:
        raise ValueError(f"vertex {i} not in tree")
    return d_symbolic_all(rt)[i]


def char_poly(t: Tree) -> IntPolynomial:
    """det(xI - A(t)), via the root function at vertex 1."""
    rt = root_at(t, 1)
    return d_symbolic_all(rt)[1].num


def count_eigs_interval(
    t: Tree,
    a: Number,
    b: Number,
    mode: Literal["distinct", "with_multiplicity"] = "distinct",
) -> int:
    """Eigenvalues of t in the open interval (a, b)."""
    a, b = Fraction(a), Fraction(b)
    if a >= b:
        raise ValueError(f"empty interval ({a}, {b})")
    if mode == "distinct":
        return sturm_count_distinct(char_poly(t), a, b)
    if mode == "with_multiplicity":
        rt = root_at(t, 1)
        ia = jt_evaluate(rt, a)[1]
        ib = jt_evaluate(rt, b)[1]
        return ib.below - ia.below - ia.at
    raise ValueError(f"unknown mode {mode!r}")


def derivative_check(rt: RootedTree, i: int, theta: Number) -> Fraction:
    """d_i'(theta), exact.  Raises PoleError at a pole of the unreduced form."""
    return d_symbolic(rt, i).derivative_at(theta)


@dataclass(frozen=True)
class SpectrumReport:
    n: int
    char_poly: IntPolynomial
    integer_spectrum: tuple[tuple[int, int], ...]
    is_integral: bool
    distinct_in_open_m2_2: int
    witness: tuple[Fraction, Fraction] | None

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "n": self.n,
            "char_poly": self.char_poly.to_json(),
            "integer_spectrum": [[k, m] for k, m in self.integer_spectrum],
            "is_integral": self.is_integral,
            "distinct_in_open_m2_2": self.distinct_in_open_m2_2,
            "witness": None if self.witness is None else [rational_str(q) for q in self.witness],
        }

    @classmethod
    def from_json(cls, data: dict) -> "SpectrumReport":
        if data.get("schema") != SCHEMA:
            raise ValueError(f"unexpected schema {data.get('schema')!r}")
        w = data["witness"]
        return cls(
            n=int(data["n"]),
            char_poly=IntPolynomial.from_json(data["char_poly"]),
            integer_spectrum=tuple((int(k), int(m)) for k, m in data["integer_spectrum"]),
            is_integral=bool(data["is_integral"]),
            distinct_in_open_m2_2=int(data["distinct_in_open_m2_2"]),
            witness=None if w is None else (Fraction(w[0]), Fraction(w[1])),
        )


def spectrum_report(t: Tree) -> SpectrumReport:
    phi = char_poly(t)
    roots = integer_roots(phi)
    integral = roots.total() == t.n
    counter = SturmCounter(phi)
    witness = None
    if not integral:
        # tree spectra are symmetric; the positive side is scanned first
        for k in [*range(0, t.n), *range(-t.n, 0)]:
            if counter.count(k, k + 1) > 0:
                witness = (Fraction(k), Fraction(k + 1))
                break
        else:  # pragma: no cover - eigenvalues of a tree lie in (-n, n)
            raise AssertionError("non-integral spectrum without a witness interval")
    return SpectrumReport(
        n=t.n,
        char_poly=phi,
        integer_spectrum=roots.roots,
        is_integral=integral,
        distinct_in_open_m2_2=counter.count(-2, 2),
        witness=witness,
    )


def is_integral(t: Tree) -> bool:
    return integer_roots(char_poly(t)).total() == t.n
