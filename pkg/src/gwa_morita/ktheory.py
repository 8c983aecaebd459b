"""Traces of the canonical projectives of A(a) in HH_0(A(a)).

For ``a`` of degree n with distinct roots, HH_0(A(a)) is identified with
polynomials in h of degree at most n - 2 (the classes 1_a, h_a, ...,
h^{n-2}_a).  The shift ``sigma(p)(h) = p(h - 1)`` drives every formula.

Two independent routes to ``tr(P_i)`` are provided and are expected to
agree exactly: the Lagrange/Bezout route (:func:`trace_pi`,
:func:`trace_projective_general`) and the Vandermonde/Schur route
(:func:`schur_trace`).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb
from typing import Iterable, Sequence

from .errors import DegenerateRoots, InternalAssertion, InternalRankFailure, PreconditionViolated
from .gwa import RootTuple, has_finite_gldim
from .scalars import BasisSpec, Scalar

__all__ = [
    "DensePoly",
    "HH0Class",
    "lagrange_basis",
    "apply_sigma",
    "trace_pi",
    "trace_projective_general",
    "vandermonde",
    "elementary_symmetric",
    "schur_trace",
    "p_basis",
    "unit_decomposition",
    "scalar_rank",
]


class DensePoly:
    """Polynomial in h with Scalar coefficients, constant term first."""

    __slots__ = ("basis", "coeffs")

    def __init__(self, basis: BasisSpec, coeffs: Iterable = ()):
        coeffs = [c if isinstance(c, Scalar) and c.basis is basis else basis(c) for c in coeffs]
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        self.basis = basis
        self.coeffs = tuple(coeffs)

    @classmethod
    def constant(cls, c: Scalar) -> "DensePoly":
        return cls(c.basis, [c])

    @classmethod
    def linear_root(cls, root: Scalar) -> "DensePoly":
        """The monic linear factor ``h - root``."""
        return cls(root.basis, [-root, 1])

    @classmethod
    def from_roots(cls, basis: BasisSpec, values: Iterable[Scalar]) -> "DensePoly":
        out = cls(basis, [1])
        for r in values:
            out = out * cls.linear_root(r)
        return out

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lead(self) -> Scalar:
        return self.coeffs[-1]

    def _lift(self, other) -> "DensePoly":
        if isinstance(other, DensePoly):
            return other
        return DensePoly(self.basis, [other])

    def __add__(self, other):
        other = self._lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        zero = self.basis.zero()
        a = self.coeffs + (zero,) * (n - len(self.coeffs))
        b = other.coeffs + (zero,) * (n - len(other.coeffs))
        return DensePoly(self.basis, [x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return DensePoly(self.basis, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, DensePoly):
            return DensePoly(self.basis, [c * other for c in self.coeffs])
        if self.is_zero() or other.is_zero():
            return DensePoly(self.basis)
        out = [self.basis.zero()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x.is_zero():
                continue
            for j, y in enumerate(other.coeffs):
                if not y.is_zero():
                    out[i + j] = out[i + j] + x * y
        return DensePoly(self.basis, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, DensePoly):
            return self.coeffs == other.coeffs
        return self == self._lift(other)

    def __hash__(self):
        return hash(self.coeffs)

    def __call__(self, x: Scalar) -> Scalar:
        acc = self.basis.zero()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def divmod(self, other: "DensePoly") -> tuple["DensePoly", "DensePoly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        inv_lead = other.lead().inv()
        rem = list(self.coeffs)
        q = [self.basis.zero()] * max(len(rem) - len(other.coeffs) + 1, 0)
        for k in range(len(q) - 1, -1, -1):
            c = rem[k + other.degree] * inv_lead
            q[k] = c
            if c.is_zero():
                continue
            for j, oc in enumerate(other.coeffs):
                rem[k + j] = rem[k + j] - c * oc
        return DensePoly(self.basis, q), DensePoly(self.basis, rem[: max(other.degree, 0)])

    def shift(self) -> "DensePoly":
        """``p(h - 1)``, expanded by the binomial theorem."""
        out = [self.basis.zero()] * len(self.coeffs)
        for k, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            for j in range(k + 1):
                # h^k -> sum_j C(k, j) h^j (-1)^(k-j)
                out[j] = out[j] + c * (comb(k, j) * (-1) ** (k - j))
        return DensePoly(self.basis, out)

    def to_json(self) -> list[dict[str, str]]:
        return [c.to_json() for c in self.coeffs]

    def __str__(self):
        if self.is_zero():
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c.is_zero():
                continue
            mono = "" if k == 0 else ("h" if k == 1 else f"h^{k}")
            cs = str(c)
            if not mono:
                terms.append(cs)
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            elif c.is_rational():
                terms.append(f"{cs}*{mono}")
            else:
                terms.append(f"({cs})*{mono}")
        return " + ".join(terms).replace("+ -", "- ")

    def __repr__(self):
        return f"DensePoly({self})"


@dataclass(frozen=True)
class HH0Class:
    """A class in HH_0(A(a)), represented by a polynomial of degree <= n - 2."""

    poly: DensePoly
    degree_bound: int

    def __post_init__(self):
        if self.poly.degree > self.degree_bound:
            raise InternalAssertion(
                f"HH_0 representative of degree {self.poly.degree} exceeds {self.degree_bound}"
            )

    def coordinates(self) -> list[Scalar]:
        """Coefficients on 1_a, h_a, ..., h^{n-2}_a."""
        zero = self.poly.basis.zero()
        cs = list(self.poly.coeffs)
        return cs + [zero] * (self.degree_bound + 1 - len(cs))

    def __add__(self, other: "HH0Class") -> "HH0Class":
        return HH0Class(self.poly + other.poly, self.degree_bound)

    def __sub__(self, other: "HH0Class") -> "HH0Class":
        return HH0Class(self.poly - other.poly, self.degree_bound)

    def __eq__(self, other):
        if isinstance(other, HH0Class):
            return self.poly == other.poly
        if isinstance(other, DensePoly):
            return self.poly == other
        return NotImplemented

    def __hash__(self):
        return hash(self.poly)

    def to_json(self) -> list[dict[str, str]]:
        return [c.to_json() for c in self.coordinates()]

    def __str__(self):
        return str(self.poly)


def _require_distinct(a: RootTuple) -> None:
    if not has_finite_gldim(a):
        raise DegenerateRoots(f"roots {a} are not pairwise distinct")


def _check_index(a: RootTuple, i: int) -> None:
    if not 1 <= i <= a.n:
        raise IndexError(f"root index {i} out of range 1..{a.n}")


# --------------------------------------------------------------------------
# Lagrange route


def lagrange_basis(a: RootTuple) -> list[DensePoly]:
    """``v_i = u_i / r_i`` with ``u_i = prod_{j != i} (h - lambda_j)``."""
    _require_distinct(a)
    return [_lagrange(a, i) for i in range(a.n)]


def _lagrange(a: RootTuple, i: int) -> DensePoly:
    li = a.roots[i]
    others = [r for j, r in enumerate(a.roots) if j != i]
    r = a.basis.one()
    for x in others:
        r = r * (li - x)
    return DensePoly.from_roots(a.basis, others) * r.inv()


def apply_sigma(p: DensePoly) -> DensePoly:
    """``sigma(p)(h) = p(h - 1)``."""
    return p.shift()


def _sigma_minus_one(p: DensePoly) -> DensePoly:
    return p.shift() - p


def trace_pi(a: RootTuple, i: int) -> HH0Class:
    """Trace of ``P_i = A x + A (h - lambda_i)``: the class of ``1 + (sigma - 1) v_i``."""
    _require_distinct(a)
    _check_index(a, i)
    v = _lagrange(a, i - 1)
    return HH0Class(_sigma_minus_one(v) + 1, a.n - 2)


def _extended_euclid(f: DensePoly, g: DensePoly) -> tuple[DensePoly, DensePoly, DensePoly]:
    """``(d, s, t)`` with ``s f + t g = d`` and d monic."""
    basis = f.basis
    r0, r1 = f, g
    s0, s1 = DensePoly(basis, [1]), DensePoly(basis)
    t0, t1 = DensePoly(basis), DensePoly(basis, [1])
    while not r1.is_zero():
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    inv = r0.lead().inv()
    return r0 * inv, s0 * inv, t0 * inv


def bezout_pair(w: DensePoly, u: DensePoly) -> tuple[DensePoly, DensePoly]:
    """``(B, C)`` with ``B w + C u = 1`` and ``deg B < deg u``."""
    d, s, t = _extended_euclid(w, u)
    if d.degree != 0:
        raise DegenerateRoots("w and u share a root")
    q, b = s.divmod(u)
    c = t + q * w
    if not (b * w + c * u == DensePoly(w.basis, [1])):
        raise InternalAssertion("Bezout identity failed")
    return b, c


def trace_projective_general(a: RootTuple, subset: Iterable[int]) -> HH0Class:
    """Trace of ``P = A x + A w(h)`` for ``w = prod_{i in subset} (h - lambda_i)``.

    The class is ``1 + w B - sigma(w B)`` for the minimal-degree Bezout pair
    ``B w + C u = 1``, ``u = a / w``.  Indices are 1-based.
    """
    _require_distinct(a)
    chosen = sorted(set(subset))
    for i in chosen:
        _check_index(a, i)
    if not chosen or len(chosen) == a.n:
        raise PreconditionViolated("the subset must be nonempty and proper")
    w = DensePoly.from_roots(a.basis, (a.roots[i - 1] for i in chosen))
    u = DensePoly.from_roots(a.basis, (r for k, r in enumerate(a.roots) if k + 1 not in chosen))
    b, _ = bezout_pair(w, u)
    wb = w * b
    return HH0Class(wb - wb.shift() + 1, a.n - 2)


# --------------------------------------------------------------------------
# Vandermonde / Schur route


def vandermonde(xs: Sequence[Scalar]) -> Scalar:
    """``prod_{i<j} (x_i - x_j)``: the determinant of ``(x_j^{n-i})``."""
    if not xs:
        raise ValueError("vandermonde of an empty list")
    out = xs[0].basis.one()
    for x, y in itertools.combinations(xs, 2):
        out = out * (x - y)
    return out


def _all_elementary(xs: Sequence[Scalar]) -> list[Scalar]:
    """``[e_0, ..., e_n]``: coefficients of ``prod (1 + x t)``."""
    if not xs:
        raise ValueError("need at least one variable to fix the basis")
    e = [xs[0].basis.one()] + [xs[0].basis.zero()] * len(xs)
    for x in xs:
        for j in range(len(xs), 0, -1):
            e[j] = e[j] + e[j - 1] * x
    return e


def elementary_symmetric(xs: Sequence[Scalar], k: int) -> Scalar:
    if not 0 <= k <= len(xs):
        raise ValueError(f"e_{k} undefined on {len(xs)} variables")
    return _all_elementary(xs)[k]


def schur_trace(a: RootTuple, i: int) -> HH0Class:
    """``tr(P_i)`` from the Vandermonde expansion of ``(sigma - 1) u_i / r_i``.

    ``1 + sum_{l=1}^{n} (-1)^{i+l} ((h-1)^{n-l} - h^{n-l}) s_l V(hat) / V``
    where ``hat`` drops lambda_i and ``s_l`` is the Schur polynomial of the
    partition ``(1^{l-1}, 0^{n-l})`` in the remaining n - 1 roots.
    """
    _require_distinct(a)
    _check_index(a, i)
    n = a.n
    basis = a.basis
    rest = [r for k, r in enumerate(a.roots) if k != i - 1]
    ratio = vandermonde(rest) / vandermonde(list(a.roots))
    h_minus_1 = DensePoly(basis, [-1, 1])
    shifted = [DensePoly(basis, [1])]  # (h - 1)^k
    for _ in range(n - 1):
        shifted.append(shifted[-1] * h_minus_1)
    es = _all_elementary(rest)
    total = DensePoly(basis, [1])
    for l in range(1, n):
        power = n - l
        diff = shifted[power] - DensePoly(basis, [0] * power + [1])
        # The generalized Vandermonde of the n-1 remaining roots with exponent
        # n - l missing from {0, ..., n-1} is V(rest) * s_lambda(rest) with
        # lambda = (1^{l-1}, 0^{n-l}); that Schur polynomial is e_{l-1}.
        total = total + diff * (es[l - 1] * ratio * (-1) ** (i + l))
    # l = n contributes (h - 1)^0 - h^0 = 0
    return HH0Class(total, n - 2)


# --------------------------------------------------------------------------
# the p-basis of HH_0 and the unit


def scalar_rank(vectors: Sequence[Sequence[Scalar]]) -> int:
    """Rank over the scalar field by Gaussian elimination."""
    rows = [list(v) for v in vectors]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    for c in range(ncols):
        p = next((i for i in range(rank, len(rows)) if not rows[i][c].is_zero()), None)
        if p is None:
            continue
        rows[rank], rows[p] = rows[p], rows[rank]
        inv = rows[rank][c].inv()
        for i in range(rank + 1, len(rows)):
            if not rows[i][c].is_zero():
                f = rows[i][c] * inv
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def p_basis(a: RootTuple) -> list[HH0Class]:
    """``p_i = (sigma - 1) v_i`` for ``i = 1..n-1``; a basis of HH_0(A(a))."""
    if a.n < 2:
        raise PreconditionViolated("p_basis needs degree at least 2")
    v = lagrange_basis(a)
    classes = [HH0Class(_sigma_minus_one(vi), a.n - 2) for vi in v[:-1]]
    if scalar_rank([c.coordinates() for c in classes]) != a.n - 1:
        raise InternalRankFailure(f"p-classes of {a} are linearly dependent")
    return classes


def unit_decomposition(a: RootTuple) -> list[Scalar]:
    """Coefficients ``c_i = -(lambda_i - lambda_n)`` with ``sum c_i p_i = 1``."""
    ps = p_basis(a)
    last = a.roots[-1]
    coeffs = [-(r - last) for r in a.roots[:-1]]
    total = DensePoly(a.basis)
    for c, p in zip(coeffs, ps):
        total = total + p.poly * c
    if total != DensePoly(a.basis, [1]):
        raise InternalAssertion(f"unit decomposition failed for {a}: got {total}")
    return coeffs
