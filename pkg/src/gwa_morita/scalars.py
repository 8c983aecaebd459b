"""Exact scalars in a declared finite-dimensional Q-vector space.

A :class:`BasisSpec` declares symbols ``("1", b1, ..., b_{d-1})``.  The
non-unit symbols are taken to be Q-linearly independent of 1 and of each
other, which makes "is this an integer" and "is this rational" decidable
coefficient-wise.  An optional multiplication table turns the span into a
commutative Q-algebra, e.g. the Gaussian rationals with ``i*i = -1``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Union

from .errors import BasisError, BasisMismatch, NotInvertible, UnsupportedProduct
from .lattice import rational_solve

RationalLike = Union[int, Fraction, str]

__all__ = [
    "BasisSpec",
    "Scalar",
    "QQ",
    "as_fraction",
    "format_fraction",
    "rational_irrational_split",
    "is_integer",
    "scalar_inv",
]


def as_fraction(value: RationalLike) -> Fraction:
    """Parse ``"p/q"``, ``"p"``, an int or a Fraction; floats are refused."""
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"refusing inexact value {value!r}")
    if isinstance(value, str):
        return Fraction(value.strip())
    return Fraction(value)


def format_fraction(q: Fraction) -> str:
    return str(q)


Table = tuple[tuple[tuple[Fraction, ...], ...], ...]


@dataclass(frozen=True)
class BasisSpec:
    """Symbols spanning k0 over Q, plus an optional products table.

    ``table[i][j]`` is the coefficient vector of ``symbols[i] * symbols[j]``.
    """

    symbols: tuple[str, ...]
    table: Optional[Table] = None

    def __post_init__(self):
        syms = self.symbols
        if not syms or syms[0] != "1":
            raise BasisError('the first basis symbol must be "1"')
        if len(set(syms)) != len(syms):
            raise BasisError(f"duplicate basis symbols in {syms}")
        if self.table is None and len(syms) == 1:
            # Q itself: the only product is 1*1 = 1.
            object.__setattr__(self, "table", (((Fraction(1),),),))
        if self.table is not None:
            self._validate_table()

    @classmethod
    def from_products(
        cls,
        symbols: Iterable[str],
        products: Optional[Mapping[tuple[str, str], Mapping[str, RationalLike]]] = None,
    ) -> "BasisSpec":
        """Build a basis from symbol names and a sparse products map.

        Products involving ``"1"`` are implied.  For the remaining pairs the
        table must be total; one of ``(a, b)`` / ``(b, a)`` suffices, and if
        both are given they must agree.
        """
        syms = tuple(symbols)
        if products is None:
            return cls(syms)
        index = {s: k for k, s in enumerate(syms)}
        d = len(syms)
        given: dict[tuple[int, int], tuple[Fraction, ...]] = {}
        for (x, y), vec in products.items():
            if x not in index or y not in index:
                raise BasisError(f"product ({x},{y}) uses an undeclared symbol")
            for s in vec:
                if s not in index:
                    raise BasisError(f"product ({x},{y}) has undeclared symbol {s!r}")
            coeffs = tuple(as_fraction(vec.get(s, 0)) for s in syms)
            i, j = index[x], index[y]
            for key in ((i, j), (j, i)):
                if key in given and given[key] != coeffs:
                    raise BasisError(f"products table is not commutative at ({x},{y})")
            given[(i, j)] = given[(j, i)] = coeffs
        table = []
        for i in range(d):
            row = []
            for j in range(d):
                if i == 0 or j == 0:
                    unit = tuple(Fraction(int(k == max(i, j))) for k in range(d))
                    if (i, j) in given and given[(i, j)] != unit:
                        raise BasisError('"1" must act as the unit')
                    row.append(unit)
                elif (i, j) in given:
                    row.append(given[(i, j)])
                else:
                    raise BasisError(f"products table has no entry for ({syms[i]},{syms[j]})")
            table.append(tuple(row))
        return cls(syms, tuple(table))

    def _validate_table(self) -> None:
        d = self.dim
        t = self.table
        if len(t) != d or any(len(row) != d for row in t):
            raise BasisError("products table has the wrong shape")
        for i in range(d):
            for j in range(d):
                if len(t[i][j]) != d:
                    raise BasisError("products table entry has the wrong length")
                if t[i][j] != t[j][i]:
                    raise BasisError("products table is not commutative")
            unit = tuple(Fraction(int(k == i)) for k in range(d))
            if t[0][i] != unit:
                raise BasisError('"1" must act as the unit')
        for i, j, k in itertools.product(range(d), repeat=3):
            left = self._mul_vec(t[i][j], _unit_vec(d, k))
            right = self._mul_vec(_unit_vec(d, i), t[j][k])
            if left != right:
                raise BasisError(
                    f"products table is not associative on "
                    f"({self.symbols[i]},{self.symbols[j]},{self.symbols[k]})"
                )

    @property
    def dim(self) -> int:
        return len(self.symbols)

    @property
    def has_products(self) -> bool:
        return self.table is not None

    def _sparse_table(self) -> tuple:
        # nonzero (k, coeff) entries per (i, j), built once per basis
        cached = self.__dict__.get("_sparse")
        if cached is None:
            cached = tuple(
                tuple(tuple((k, t) for k, t in enumerate(cell) if t) for cell in row) for row in self.table
            )
            object.__setattr__(self, "_sparse", cached)
        return cached

    def _mul_vec(self, x: tuple[Fraction, ...], y: tuple[Fraction, ...]) -> tuple[Fraction, ...]:
        sparse = self._sparse_table()
        out = [0] * self.dim
        for i, xi in enumerate(x):
            if not xi:
                continue
            row = sparse[i]
            for j, yj in enumerate(y):
                if not yj:
                    continue
                c = xi * yj
                for k, tk in row[j]:
                    out[k] += c if tk == 1 else c * tk
        return tuple(Fraction(v) for v in out)

    # constructors -----------------------------------------------------

    def __call__(self, value: Union["Scalar", RationalLike, Mapping[str, RationalLike]] = 0) -> "Scalar":
        """Coerce a rational, a ``{symbol: rational}`` map or a Scalar."""
        if isinstance(value, Scalar):
            if value.basis != self:
                raise BasisMismatch("scalar belongs to another basis")
            return value
        if isinstance(value, Mapping):
            unknown = set(value) - set(self.symbols)
            if unknown:
                raise BasisError(f"undeclared symbols {sorted(unknown)}")
            return Scalar(self, tuple(as_fraction(value.get(s, 0)) for s in self.symbols))
        q = as_fraction(value)
        return Scalar(self, (q,) + (Fraction(0),) * (self.dim - 1))

    def symbol(self, name: str) -> "Scalar":
        return self({name: 1})

    def zero(self) -> "Scalar":
        return self(0)

    def one(self) -> "Scalar":
        return self(1)


def _unit_vec(d: int, k: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(int(i == k)) for i in range(d))


QQ = BasisSpec(("1",))


@dataclass(frozen=True)
class Scalar:
    basis: BasisSpec
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.basis.dim:
            raise BasisError("coefficient vector does not match the basis dimension")

    # coercion ---------------------------------------------------------

    def _coerce(self, other) -> "Scalar":
        if isinstance(other, Scalar):
            if other.basis != self.basis:
                raise BasisMismatch(
                    f"scalars over {self.basis.symbols} and {other.basis.symbols}"
                )
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.basis(other)
        return NotImplemented

    # arithmetic -------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Scalar(self.basis, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return Scalar(self.basis, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Scalar(self.basis, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        return -self + other

    def scale(self, q: RationalLike) -> "Scalar":
        q = as_fraction(q)
        if q == 1:
            return self
        return Scalar(self.basis, tuple(q * a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        # a rational factor is a scaling and needs no table
        if other.is_rational():
            return self.scale(other.coeffs[0])
        if self.is_rational():
            return other.scale(self.coeffs[0])
        if not self.basis.has_products:
            raise UnsupportedProduct(
                f"basis {self.basis.symbols} has no multiplication table"
            )
        return Scalar(self.basis, self.basis._mul_vec(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self.scale(Fraction(1) / Fraction(other))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inv()

    def __rtruediv__(self, other):
        return self.inv() * other

    def __pow__(self, k: int) -> "Scalar":
        if k < 0:
            return self.inv() ** (-k)
        out = self.basis.one()
        for _ in range(k):
            out = out * self
        return out

    def inv(self) -> "Scalar":
        """Multiplicative inverse, by solving ``self * y = 1`` over Q."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if self.is_rational():
            return self.basis(1 / self.coeffs[0])
        if not self.basis.has_products:
            raise UnsupportedProduct(
                f"basis {self.basis.symbols} has no multiplication table"
            )
        d = self.basis.dim
        # column j of the matrix is self * b_j
        cols = [self.basis._mul_vec(self.coeffs, _unit_vec(d, j)) for j in range(d)]
        matrix = [[cols[j][i] for j in range(d)] for i in range(d)]
        y = rational_solve(matrix, list(_unit_vec(d, 0)))
        if y is None:
            raise NotInvertible(f"{self} is a zero divisor in the declared algebra")
        return Scalar(self.basis, tuple(y))

    # predicates -------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.basis == other.basis and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.is_rational() and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.basis.symbols, self.coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def is_integer(self) -> bool:
        return self.is_rational() and self.coeffs[0].denominator == 1

    @property
    def rational_part(self) -> Fraction:
        return self.coeffs[0]

    @property
    def irrational_part(self) -> "Scalar":
        return Scalar(self.basis, (Fraction(0),) + self.coeffs[1:])

    def sort_key(self) -> tuple:
        """A total order on coefficient vectors; no mathematical meaning."""
        return self.coeffs

    # io ---------------------------------------------------------------

    def to_json(self) -> dict[str, str]:
        return {s: str(c) for s, c in zip(self.basis.symbols, self.coeffs) if c}

    def __str__(self):
        terms = []
        for s, c in zip(self.basis.symbols, self.coeffs):
            if not c:
                continue
            if s == "1":
                body = str(abs(c))
            elif abs(c) == 1:
                body = s
            else:
                body = f"{abs(c)}*{s}"
            terms.append(("-" if c < 0 else "+", body))
        if not terms:
            return "0"
        head_sign, head = terms[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"Scalar({self})"


def rational_irrational_split(x: Scalar) -> tuple[Fraction, Scalar]:
    """Return ``(coefficient of 1, remainder)``; the two parts sum to ``x``."""
    return x.rational_part, x.irrational_part


def is_integer(x: Scalar) -> bool:
    return x.is_integer()


def scalar_inv(x: Scalar) -> Scalar:
    return x.inv()
