"""Classical generalized Weyl algebras A(a) described by the roots of a.

The algebra ``A(a) = k[h](sigma, a)`` with ``sigma(h) = h - 1`` is never
materialized; everything here is decided from the ordered root tuple of the
monic polynomial ``a(h) = prod (h - lambda_i)``.
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import BasisMismatch, PreconditionViolated
from .scalars import BasisSpec, QQ, Scalar

__all__ = [
    "RootTuple",
    "IsoWitness",
    "roots",
    "is_simple",
    "has_finite_gldim",
    "satisfies_sfgld",
    "gwa_isomorphism",
    "theta_conjugacy",
    "root_shift",
    "reflect",
]


@dataclass(frozen=True)
class RootTuple:
    """Ordered roots of a monic polynomial; repeated roots are allowed."""

    roots: tuple[Scalar, ...]

    def __post_init__(self):
        if not self.roots:
            raise ValueError("a root tuple needs at least one root")
        basis = self.roots[0].basis
        if any(r.basis != basis for r in self.roots):
            raise BasisMismatch("all roots must share one basis")

    @property
    def basis(self) -> BasisSpec:
        return self.roots[0].basis

    @property
    def n(self) -> int:
        return len(self.roots)

    def __len__(self):
        return len(self.roots)

    def __iter__(self):
        return iter(self.roots)

    def __getitem__(self, k):
        return self.roots[k]

    def root(self, i: int) -> Scalar:
        """The 1-based ``i``-th root, matching the usual lambda_i indexing."""
        _check_index(self, i)
        return self.roots[i - 1]

    def with_roots(self, values: Iterable[Scalar]) -> "RootTuple":
        return RootTuple(tuple(values))

    def permuted(self, perm: Sequence[int]) -> "RootTuple":
        """``perm`` is 1-based: entry k of the result is root ``perm[k]``."""
        return RootTuple(tuple(self.roots[p - 1] for p in perm))

    def to_json(self) -> list[dict[str, str]]:
        return [r.to_json() for r in self.roots]

    def __str__(self):
        return "(" + ", ".join(str(r) for r in self.roots) + ")"


def roots(*values, basis: BasisSpec = QQ) -> RootTuple:
    """Convenience constructor: ``roots(0, "1/2", {"1": "1/4", "s": 1})``."""
    return RootTuple(tuple(basis(v) for v in values))


def _check_index(a: RootTuple, i: int) -> None:
    if not 1 <= i <= a.n:
        raise IndexError(f"root index {i} out of range 1..{a.n}")


@dataclass(frozen=True)
class IsoWitness:
    """``mu_i = epsilon * lambda_{sigma(i)} + beta`` for every i.

    ``sigma`` is 1-based.  ``rho`` is the scalar with ``b(h) = rho a(eps h + beta)``.
    """

    epsilon: int
    beta: Scalar
    sigma: tuple[int, ...]
    rho: Fraction

    def to_json(self) -> dict:
        return {
            "epsilon": self.epsilon,
            "beta": self.beta.to_json(),
            "sigma": list(self.sigma),
            "rho": str(self.rho),
        }


# --------------------------------------------------------------------------
# simplicity and global dimension


def is_simple(a: RootTuple) -> bool:
    """A(a) is simple iff no two distinct roots differ by an integer."""
    distinct = list(dict.fromkeys(a.roots))
    return not any((x - y).is_integer() for x, y in itertools.combinations(distinct, 2))


def has_finite_gldim(a: RootTuple) -> bool:
    """A(a) has finite global dimension iff the roots are pairwise distinct."""
    return len(set(a.roots)) == a.n


def satisfies_sfgld(a: RootTuple) -> bool:
    """``lambda_i - lambda_j`` is not an integer for all ``i != j``."""
    return not any((x - y).is_integer() for x, y in itertools.combinations(a.roots, 2))


# --------------------------------------------------------------------------
# isomorphism


def _match(source: Sequence[Scalar], target: Sequence[Scalar]) -> Optional[tuple[int, ...]]:
    """sigma (1-based) with target[i] == source[sigma(i)], or None."""
    if Counter(source) != Counter(target):
        return None
    free: dict[Scalar, list[int]] = {}
    for k, x in enumerate(source):
        free.setdefault(x, []).append(k + 1)
    return tuple(free[y].pop(0) for y in target)


def gwa_isomorphism(
    a: RootTuple, b: RootTuple, epsilons: Sequence[int] = (1, -1)
) -> Optional[IsoWitness]:
    """Decide ``A(a) ~ A(b)`` via ``b(h) = rho a(eps h + beta)``.

    For each sign the translation is forced by the root sums, so the search
    is just two multiset comparisons.  ``epsilons`` restricts or reorders
    the signs tried; the first one that works is reported.
    """
    if a.n != b.n or a.basis != b.basis:
        return None
    n = a.n
    sum_a = sum(a.roots, a.basis.zero())
    sum_b = sum(b.roots, b.basis.zero())
    for eps in epsilons:
        if eps not in (1, -1):
            raise ValueError(f"epsilon must be +-1, got {eps}")
        beta = (sum_b - sum_a * eps) / n
        image = [r * eps + beta for r in a.roots]
        sigma = _match(image, b.roots)
        if sigma is not None:
            return IsoWitness(eps, beta, sigma, Fraction(eps) ** n)
    return None


def theta_conjugacy(a: RootTuple, b: RootTuple) -> Optional[tuple[int, tuple[tuple[int, ...], ...]]]:
    """Find ``sign`` and a permutation matrix S with ``Theta(b) = sign S^t Theta(a) S``.

    Exhaustive over all n! permutations, identity first.
    """
    if a.n != b.n:
        raise PreconditionViolated("theta_conjugacy needs polynomials of equal degree")
    n = a.n
    la, mu = a.roots, b.roots
    for perm in itertools.permutations(range(n)):
        # (S^t Theta S)_{ij} = Theta_{perm(i), perm(j)} for S e_i = e_{perm(i)}
        for sign in (1, -1):
            if all(
                mu[i] - mu[j] == (la[perm[i]] - la[perm[j]]) * sign
                for i in range(n)
                for j in range(i + 1, n)
            ):
                s = tuple(tuple(int(perm[j] == i) for j in range(n)) for i in range(n))
                return sign, s
    return None


# --------------------------------------------------------------------------
# root moves


def root_shift(a: RootTuple, i: int) -> RootTuple:
    """Replace ``lambda_i`` by ``lambda_i + 1`` (1-based ``i``).

    This is the polynomial ``b_i`` that the progenerator ``P_i`` links ``A(a)`` to.
    """
    _check_index(a, i)
    values = list(a.roots)
    values[i - 1] = values[i - 1] + 1
    return RootTuple(tuple(values))


def reflect(a: RootTuple, shift=1) -> RootTuple:
    """Roots of ``a(shift - h)`` up to sign: ``lambda_i -> shift - lambda_i``."""
    return RootTuple(tuple(-r + shift for r in a.roots))
