"""Quantum tori in additive form.

A torus with relations ``X_i X_j = q_ij X_j X_i`` is stored as the matrix
``Theta`` with ``q_ij = exp(2 pi i theta_ij)``; only ``Theta mod Z`` matters,
so every condition below is an integrality test on exact scalars.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from . import lattice as lat
from .degree3 import N1, Mat2, check_cn3
from .errors import (
    Cn3Violated,
    InternalAssertion,
    InternalBridgeFailure,
    NormalizeFirst,
    NotUnimodular,
    PreconditionViolated,
)
from .gwa import RootTuple, gwa_isomorphism
from .morita import hodges_n2, row_cosets, search_unimodular, RowCosets
from .scalars import BasisSpec, Scalar

__all__ = [
    "ThetaMatrix",
    "TorusHolds",
    "TorusUnknown",
    "TorusIsoResult",
    "Rank2Report",
    "theta_of",
    "torus_kernel",
    "torus_is_simple",
    "q_simple",
    "check_torus_iso",
    "torus_iso_search",
    "rank2_report",
    "build_nhat",
    "transport_holds",
    "cof_bridge",
    "theta_vec",
    "morita_to_torus",
]

IntMatrix = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class ThetaMatrix:
    """Square scalar matrix, antisymmetric modulo integers."""

    entries: tuple[tuple[Scalar, ...], ...]

    def __post_init__(self):
        n = len(self.entries)
        if n == 0 or any(len(r) != n for r in self.entries):
            raise ValueError("a theta matrix must be square and non-empty")
        for i in range(n):
            for j in range(i, n):
                if not (self.entries[i][j] + self.entries[j][i]).is_integer():
                    raise ValueError(f"theta[{i + 1}][{j + 1}] + theta[{j + 1}][{i + 1}] is not an integer")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], basis: Optional[BasisSpec] = None) -> "ThetaMatrix":
        if basis is None:
            basis = next(x.basis for r in rows for x in r if isinstance(x, Scalar))
        return cls(tuple(tuple(basis(x) for x in r) for r in rows))

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def basis(self) -> BasisSpec:
        return self.entries[0][0].basis

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def to_json(self) -> list[list[dict[str, str]]]:
        return [[x.to_json() for x in r] for r in self.entries]


def theta_of(a: RootTuple) -> ThetaMatrix:
    """``theta_ij = lambda_i - lambda_j``."""
    return ThetaMatrix(tuple(tuple(x - y for y in a.roots) for x in a.roots))


def _congruent(x: Scalar, y: Scalar) -> bool:
    return (x - y).is_integer()


# --------------------------------------------------------------------------
# simplicity


def torus_kernel(T: ThetaMatrix) -> IntMatrix:
    """HNF basis of ``{m in Z^n : sum_k m_k theta_kj in Z for all j}``.

    Unknowns are ``(m, t)`` with ``t_j`` the integer value of column j; every
    basis coordinate of every column gives one rational equation.
    """
    n, d = T.n, T.basis.dim
    rows = []
    for j in range(n):
        for c in range(d):
            coeffs = [T[k, j].coeffs[c] for k in range(n)]
            coeffs += [Fraction(-1 if (c == 0 and jj == j) else 0) for jj in range(n)]
            if any(coeffs):
                ints, _ = lat.clear_denominators(coeffs)
                rows.append(ints)
    if not rows:
        rows = [[0] * (2 * n)]
    kern = lat.integer_kernel(rows, 2 * n)
    return lat.as_tuple(lat.lattice_basis([v[:n] for v in kern]))


def torus_is_simple(T: ThetaMatrix) -> bool:
    return not torus_kernel(T)


def q_simple(a: RootTuple) -> bool:
    """Whether the torus attached to ``a`` is simple."""
    return torus_is_simple(theta_of(a))


# --------------------------------------------------------------------------
# isomorphism


def _transform(T: ThetaMatrix, M: Sequence[Sequence[int]]) -> list[list[Scalar]]:
    """``M^t T M``."""
    n = T.n
    zero = T.basis.zero()
    TM = [[sum((T[i, k] * M[k][j] for k in range(n)), zero) for j in range(n)] for i in range(n)]
    return [[sum((TM[k][j] * M[k][i] for k in range(n)), zero) for j in range(n)] for i in range(n)]


def check_torus_iso(T: ThetaMatrix, T2: ThetaMatrix, M: Sequence[Sequence[int]]) -> bool:
    """``M^t T M == T2`` entry-wise modulo Z."""
    if T.n != T2.n or len(M) != T.n or any(len(r) != T.n for r in M):
        raise PreconditionViolated("theta matrices and M must be square of the same size")
    if T.basis != T2.basis:
        raise PreconditionViolated("theta matrices live over different bases")
    if lat.det(M) not in (1, -1):
        raise NotUnimodular(f"det {lat.as_tuple(M)} = {lat.det(M)}")
    got = _transform(T, M)
    return all(_congruent(got[i][j], T2[i, j]) for i in range(T.n) for j in range(T.n))


@dataclass(frozen=True)
class TorusHolds:
    M: IntMatrix

    def to_json(self) -> dict:
        return {"tag": "holds", "M": [list(r) for r in self.M]}


@dataclass(frozen=True)
class TorusUnknown:
    bound: int

    def to_json(self) -> dict:
        return {"tag": "unknown", "bound": self.bound}


TorusIsoResult = Union[TorusHolds, TorusUnknown]


def _signed_permutations(n: int):
    # plain permutations before any sign flip
    for signs in itertools.product((1, -1), repeat=n):
        for perm in itertools.permutations(range(n)):
            yield tuple(tuple(signs[j] if perm[j] == i else 0 for j in range(n)) for i in range(n))


def torus_iso_search(T: ThetaMatrix, T2: ThetaMatrix, bound: int = 25) -> TorusIsoResult:
    """Look for M in GL_n(Z) with ``M^t T M = T2 mod Z``; never proves a negative.

    Fast paths come first (identity, then signed permutations).  In rank 2
    ``M^t T M = det(M) T`` so the fast paths already see everything.  In rank
    3 the problem is linear in the unsigned cofactor matrix C of M, so the
    row-coset solver finds C in SL_3(Z) and the cofactor bridge recovers M.
    Larger ranks fall back to brute force over entries in ``[-bound, bound]``.
    """
    if T.n != T2.n:
        raise PreconditionViolated("theta matrices of different sizes")
    n = T.n
    for M in _signed_permutations(n):
        if check_torus_iso(T, T2, M):
            return TorusHolds(M)
    if n <= 2:
        return TorusUnknown(bound)
    if n == 3:
        cos = row_cosets(theta_vec(T), theta_vec(T2))
        if isinstance(cos, RowCosets):
            C = search_unimodular(cos.particular, cos.lattice, bound, signs=(1,))
            if C is not None:
                M = cof_bridge(C)
                if not check_torus_iso(T, T2, M):
                    raise InternalBridgeFailure(f"bridged matrix {M} is not a torus isomorphism")
                return TorusHolds(M)
        return TorusUnknown(bound)
    rng = range(-bound, bound + 1)
    for flat in itertools.product(rng, repeat=n * n):
        M = tuple(tuple(flat[i * n:(i + 1) * n]) for i in range(n))
        if lat.det(M) in (1, -1) and check_torus_iso(T, T2, M):
            return TorusHolds(M)
    return TorusUnknown(bound)


# --------------------------------------------------------------------------
# rank two


@dataclass(frozen=True)
class Rank2Report:
    torus_simple_a: bool
    torus_simple_b: bool
    gwa_iso: bool
    morita: bool
    torus_iso: bool

    def to_json(self) -> dict:
        return dict(self.__dict__)


def rank2_report(a: RootTuple, b: RootTuple, bound: int = 25) -> Rank2Report:
    """All five rank-2 predicates, with their expected equivalences asserted."""
    if a.n != 2 or b.n != 2:
        raise PreconditionViolated("rank2_report needs degree-2 polynomials")
    Ta, Tb = theta_of(a), theta_of(b)
    sa, sb = torus_is_simple(Ta), torus_is_simple(Tb)
    if not (sa and sb):
        raise PreconditionViolated("rank2_report needs both tori simple")
    gwa_iso = gwa_isomorphism(a, b) is not None
    morita = hodges_n2(a, b)
    torus_iso = isinstance(torus_iso_search(Ta, Tb, bound), TorusHolds)
    theta, theta2 = Ta[0, 1], Tb[0, 1]
    if gwa_iso != (theta2 == theta or theta2 == -theta):
        raise InternalAssertion("isomorphism does not match theta' = +-theta")
    if morita != torus_iso:
        raise InternalAssertion("Morita equivalence and torus isomorphism disagree")
    return Rank2Report(sa, sb, gwa_iso, morita, torus_iso)


# --------------------------------------------------------------------------
# degree three: from (cn3) data to a torus isomorphism


def theta_vec(T: ThetaMatrix) -> list[Scalar]:
    """Entries (2,3), (1,3), (1,2) of a 3x3 theta matrix."""
    if T.n != 3:
        raise PreconditionViolated("theta_vec is defined for 3x3 matrices")
    return [T[1, 2], T[0, 2], T[0, 1]]


def build_nhat(N: Mat2, normalize: bool = True, alternative_cd: bool = False) -> tuple[IntMatrix, bool]:
    """Lift N to the 3x3 matrix acting on ``(theta_23, theta_13, theta_12)``.

    ``c = n2 - n4 + 1`` and ``d = n1 - n3 - 1`` are the coefficients that
    make the lift transport (cn3) data; ``alternative_cd`` swaps in
    ``c = n1 - n3 + 1``, ``d = n2 - n4 - 1`` for comparison, which already
    breaks for N = I.  With ``normalize`` a det -1 matrix is first replaced
    by ``N1 N``; the caller must then swap mu_1 and mu_2.
    """
    if not N.is_unimodular():
        raise NotUnimodular(f"{N} has determinant {N.det}")
    swapped = False
    if normalize and N.det == -1:
        N, swapped = N1 @ N, True
    n1, n2, n3, n4 = N.n1, N.n2, N.n3, N.n4
    if alternative_cd:
        c, d = n1 - n3 + 1, n2 - n4 - 1
    else:
        c, d = n2 - n4 + 1, n1 - n3 - 1
    return ((n4, n3, 0), (n2, n1, 0), (c, d, 1)), swapped


def transport_holds(nhat: Sequence[Sequence[int]], a: RootTuple, b: RootTuple) -> bool:
    """``nhat . vec(Theta(a)) - vec(Theta(b))`` is integral."""
    va, vb = theta_vec(theta_of(a)), theta_vec(theta_of(b))
    return all(x.is_integer() for x in (y - z for y, z in zip(lat.matvec(nhat, va), vb)))


_CHECKER = ((1, -1, 1), (-1, 1, -1), (1, -1, 1))


def cof_bridge(nhat: Sequence[Sequence[int]]) -> IntMatrix:
    """Integer M with ``cof'(M)^t = nhat``, where cof' takes unsigned minors."""
    if lat.det(nhat) != 1:
        raise NormalizeFirst(f"det {lat.as_tuple(nhat)} = {lat.det(nhat)}; normalize to det 1 first")
    signed = [[_CHECKER[i][j] * nhat[i][j] for j in range(3)] for i in range(3)]
    M = lat.inverse_unimodular(signed)
    target = lat.as_tuple(nhat)
    for cand in (M, [[-x for x in r] for r in M]):
        if lat.as_tuple(lat.transpose(lat.unsigned_cofactor_matrix(cand))) == target:
            return lat.as_tuple(cand)
    raise InternalBridgeFailure(f"no sign of {lat.as_tuple(M)} reproduces {target}")


_SWAP12 = ((0, 1, 0), (1, 0, 0), (0, 0, 1))


def morita_to_torus(
    a: RootTuple, b: RootTuple, N: Mat2, m: Sequence[int], alternative_cd: bool = False
) -> IntMatrix:
    """M with ``M^t Theta(a) M = Theta(b) mod Z`` built from (cn3) data (N, m)."""
    if a.n != 3 or b.n != 3:
        raise PreconditionViolated("morita_to_torus needs cubics")
    if not N.is_unimodular():
        raise NotUnimodular(f"{N} has determinant {N.det}")
    if not check_cn3(a, b, N, *m):
        raise Cn3Violated(f"(N, m) = ({N}, {tuple(m)}) does not satisfy (cn3)")
    nhat, swapped = build_nhat(N, normalize=True, alternative_cd=alternative_cd)
    b_used = b.permuted((2, 1, 3)) if swapped else b
    if not transport_holds(nhat, a, b_used):
        raise InternalAssertion(f"lift {nhat} does not transport {a} to {b_used}")
    M = cof_bridge(nhat)
    if swapped:
        # Theta(b_used) = P^t Theta(b) P with P the (1 2) swap, and P = P^-1
        M = lat.as_tuple(lat.matmul(M, _SWAP12))
    if not check_torus_iso(theta_of(a), theta_of(b), M):
        raise InternalAssertion(f"{M} is not a torus isomorphism")
    return M
