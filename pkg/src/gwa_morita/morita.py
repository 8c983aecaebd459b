"""Morita equivalence of classical GWAs: sufficient and necessary conditions.

The necessary condition asks for ``N in GL_{n-1}(Z)`` and ``M in Z^{n-1}``
with ``N Lambda = Omega + M``, where ``Lambda = (l_n - l_1, ..., l_n - l_{n-1})``
and ``Omega`` is the same vector for the second polynomial.  Rows of N are
independent unknowns: row k must lie in the set

    { r in Z^{n-1} : r . Lambda - Omega_k in Z },

which is a coset ``p_k + L`` of one lattice L.  The solver computes these
cosets exactly (irrational coordinates first, then the congruence on the
rational coordinate) and then looks for a unimodular choice of rows.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

from . import lattice as lat
from .errors import InternalAssertion, PreconditionViolated
from .gwa import RootTuple, satisfies_sfgld
from .scalars import Scalar

__all__ = [
    "DEFAULT_BOUND",
    "MatchWitness",
    "Holds",
    "Fails",
    "Unknown",
    "NecessityResult",
    "RowCosets",
    "lambda_vector",
    "sufficient_morita",
    "necessary_morita",
    "row_cosets",
    "search_unimodular",
    "check_cn",
    "witness_from_matching",
    "exact_relation_dim",
    "hodges_n2",
]

DEFAULT_BOUND = 25


@dataclass(frozen=True)
class MatchWitness:
    """``lambda_i = mu_{tau(i)} + shifts_i`` for all i (``tau`` is 1-based)."""

    tau: tuple[int, ...]
    shifts: tuple[int, ...]

    def to_json(self) -> dict:
        return {"tau": list(self.tau), "shifts": list(self.shifts)}


@dataclass(frozen=True)
class Holds:
    N: tuple[tuple[int, ...], ...]
    M: tuple[int, ...]
    tag = "holds"

    def k0_matrix(self) -> tuple[tuple[int, ...], ...]:
        """Matrix of K_0(F) in the bases ([P_i]-[A], [A]): ``[[N, M], [0, 1]]``."""
        k = len(self.M)
        rows = [tuple(row) + (m,) for row, m in zip(self.N, self.M)]
        rows.append((0,) * k + (1,))
        return tuple(rows)

    def to_json(self) -> dict:
        return {"tag": self.tag, "N": [list(r) for r in self.N], "M": list(self.M)}


@dataclass(frozen=True)
class Fails:
    """A complete refutation: no (N, M) exists at all."""

    stage: str
    obstruction: str
    tag = "fails"

    def to_json(self) -> dict:
        return {"tag": self.tag, "stage": self.stage, "obstruction": self.obstruction}


@dataclass(frozen=True)
class Unknown:
    """The determinant search exhausted its box without a verdict."""

    bound: int
    tag = "unknown"

    def to_json(self) -> dict:
        return {"tag": self.tag, "bound": self.bound}


NecessityResult = Union[Holds, Fails, Unknown]


def lambda_vector(a: RootTuple) -> tuple[Scalar, ...]:
    """``(l_n - l_1, ..., l_n - l_{n-1})``; the root order matters."""
    last = a.roots[-1]
    return tuple(last - r for r in a.roots[:-1])


def _require_pair(a: RootTuple, b: RootTuple, min_degree: int = 1) -> None:
    if a.n != b.n:
        raise PreconditionViolated(f"degrees differ: {a.n} vs {b.n}")
    if a.n < min_degree:
        raise PreconditionViolated(f"degree must be at least {min_degree}")
    if a.basis != b.basis:
        raise PreconditionViolated("polynomials are declared over different bases")
    for name, p in (("a", a), ("b", b)):
        if not satisfies_sfgld(p):
            raise PreconditionViolated(f"{name} = {p} has two roots differing by an integer")


# --------------------------------------------------------------------------
# sufficient condition


def sufficient_morita(a: RootTuple, b: RootTuple) -> Optional[MatchWitness]:
    """Perfect matching ``i -> tau(i)`` with ``lambda_i - mu_tau(i)`` integral."""
    _require_pair(a, b)
    n = a.n
    edges = [[j for j in range(n) if (a.roots[i] - b.roots[j]).is_integer()] for i in range(n)]
    owner: list[Optional[int]] = [None] * n

    def augment(i: int, seen: set[int]) -> bool:
        for j in edges[i]:
            if j in seen:
                continue
            seen.add(j)
            if owner[j] is None or augment(owner[j], seen):
                owner[j] = i
                return True
        return False

    for i in range(n):
        if not augment(i, set()):
            return None
    tau = [0] * n
    for j, i in enumerate(owner):
        tau[i] = j
    shifts = tuple(int((a.roots[i] - b.roots[tau[i]]).rational_part) for i in range(n))
    return MatchWitness(tuple(t + 1 for t in tau), shifts)


def witness_from_matching(a: RootTuple, b: RootTuple, w: MatchWitness) -> Holds:
    """The (N, M) induced by a root matching.

    With ``s = tau^{-1}`` row k of N is ``e_{s(k)} - e_{s(n)}`` (coordinate n
    dropped), a signed permutation with one column correction.
    """
    n = a.n
    inv = [0] * n
    for i, t in enumerate(w.tau):
        inv[t - 1] = i
    rows = []
    for k in range(n - 1):
        row = [0] * (n - 1)
        if inv[k] < n - 1:
            row[inv[k]] += 1
        if inv[n - 1] < n - 1:
            row[inv[n - 1]] -= 1
        rows.append(tuple(row))
    m = check_cn(a, b, rows)
    if m is None:
        raise InternalAssertion("matching-induced matrix does not satisfy N Lambda = Omega + M")
    return Holds(tuple(rows), m)


# --------------------------------------------------------------------------
# necessary condition


def check_cn(a: RootTuple, b: RootTuple, N: Sequence[Sequence[int]]) -> Optional[tuple[int, ...]]:
    """Return M if ``det N = +-1`` and ``N Lambda - Omega`` is integral, else None."""
    if lat.det(N) not in (1, -1):
        return None
    lam, omega = lambda_vector(a), lambda_vector(b)
    diff = [x - y for x, y in zip(lat.matvec(N, lam), omega)]
    if not all(d.is_integer() for d in diff):
        return None
    return tuple(int(d.rational_part) for d in diff)


@dataclass
class RowCosets:
    """Row k of any admissible N lies in ``particular[k] + span(lattice)``."""

    particular: list[list[int]]
    lattice: list[list[int]]
    rational_kernel_dim: int = 0
    notes: list[str] = field(default_factory=list)

    @property
    def dim(self) -> int:
        return len(self.lattice)


def _coord(x: Scalar, c: int) -> Fraction:
    return x.coeffs[c]


def row_cosets(lam: Sequence[Scalar], omega: Sequence[Scalar]) -> Union[RowCosets, Fails]:
    """Stages (ii) and (iii) of the solver: exact coset description or a refutation."""
    k = len(lam)
    basis = lam[0].basis
    symbols = basis.symbols
    irr = [c for c in range(1, basis.dim) if any(_coord(x, c) for x in list(lam) + list(omega))]

    # stage (ii): the irrational coordinates give exact Q-linear equations
    a_irr = [[_coord(x, c) for x in lam] for c in irr]
    particular: list[list[int]] = []
    kernel: Optional[list[list[int]]] = None
    for row in range(k):
        rhs = [_coord(omega[row], c) for c in irr]
        if a_irr and lat.rational_solve(a_irr, rhs) is None:
            eqs = "; ".join(
                f"sum_j n_{row + 1}j * [{symbols[c]}](Lambda_j) = {rhs_c}"
                for c, rhs_c in zip(irr, rhs)
            )
            return Fails(
                "rational-linear",
                f"row {row + 1}: the system {eqs} with coefficients "
                f"{[[str(q) for q in r] for r in a_irr]} has no rational solution",
            )
        sol = lat.solve_rational_integer_system(a_irr, rhs, ncols=k)
        if sol is None:
            return Fails(
                "integer-lattice",
                f"row {row + 1}: the irrational-coordinate equations "
                f"{[[str(q) for q in r] for r in a_irr]} . n = {[str(q) for q in rhs]} "
                f"are solvable over Q but not over Z",
            )
        x0, kern = sol
        particular.append(x0)
        kernel = kern
    kernel = kernel or []
    rational_kernel_dim = len(kernel)

    # stage (iii): the coefficient of 1 must be integral -> a congruence in z
    lam_rat = [x.rational_part for x in lam]
    a_z = [sum((q * v for q, v in zip(lam_rat, kv)), Fraction(0)) for kv in kernel]
    cosets = []
    z_lattice = None
    for row in range(k):
        base = sum((q * v for q, v in zip(lam_rat, particular[row])), Fraction(0))
        target = omega[row].rational_part - base
        # a_z . z - t = target with t the integer M-entry
        sol = lat.solve_rational_integer_system([a_z + [Fraction(-1)]], [target], ncols=len(a_z) + 1)
        if sol is None:
            ints, rhs_int = lat.clear_denominators(a_z, target)
            den = math.lcm(*(Fraction(q).denominator for q in a_z + [target]))
            return Fails(
                "congruence",
                f"row {row + 1}: integrality of the rational part requires "
                f"{_format_congruence(ints, rhs_int, den)}, which has no integer solution "
                f"(gcd {math.gcd(*ints, den)} does not divide {rhs_int})",
            )
        (*z0, _t0), zk = sol
        row0 = [p + sum(z * kv[j] for z, kv in zip(z0, kernel)) for j, p in enumerate(particular[row])]
        cosets.append(row0)
        z_lattice = zk
    lattice = lat.lattice_basis(
        [[sum(w * kv[j] for w, kv in zip(zrow[:-1], kernel)) for j in range(k)] for zrow in z_lattice or []]
    )
    cosets = [lat.reduce_mod_lattice(p, lattice, centered=True) for p in cosets]
    return RowCosets(cosets, lat.lll_reduce(lattice), rational_kernel_dim)


def _format_congruence(coeffs: Sequence[int], rhs: int, modulus: int) -> str:
    terms = " + ".join(f"{c}*z{j + 1}" for j, c in enumerate(coeffs)) or "0"
    return f"{terms} = {rhs} (mod {modulus})"


def _shell(dim: int, radius: int):
    """Integer vectors with max-norm exactly ``radius``, lexicographic."""
    if dim == 0:
        if radius == 0:
            yield ()
        return
    for v in itertools.product(range(-radius, radius + 1), repeat=dim):
        if radius == 0 or max(map(abs, v)) == radius:
            yield v


def _is_primitive(rows: Sequence[Sequence[int]]) -> bool:
    """Can these rows be completed to a unimodular matrix?"""
    m = len(rows)
    n = len(rows[0])
    g = 0
    for cols in itertools.combinations(range(n), m):
        g = math.gcd(g, int(lat.det([[r[c] for c in cols] for r in rows])))
        if g == 1:
            return True
    return g == 1


def _complete_last_row(
    rows: Sequence[Sequence[int]], p: Sequence[int], basis: Sequence[Sequence[int]], signs=(1, -1)
) -> Optional[list[int]]:
    """Pick ``p + basis . z`` making ``det([rows; last]) = +-1``; det is linear in it."""
    k = len(p)
    full = [list(r) for r in rows] + [[0] * k]
    cof = [(-1) ** (k - 1 + j) * int(lat.minor(full, k - 1, j)) if k > 1 else 1 for j in range(k)]
    base = sum(c * x for c, x in zip(cof, p))
    gens = [sum(c * x for c, x in zip(cof, b)) for b in basis]
    for s in signs:
        if not gens:
            if base == s:
                return list(p)
            continue
        sol = lat.solve_linear_diophantine(gens, s - base)
        if sol is not None:
            z, _ = sol
            return [x + sum(zi * b[j] for zi, b in zip(z, basis)) for j, x in enumerate(p)]
    return None


def necessary_morita(a: RootTuple, b: RootTuple, bound: int = DEFAULT_BOUND) -> NecessityResult:
    """Decide ``exists N in GL_{n-1}(Z), M in Z^{n-1}: N Lambda = Omega + M``.

    ``Fails`` is only returned for complete refutations; when a bounded
    determinant search runs dry the answer is ``Unknown(bound)``.  Witnesses
    are the first found in a fixed order: shells of growing max-norm over the
    lattice parameters of rows 1..n-2, lexicographic inside a shell, with the
    last row solved exactly.
    """
    _require_pair(a, b, min_degree=2)
    lam, omega = lambda_vector(a), lambda_vector(b)
    cos = row_cosets(lam, omega)
    if isinstance(cos, Fails):
        return cos
    k = len(lam)
    p, L = cos.particular, cos.lattice

    def finish(N) -> Holds:
        m = check_cn(a, b, N)
        if m is None:
            raise InternalAssertion(f"solver produced an invalid witness {N}")
        return Holds(lat.as_tuple(N), m)

    if not L:
        if lat.det(p) in (1, -1):
            return finish(p)
        return Fails(
            "determinant",
            f"N is forced to be {p}, whose determinant {lat.det(p)} is not +-1",
        )
    if k == 1:
        last = _complete_last_row([], p[0], L)
        if last is not None:
            return finish([last])
        return Fails(
            "determinant",
            f"N = ({p[0][0]} + {L[0][0]} z) can never equal +-1",
        )

    rows = search_unimodular(p, L, bound)
    return finish(rows) if rows is not None else Unknown(bound)


def search_unimodular(
    particular: Sequence[Sequence[int]],
    basis: Sequence[Sequence[int]],
    bound: int,
    signs: Sequence[int] = (1, -1),
) -> Optional[list[list[int]]]:
    """Find rows ``r_k in particular[k] + span_Z(basis)`` with ``det in signs``.

    Rows 1..k-1 run over shells of growing max-norm in the lattice
    parameters (lexicographic inside a shell, primitive prefixes only); the
    last row is then solved exactly.  Returns None when nothing turns up.
    """
    p, L = particular, basis
    k = len(p)
    if not L:
        return [list(r) for r in p] if lat.det(p) in signs else None
    if k == 1:
        last = _complete_last_row([], p[0], L, signs)
        return [last] if last is not None else None
    f = len(L)
    for radius in range(bound + 1):
        for params in _shell(f * (k - 1), radius):
            rows = []
            for r in range(k - 1):
                z = params[r * f:(r + 1) * f]
                rows.append([x + sum(zi * bv[j] for zi, bv in zip(z, L)) for j, x in enumerate(p[r])])
            if not _is_primitive(rows):
                continue
            last = _complete_last_row(rows, p[k - 1], L, signs)
            if last is not None:
                return rows + [last]
    return None


def exact_relation_dim(lam: Sequence[Scalar]) -> int:
    """Dimension of ``{r in Q^k : sum r_j Lambda_j = 0}`` (all coordinates)."""
    d = lam[0].basis.dim
    rows = [[x.coeffs[c] for x in lam] for c in range(d)]
    return len(lat.rational_nullspace(rows))


# --------------------------------------------------------------------------
# degree two


def hodges_n2(a: RootTuple, b: RootTuple) -> bool:
    """``lambda_1 - lambda_2 = +-(mu_1 - mu_2) + m`` for an integer m."""
    _require_pair(a, b)
    if a.n != 2:
        raise PreconditionViolated("hodges_n2 needs polynomials of degree 2")
    theta = a.roots[0] - a.roots[1]
    theta2 = b.roots[0] - b.roots[1]
    return (theta - theta2).is_integer() or (theta + theta2).is_integer()
