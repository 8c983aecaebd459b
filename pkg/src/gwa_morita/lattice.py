"""Exact linear algebra over Q and Z.

Matrices are lists (or tuples) of rows.  Everything here works with Python
ints and :class:`fractions.Fraction`; nothing is ever rounded.

The integer side provides Hermite and Smith normal forms with their
unimodular transforms, which is all the lattice machinery the Morita
solver and the torus simplicity test need: integer kernels, affine
integer solution sets, and linear Diophantine equations.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Optional, Sequence

IntMatrix = list[list[int]]


# ---------------------------------------------------------------------------
# basic integer matrix helpers


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(a: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*a)] if a else []


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a: Sequence[Sequence], v: Sequence) -> list:
    out = []
    for row in a:
        acc = 0
        for x, y in zip(row, v):
            if x:
                acc = acc + x * y
        out.append(acc)
    return out


def as_tuple(a: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(x) for x in row) for row in a)


def det(a: Sequence[Sequence]) -> Fraction | int:
    """Determinant by fraction-free Bareiss elimination.

    Integer input gives an int; Fraction input gives a Fraction.
    """
    n = len(a)
    if n == 0:
        return 1
    m = [list(row) for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0 * m[0][0]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                if isinstance(num, int) and isinstance(prev, int):
                    m[i][j] = num // prev
                else:
                    m[i][j] = num / prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def minor(a: Sequence[Sequence], i: int, j: int):
    """Determinant of ``a`` with row ``i`` and column ``j`` deleted (0-based)."""
    sub = [[x for c, x in enumerate(row) if c != j] for r, row in enumerate(a) if r != i]
    return det(sub)


def unsigned_cofactor_matrix(a: Sequence[Sequence[int]]) -> IntMatrix:
    """``cof'(a)[i][j] = det(a with row i and column j deleted)``."""
    n = len(a)
    return [[minor(a, i, j) for j in range(n)] for i in range(n)]


def inverse_unimodular(a: Sequence[Sequence[int]]) -> IntMatrix:
    """Integer inverse of a matrix with determinant +-1."""
    d = det(a)
    if d not in (1, -1):
        raise ValueError(f"matrix has determinant {d}, not +-1")
    n = len(a)
    # inverse = adj(a) / det(a), adj = cof^t
    return [[(-1) ** (i + j) * minor(a, j, i) * d for j in range(n)] for i in range(n)]


# ---------------------------------------------------------------------------
# rational linear algebra


def rref(a: Sequence[Sequence], augment: Optional[Sequence] = None):
    """Reduced row echelon form over Q.

    Returns ``(rows, pivot_columns)``; with ``augment`` the extra column is
    carried along as the last entry of each row.
    """
    rows = [[Fraction(x) for x in row] for row in a]
    if augment is not None:
        for row, b in zip(rows, augment):
            row.append(Fraction(b))
    ncols = len(a[0]) if a else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rational_rank(a: Sequence[Sequence]) -> int:
    if not a:
        return 0
    return len(rref(a)[1])


def rational_solve(a: Sequence[Sequence], b: Sequence) -> Optional[list[Fraction]]:
    """One solution of ``a x = b`` over Q (free variables set to 0), or None."""
    ncols = len(a[0]) if a else 0
    rows, pivots = rref(a, augment=b)
    for row in rows[len(pivots):]:
        if row[-1] != 0:
            return None
    x = [Fraction(0)] * ncols
    for r, c in enumerate(pivots):
        x[c] = rows[r][-1]
    return x


def rational_nullspace(a: Sequence[Sequence], ncols: Optional[int] = None) -> list[list[Fraction]]:
    if not a:
        n = ncols or 0
        return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    n = len(a[0])
    rows, pivots = rref(a)
    basis = []
    for free in (c for c in range(n) if c not in pivots):
        v = [Fraction(0)] * n
        v[free] = Fraction(1)
        for r, c in enumerate(pivots):
            v[c] = -rows[r][free]
        basis.append(v)
    return basis


def clear_denominators(row: Sequence[Fraction], rhs: Fraction = Fraction(0)) -> tuple[list[int], int]:
    """Scale a rational equation ``row . x = rhs`` to integers."""
    den = 1
    for q in list(row) + [rhs]:
        den = math.lcm(den, Fraction(q).denominator)
    return [int(Fraction(q) * den) for q in row], int(Fraction(rhs) * den)


# ---------------------------------------------------------------------------
# integer normal forms


def hermite_normal_form(a: Sequence[Sequence[int]]) -> tuple[IntMatrix, IntMatrix]:
    """Row-style Hermite normal form.

    Returns ``(H, U)`` with ``U`` unimodular and ``U a = H``.  ``H`` is in row
    echelon form with positive pivots and the entries above each pivot
    reduced into ``[0, pivot)``.  Zero rows come last.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    h = [list(map(int, row)) for row in a]
    u = identity(m)

    def swap(i, j):
        h[i], h[j] = h[j], h[i]
        u[i], u[j] = u[j], u[i]

    def addrow(dst, src, q):  # row_dst -= q * row_src
        if q:
            h[dst] = [x - q * y for x, y in zip(h[dst], h[src])]
            u[dst] = [x - q * y for x, y in zip(u[dst], u[src])]

    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if h[i][c] != 0]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(h[i][c]))
            swap(r, p)
            clean = True
            for i in range(r + 1, m):
                if h[i][c]:
                    addrow(i, r, h[i][c] // h[r][c])
                    if h[i][c]:
                        clean = False
            if clean:
                break
        if h[r][c] == 0:
            continue
        if h[r][c] < 0:
            h[r] = [-x for x in h[r]]
            u[r] = [-x for x in u[r]]
        for i in range(r):
            addrow(i, r, h[i][c] // h[r][c])
        r += 1
    return h, u


def smith_normal_form(a: Sequence[Sequence[int]]) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form ``D = U a V`` with ``U``, ``V`` unimodular.

    The diagonal of ``D`` is nonnegative and each entry divides the next.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    d = [list(map(int, row)) for row in a]
    u = identity(m)
    v = identity(n)

    def rowop(dst, src, q):
        d[dst] = [x - q * y for x, y in zip(d[dst], d[src])]
        u[dst] = [x - q * y for x, y in zip(u[dst], u[src])]

    def colop(dst, src, q):
        for row in d:
            row[dst] -= q * row[src]
        for row in v:
            row[dst] -= q * row[src]

    def swaprows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swapcols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    for t in range(min(m, n)):
        while True:
            entries = [(abs(d[i][j]), i, j) for i in range(t, m) for j in range(t, n) if d[i][j]]
            if not entries:
                return d, u, v
            _, pi, pj = min(entries)
            swaprows(t, pi)
            swapcols(t, pj)
            clean = True
            for i in range(t + 1, m):
                if d[i][t]:
                    rowop(i, t, d[i][t] // d[t][t])
                    clean = clean and not d[i][t]
            for j in range(t + 1, n):
                if d[t][j]:
                    colop(j, t, d[t][j] // d[t][t])
                    clean = clean and not d[t][j]
            if not clean:
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if d[i][j] % d[t][t]),
                None,
            )
            if bad is None:
                break
            rowop(t, bad, -1)
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
    return d, u, v


# ---------------------------------------------------------------------------
# integer solution sets


def lattice_basis(vectors: Sequence[Sequence[int]]) -> IntMatrix:
    """Canonical (HNF) basis of the lattice spanned by ``vectors``."""
    if not vectors:
        return []
    h, _ = hermite_normal_form(vectors)
    return [row for row in h if any(row)]


def reduce_mod_lattice(
    x: Sequence[int], basis_hnf: Sequence[Sequence[int]], centered: bool = False
) -> list[int]:
    """Canonical coset representative of ``x`` modulo an HNF basis.

    Pivot coordinates land in ``[0, p)``, or in ``[-p//2, p - p//2)`` when
    ``centered``.
    """
    x = list(x)
    for row in basis_hnf:
        c = next(k for k, e in enumerate(row) if e)
        q = (x[c] + row[c] // 2) // row[c] if centered else x[c] // row[c]
        if q:
            x = [a - q * b for a, b in zip(x, row)]
    return x


def integer_kernel(a: Sequence[Sequence[int]], ncols: Optional[int] = None) -> IntMatrix:
    """HNF basis (as rows) of ``{x in Z^n : a x = 0}``."""
    if not a:
        return identity(ncols or 0)
    n = len(a[0])
    h, u = hermite_normal_form(transpose(a))
    kernel = [u[i] for i in range(n) if not any(h[i])]
    return lattice_basis(kernel)


def solve_integer_system(
    a: Sequence[Sequence[int]], b: Sequence[int], ncols: Optional[int] = None
) -> Optional[tuple[list[int], IntMatrix]]:
    """All integer solutions of ``a x = b``.

    Returns ``(x0, K)`` meaning the solution set is ``x0 + Z-span(rows of K)``
    with ``K`` in Hermite normal form and ``x0`` reduced modulo it, or None
    when there is no integer solution.
    """
    if not a:
        n = ncols or 0
        return [0] * n, identity(n)
    n = len(a[0])
    d, u, v = smith_normal_form(a)
    ub = matvec(u, b)
    y = [0] * n
    rank = 0
    for i in range(min(len(a), n)):
        if d[i][i] == 0:
            break
        rank += 1
        if ub[i] % d[i][i]:
            return None
        y[i] = ub[i] // d[i][i]
    if any(ub[i] for i in range(rank, len(a))):
        return None
    x0 = matvec(v, y)
    kernel = lattice_basis([[v[r][j] for r in range(n)] for j in range(rank, n)])
    return reduce_mod_lattice(x0, kernel), kernel


def solve_rational_integer_system(
    a: Sequence[Sequence[Fraction]], b: Sequence[Fraction], ncols: int
) -> Optional[tuple[list[int], IntMatrix]]:
    """Integer solutions of a system with rational coefficients."""
    rows, rhs = [], []
    for row, beta in zip(a, b):
        r, c = clear_denominators(row, beta)
        rows.append(r)
        rhs.append(c)
    return solve_integer_system(rows, rhs, ncols=ncols)


def solve_linear_diophantine(coeffs: Sequence[int], target: int) -> Optional[tuple[list[int], IntMatrix]]:
    """Integer solutions of ``coeffs . x = target``."""
    return solve_integer_system([list(coeffs)], [target], ncols=len(coeffs))


def lll_reduce(basis: Sequence[Sequence[int]], delta: Fraction = Fraction(3, 4)) -> IntMatrix:
    """LLL-reduced basis of the lattice spanned by the (independent) rows.

    Exact rational Gram-Schmidt; meant for the tiny dimensions used here.
    """
    b = [list(map(int, row)) for row in basis]
    n = len(b)
    if n <= 1:
        return b

    def dot(u, v):
        return sum(x * y for x, y in zip(u, v))

    def gram_schmidt():
        bstar: list[list[Fraction]] = []
        mu = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            v = [Fraction(x) for x in b[i]]
            for j in range(i):
                mu[i][j] = dot(b[i], bstar[j]) / dot(bstar[j], bstar[j])
                v = [x - mu[i][j] * y for x, y in zip(v, bstar[j])]
            bstar.append(v)
        return bstar, mu

    bstar, mu = gram_schmidt()
    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            q = round(mu[k][j])
            if q:
                b[k] = [x - q * y for x, y in zip(b[k], b[j])]
                bstar, mu = gram_schmidt()
        if dot(bstar[k], bstar[k]) >= (delta - mu[k][k - 1] ** 2) * dot(bstar[k - 1], bstar[k - 1]):
            k += 1
        else:
            b[k], b[k - 1] = b[k - 1], b[k]
            bstar, mu = gram_schmidt()
            k = max(k - 1, 1)
    return b
