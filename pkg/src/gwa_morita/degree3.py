"""Degree three: the equations (cn3), generator moves, and the group G6.

For cubic ``a`` and ``b`` the necessary condition reads

    det N = +-1
    (l3 - l1) n1 + (l3 - l2) n2 = m1 + (mu3 - mu1)
    (l3 - l1) n3 + (l3 - l2) n4 = m2 + (mu3 - mu2)

i.e. ``N L(lambda) = L(mu) + m`` with ``L(x) = (x3 - x1, x3 - x2)``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

from .errors import InternalAssertion, NotUnimodular, PreconditionViolated
from .gwa import RootTuple, roots, satisfies_sfgld
from .scalars import QQ, BasisSpec, Scalar

__all__ = [
    "Mat2",
    "N1",
    "N2",
    "I2",
    "NEG_I2",
    "X",
    "Move",
    "check_cn3",
    "cn3_shift",
    "generator_move",
    "compose_moves",
    "transport",
    "g6_elements",
    "g6_word",
    "g6_classify",
    "InG6",
    "NotInG6",
    "DirectCounterexample",
    "ReductionChain",
    "DeterminantMinusOne",
    "direct_counterexample",
    "GAUSSIAN",
]


@dataclass(frozen=True)
class Mat2:
    """Integer 2x2 matrix ``[[n1, n2], [n3, n4]]``."""

    n1: int
    n2: int
    n3: int
    n4: int

    @classmethod
    def parse(cls, text: str) -> "Mat2":
        """Parse ``"a,b;c,d"``."""
        rows = [r.split(",") for r in text.replace(" ", "").split(";")]
        if len(rows) != 2 or any(len(r) != 2 for r in rows):
            raise ValueError(f"expected 'a,b;c,d', got {text!r}")
        return cls(*(int(x) for r in rows for x in r))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "Mat2":
        (a, b), (c, d) = rows
        return cls(int(a), int(b), int(c), int(d))

    @property
    def rows(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return ((self.n1, self.n2), (self.n3, self.n4))

    @property
    def det(self) -> int:
        return self.n1 * self.n4 - self.n2 * self.n3

    def is_unimodular(self) -> bool:
        return self.det in (1, -1)

    def __matmul__(self, other: "Mat2") -> "Mat2":
        return Mat2(
            self.n1 * other.n1 + self.n2 * other.n3,
            self.n1 * other.n2 + self.n2 * other.n4,
            self.n3 * other.n1 + self.n4 * other.n3,
            self.n3 * other.n2 + self.n4 * other.n4,
        )

    def __neg__(self) -> "Mat2":
        return Mat2(-self.n1, -self.n2, -self.n3, -self.n4)

    def inverse(self) -> "Mat2":
        d = self.det
        if d not in (1, -1):
            raise NotUnimodular(f"{self} has determinant {d}")
        return Mat2(self.n4 * d, -self.n2 * d, -self.n3 * d, self.n1 * d)

    def apply(self, v: Sequence) -> tuple:
        return (self.n1 * v[0] + self.n2 * v[1], self.n3 * v[0] + self.n4 * v[1])

    def __str__(self):
        return f"{self.n1},{self.n2};{self.n3},{self.n4}"


I2 = Mat2(1, 0, 0, 1)
NEG_I2 = -I2
N1 = Mat2(0, 1, 1, 0)
N2 = Mat2(1, -1, 0, -1)
X = Mat2(0, 1, -1, 0)

GAUSSIAN = BasisSpec.from_products(["1", "i"], {("i", "i"): {"1": -1}})


def _require_cubic(*tuples: RootTuple) -> None:
    for t in tuples:
        if t.n != 3:
            raise PreconditionViolated(f"expected a cubic, got degree {t.n}")


def _L(t: RootTuple) -> tuple[Scalar, Scalar]:
    return (t[2] - t[0], t[2] - t[1])


def cn3_shift(lam: RootTuple, mu: RootTuple, N: Mat2) -> Optional[tuple[int, int]]:
    """The integer pair m with ``N L(lam) = L(mu) + m``, if there is one."""
    _require_cubic(lam, mu)
    diff = [x - y for x, y in zip(N.apply(_L(lam)), _L(mu))]
    if all(d.is_integer() for d in diff):
        return tuple(int(d.rational_part) for d in diff)
    return None


def check_cn3(lam: RootTuple, mu: RootTuple, N: Mat2, m1: int, m2: int) -> bool:
    _require_cubic(lam, mu)
    if not N.is_unimodular():
        return False
    left = N.apply(_L(lam))
    right = _L(mu)
    return left[0] == right[0] + m1 and left[1] == right[1] + m2


# --------------------------------------------------------------------------
# generator moves


class Move(enum.Enum):
    SWAP_FIRST_TWO = "swap12"
    SWAP_LAST_TWO = "swap23"
    SHIFT_FIRST = "shift1"
    REFLECT = "reflect"


def generator_move(lam: RootTuple, move: Move) -> tuple[RootTuple, Mat2, tuple[int, int]]:
    """Apply an elementary move; return the new roots and its (N, m) data."""
    _require_cubic(lam)
    l1, l2, l3 = lam
    if move is Move.SWAP_FIRST_TWO:
        mu, N, m = lam.with_roots((l2, l1, l3)), N1, (0, 0)
    elif move is Move.SWAP_LAST_TWO:
        mu, N, m = lam.with_roots((l1, l3, l2)), N2, (0, 0)
    elif move is Move.SHIFT_FIRST:
        mu, N, m = lam.with_roots((l1 + 1, l2, l3)), I2, (1, 0)
    elif move is Move.REFLECT:
        # b(h) = a(1 - h); the shift is recomputed rather than assumed
        mu, N = lam.with_roots((-l1 + 1, -l2 + 1, -l3 + 1)), NEG_I2
        m = cn3_shift(lam, mu, N)
        if m is None:
            raise InternalAssertion("reflection does not satisfy (cn3)")
    else:  # pragma: no cover
        raise ValueError(move)
    if not check_cn3(lam, mu, N, *m):
        raise InternalAssertion(f"{move} data fails (cn3)")
    return mu, N, m


def compose_moves(lam: RootTuple, moves: Sequence[Move]) -> tuple[RootTuple, Mat2, tuple[int, int]]:
    """Run moves left to right; (N, m) compose as ``(N' N, m' + N' m)``."""
    N, m = I2, (0, 0)
    cur = lam
    for mv in moves:
        cur, Nk, mk = generator_move(cur, mv)
        Nm = Nk.apply(m)
        N, m = Nk @ N, (mk[0] + Nm[0], mk[1] + Nm[1])
    return cur, N, m


def transport(lam: RootTuple, N: Mat2, m: tuple[int, int] = (0, 0), mu3=0) -> RootTuple:
    """The cubic mu with ``mu_3`` given and ``N L(lam) = L(mu) + m``."""
    _require_cubic(lam)
    mu3 = lam.basis(mu3)
    v = N.apply(_L(lam))
    return lam.with_roots((mu3 - (v[0] - m[0]), mu3 - (v[1] - m[1]), mu3))


# --------------------------------------------------------------------------
# G6


G6_GENERATORS = {"N1N2": N1 @ N2, "-I2": NEG_I2}


def _g6_words() -> dict[Mat2, tuple[str, ...]]:
    words: dict[Mat2, tuple[str, ...]] = {I2: ()}
    frontier = [I2]
    while frontier:
        nxt = []
        for g in frontier:
            for name, h in G6_GENERATORS.items():
                prod = g @ h
                if prod not in words:
                    words[prod] = words[g] + (name,)
                    nxt.append(prod)
        frontier = nxt
    return words


_G6_WORDS = _g6_words()


def g6_elements() -> frozenset[Mat2]:
    """Closure of ``{N1 N2, -I2}`` under multiplication."""
    return frozenset(_G6_WORDS)


def g6_word(N: Mat2) -> Optional[tuple[str, ...]]:
    """A shortest word in the generators multiplying out to N."""
    return _G6_WORDS.get(N)


def evaluate_word(word: Sequence[str]) -> Mat2:
    out = I2
    for name in word:
        out = out @ G6_GENERATORS[name]
    return out


@dataclass(frozen=True)
class DirectCounterexample:
    """lambda satisfies (s+fgld) yet every mu solving (cn3) has an integral difference.

    ``mu`` is the solution with ``m = (0, 0)`` and ``mu_3 = 0``; ``pair = (i, j)``
    names the difference ``mu_i - mu_j`` that is forced into Z.
    """

    matrix: Mat2
    lam: RootTuple
    mu: RootTuple
    pair: tuple[int, int]
    forced_integer_difference: str
    note: str = ""

    def to_json(self) -> dict:
        out = {
            "kind": "direct",
            "matrix": str(self.matrix),
            "lambda": self.lam.to_json(),
            "mu_example": self.mu.to_json(),
            "forced_integer_difference": self.forced_integer_difference,
        }
        if self.note:
            out["note"] = self.note
        return out


@dataclass(frozen=True)
class ReductionChain:
    """N is related to a known bad matrix through elements of G6."""

    matrix: Mat2
    steps: tuple[str, ...]
    reduces_to: Mat2
    terminal: DirectCounterexample
    direct: DirectCounterexample

    def to_json(self) -> dict:
        return {
            "kind": "reduction",
            "matrix": str(self.matrix),
            "steps": list(self.steps),
            "reduces_to": str(self.reduces_to),
            "terminal": self.terminal.to_json(),
            "direct": self.direct.to_json(),
        }


@dataclass(frozen=True)
class InG6:
    matrix: Mat2
    word: tuple[str, ...]
    tag = "in_g6"

    def to_json(self) -> dict:
        return {"tag": self.tag, "matrix": str(self.matrix), "word": list(self.word)}


@dataclass(frozen=True)
class DeterminantMinusOne:
    """G6 lies in SL_2(Z); the report for ``N1 N`` is attached."""

    matrix: Mat2
    normalized: Mat2
    normalized_report: "G6Report"

    def to_json(self) -> dict:
        return {
            "kind": "determinant",
            "matrix": str(self.matrix),
            "normalized": str(self.normalized),
            "normalized_report": self.normalized_report.to_json(),
        }


@dataclass(frozen=True)
class NotInG6:
    matrix: Mat2
    evidence: Union[DirectCounterexample, ReductionChain, DeterminantMinusOne]
    tag = "not_in_g6"

    def to_json(self) -> dict:
        return {"tag": self.tag, "matrix": str(self.matrix), "evidence": self.evidence.to_json()}


G6Report = Union[InG6, NotInG6]

# mu_i - mu_j as a combination c . L(mu) of (mu3 - mu1, mu3 - mu2)
_DIFFERENCES = (((3, 1), (1, 0)), ((3, 2), (0, 1)), ((2, 1), (1, -1)))


def forced_difference(lam: RootTuple, N: Mat2) -> Optional[tuple[tuple[int, int], str]]:
    """Find a difference mu_i - mu_j integral for every solution mu of (cn3).

    ``c . L(mu) = (c N) . L(lam) - c . m``; the second term is an integer
    whatever m is, so the difference is integral iff ``(c N) . L(lam)`` is.
    """
    L = _L(lam)
    for (i, j), (c1, c2) in _DIFFERENCES:
        p = c1 * N.n1 + c2 * N.n3
        q = c1 * N.n2 + c2 * N.n4
        value = L[0] * p + L[1] * q
        if value.is_integer():
            cm = " + ".join(
                f"{'' if c == 1 else '-' if c == -1 else c}m_{k}" for k, c in ((1, c1), (2, c2)) if c
            ).replace("+ -", "- ")
            return (i, j), f"mu_{i} - mu_{j} = {value} - ({cm})"
    return None


def _verified(N: Mat2, lam: RootTuple, note: str = "") -> DirectCounterexample:
    if not satisfies_sfgld(lam):
        raise InternalAssertion(f"counterexample {lam} does not satisfy (s+fgld)")
    found = forced_difference(lam, N)
    if found is None:
        raise InternalAssertion(f"{lam} forces no integral difference for {N}")
    pair, text = found
    mu = transport(lam, N)
    if satisfies_sfgld(mu):
        raise InternalAssertion("sample mu unexpectedly satisfies (s+fgld)")
    return DirectCounterexample(N, lam, mu, pair, text, note)


def direct_counterexample(N: Mat2) -> Optional[DirectCounterexample]:
    """Build a counterexample for any N moving a root direction off the root set.

    For each difference ``c`` the row ``(p, q) = c N`` is primitive.  Unless it
    is one of ``+-(1,0), +-(0,1), +-(1,-1)`` a triple ``(lambda_1, lambda_2, 0)``
    with ``p l1 + q l2 = 1`` and no integral differences exists.
    """
    allowed = {(1, 0), (-1, 0), (0, 1), (0, -1), (1, -1), (-1, 1)}
    for _, (c1, c2) in _DIFFERENCES:
        p = c1 * N.n1 + c2 * N.n3
        q = c1 * N.n2 + c2 * N.n4
        if (p, q) in allowed:
            continue
        if abs(p) == abs(q):  # p = q = +-1
            l1, l2 = Fraction(3, 4) * p, Fraction(1, 4) * p
        else:
            l1, l2 = Fraction(1, 2 * p), Fraction(1, 2 * q)
        return _verified(N, roots(l1, l2, 0))
    return None


def _gaussian_x_case(N: Mat2) -> DirectCounterexample:
    lam = roots({"1": "3/4", "i": 1}, {"1": "1/4", "i": -1}, 0, basis=GAUSSIAN)
    textbook_mu = roots({"1": "-1/4", "i": 1}, {"1": "3/4", "i": 1}, 0, basis=GAUSSIAN)
    note = ""
    if cn3_shift(lam, textbook_mu, N) is None and cn3_shift(lam, textbook_mu, -N) is not None:
        note = (
            f"the triple {textbook_mu} solves (cn3) for -N = {-N} rather than N; "
            "it is equally non-simple"
        )
    return _verified(N, lam, note)


def _chain(N: Mat2, steps: Sequence[str], reduced: Mat2) -> ReductionChain:
    """``reduced`` is built from N by multiplying with G6 elements and inverting.

    G is a group containing G6, so N in G would put ``reduced`` in G too.
    """
    report = g6_classify(reduced)
    if not isinstance(report, NotInG6):
        raise InternalAssertion(f"reduction of {N} landed in G6")
    ev = report.evidence
    while isinstance(ev, ReductionChain):
        ev = ev.terminal
    direct = direct_counterexample(N)
    if direct is None:
        raise InternalAssertion(f"no direct counterexample for {N}")
    return ReductionChain(N, tuple(steps), reduced, ev, direct)


def g6_classify(N: Mat2) -> G6Report:
    """Membership in G6, or the counterexample data showing N is not in G.

    The branches follow the case analysis: ``|n1 n2| > 1``, ``|n3 n4| > 1``,
    then entries in {0, 1, -1} split by ``n1 = 0, 1, -1``.
    """
    if not N.is_unimodular():
        raise NotUnimodular(f"{N} has determinant {N.det}")
    word = g6_word(N)
    if word is not None:
        return InG6(N, word)
    if N.det == -1:
        normalized = N1 @ N
        return NotInG6(N, DeterminantMinusOne(N, normalized, g6_classify(normalized)))

    n1, n2, n3, n4 = N.n1, N.n2, N.n3, N.n4
    if abs(n1 * n2) > 1:
        return NotInG6(N, _verified(N, roots(Fraction(1, 2 * n1), Fraction(1, 2 * n2), 0)))
    if abs(n3 * n4) > 1:
        return NotInG6(N, _verified(N, roots(Fraction(1, 2 * n3), Fraction(1, 2 * n4), 0)))
    # all entries now lie in {0, 1, -1}
    if n1 * n2 == 1 or n3 * n4 == 1:
        return NotInG6(N, _verified(N, roots("3/4", "1/4", 0)))

    if n1 == 0:
        # n2 n3 = -1
        if n2 == 1:
            if n4 == 0:
                return NotInG6(N, _gaussian_x_case(N))
            raise InternalAssertion(f"unreachable n1 = 0 branch for {N}")
        return NotInG6(N, _chain(
            N,
            [f"-I2 . N = {NEG_I2 @ N}", "which falls in the n2 = -n3 = 1 branch"],
            NEG_I2 @ N,
        ))
    if n1 == 1:
        if n2 == 0 and n3 == -1:
            # N = x^{-1} N2 N1
            return NotInG6(N, _chain(
                N,
                [
                    "N = x^{-1} . (N2 N1) with x = 0,1;-1,0",
                    f"(N2 N1) . N^{{-1}} = {(N2 @ N1) @ N.inverse()} = x",
                ],
                (N2 @ N1) @ N.inverse(),
            ))
        if n2 == -1 and (n3, n4) == (0, 1):
            return NotInG6(N, _chain(
                N,
                [
                    "N = x . (N2 N1)^{-1} with x = 0,1;-1,0",
                    f"N . (N2 N1) = {N @ (N2 @ N1)} = x",
                ],
                N @ (N2 @ N1),
            ))
        raise InternalAssertion(f"unreachable n1 = 1 branch for {N}")
    # n1 = -1: multiply by -I2
    return NotInG6(N, _chain(
        N,
        [f"-I2 . N = {NEG_I2 @ N}", "which has n1 = 1"],
        NEG_I2 @ N,
    ))
