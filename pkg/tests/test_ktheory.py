import itertools
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from gwa_morita.errors import DegenerateRoots, InternalAssertion, UnsupportedProduct
from gwa_morita.gwa import RootTuple, roots
from gwa_morita.ktheory import (
    DensePoly,
    HH0Class,
    apply_sigma,
    bezout_pair,
    elementary_symmetric,
    lagrange_basis,
    p_basis,
    schur_trace,
    trace_pi,
    trace_projective_general,
    unit_decomposition,
    vandermonde,
)
from gwa_morita.scalars import QQ

from conftest import GAUSS, SYM, gaussians, rationals


def P(*coeffs, basis=QQ):
    return DensePoly(basis, coeffs)


A3 = roots(0, "1/2", "1/4")
A2 = roots("1/2", 0)


def test_lagrange_examples():
    v1, v2 = lagrange_basis(A2)
    assert v1 == P(0, 2) and v2 == P(1, -2)
    assert lagrange_basis(A3)[0] == P(1, -6, 8)


@given(st.one_of(rationals(5), gaussians(4)))
def test_lagrange_interpolates(a):
    vs = lagrange_basis(a)
    total = vs[0]
    for v in vs[1:]:
        total = total + v
    assert total == P(1, basis=a.basis)
    for i, v in enumerate(vs):
        assert v.degree == a.n - 1
        for j, lam in enumerate(a.roots):
            assert v(lam) == (1 if i == j else 0)


@pytest.mark.parametrize(
    "p, expected",
    [(P(0, 0, 1), P(1, -2, 1)), (P(7), P(7)), (P(1, -6, 8), P(15, -22, 8))],
)
def test_apply_sigma(p, expected):
    assert apply_sigma(p) == expected


@given(st.lists(st.fractions(-5, 5, max_denominator=5), min_size=2, max_size=6))
def test_sigma_minus_one_lowers_degree(cs):
    p = DensePoly(QQ, cs)
    if p.degree < 1:
        return
    assert (apply_sigma(p) - p).degree == p.degree - 1


@pytest.mark.parametrize(
    "a, i, expected",
    [(A2, 1, P(-1)), (A3, 1, P(15, -16)), (A3, 2, P(11, -16))],
)
def test_trace_pi_examples(a, i, expected):
    assert trace_pi(a, i) == expected
    assert schur_trace(a, i) == expected


def _sympy_trace(values, i):
    h = sympy.Symbol("h")
    lam = [sympy.Rational(x.numerator, x.denominator) for x in values]
    v = sympy.prod([(h - lam[j]) / (lam[i] - lam[j]) for j in range(len(lam)) if j != i])
    return sympy.Poly(sympy.expand(1 + v.subs(h, h - 1) - v), h)


@settings(max_examples=60)
@given(rationals(5))
def test_trace_pi_against_sympy(a):
    values = [x.rational_part for x in a.roots]
    for i in range(a.n):
        expected = _sympy_trace(values, i).all_coeffs()[::-1]
        want = [Fraction(int(c.p), int(c.q)) for c in expected]
        while want and not want[-1]:
            want.pop()
        assert [c.rational_part for c in trace_pi(a, i + 1).poly.coeffs] == want


def test_trace_general_examples():
    assert trace_projective_general(A3, {1, 2}) == P(25, -32)
    assert trace_projective_general(A3, {1, 2}) == trace_pi(A3, 1) + trace_pi(A3, 2) - HH0Class(P(1), 1)
    assert trace_projective_general(A2, {2}) == P(3)
    for i in (1, 2, 3):
        assert trace_projective_general(A3, {i}) == trace_pi(A3, i)


@pytest.mark.parametrize("subset", [set(), {1, 2, 3}, {4}])
def test_trace_general_rejects_bad_subsets(subset):
    with pytest.raises((ValueError, IndexError)):
        trace_projective_general(A3, subset)


@settings(max_examples=60)
@given(st.one_of(rationals(5, 3), gaussians(5, 3)), st.data())
def test_k0_additivity(a, data):
    idx = list(range(1, a.n + 1))
    s = data.draw(st.sets(st.sampled_from(idx), min_size=1, max_size=a.n - 2))
    rest = [i for i in idx if i not in s]
    t = data.draw(st.sets(st.sampled_from(rest), min_size=1, max_size=len(rest) - 1))
    one = HH0Class(P(1, basis=a.basis), a.n - 2)
    lhs = trace_projective_general(a, s | t)
    assert lhs == trace_projective_general(a, s) + trace_projective_general(a, t) - one


def test_bezout_pair_degree():
    w = DensePoly.from_roots(QQ, [QQ(0), QQ("1/2")])
    u = DensePoly.from_roots(QQ, [QQ("1/4")])
    B, C = bezout_pair(w, u)
    assert B.degree < u.degree
    assert B * w + C * u == P(1)


@pytest.mark.parametrize(
    "xs, expected",
    [([1, 2], -1), ([3, 2, 1], 2), ([5], 1)],
)
def test_vandermonde(xs, expected):
    assert vandermonde([QQ(x) for x in xs]) == expected


def test_vandermonde_matches_determinant():
    xs = [QQ(x) for x in (2, "1/3", -1, 5)]
    n = len(xs)
    m = sympy.Matrix(n, n, lambda i, j: sympy.Rational(str(xs[j].rational_part)) ** (n - 1 - i))
    assert vandermonde(xs) == Fraction(str(m.det()))


@pytest.mark.parametrize("k, expected", [(1, 6), (2, 11), (0, 1), (3, 6)])
def test_elementary_symmetric(k, expected):
    assert elementary_symmetric([QQ(1), QQ(2), QQ(3)], k) == expected


def test_elementary_symmetric_range():
    with pytest.raises(ValueError):
        elementary_symmetric([QQ(1)], 2)


def test_p_basis_examples():
    assert [p.poly for p in p_basis(A2)] == [P(-2)]
    assert [p.poly for p in p_basis(A3)] == [P(14, -16), P(10, -16)]
    assert len(p_basis(roots(0, "1/2", "1/3", "1/5"))) == 3


def test_unit_decomposition_examples():
    assert unit_decomposition(A2) == [Fraction(-1, 2)]
    assert unit_decomposition(A3) == [Fraction(1, 4), Fraction(-1, 4)]


@settings(max_examples=60)
@given(st.one_of(rationals(6), gaussians(5)))
def test_unit_decomposition_identity(a):
    cs = unit_decomposition(a)
    total = DensePoly(a.basis, [])
    for c, p in zip(cs, p_basis(a)):
        total = total + DensePoly.constant(c) * p.poly
    assert total == P(1, basis=a.basis)


def test_degenerate_roots():
    for fn in (lagrange_basis, p_basis, unit_decomposition):
        with pytest.raises(DegenerateRoots):
            fn(roots(0, 0, "1/2"))
    with pytest.raises(DegenerateRoots):
        trace_pi(roots(1, 1), 1)


def test_needs_products_table():
    with pytest.raises(UnsupportedProduct):
        trace_pi(roots(0, {"s": 1}, basis=SYM), 1)


def test_hh0_degree_bound_enforced():
    with pytest.raises(InternalAssertion):
        HH0Class(P(0, 0, 1), 1)
