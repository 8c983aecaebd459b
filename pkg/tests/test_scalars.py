from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from gwa_morita.errors import BasisError, BasisMismatch, NotInvertible, UnsupportedProduct
from gwa_morita.scalars import QQ, BasisSpec, is_integer, rational_irrational_split, scalar_inv

from conftest import GAUSS, SYM

coeff = st.fractions(min_value=-5, max_value=5, max_denominator=7)
gauss_st = st.builds(lambda a, b: GAUSS({"1": a, "i": b}), coeff, coeff)

# a degree-3 field: Q(c) with c^3 = 2, basis 1, c, c^2
CUBIC = BasisSpec.from_products(
    ["1", "c", "c2"],
    {("c", "c"): {"c2": 1}, ("c", "c2"): {"1": 2}, ("c2", "c2"): {"c": 2}},
)
cubic_st = st.builds(lambda a, b, c: CUBIC({"1": a, "c": b, "c2": c}), coeff, coeff, coeff)


def test_addition_examples():
    i = GAUSS.symbol("i")
    assert (GAUSS("1/2") + i) + (GAUSS("1/2") - i) == 1
    assert QQ("3/4") - QQ("1/4") == Fraction(1, 2)
    s = SYM.symbol("s")
    assert s + 0 == s


def test_multiplication_examples():
    i = GAUSS.symbol("i")
    assert i * i == -1
    assert (1 + i) * (1 - i) == 2
    assert QQ("1/2") * QQ("1/3") == Fraction(1, 6)


def test_inverse_examples():
    i = GAUSS.symbol("i")
    assert scalar_inv(QQ(2)) == Fraction(1, 2)
    assert scalar_inv(1 + i) == (1 - i) / 2
    with pytest.raises(ZeroDivisionError):
        scalar_inv(QQ(0))


def test_split_examples():
    i = GAUSS.symbol("i")
    assert rational_irrational_split(GAUSS("3/4") + i) == (Fraction(3, 4), i)
    assert rational_irrational_split(QQ(5)) == (5, QQ(0))
    s = SYM.symbol("s")
    assert rational_irrational_split(s - Fraction(1, 3)) == (Fraction(-1, 3), s)


@pytest.mark.parametrize(
    "x, expected",
    [(QQ(1), True), (QQ("1/2"), False), (SYM.symbol("s"), False), (QQ(-3), True), (SYM({"1": 2, "s": 0}), True)],
)
def test_is_integer(x, expected):
    assert is_integer(x) is expected


def test_mismatched_bases():
    with pytest.raises(BasisMismatch):
        GAUSS(1) + SYM(1)


def test_product_needs_table():
    s = SYM.symbol("s")
    with pytest.raises(UnsupportedProduct):
        s * s
    # rational factors never need the table
    assert s * 3 == SYM({"s": 3})
    assert s * SYM("1/2") == SYM({"s": "1/2"})


def test_not_invertible_in_non_field():
    dual = BasisSpec.from_products(["1", "e"], {("e", "e"): {}})
    with pytest.raises(NotInvertible):
        dual.symbol("e").inv()


@pytest.mark.parametrize(
    "symbols, products, msg",
    [
        (["1", "i", "s"], {("i", "i"): {"1": -1}, ("i", "s"): {}, ("s", "s"): {}}, "associative"),
        (["1", "i", "s"], {("i", "i"): {}, ("i", "s"): {"1": 1}, ("s", "i"): {"1": 2}, ("s", "s"): {}}, "commutative"),
        (["1", "i", "s"], {("i", "i"): {"1": -1}}, "no entry"),
        (["1", "i"], {("i", "i"): {"q": 1}}, "undeclared"),
    ],
)
def test_bad_tables_rejected(symbols, products, msg):
    with pytest.raises(BasisError, match=msg):
        BasisSpec.from_products(symbols, products)


@pytest.mark.parametrize("symbols", [("s",), ("1", "s", "s"), ()])
def test_bad_symbols(symbols):
    with pytest.raises(BasisError):
        BasisSpec(symbols)


def test_floats_refused():
    with pytest.raises(TypeError):
        QQ(0.5)


def test_serialization():
    x = GAUSS({"1": "1/2", "i": "-1/2"})
    assert x.to_json() == {"1": "1/2", "i": "-1/2"}
    assert str(x) == "1/2 - 1/2*i"
    assert GAUSS(x.to_json()) == x
    assert GAUSS(0).to_json() == {}


@given(gauss_st, gauss_st, gauss_st)
def test_gaussian_ring_axioms(x, y, z):
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x
    assert x * 1 == x


@given(cubic_st, cubic_st, cubic_st)
def test_cubic_field_ring_axioms(x, y, z):
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z


@given(st.one_of(gauss_st, cubic_st))
def test_inverse_property(x):
    if x.is_zero():
        return
    assert x * x.inv() == 1


@given(cubic_st)
def test_split_recombines(x):
    q, rest = rational_irrational_split(x)
    assert rest.rational_part == 0
    assert rest + q == x
    assert hash(x) == hash(CUBIC(x.to_json()))
