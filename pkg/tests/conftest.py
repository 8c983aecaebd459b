from fractions import Fraction

import pytest
from hypothesis import strategies as st

from gwa_morita.gwa import RootTuple
from gwa_morita.scalars import QQ, BasisSpec

GAUSS = BasisSpec.from_products(["1", "i"], {("i", "i"): {"1": -1}})
SYM = BasisSpec(("1", "s"))
SYM2 = BasisSpec(("1", "s", "t"))

small_q = st.fractions(min_value=-4, max_value=4, max_denominator=12)


def rationals(n_max: int = 6, n_min: int = 2):
    """Distinct rational root tuples."""
    return st.lists(small_q, min_size=n_min, max_size=n_max, unique=True).map(
        lambda xs: RootTuple(tuple(QQ(x) for x in xs))
    )


def gaussians(n_max: int = 6, n_min: int = 2):
    pairs = st.tuples(small_q, st.fractions(min_value=-2, max_value=2, max_denominator=4))
    return st.lists(pairs, min_size=n_min, max_size=n_max, unique=True).map(
        lambda xs: RootTuple(tuple(GAUSS({"1": a, "i": b}) for a, b in xs))
    )


def symbolic(basis=SYM2, n_max: int = 4, n_min: int = 2):
    """Roots over a transcendental basis, possibly repeated."""
    coeff = st.fractions(min_value=-3, max_value=3, max_denominator=6)
    small = st.integers(-2, 2)
    one = st.fixed_dictionaries({"1": coeff, **{s: small for s in basis.symbols[1:]}})
    return st.lists(one, min_size=n_min, max_size=n_max).map(
        lambda xs: RootTuple(tuple(basis(x) for x in xs))
    )


@pytest.fixture
def gauss():
    return GAUSS


def F(x) -> Fraction:
    return Fraction(x)
