from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from slopefib.field import DEFAULT_PRIME, PRIME_ENV_VAR, QQ, SECOND_PRIME, Field

P = Field(DEFAULT_PRIME)


def test_rejects_small_and_composite_moduli():
    with pytest.raises(ValueError):
        Field(101)
    with pytest.raises(ValueError):
        Field(2**31 - 3)  # divisible by 5
    Field(SECOND_PRIME)


def test_default_prime_from_environment(monkeypatch):
    monkeypatch.setenv(PRIME_ENV_VAR, str(SECOND_PRIME))
    assert Field.prime().p == SECOND_PRIME
    monkeypatch.delenv(PRIME_ENV_VAR)
    assert Field.prime().p == DEFAULT_PRIME


def test_coercion():
    assert QQ("3/4") == Fraction(3, 4)
    assert P("1/2") * 2 % P.p == 1
    assert P(-1) == P.p - 1
    assert P.signed(P(-5)) == -5


@given(st.integers(min_value=1, max_value=DEFAULT_PRIME - 1))
def test_inverse_mod_p(a):
    assert a * P.inv(a) % P.p == 1


@given(st.fractions().filter(bool))
def test_inverse_rational(a):
    assert a * QQ.inv(a) == 1


def test_inverse_of_zero():
    with pytest.raises(ZeroDivisionError):
        P.inv(0)
