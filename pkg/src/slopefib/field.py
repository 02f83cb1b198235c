"""Coefficient fields: exact rationals or a large prime field."""

from __future__ import annotations

import os
from fractions import Fraction

#: Default prime for the modular mode; must exceed 2**30.
DEFAULT_PRIME = 2147483647
#: A second prime for cross-checks of modular computations.
SECOND_PRIME = 2147483629

PRIME_ENV_VAR = "SLOPEFIB_PRIME"


class FieldMismatch(ValueError):
    """Raised when objects over different coefficient fields are combined."""


class Field:
    """Either the rationals (``p is None``) or the prime field F_p.

    Elements are plain Python objects: :class:`fractions.Fraction` for the
    rationals and ints in ``[0, p)`` for F_p, so ``+ - *`` are native and only
    reduction and inversion go through the field.
    """

    __slots__ = ("p",)

    def __init__(self, p: int | None = None):
        if p is not None:
            p = int(p)
            if p <= 2**30:
                raise ValueError(f"prime {p} is too small; need p > 2**30")
            if not _is_probable_prime(p):
                raise ValueError(f"{p} is not prime")
        self.p = p

    @classmethod
    def rationals(cls) -> "Field":
        return cls(None)

    @classmethod
    def prime(cls, p: int | None = None) -> "Field":
        if p is None:
            p = int(os.environ.get(PRIME_ENV_VAR, DEFAULT_PRIME))
        return cls(p)

    @property
    def is_prime(self) -> bool:
        return self.p is not None

    @property
    def zero(self):
        return 0 if self.p else Fraction(0)

    @property
    def one(self):
        return 1 if self.p else Fraction(1)

    def __call__(self, x):
        """Coerce an int, Fraction or ``"a/b"`` string into the field."""
        if self.p is None:
            return Fraction(x)
        if isinstance(x, str):
            x = Fraction(x)
        if isinstance(x, Fraction):
            return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
        return int(x) % self.p

    def reduce(self, x):
        return x % self.p if self.p else x

    def inv(self, x):
        if not x:
            raise ZeroDivisionError("inverse of zero")
        if self.p:
            return pow(x, -1, self.p)
        return 1 / x

    def signed(self, x):
        """Representative used for printing: symmetric range for F_p."""
        if self.p and x > self.p // 2:
            return x - self.p
        return x

    def __eq__(self, other):
        return isinstance(other, Field) and self.p == other.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "QQ" if self.p is None else f"GF({self.p})"


QQ = Field.rationals()


def _is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for small in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % small == 0:
            return n == small
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic for n < 3.3e24
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True
