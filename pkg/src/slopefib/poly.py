"""Sparse exact polynomials in t0, t1, x0..x4 with scroll bigrading.

A monomial is a 7-tuple of exponents ``(e0, e1, a0, a1, a2, a3, a4)`` for
``t0, t1, x0, ..., x4``.  On the scroll with twists ``w = (w0, ..., w4)`` the
grading is ``deg tj = (1, 0)`` and ``deg xi = (-wi, 1)``; ``w = 0`` is
P^1 x P^4.
"""

from __future__ import annotations

from itertools import combinations_with_replacement
from math import comb
from typing import Iterable, Sequence

from .field import QQ, Field, FieldMismatch

NVARS = 7
VARNAMES = ("t0", "t1", "x0", "x1", "x2", "x3", "x4")
ZERO_WEIGHTS = (0, 0, 0, 0, 0)

Monomial = tuple  # 7 exponents


class InhomogeneousError(ValueError):
    pass


def check_weights(w: Sequence[int]) -> tuple[int, ...]:
    w = tuple(int(a) for a in w)
    if len(w) != 5:
        raise ValueError(f"ambient weights need exactly 5 entries, got {len(w)}")
    if any(a < 0 for a in w):
        raise ValueError("ambient weights must be nonnegative")
    return w


def monomial_bidegree(mon: Monomial, w: Sequence[int] = ZERO_WEIGHTS) -> tuple[int, int]:
    x = mon[2:]
    return (mon[0] + mon[1] - sum(a * b for a, b in zip(w, x)), sum(x))


def _order_key(mon: Monomial):
    # t-degree, x-degree, then lexicographic; descending in the printer
    return (mon[0] + mon[1], sum(mon[2:]), mon)


class Polynomial:
    """Immutable sparse polynomial; ``terms`` maps monomials to nonzero scalars."""

    __slots__ = ("field", "terms", "_hash")

    def __init__(self, terms: dict | None = None, field: Field = QQ, *, _clean=False):
        self.field = field
        if _clean:
            self.terms = terms
        else:
            clean = {}
            for mon, c in (terms or {}).items():
                mon = tuple(int(e) for e in mon)
                if len(mon) != NVARS or min(mon) < 0:
                    raise ValueError(f"bad monomial {mon}")
                c = field(c)
                if c:
                    clean[mon] = field.reduce(clean.get(mon, field.zero) + c)
                    if not clean[mon]:
                        del clean[mon]
            self.terms = clean
        self._hash = None

    # -- constructors ----------------------------------------------------
    @classmethod
    def zero(cls, field: Field = QQ) -> "Polynomial":
        return cls({}, field, _clean=True)

    @classmethod
    def constant(cls, c, field: Field = QQ) -> "Polynomial":
        return cls({(0,) * NVARS: c}, field)

    @classmethod
    def var(cls, name: str, field: Field = QQ) -> "Polynomial":
        i = VARNAMES.index(name)
        mon = [0] * NVARS
        mon[i] = 1
        return cls({tuple(mon): 1}, field)

    @classmethod
    def monomial(cls, mon: Monomial, c=1, field: Field = QQ) -> "Polynomial":
        return cls({tuple(mon): c}, field)

    # -- basic protocol --------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.field == other.field and self.terms == other.terms
        if isinstance(other, int):
            return self == Polynomial.constant(other, self.field)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, frozenset(self.terms.items())))
        return self._hash

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.field != self.field:
                raise FieldMismatch(f"cannot combine {self.field} and {other.field}")
            return other
        return Polynomial.constant(other, self.field)

    def __add__(self, other):
        other = self._coerce(other)
        F = self.field
        out = dict(self.terms)
        for mon, c in other.terms.items():
            v = F.reduce(out.get(mon, F.zero) + c)
            if v:
                out[mon] = v
            else:
                out.pop(mon, None)
        return Polynomial(out, F, _clean=True)

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return Polynomial({m: F.reduce(-c) for m, c in self.terms.items()}, F, _clean=True)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        other = self._coerce(other)
        F = self.field
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mon = tuple(a + b for a, b in zip(m1, m2))
                out[mon] = out.get(mon, F.zero) + c1 * c2
        out = {m: F.reduce(c) for m, c in out.items()}
        return Polynomial({m: c for m, c in out.items() if c}, F, _clean=True)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        result = Polynomial.constant(1, self.field)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c) -> "Polynomial":
        F = self.field
        c = F(c)
        if not c:
            return Polynomial.zero(F)
        return Polynomial({m: F.reduce(v * c) for m, v in self.terms.items()}, F, _clean=True)

    # -- structure -------------------------------------------------------
    def sorted_terms(self) -> list[tuple[Monomial, object]]:
        return sorted(self.terms.items(), key=lambda kv: _order_key(kv[0]), reverse=True)

    def leading_coefficient(self):
        return self.sorted_terms()[0][1]

    def monic(self) -> "Polynomial":
        """Rescale so the leading coefficient in the canonical order is 1."""
        if not self:
            return self
        return self.scale(self.field.inv(self.leading_coefficient()))

    def term_bidegrees(self, w: Sequence[int] = ZERO_WEIGHTS) -> set[tuple[int, int]]:
        return {monomial_bidegree(m, w) for m in self.terms}

    def x_degrees(self) -> set[int]:
        return {sum(m[2:]) for m in self.terms}

    def is_x_only(self) -> bool:
        return all(m[0] == 0 and m[1] == 0 for m in self.terms)

    def diff(self, var: int | str) -> "Polynomial":
        i = VARNAMES.index(var) if isinstance(var, str) else var
        F = self.field
        out = {}
        for mon, c in self.terms.items():
            if mon[i]:
                m = list(mon)
                m[i] -= 1
                out[tuple(m)] = F.reduce(c * mon[i])
        return Polynomial({m: c for m, c in out.items() if c}, F, _clean=True)

    def evaluate(self, point: Sequence):
        """Evaluate at a full point ``(t0, t1, x0, ..., x4)`` of field elements."""
        F = self.field
        vals = [F(v) for v in point]
        total = F.zero
        for mon, c in self.terms.items():
            term = c
            for v, e in zip(vals, mon):
                if e:
                    term = term * v**e
            total = F.reduce(total + term)
        return total

    def substitute_t(self, point: Sequence) -> "Polynomial":
        """Specialize (t0 : t1) to the given values; result is in x only."""
        F = self.field
        t0, t1 = F(point[0]), F(point[1])
        out: dict = {}
        for mon, c in self.terms.items():
            v = F.reduce(c * t0 ** mon[0] * t1 ** mon[1])
            if v:
                key = (0, 0) + mon[2:]
                out[key] = F.reduce(out.get(key, F.zero) + v)
        return Polynomial({m: c for m, c in out.items() if c}, F, _clean=True)

    def change_field(self, field: Field) -> "Polynomial":
        """Reinterpret integer/rational coefficients in another field."""
        return Polynomial({m: field(self.field.signed(c)) for m, c in self.terms.items()}, field)

    def linear_substitute_x(self, images: Sequence["Polynomial"]) -> "Polynomial":
        """Replace x_i by ``images[i]`` (t-variables untouched)."""
        F = self.field
        result = Polynomial.zero(F)
        for mon, c in self.terms.items():
            term = Polynomial({mon[:2] + (0,) * 5: c}, F, _clean=True)
            for i, e in enumerate(mon[2:]):
                if e:
                    term = term * images[i] ** e
            result = result + term
        return result

    def __str__(self):
        from .parser import format_polynomial

        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({str(self)!r}, {self.field!r})"


def bidegree(f: Polynomial, w: Sequence[int] = ZERO_WEIGHTS):
    """The weighted bidegree of ``f``, or the string ``"inhomogeneous"``."""
    if not f:
        raise ValueError("bidegree of the zero polynomial is undefined")
    degs = f.term_bidegrees(check_weights(w))
    if len(degs) != 1:
        return "inhomogeneous"
    return next(iter(degs))


def x_monomials(d: int) -> list[tuple[int, ...]]:
    """Exponent vectors of degree-d monomials in x0..x4, canonical order."""
    if d < 0:
        return []
    out = []
    for combo in combinations_with_replacement(range(5), d):
        a = [0] * 5
        for i in combo:
            a[i] += 1
        out.append(tuple(a))
    return sorted(out, reverse=True)


def monomial_basis(d: tuple[int, int], w: Sequence[int] = ZERO_WEIGHTS) -> list[Monomial]:
    """All monomials of weighted bidegree ``d``."""
    w = check_weights(w)
    dt, dx = d
    if dx < 0:
        raise ValueError("x-degree must be nonnegative")
    out = []
    for alpha in x_monomials(dx):
        tdeg = dt + sum(a * b for a, b in zip(w, alpha))
        for e0 in range(tdeg, -1, -1):
            out.append((e0, tdeg - e0) + alpha)
    return out


def basis_count(d: tuple[int, int]) -> int:
    """Closed-form size of the bidegree-d basis on P^1 x P^4."""
    dt, dx = d
    if dt < 0 or dx < 0:
        return 0
    return (dt + 1) * comb(dx + 4, 4)


def jacobian(fs: Iterable[Polynomial], at: Sequence) -> list[list]:
    """Matrix of partial derivatives (rows = polynomials, cols = t0..x4)."""
    fs = list(fs)
    return [[f.diff(i).evaluate(at) for i in range(NVARS)] for f in fs]


def generic_form(d: tuple[int, int], w: Sequence[int], coeffs: Sequence, field: Field) -> Polynomial:
    basis = monomial_basis(d, w)
    return Polynomial(dict(zip(basis, coeffs)), field)
