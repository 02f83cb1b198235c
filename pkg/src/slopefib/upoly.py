"""Univariate polynomials over a field, used as entries of k[t]-matrices."""

from __future__ import annotations

from .field import QQ, Field, FieldMismatch


class UPoly:
    """Dense univariate polynomial; ``c[i]`` is the coefficient of t^i."""

    __slots__ = ("c", "field")

    def __init__(self, coeffs=(), field: Field = QQ, *, _clean=False):
        self.field = field
        if not _clean:
            coeffs = [field(a) for a in coeffs]
        coeffs = list(coeffs)
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        self.c = tuple(coeffs)

    @classmethod
    def const(cls, a, field: Field = QQ) -> "UPoly":
        return cls((a,), field)

    @classmethod
    def t_power(cls, k: int, field: Field = QQ) -> "UPoly":
        return cls((0,) * k + (1,), field)

    @property
    def degree(self) -> int:
        return len(self.c) - 1  # -1 for zero

    def __bool__(self):
        return bool(self.c)

    def __eq__(self, other):
        if isinstance(other, UPoly):
            return self.c == other.c and self.field == other.field
        if isinstance(other, int):
            return self.c == UPoly.const(other, self.field).c
        return NotImplemented

    def __hash__(self):
        return hash((self.c, self.field))

    def _check(self, other: "UPoly"):
        if other.field != self.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    def __add__(self, other: "UPoly") -> "UPoly":
        self._check(other)
        a, b = self.c, other.c
        if len(a) < len(b):
            a, b = b, a
        red = self.field.reduce
        out = list(a)
        for i, v in enumerate(b):
            out[i] = red(out[i] + v)
        return UPoly(out, self.field, _clean=True)

    def __neg__(self) -> "UPoly":
        red = self.field.reduce
        return UPoly([red(-v) for v in self.c], self.field, _clean=True)

    def __sub__(self, other: "UPoly") -> "UPoly":
        return self + (-other)

    def __mul__(self, other) -> "UPoly":
        if not isinstance(other, UPoly):
            return self.scale(other)
        self._check(other)
        if not self.c or not other.c:
            return UPoly((), self.field, _clean=True)
        out = [0] * (len(self.c) + len(other.c) - 1)
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(other.c):
                    out[i + j] += a * b
        red = self.field.reduce
        zero = self.field.zero
        return UPoly([red(v) + zero for v in out], self.field, _clean=True)

    def scale(self, a) -> "UPoly":
        red = self.field.reduce
        return UPoly([red(v * a) for v in self.c], self.field, _clean=True)

    def lc(self):
        return self.c[-1]

    def monic(self) -> "UPoly":
        if not self.c:
            return self
        return self.scale(self.field.inv(self.c[-1]))

    def divmod(self, other: "UPoly") -> tuple["UPoly", "UPoly"]:
        self._check(other)
        if not other.c:
            raise ZeroDivisionError("polynomial division by zero")
        F = self.field
        red = F.reduce
        rem = list(self.c)
        db = other.degree
        inv = F.inv(other.c[-1])
        quot = [F.zero] * max(len(rem) - db, 0)
        for k in range(len(rem) - 1 - db, -1, -1):
            coef = red(rem[k + db] * inv)
            if coef:
                quot[k] = coef
                for j, b in enumerate(other.c):
                    rem[k + j] = red(rem[k + j] - coef * b)
        return UPoly(quot, F, _clean=True), UPoly(rem[:db] if db > 0 else [], F, _clean=True)

    def __mod__(self, other):
        return self.divmod(other)[1]

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __call__(self, x):
        acc = self.field.zero
        for v in reversed(self.c):
            acc = self.field.reduce(acc * x + v)
        return acc

    def __str__(self):
        if not self.c:
            return "0"
        parts = []
        for i in range(len(self.c) - 1, -1, -1):
            v = self.field.signed(self.c[i])
            if not v:
                continue
            mon = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            if mon and v == 1:
                parts.append(mon)
            elif mon and v == -1:
                parts.append(f"-{mon}")
            else:
                parts.append(f"{v}*{mon}" if mon else str(v))
        return " + ".join(parts).replace("+ -", "- ")

    __repr__ = __str__


def gcd(a: UPoly, b: UPoly) -> UPoly:
    while b:
        a, b = b, a % b
    return a.monic()


def multiplicity_at(f: UPoly, root) -> int:
    """Order of vanishing of ``f`` at ``t = root`` (``f`` nonzero)."""
    if not f:
        raise ValueError("zero polynomial vanishes to infinite order")
    lin = UPoly((f.field.reduce(-f.field(root)), 1), f.field, _clean=True)
    k = 0
    while True:
        q, r = f.divmod(lin)
        if r:
            return k
        f, k = q, k + 1


def factor(f: UPoly) -> list[tuple[UPoly, int]]:
    """Monic irreducible factorization via sympy (univariate only)."""
    import sympy

    if f.degree <= 0:
        return []
    t = sympy.Symbol("t")
    coeffs = [f.field.signed(v) for v in reversed(f.c)]
    if f.field.is_prime:
        poly = sympy.Poly(coeffs, t, modulus=f.field.p)
    else:
        poly = sympy.Poly([sympy.Rational(v.numerator, v.denominator) for v in coeffs], t, domain="QQ")
    out = []
    for fac, mult in poly.factor_list()[1]:
        cs = [int(v) if f.field.is_prime else sympy.Rational(v) for v in reversed(fac.all_coeffs())]
        if f.field.is_prime:
            up = UPoly(cs, f.field)
        else:
            from fractions import Fraction

            up = UPoly([Fraction(int(v.p), int(v.q)) for v in cs], f.field)
        out.append((up.monic(), mult))
    out.sort(key=lambda fm: (fm[0].degree, [f.field.signed(v) for v in fm[0].c]))
    return out
