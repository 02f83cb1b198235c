"""5x5 skew Pfaffian models of genus-5 fibrations over P^1.

Sign convention for the five 4x4 sub-Pfaffians (``Pf_i`` deletes row and
column ``i``)::

    c1 = Pf_1,  c2 = Pf_2,  p1 = Pf_3,  p2 = -Pf_4,  p3 = Pf_5

With the local layout ``(t^n, l1, l2, l3 / m1, m2, m3 / q3, -q2 / q1)`` this
gives ``p_i = (minor_i) + t^n q_i`` with minors ``m2 l3 - m3 l2``,
``m3 l1 - m1 l3``, ``m1 l2 - m2 l1`` and the relations
``t^n c1 = sum m_i p_i`` and ``t^n c2 = sum l_i p_i``.
The vector killed by the matrix is ``(c1, -c2, p1, p2, p3)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .field import QQ, Field
from .parser import parse
from .poly import (
    ZERO_WEIGHTS,
    Polynomial,
    bidegree,
    check_weights,
    monomial_basis,
)

PAIRS = [(i, j) for i in range(5) for j in range(i + 1, 5)]
PFAFFIAN_NAMES = ("c1", "c2", "p1", "p2", "p3")
# sign applied to Pf_i to get the named generator
_SIGNS = (1, 1, 1, -1, 1)
# signs turning (c1, c2, p1, p2, p3) into the syzygy vector of the matrix
SYZYGY_SIGNS = (1, -1, 1, 1, 1)


class ModelError(ValueError):
    pass


class InhomogeneousModel(ModelError):
    def __init__(self, diagnostic: "HomogeneityReport"):
        super().__init__("model is not bihomogeneous:\n" + diagnostic.describe())
        self.diagnostic = diagnostic


def pfaffian4(a01, a02, a03, a12, a13, a23):
    """Pfaffian of a 4x4 skew matrix given its upper triangle."""
    return a01 * a23 - a02 * a13 + a03 * a12


def sub_pfaffians(upper: dict) -> list:
    """The five signed sub-Pfaffians ``(c1, c2, p1, p2, p3)``.

    ``upper`` maps 0-based pairs ``(i, j)``, ``i < j``, to entries of any
    commutative ring (Polynomial, sympy expressions, integers...).
    """
    out = []
    for drop in range(5):
        idx = [k for k in range(5) if k != drop]
        a = lambda r, s: upper[(idx[r], idx[s])]
        pf = pfaffian4(a(0, 1), a(0, 2), a(0, 3), a(1, 2), a(1, 3), a(2, 3))
        out.append(pf if _SIGNS[drop] > 0 else -pf)
    return out


def skew_matrix(upper: dict, zero) -> list[list]:
    M = [[zero] * 5 for _ in range(5)]
    for (i, j), v in upper.items():
        M[i][j] = v
        M[j][i] = -v
    return M


@dataclass(frozen=True)
class PfaffianSystem:
    c1: Polynomial
    c2: Polynomial
    p1: Polynomial
    p2: Polynomial
    p3: Polynomial
    bidegrees: tuple

    def generators(self) -> list[Polynomial]:
        return [self.c1, self.c2, self.p1, self.p2, self.p3]

    def syzygy_vector(self) -> list[Polynomial]:
        return [g if s > 0 else -g for g, s in zip(self.generators(), SYZYGY_SIGNS)]

    def as_dict(self) -> dict:
        return dict(zip(PFAFFIAN_NAMES, self.generators()))


@dataclass
class PfaffianModel:
    """Ambient scroll weights plus the upper triangle of a skew 5x5 matrix."""

    weights: tuple
    upper: dict
    label: str = ""
    seed: int | None = None
    field: Field = QQ
    diagnostic: "HomogeneityReport | None" = dc_field(default=None, compare=False)

    def __post_init__(self):
        self.weights = check_weights(self.weights)
        if set(self.upper) != set(PAIRS):
            raise ModelError("model needs all ten upper-triangle entries")
        for pos, v in self.upper.items():
            if not isinstance(v, Polynomial):
                raise ModelError(f"entry {pos} is not a Polynomial")
            if v.field != self.field:
                raise ModelError(f"entry {pos} is over {v.field}, model over {self.field}")

    def entry(self, i: int, j: int) -> Polynomial:
        """Entry (i, j), 1-based as in the usual matrix notation."""
        i, j = i - 1, j - 1
        if i == j:
            return Polynomial.zero(self.field)
        return self.upper[(i, j)] if i < j else -self.upper[(j, i)]

    def matrix(self) -> list[list[Polynomial]]:
        return skew_matrix(self.upper, Polynomial.zero(self.field))

    def change_field(self, field: Field) -> "PfaffianModel":
        return PfaffianModel(
            self.weights,
            {k: v.change_field(field) for k, v in self.upper.items()},
            self.label,
            self.seed,
            field,
        )


def pfaffians(m: PfaffianModel) -> PfaffianSystem:
    gens = sub_pfaffians(m.upper)
    degs = tuple(bidegree(g, m.weights) if g else None for g in gens)
    return PfaffianSystem(*gens, bidegrees=degs)


def generators(m: PfaffianModel) -> list[Polynomial]:
    return sub_pfaffians(m.upper)


def matrix_times_pfaffians(m: PfaffianModel) -> list[Polynomial]:
    """``M @ (c1, -c2, p1, p2, p3)``; identically zero for a skew matrix."""
    M = m.matrix()
    vec = pfaffians(m).syzygy_vector()
    zero = Polynomial.zero(m.field)
    return [sum((M[i][k] * vec[k] for k in range(5)), zero) for i in range(5)]


# ---------------------------------------------------------------------------
# homogeneity diagnostics


@dataclass
class HomogeneityReport:
    weights: tuple
    entry_problems: list = dc_field(default_factory=list)   # (pos, [bidegrees])
    pfaffian_problems: list = dc_field(default_factory=list)  # (name, [bidegrees])
    entry_weights: list | None = None  # solved (e_1..e_5) with deg m_ij = e_i + e_j
    grading_mismatches: list = dc_field(default_factory=list)  # (pos, actual, predicted)

    @property
    def consistent(self) -> bool:
        return not self.entry_problems and not self.pfaffian_problems

    def describe(self) -> str:
        lines = [f"weights = {' '.join(map(str, self.weights))}"]
        if self.consistent:
            lines.append("all entries and Pfaffians are bihomogeneous")
        for pos, degs in self.entry_problems:
            lines.append(f"entry m{pos[0] + 1}{pos[1] + 1}: inhomogeneous, term bidegrees {sorted(degs)}")
        for name, degs in self.pfaffian_problems:
            lines.append(f"pfaffian {name}: inhomogeneous, term bidegrees {sorted(degs)}")
        for pos, actual, predicted in self.grading_mismatches:
            lines.append(
                f"entry m{pos[0] + 1}{pos[1] + 1}: bidegree {_fmt_deg(actual)}, "
                f"Pfaffian grading requires {_fmt_deg(predicted)}"
            )
        return "\n".join(lines)

    def as_dict(self) -> dict:
        fmt = lambda d: [_jsonable(x) for x in d] if isinstance(d, tuple) else d
        return {
            "consistent": self.consistent,
            "weights": list(self.weights),
            "entry_problems": [
                {"entry": f"m{p[0] + 1}{p[1] + 1}", "bidegrees": sorted(map(list, d))} for p, d in self.entry_problems
            ],
            "pfaffian_problems": [{"pfaffian": n, "bidegrees": sorted(map(list, d))} for n, d in self.pfaffian_problems],
            "entry_weights": None if self.entry_weights is None else [fmt(e) for e in self.entry_weights],
            "grading_mismatches": [
                {"entry": f"m{p[0] + 1}{p[1] + 1}", "actual": fmt(a), "required": fmt(r)}
                for p, a, r in self.grading_mismatches
            ],
        }


def _fmt_deg(d) -> str:
    if isinstance(d, str):
        return d
    return "(" + ", ".join(str(_jsonable(v)) for v in d) + ")"


def _jsonable(x):
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else str(x)
    return x


def solve_entry_weights(m: PfaffianModel):
    """Weights ``e_i`` with ``deg m_ij = e_i + e_j`` from the first two rows.

    Uses m12, m13, m23, m14, m15; returns ``None`` if any is zero or
    inhomogeneous.  Pfaffians are bihomogeneous whenever every entry matches
    the prediction.
    """
    degs = {}
    for pos in [(0, 1), (0, 2), (1, 2), (0, 3), (0, 4)]:
        f = m.upper[pos]
        if not f:
            return None
        d = bidegree(f, m.weights)
        if d == "inhomogeneous":
            return None
        degs[pos] = d
    add = lambda a, b: (a[0] + b[0], a[1] + b[1])
    sub = lambda a, b: (a[0] - b[0], a[1] - b[1])
    e1 = tuple(Fraction(x, 2) for x in sub(add(degs[(0, 1)], degs[(0, 2)]), degs[(1, 2)]))
    e2 = sub(degs[(0, 1)], e1)
    e3 = sub(degs[(0, 2)], e1)
    e4 = sub(degs[(0, 3)], e1)
    e5 = sub(degs[(0, 4)], e1)
    return [e1, e2, e3, e4, e5]


def homogeneity_diagnostic(m: PfaffianModel) -> HomogeneityReport:
    rep = HomogeneityReport(m.weights)
    for pos in PAIRS:
        f = m.upper[pos]
        if f and len(f.term_bidegrees(m.weights)) > 1:
            rep.entry_problems.append((pos, f.term_bidegrees(m.weights)))
    for name, g in zip(PFAFFIAN_NAMES, generators(m)):
        if g and len(g.term_bidegrees(m.weights)) > 1:
            rep.pfaffian_problems.append((name, g.term_bidegrees(m.weights)))
    e = solve_entry_weights(m)
    rep.entry_weights = e
    if e is not None:
        for i, j in PAIRS:
            f = m.upper[(i, j)]
            predicted = (e[i][0] + e[j][0], e[i][1] + e[j][1])
            if not f:
                continue
            actual = bidegree(f, m.weights)
            if actual == "inhomogeneous" or tuple(Fraction(v) for v in actual) != predicted:
                rep.grading_mismatches.append(((i, j), actual, predicted))
    return rep


def require_homogeneous(m: PfaffianModel) -> PfaffianModel:
    rep = homogeneity_diagnostic(m)
    m.diagnostic = rep
    if not rep.consistent:
        raise InhomogeneousModel(rep)
    return m


# ---------------------------------------------------------------------------
# builders


def _t(k: int, var: str, F: Field) -> Polynomial:
    return Polynomial.var(var, F) ** k


def _x(i: int, F: Field) -> Polynomial:
    return Polynomial.var(f"x{i}", F)


def random_form(rng: random.Random, d: tuple[int, int], w: Sequence[int], F: Field) -> Polynomial:
    basis = monomial_basis(d, w)
    coeffs = [rng.choice([-1, 1]) * rng.randint(1, 9) for _ in basis]
    return Polynomial(dict(zip(basis, coeffs)), F)


def random_quadrics(
    seed: int,
    field: Field = QQ,
    bidegrees: Sequence[tuple[int, int]] = ((0, 2), (0, 2), (0, 2)),
    weights: Sequence[int] = ZERO_WEIGHTS,
) -> tuple[Polynomial, ...]:
    """Deterministic forms with small nonzero integer coefficients."""
    rng = random.Random(seed)
    return tuple(random_form(rng, d, weights, field) for d in bidegrees)


def _check_quadrics(qs, w, expected):
    if len(qs) != 3:
        raise ModelError("need exactly three quadrics")
    for i, (q, d) in enumerate(zip(qs, expected)):
        if not q:
            raise ModelError(f"q{i + 1} is zero")
        got = bidegree(q, w)
        if got != d:
            raise ModelError(f"q{i + 1} has bidegree {got}, expected {d}")


def family_A(n: int, qs: Sequence[Polynomial], *, seed: int | None = None) -> PfaffianModel:
    """Family on P^1 x P^4 with a single trigonal fibre over (1:0)."""
    if n < 1:
        raise ModelError("n must be a positive integer")
    qs = tuple(qs)
    _check_quadrics(qs, ZERO_WEIGHTS, [(0, 2)] * 3)
    for q in qs:
        if not q.is_x_only():
            raise ModelError("family A quadrics must involve only x")
    F = qs[0].field
    t0n, t1n = _t(n, "t0", F), _t(n, "t1", F)
    upper = {
        (0, 1): t1n, (0, 2): _x(0, F), (0, 3): _x(2, F), (0, 4): _x(3, F),
        (1, 2): t0n * _x(1, F), (1, 3): t0n * _x(3, F), (1, 4): t0n * _x(4, F),
        (2, 3): qs[0], (2, 4): qs[1], (3, 4): qs[2],
    }
    m = PfaffianModel(ZERO_WEIGHTS, upper, f"family A n={n}", seed, F)
    return require_homogeneous(m)


def family_B(a: int, qs: Sequence[Polynomial], *, seed: int | None = None, strict: bool = False) -> PfaffianModel:
    """Scroll F(a,a,0,0,0) family.  The diagnostic is attached, not enforced
    unless ``strict``."""
    if a < 0:
        raise ModelError("a must be nonnegative")
    w = (a, a, 0, 0, 0)
    qs = tuple(qs)
    if len(qs) != 3:
        raise ModelError("need exactly three quadrics")
    F = qs[0].field
    upper = {
        (0, 1): _t(1, "t1", F), (0, 2): _t(a, "t0", F) * _x(0, F), (0, 3): _x(2, F), (0, 4): _x(3, F),
        (1, 2): _t(a + 1, "t0", F) * _x(1, F), (1, 3): _t(1, "t0", F) * _x(3, F),
        (1, 4): _t(1, "t0", F) * _x(4, F),
        (2, 3): qs[0], (2, 4): qs[1], (3, 4): qs[2],
    }
    m = PfaffianModel(w, upper, f"family B a={a}", seed, F)
    m.diagnostic = homogeneity_diagnostic(m)
    if strict and not m.diagnostic.consistent:
        raise InhomogeneousModel(m.diagnostic)
    return m


def family_C(d: int, qs: Sequence[Polynomial], *, seed: int | None = None, strict: bool = False) -> PfaffianModel:
    """Scroll F(2d-1,0,0,0,0) family; q1, q2 of bidegree (0,2), q3 of (-1,2)."""
    if d < 1:
        raise ModelError("d must be a positive integer")
    w = (2 * d - 1, 0, 0, 0, 0)
    qs = tuple(qs)
    if len(qs) != 3:
        raise ModelError("need exactly three quadrics")
    F = qs[0].field
    t0 = lambda k: _t(k, "t0", F)
    upper = {
        (0, 1): _t(d + 1, "t1", F), (0, 2): t0(2 * d) * _x(0, F), (0, 3): _x(2, F), (0, 4): _x(3, F),
        (1, 2): t0(d + 1) * _x(1, F), (1, 3): t0(d) * _x(3, F), (1, 4): t0(d) * _x(4, F),
        (2, 3): qs[0], (2, 4): qs[1], (3, 4): qs[2],
    }
    m = PfaffianModel(w, upper, f"family C d={d}", seed, F)
    m.diagnostic = homogeneity_diagnostic(m)
    if strict and not m.diagnostic.consistent:
        raise InhomogeneousModel(m.diagnostic)
    return m


# q bidegrees: as printed next to the scroll examples, and as required by the
# entry-weight solver for a bihomogeneous matrix
FAMILY_B_PRINTED_Q = lambda a: [(a, 2)] * 3
FAMILY_B_SOLVED_Q = lambda a: [(0, 2)] * 3
FAMILY_C_Q = lambda d: [(0, 2), (0, 2), (-1, 2)]


def build_family(family: str, param: int, seed: int = 0, field: Field | None = None, grading: str = "solved") -> PfaffianModel:
    """Seeded builtin model; ``grading`` selects the family-B q bidegrees."""
    if field is None:
        field = Field.prime()
    family = family.upper()
    if family == "A":
        return family_A(param, random_quadrics(seed, field), seed=seed)
    if family == "B":
        degs = FAMILY_B_PRINTED_Q(param) if grading == "printed" else FAMILY_B_SOLVED_Q(param)
        w = (param, param, 0, 0, 0)
        return family_B(param, random_quadrics(seed, field, degs, w), seed=seed)
    if family == "C":
        w = (2 * param - 1, 0, 0, 0, 0)
        return family_C(param, random_quadrics(seed, field, FAMILY_C_Q(param), w), seed=seed)
    raise ModelError(f"unknown family {family!r}")


def local_model(n: int, ls: Sequence[Polynomial], ms: Sequence[Polynomial], qs: Sequence[Polynomial]) -> PfaffianModel:
    """Local form near a trigonal fibre; the local parameter t is ``t1``.

    Entries: ``m12 = t^n``, row 1 ``l1 l2 l3``, row 2 ``m1 m2 m3``,
    ``m34 = q3``, ``m35 = -q2``, ``m45 = q1``.
    """
    if n < 1:
        raise ModelError("n must be a positive integer")
    F = ls[0].field
    for name, group, deg in (("l", ls, 1), ("m", ms, 1)):
        for i, f in enumerate(group):
            if f and (not f.is_x_only() or f.x_degrees() != {deg}):
                raise ModelError(f"{name}{i + 1} must be linear in x")
    for i, q in enumerate(qs):
        if q and q.x_degrees() != {2}:
            raise ModelError(f"q{i + 1} must have x-degree 2")
        if any(mon[0] for mon in q.terms):
            raise ModelError(f"q{i + 1} may only involve the local parameter t1")
    upper = {
        (0, 1): _t(n, "t1", F), (0, 2): ls[0], (0, 3): ls[1], (0, 4): ls[2],
        (1, 2): ms[0], (1, 3): ms[1], (1, 4): ms[2],
        (2, 3): qs[2], (2, 4): -qs[1], (3, 4): qs[0],
    }
    return PfaffianModel(ZERO_WEIGHTS, upper, f"local model n={n}", None, F)


# ---------------------------------------------------------------------------
# model files

_KEYS = ["m" + f"{i + 1}{j + 1}" for i, j in PAIRS]


def dumps_model(m: PfaffianModel) -> str:
    lines = ["# slopefib model v1"]
    lines.append(f"label = {m.label}")
    lines.append(f"field = {'rational' if m.field.p is None else m.field.p}")
    if m.seed is not None:
        lines.append(f"seed = {m.seed}")
    lines.append(f"weights = {' '.join(map(str, m.weights))}")
    for key, pos in zip(_KEYS, PAIRS):
        lines.append(f"{key} = {m.upper[pos]}")
    return "\n".join(lines) + "\n"


def loads_model(text: str, field: Field | None = None) -> PfaffianModel:
    """Parse the key-value model format; ``field`` overrides the file's."""
    values: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ModelError(f"line {lineno}: expected 'key = value'")
        key, val = (s.strip() for s in line.split("=", 1))
        if key in values:
            raise ModelError(f"line {lineno}: duplicate key {key!r}")
        if key not in {"label", "field", "seed", "weights", *_KEYS}:
            raise ModelError(f"line {lineno}: unknown key {key!r}")
        values[key] = val
    missing = [k for k in ["weights", *_KEYS] if k not in values]
    if missing:
        raise ModelError(f"missing keys: {', '.join(missing)}")
    if field is None:
        spec = values.get("field", "rational")
        field = QQ if spec == "rational" else Field(int(spec))
    try:
        weights = tuple(int(v) for v in values["weights"].split())
    except ValueError as exc:
        raise ModelError(f"bad weights: {values['weights']!r}") from exc
    upper = {pos: parse(values[key], field) for key, pos in zip(_KEYS, PAIRS)}
    seed = int(values["seed"]) if "seed" in values else None
    m = PfaffianModel(weights, upper, values.get("label", ""), seed, field)
    m.diagnostic = homogeneity_diagnostic(m)
    return m


def load_model(path: str | Path, field: Field | None = None) -> PfaffianModel:
    return loads_model(Path(path).read_text(encoding="utf-8"), field)


def save_model(m: PfaffianModel, path: str | Path) -> None:
    Path(path).write_text(dumps_model(m), encoding="utf-8")
