"""Fibrewise analysis: graded pieces of fibre ideals and trigonality."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

import numpy as np

from .field import Field
from .linalg import rank
from .pfaffian import PfaffianModel, generators
from .poly import NVARS, Polynomial, x_monomials

MAX_DEGREE = 4
NONTRIGONAL = "nontrigonal"
TRIGONAL = "trigonal"
ANOMALOUS = "anomalous"


def normalize_point(point: Sequence, F: Field) -> tuple:
    """Representative ``(1 : c)`` or ``(0 : 1)``."""
    t0, t1 = F(point[0]), F(point[1])
    if t0:
        return (F.one, F.reduce(t1 * F.inv(t0)))
    if not t1:
        raise ValueError("(0 : 0) is not a point of P^1")
    return (F.zero, F.one)


def format_point(point: Sequence, F: Field) -> str:
    a, b = normalize_point(point, F)
    return f"({F.signed(a)}:{F.signed(b)})"


@dataclass(frozen=True)
class FiberIdeal:
    point: tuple
    gens: tuple  # nonzero x-only polynomials, monic

    @property
    def field(self) -> Field:
        return self.gens[0].field

    @property
    def degrees(self) -> list[int]:
        return sorted((max(g.x_degrees()) for g in self.gens), reverse=True)


def specialize(m: PfaffianModel, point: Sequence) -> FiberIdeal:
    F = m.field
    pt = normalize_point(point, F)
    gens = [g.substitute_t(pt) for g in generators(m)]
    gens = tuple(g.monic() for g in gens if g)
    if not gens:
        raise ValueError(f"all generators vanish over {format_point(pt, F)}")
    return FiberIdeal(pt, gens)


def _vector(f: Polynomial, index: dict) -> list:
    v = [f.field.zero] * len(index)
    for mon, c in f.terms.items():
        v[index[mon[2:]]] = c
    return v


def _multiples(gens: Iterable[Polynomial], d: int) -> list[list]:
    """Rows: coefficient vectors of ``g * x^beta`` in degree ``d``."""
    mons = x_monomials(d)
    index = {a: i for i, a in enumerate(mons)}
    rows = []
    for g in gens:
        gd = max(g.x_degrees())
        for beta in x_monomials(d - gd):
            shifted = Polynomial(
                {(0, 0) + tuple(a + b for a, b in zip(mon[2:], beta)): c for mon, c in g.terms.items()},
                g.field,
                _clean=True,
            )
            rows.append(_vector(shifted, index))
    return rows


def graded_ideal_dim(f: FiberIdeal, d: int) -> int:
    """Dimension of the degree-d piece of the ideal generated by the fibre's gens."""
    if d > MAX_DEGREE:
        raise ValueError(f"degree {d} exceeds the supported bound {MAX_DEGREE}")
    rows = _multiples(f.gens, d)
    return rank(rows, f.field) if rows else 0


def quadric_multiples_rank(f: FiberIdeal) -> int:
    quads = [g for g in f.gens if max(g.x_degrees()) == 2]
    rows = _multiples(quads, 3)
    return rank(rows, f.field) if rows else 0


def coker_mu_dim(f: FiberIdeal) -> int | None:
    """dim coker(I(2) x H^0(O(1)) -> I(3)); ``None`` when there are not 3 quadrics."""
    if graded_ideal_dim(f, 2) != 3:
        return None
    return graded_ideal_dim(f, 3) - quadric_multiples_rank(f)


@dataclass(frozen=True)
class FiberClassification:
    point: tuple
    quadric_dim: int
    cubic_dim: int
    coker_mu_dim: int | None
    verdict: str

    def as_dict(self, F: Field) -> dict:
        return {
            "point": format_point(self.point, F),
            "quadric_dim": self.quadric_dim,
            "cubic_dim": self.cubic_dim,
            "coker_mu_dim": self.coker_mu_dim,
            "verdict": self.verdict,
        }


def classify_ideal(f: FiberIdeal) -> FiberClassification:
    q2 = graded_ideal_dim(f, 2)
    q3 = graded_ideal_dim(f, 3)
    coker = q3 - quadric_multiples_rank(f) if q2 == 3 else None
    if (q2, q3, coker) == (3, 15, 0):
        verdict = NONTRIGONAL
    elif (q2, q3, coker) == (3, 15, 2):
        verdict = TRIGONAL
    else:
        verdict = ANOMALOUS
    return FiberClassification(f.point, q2, q3, coker, verdict)


def classify(m: PfaffianModel, point: Sequence) -> FiberClassification:
    return classify_ideal(specialize(m, point))


def random_points(F: Field, count: int, seed: int) -> list[tuple]:
    rng = random.Random(seed)
    bound = F.p if F.is_prime else 10**6
    return [(F.one, F(rng.randrange(1, bound))) for _ in range(count)]


def scan(m: PfaffianModel, points: Iterable[Sequence] = (), samples: int = 0, seed: int = 0) -> list[FiberClassification]:
    """Classify the given points plus ``samples`` seeded random ones, sorted."""
    F = m.field
    pts = {normalize_point(p, F) for p in points}
    pts.update(normalize_point(p, F) for p in random_points(F, samples, seed))
    key = lambda p: (F.signed(p[0]) == 0, F.signed(p[1]))
    return [classify(m, p) for p in sorted(pts, key=key)]


# ---------------------------------------------------------------------------
# smoothness probe over a small prime


@dataclass
class ProbeResult:
    status: str  # "pass" | "fail" | "inconclusive"
    checked: int
    prime: int
    witness: tuple | None = None
    reason: str = ""


def _to_small(c, F: Field, q: int) -> int:
    if F.is_prime:
        return F.signed(c) % q
    c = Fraction(c)
    if c.denominator % q == 0:
        raise ValueError(f"coefficient {c} has denominator divisible by {q}")
    return c.numerator * pow(c.denominator, -1, q) % q


def _small_terms(f: Polynomial, q: int):
    return [(mon, _to_small(c, f.field, q)) for mon, c in f.terms.items()]


def _eval_small(terms, point, q: int) -> int:
    total = 0
    for mon, c in terms:
        v = c
        for x, e in zip(point, mon):
            if e:
                v = v * pow(x, e, q) % q
        total += v
    return total % q


def _rank_mod(rows: list[list[int]], q: int) -> int:
    A = [list(r) for r in rows]
    r = 0
    for c in range(len(A[0]) if A else 0):
        piv = next((i for i in range(r, len(A)) if A[i][c] % q), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = pow(A[r][c], -1, q)
        for i in range(len(A)):
            if i != r and A[i][c] % q:
                f = A[i][c] * inv % q
                A[i] = [(a - f * b) % q for a, b in zip(A[i], A[r])]
        r += 1
    return r


def _projective_points(q: int) -> np.ndarray:
    chunks = []
    for lead in range(5):
        free = 4 - lead
        grid = np.array(list(product(range(q), repeat=free)), dtype=np.int64).reshape(q**free, free)
        pts = np.zeros((grid.shape[0], 5), dtype=np.int64)
        pts[:, lead] = 1
        pts[:, lead + 1:] = grid
        chunks.append(pts)
    return np.concatenate(chunks)


def _eval_array(terms, pts: np.ndarray, q: int) -> np.ndarray:
    acc = np.zeros(pts.shape[0], dtype=np.int64)
    for mon, c in terms:
        v = np.full(pts.shape[0], c, dtype=np.int64)
        for i, e in enumerate(mon[2:]):
            for _ in range(e):
                v = v * pts[:, i] % q
        acc = (acc + v) % q
    return acc


def smoothness_probe(
    m: PfaffianModel, point: Sequence, trials: int = 20, probe_prime: int = 31, seed: int = 0
) -> ProbeResult:
    """Look for singular points of S on one fibre, working modulo a small prime.

    All F_q-points of P^4 are enumerated and kept if the specialized
    generators vanish; at up to ``trials`` of them the 5 x 7 Jacobian of the
    generators in (t0, t1, x0..x4) must have rank 3.  Probabilistic: points
    over extensions of F_q and bad reduction are not examined.
    """
    q = probe_prime
    if trials <= 0:
        return ProbeResult("inconclusive", 0, q, reason="no trial budget")
    F = m.field
    gens = generators(m)
    tau = tuple(_to_small(F(c), F, q) for c in normalize_point(point, F))
    fibre = [[((0, 0) + mon[2:], c * pow(tau[0], mon[0], q) * pow(tau[1], mon[1], q) % q) for mon, c in _small_terms(g, q)] for g in gens]
    fibre = [[(mon, c) for mon, c in terms if c] for terms in fibre]
    pts = _projective_points(q)
    # quadrics first: they cut down the candidate set cheaply
    order = sorted(range(len(fibre)), key=lambda i: max((sum(mn[2:]) for mn, _ in fibre[i]), default=0))
    for i in order:
        if fibre[i]:
            pts = pts[_eval_array(fibre[i], pts, q) == 0]
    if len(pts) == 0:
        return ProbeResult("inconclusive", 0, q, reason=f"no F_{q}-point on the fibre")
    partials = [[_small_terms(g.diff(v), q) for v in range(NVARS)] for g in gens]
    rng = random.Random(seed)
    chosen = rng.sample(range(len(pts)), min(trials, len(pts)))
    for idx in sorted(chosen):
        full = tau + tuple(int(v) for v in pts[idx])
        jac = [[_eval_small(terms, full, q) for terms in row] for row in partials]
        if _rank_mod(jac, q) < 3:
            return ProbeResult("fail", len(chosen), q, witness=full, reason="Jacobian rank below 3")
    return ProbeResult("pass", len(chosen), q)
