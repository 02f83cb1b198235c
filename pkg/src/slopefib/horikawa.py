"""The Horikawa module, the Koszul sheaves and the slope equality.

Sheaves on the base P^1 are handled on the two affine charts

* chart 0: ``t0 = 1`` with coordinate ``t = t1``; ``t = c`` is the point (1:c);
* chart 1: ``t1 = 1`` with coordinate ``s = t0``; ``s = 0`` is the point (0:1).

On a chart the x-degree k part of ``k[t][x] / I`` is a finitely generated
k[t]-module.  A Smith form ``U G V = D`` of the matrix ``G`` of generator
multiples gives everything at once: when every invariant factor is 1 the
quotient is free, ``(U v)[r:]`` are the coordinates of the class of ``v``,
``Uinv[:, r:]`` lifts the quotient basis and ``Uinv[:, :r]`` is a basis of
the (saturated) kernel of ``Sym^k R_1 -> R_k``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import combinations
from math import comb

from .cohomology import FibrationInvariants, expected_rank_chi_deg, invariants, relative_dualizing_twist
from .field import Field
from .linalg import NonTorsionCokernel, SmithResult, cokernel_torsion, smith_normal_form
from .pfaffian import PfaffianModel, generators
from .poly import Polynomial, x_monomials
from .upoly import UPoly

CHARTS = (0, 1)
SLOPE = 4  # genus 5


class HorikawaError(ValueError):
    """A hypothesis of the construction fails for this model."""


def _point_label(chart: int, p: UPoly) -> str:
    """Name a closed point given by a monic irreducible ``p`` on a chart."""
    F = p.field
    if p.degree == 1:
        c = F.signed(F.reduce(-p.c[0]))
        return f"(1:{c})" if chart == 0 else f"({c}:1)" if c else "(0:1)"
    var = "t" if chart == 0 else "s"
    return f"{{{str(p).replace('t', var)} = 0}}"


# ---------------------------------------------------------------------------
# chart modules


def _chart_vector(f: Polynomial, mons: list, index: dict, chart: int) -> list[UPoly]:
    F = f.field
    coeffs: list[dict] = [dict() for _ in mons]
    for mon, c in f.terms.items():
        e = mon[1] if chart == 0 else mon[0]
        slot = coeffs[index[mon[2:]]]
        slot[e] = F.reduce(slot.get(e, F.zero) + c)
    out = []
    for slot in coeffs:
        top = max(slot, default=-1)
        out.append(UPoly([slot.get(i, F.zero) for i in range(top + 1)], F, _clean=True))
    return out


def _shift(alpha, beta):
    return tuple(a + b for a, b in zip(alpha, beta))


@dataclass
class _Presentation:
    k: int
    chart: int
    monomials: list
    index: dict
    snf: SmithResult
    relations: int  # r: rank of the generator-multiple matrix

    def project(self, v: list[UPoly]) -> list[UPoly]:
        """Coordinates in R_k of the class of ``v``."""
        return _apply(self.snf.U[self.relations:], v)

    def kernel_coords(self, v: list[UPoly]) -> list[UPoly]:
        w = _apply(self.snf.U, v)
        if any(w[self.relations:]):
            raise HorikawaError("vector does not lie in the kernel of Sym^k R_1 -> R_k")
        return w[: self.relations]


def _apply(rows, v):
    F = v[0].field if v else None
    zero = UPoly((), F)
    out = []
    for row in rows:
        acc = zero
        for a, b in zip(row, v):
            if a and b:
                acc = acc + a * b
        out.append(acc)
    return out


@dataclass
class GradedModuleChart:
    """Free k[t]-basis of ``R_k`` (kind "R") or of ``K_k`` (kind "K") on a chart.

    Basis vectors are coefficient vectors over the x-monomials of degree k.
    """

    chart: int
    k: int
    kind: str
    basis: list
    rank: int
    presentation: _Presentation = dc_field(repr=False)

    @property
    def field(self) -> Field:
        return self.presentation.snf.factors[0].field if self.presentation.snf.factors else None


def _presentation(m: PfaffianModel, k: int, chart: int) -> _Presentation:
    if chart not in CHARTS:
        raise ValueError("chart must be 0 (t0 = 1) or 1 (t1 = 1)")
    F = m.field
    mons = x_monomials(k)
    index = {a: i for i, a in enumerate(mons)}
    cols = []
    for g in generators(m):
        d = max(g.x_degrees())
        if d > k:
            continue
        for beta in x_monomials(k - d):
            shifted = Polynomial({mon[:2] + _shift(mon[2:], beta): c for mon, c in g.terms.items()}, F, _clean=True)
            cols.append(_chart_vector(shifted, mons, index, chart))
    if cols:
        G = [[cols[j][i] for j in range(len(cols))] for i in range(len(mons))]
        snf = smith_normal_form(G, F, transforms=True)
    else:
        from .linalg import identity

        I = identity(len(mons), F)
        snf = SmithResult([], 0, (len(mons), 0), I, [], [row[:] for row in I], [])
    bad = [d for d in snf.factors if d.degree > 0]
    if bad:
        raise HorikawaError(
            f"x-degree {k} part on chart {chart} has torsion {[str(d) for d in bad]}: the family is not flat"
        )
    return _Presentation(k, chart, mons, index, snf, snf.rank)


def build_Rk_chart(m: PfaffianModel, k: int, chart: int, _pres: _Presentation | None = None) -> GradedModuleChart:
    if k not in (1, 2, 3):
        raise ValueError("k must be 1, 2 or 3")
    pres = _pres or _presentation(m, k, chart)
    r = pres.relations
    n = len(pres.monomials)
    basis = [[pres.snf.Uinv[i][j] for i in range(n)] for j in range(r, n)]
    expected = expected_rank_chi_deg(k)[0]
    if len(basis) != expected:
        raise HorikawaError(f"rank of R_{k} on chart {chart} is {len(basis)}, expected {expected}")
    return GradedModuleChart(chart, k, "R", basis, len(basis), pres)


def _kernel_chart(m: PfaffianModel, k: int, chart: int, pres: _Presentation) -> GradedModuleChart:
    n = len(pres.monomials)
    basis = [[pres.snf.Uinv[i][j] for i in range(n)] for j in range(pres.relations)]
    return GradedModuleChart(chart, k, "K", basis, len(basis), pres)


EXPECTED_K_RANKS = {2: 3, 3: 15}


def build_K2_K3(m: PfaffianModel, chart: int) -> tuple[GradedModuleChart, GradedModuleChart]:
    out = []
    for k in (2, 3):
        pres = _presentation(m, k, chart)
        build_Rk_chart(m, k, chart, pres)  # rank check
        K = _kernel_chart(m, k, chart, pres)
        if K.rank != EXPECTED_K_RANKS[k]:
            raise HorikawaError(f"rank of K_{k} on chart {chart} is {K.rank}, expected {EXPECTED_K_RANKS[k]}")
        out.append(K)
    return out[0], out[1]


def _times_x(v: list[UPoly], j: int, src: _Presentation, dst: _Presentation, F: Field) -> list[UPoly]:
    out = [UPoly((), F)] * len(dst.monomials)
    e = tuple(1 if i == j else 0 for i in range(5))
    for alpha, c in zip(src.monomials, v):
        if c:
            i = dst.index[_shift(alpha, e)]
            out[i] = out[i] + c
    return out


def _times(v: list[UPoly], w: list[UPoly], a: _Presentation, b: _Presentation, dst: _Presentation, F: Field):
    out = [UPoly((), F)] * len(dst.monomials)
    for alpha, c in zip(a.monomials, v):
        if not c:
            continue
        for beta, d in zip(b.monomials, w):
            if d:
                i = dst.index[_shift(alpha, beta)]
                out[i] = out[i] + c * d
    return out


def _unit(i: int, n: int, F: Field) -> list[UPoly]:
    return [UPoly.const(1, F) if j == i else UPoly((), F) for j in range(n)]


def _columns_to_matrix(cols: list[list[UPoly]], nrows: int, F: Field) -> list[list[UPoly]]:
    if not cols:
        return [[] for _ in range(nrows)]
    return [[cols[j][i] for j in range(len(cols))] for i in range(nrows)]


def mu_matrix(m: PfaffianModel, chart: int) -> list[list[UPoly]]:
    """Matrix of ``K_2 (x) R_1 -> K_3`` in the chart bases (15 x 15)."""
    F = m.field
    K2, K3 = build_K2_K3(m, chart)
    cols = []
    for kappa in K2.basis:
        for j in range(5):
            cols.append(K3.presentation.kernel_coords(_times_x(kappa, j, K2.presentation, K3.presentation, F)))
    return _columns_to_matrix(cols, K3.rank, F)


def quadric_multiples_matrix(m: PfaffianModel, chart: int) -> list[list[UPoly]]:
    """The same multiplication written in all 35 cubic monomials (35 x 15)."""
    F = m.field
    K2, K3 = build_K2_K3(m, chart)
    cols = [_times_x(kappa, j, K2.presentation, K3.presentation, F) for kappa in K2.basis for j in range(5)]
    return _columns_to_matrix(cols, len(K3.presentation.monomials), F)


# ---------------------------------------------------------------------------
# torsion modules glued from the two charts


@dataclass
class ChartTorsion:
    chart: int
    total_length: int
    local: list  # (monic irreducible, length)

    def length_at_origin(self) -> int:
        return sum(length for p, length in self.local if p.degree == 1 and not p.c[0])


@dataclass
class TorsionSheaf:
    """Support and lengths of a torsion sheaf on P^1."""

    support: dict  # point label -> length
    total_length: int
    charts: tuple  # (ChartTorsion, ChartTorsion)

    @property
    def chart_consistent(self) -> bool:
        c0, c1 = self.charts
        return c0.total_length + c1.length_at_origin() == c1.total_length + c0.length_at_origin()


def _glue(c0: ChartTorsion, c1: ChartTorsion) -> TorsionSheaf:
    support = {_point_label(0, p): length for p, length in c0.local}
    at_inf = c1.length_at_origin()
    if at_inf:
        support["(0:1)"] = at_inf
    support = dict(sorted(support.items(), key=lambda kv: _sort_key(kv[0])))
    return TorsionSheaf(support, sum(support.values()), (c0, c1))


def _sort_key(label: str):
    if label.startswith("(1:"):
        return (0, int(label[3:-1]), label)
    if label == "(0:1)":
        return (1, 0, label)
    return (2, 0, label)


def _chart_torsion(M, F: Field, chart: int, require_torsion: bool = True):
    data = cokernel_torsion(M, F, require_torsion=require_torsion)
    return ChartTorsion(chart, data.total_length, data.local), data


def horikawa_module(m: PfaffianModel) -> TorsionSheaf:
    """``F = coker(mu)`` glued from both charts."""
    charts = []
    for chart in CHARTS:
        try:
            ct, _ = _chart_torsion(mu_matrix(m, chart), m.field, chart)
        except NonTorsionCokernel as exc:
            raise HorikawaError(f"coker(mu) on chart {chart} is not torsion: {exc}") from exc
        charts.append(ct)
    return _glue(*charts)


# ---------------------------------------------------------------------------
# Koszul sheaves


@dataclass
class KoszulData:
    K03_free_rank: int
    K03: TorsionSheaf | None
    K12: TorsionSheaf | None
    problems: list = dc_field(default_factory=list)

    @property
    def K03_vanishes(self) -> bool:
        return self.K03_free_rank == 0 and self.K03 is not None and self.K03.total_length == 0


def _koszul_chart(m: PfaffianModel, chart: int):
    F = m.field
    p1 = _presentation(m, 1, chart)
    R1 = build_Rk_chart(m, 1, chart, p1)
    p2 = _presentation(m, 2, chart)
    R2 = build_Rk_chart(m, 2, chart, p2)
    p3 = _presentation(m, 3, chart)
    R3 = build_Rk_chart(m, 3, chart, p3)
    # d12: R1 (x) R2 -> R3
    d12_cols = []
    for u in R1.basis:
        for v in R2.basis:
            d12_cols.append(p3.project(_times(u, v, p1, p2, p3, F)))
    d12 = _columns_to_matrix(d12_cols, R3.rank, F)
    # d21: wedge^2 R1 (x) R1 -> R1 (x) R2
    n1, n2 = R1.rank, R2.rank
    prod2 = [[p2.project(_times(R1.basis[b], R1.basis[c], p1, p1, p2, F)) for c in range(n1)] for b in range(n1)]
    d21_cols = []
    for a, b in combinations(range(n1), 2):
        for c in range(n1):
            col = [UPoly((), F)] * (n1 * n2)
            for j in range(n2):
                col[a * n2 + j] = col[a * n2 + j] + prod2[b][c][j]
                col[b * n2 + j] = col[b * n2 + j] - prod2[a][c][j]
            d21_cols.append(col)
    d21 = _columns_to_matrix(d21_cols, n1 * n2, F)
    return d12, d21


def koszul_sheaves(m: PfaffianModel) -> KoszulData:
    F = m.field
    k03_charts, k12_charts, problems = [], [], []
    free03 = 0
    for chart in CHARTS:
        d12, d21 = _koszul_chart(m, chart)
        composite = _matmul_nonzero(d12, d21)
        if composite:
            problems.append(f"d12 * d21 != 0 on chart {chart}")
        ct03, data03 = _chart_torsion(d12, F, chart, require_torsion=False)
        free03 = max(free03, data03.free_rank)
        k03_charts.append(ct03)
        ct12, data12 = _chart_torsion(d21, F, chart, require_torsion=False)
        expected = len(d12[0]) - data03.rank
        if data12.rank != expected:
            problems.append(f"rank d21 = {data12.rank} but ker d12 has rank {expected} on chart {chart}")
        k12_charts.append(ct12)
    if free03:
        problems.append(f"d12 is not surjective: K_03 has free rank {free03}")
    return KoszulData(free03, _glue(*k03_charts), _glue(*k12_charts), problems)


def _matmul_nonzero(A, B) -> bool:
    for row in A:
        for j in range(len(B[0]) if B else 0):
            acc = UPoly((), row[0].field) if row else None
            for k, a in enumerate(row):
                if a and B[k][j]:
                    acc = acc + a * B[k][j]
            if acc:
                return True
    return False


# ---------------------------------------------------------------------------
# reports


@dataclass
class HorikawaReport:
    support: dict  # point label -> local length of F
    total_length: int
    H_values: dict  # point label -> length / 2
    chart_consistent: bool
    koszul_K03_length: int | None
    koszul_K03_free_rank: int | None
    koszul_K12_support: dict | None
    problems: list = dc_field(default_factory=list)

    @property
    def even(self) -> bool:
        return all(v % 2 == 0 for v in self.support.values())

    @property
    def H_total(self) -> Fraction:
        return sum((Fraction(v) for v in self.H_values.values()), Fraction(0))

    def as_dict(self) -> dict:
        return {
            "support": self.support,
            "total_length": self.total_length,
            "H_values": {k: _num(v) for k, v in self.H_values.items()},
            "H_total": _num(self.H_total),
            "even": self.even,
            "chart_consistent": self.chart_consistent,
            "koszul": {
                "K03_length": self.koszul_K03_length,
                "K03_free_rank": self.koszul_K03_free_rank,
                "K12_support": self.koszul_K12_support,
            },
            "problems": list(self.problems),
        }


def _num(x):
    x = Fraction(x)
    return int(x) if x.denominator == 1 else str(x)


def horikawa(m: PfaffianModel, koszul: bool = True) -> HorikawaReport:
    F_sheaf = horikawa_module(m)
    problems = []
    if not F_sheaf.chart_consistent:
        problems.append("torsion lengths of F disagree between the charts")
    odd = {p: v for p, v in F_sheaf.support.items() if v % 2}
    if odd:
        problems.append(f"odd local lengths {odd}")
    H = {p: Fraction(v, 2) for p, v in F_sheaf.support.items()}
    k03 = k03_free = k12 = None
    if koszul:
        kd = koszul_sheaves(m)
        problems.extend(kd.problems)
        k03_free = kd.K03_free_rank
        k03 = kd.K03.total_length if kd.K03 is not None else None
        k12 = kd.K12.support if kd.K12 is not None else None
        if kd.K12 is not None and not kd.K12.chart_consistent:
            problems.append("torsion lengths of K_12 disagree between the charts")
        if k12 is not None and k12 != F_sheaf.support:
            problems.append(f"K_12 support {k12} differs from F support {F_sheaf.support}")
    return HorikawaReport(F_sheaf.support, F_sheaf.total_length, H, F_sheaf.chart_consistent, k03, k03_free, k12, problems)


@dataclass
class SlopeReport:
    status: str  # "PASS" | "FAIL"
    K2: int | None
    chi_f: int | None
    H_sum: Fraction | None
    horikawa_identity: bool | None
    konno_sum: Fraction | None
    konno_identity: bool | None
    details: list = dc_field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "status": self.status,
            "K2": self.K2,
            "chi_f": self.chi_f,
            "slope": SLOPE,
            "H_sum": None if self.H_sum is None else _num(self.H_sum),
            "horikawa_identity": self.horikawa_identity,
            "konno_sum": None if self.konno_sum is None else _num(self.konno_sum),
            "konno_identity": self.konno_identity,
            "details": list(self.details),
        }


def verify_slope(
    m: PfaffianModel, inv: FibrationInvariants | None = None, report: HorikawaReport | None = None
) -> SlopeReport:
    """Check ``K^2 = 4 chi_f + sum H`` and its Koszul counterpart exactly."""
    if inv is None:
        inv = invariants(m)
    if report is None:
        try:
            report = horikawa(m)
        except (HorikawaError, NonTorsionCokernel) as exc:
            return SlopeReport("FAIL", inv.K2, inv.chi_f, None, None, None, None, [str(exc)])
    details = list(report.problems)
    H_sum = report.H_total
    lhs = inv.K2
    ok_h = Fraction(lhs) == SLOPE * inv.chi_f + H_sum
    details.append(f"K_f^2 = {lhs}, 4 chi_f + sum H = {SLOPE * inv.chi_f} + {_num(H_sum)}")
    konno = ok_k = None
    if report.koszul_K12_support is not None:
        if report.koszul_K03_free_rank:
            details.append("K_03 is not torsion; Koszul identity not evaluated")
        else:
            konno = Fraction(sum(report.koszul_K12_support.values()) - (report.koszul_K03_length or 0), 2)
            ok_k = Fraction(lhs) == SLOPE * inv.chi_f + konno
            details.append(f"4 chi_f + (len K_12 - len K_03)/2 = {SLOPE * inv.chi_f} + {_num(konno)}")
    passed = ok_h and ok_k is not False and report.even and report.chart_consistent and not report.problems
    return SlopeReport("PASS" if passed else "FAIL", inv.K2, inv.chi_f, H_sum, ok_h, konno, ok_k, details)


# ---------------------------------------------------------------------------
# degrees of the direct images


def bundle_degree(m: PfaffianModel, k: int) -> int:
    """Degree of ``R_k`` from the transition matrix between the chart bases.

    A section with chart-1 coefficient ``c s^e x^alpha`` has chart-0
    coefficient ``c t^(B + w.alpha - e)`` where ``R_k = pi_* O_S(B, k)``;
    the determinant of the transition matrix is ``c t^deg``.
    """
    F = m.field
    B = k * relative_dualizing_twist(m)[0]
    p0 = _presentation(m, k, 0)
    p1 = _presentation(m, k, 1)
    R0 = build_Rk_chart(m, k, 0, p0)
    R1 = build_Rk_chart(m, k, 1, p1)
    w = m.weights
    laurent = []
    low = 0
    for f in R1.basis:
        col = []
        for alpha, c in zip(p1.monomials, f):
            shift = B + sum(a * b for a, b in zip(w, alpha))
            terms = {shift - e: v for e, v in enumerate(c.c) if v}
            if terms:
                low = min(low, min(terms))
            col.append(terms)
        laurent.append(col)
    N = -low
    cols = []
    for col in laurent:
        vec = []
        for terms in col:
            top = max(terms, default=-N - 1) + N
            vec.append(UPoly([terms.get(i - N, F.zero) for i in range(top + 1)], F, _clean=True))
        cols.append(p0.project(vec))
    T = _columns_to_matrix(cols, R0.rank, F)
    snf = smith_normal_form(T, F)
    if snf.rank != R0.rank:
        raise HorikawaError(f"transition matrix of R_{k} is singular")
    for d in snf.factors:
        if any(d.c[:-1]):
            raise HorikawaError(f"transition matrix of R_{k} is not invertible off t = 0: factor {d}")
    return sum(d.degree for d in snf.factors) - N * R0.rank


def expected_degree(inv: FibrationInvariants, k: int) -> int:
    if k == 1:
        return inv.chi_f
    return inv.chi_f + comb(k, 2) * inv.K2
