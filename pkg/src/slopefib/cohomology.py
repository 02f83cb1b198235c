"""Line-bundle cohomology on split scrolls over P^1 and invariants of S.

The ambient is ``F(w) = P(O(w0) + ... + O(w4))`` over P^1 (``w = 0`` gives
P^1 x P^4) with the grading of :mod:`slopefib.poly`.  Cohomology of
``O(a, b)`` is computed through the projection to P^1:

* ``b >= 0``: ``pi_* O(a, b) = sum over |alpha| = b of O(a + w.alpha)``;
* ``b <= -5``: ``R^4 pi_* O(a, b) = sum over |alpha| = -b-5 of
  O(a - |w| - w.alpha)`` (relative duality, ``omega_rel = O(|w|, -5)``);
* otherwise everything vanishes.
"""

from __future__ import annotations

from dataclasses import dataclass, asdict
from fractions import Fraction
from math import comb
from typing import Sequence

from .pfaffian import PfaffianModel, pfaffians
from .poly import ZERO_WEIGHTS, check_weights, x_monomials

GENUS = 5
CHI_OF_FIBRE = 1 - GENUS


class InvariantsError(ValueError):
    pass


def _h0_p1(a: int) -> int:
    return max(a + 1, 0)


def _h1_p1(a: int) -> int:
    return max(-a - 1, 0)


def _direct_image_twists(twist: tuple[int, int], w: Sequence[int]) -> tuple[int, list[int]]:
    """``(q, [c_k])``: the only nonzero ``R^q pi_*`` is ``sum O(c_k)``."""
    a, b = twist
    if b >= 0:
        return 0, [a + sum(x * y for x, y in zip(w, alpha)) for alpha in x_monomials(b)]
    if b <= -5:
        total = sum(w)
        return 4, [a - total - sum(x * y for x, y in zip(w, alpha)) for alpha in x_monomials(-b - 5)]
    return 0, []


def h_i(twist: tuple[int, int], w: Sequence[int] = ZERO_WEIGHTS, i: int = 0) -> int:
    """``dim H^i(F(w), O(twist))`` for ``0 <= i <= 5``."""
    w = check_weights(w)
    if not 0 <= i <= 5:
        raise ValueError("cohomological degree must be in 0..5")
    q, twists = _direct_image_twists(twist, w)
    if i == q:
        return sum(_h0_p1(c) for c in twists)
    if i == q + 1:
        return sum(_h1_p1(c) for c in twists)
    return 0


def all_h(twist, w=ZERO_WEIGHTS) -> list[int]:
    return [h_i(twist, w, i) for i in range(6)]


def chi_line_bundle(twist, w=ZERO_WEIGHTS) -> int:
    return sum((-1) ** i * h for i, h in enumerate(all_h(twist, w)))


def kunneth_h_i(twist: tuple[int, int], i: int) -> int:
    """Product formula on P^1 x P^4, kept separate from :func:`h_i`."""
    a, b = twist
    p1 = [_h0_p1(a), _h1_p1(a)]
    p4 = [0] * 5
    if b >= 0:
        p4[0] = comb(b + 4, 4)
    if b <= -5:
        p4[4] = comb(-b - 1, 4)
    return sum(p1[j] * p4[i - j] for j in range(2) if 0 <= i - j <= 4)


def omega_ambient(w: Sequence[int]) -> tuple[int, int]:
    return (sum(check_weights(w)) - 2, -5)


@dataclass
class FreeComplex:
    """Twists of the Pfaffian resolution ``L0 <- L1 <- L2 <- L3``."""

    levels: list  # list of lists of (a, b)
    weights: tuple
    s: tuple

    def euler_characteristic(self, u=(0, 0)) -> int:
        return sum(
            (-1) ** j * sum(chi_line_bundle((a + u[0], b + u[1]), self.weights) for a, b in lvl)
            for j, lvl in enumerate(self.levels)
        )

    def contributions(self, u=(0, 0)) -> dict[int, int]:
        """Total dimension of hypercohomology E1 terms in each total degree.

        ``H^i(L_j(u))`` sits in total degree ``i - j``.
        """
        out: dict[int, int] = {}
        for j, lvl in enumerate(self.levels):
            for a, b in lvl:
                for i, h in enumerate(all_h((a + u[0], b + u[1]), self.weights)):
                    if h:
                        out[i - j] = out.get(i - j, 0) + h
        return out

    def cohomology(self, u=(0, 0), k: int = 0) -> tuple[int, bool]:
        """``(value, exact)`` for ``h^k(O_S(u))``.

        Exact when the neighbouring total degrees carry nothing, so no
        differential can touch degree ``k``, or when the bound is already 0;
        otherwise ``value`` is an upper bound.
        """
        c = self.contributions(u)
        exact = not c.get(k, 0) or (not c.get(k - 1) and not c.get(k + 1))
        return c.get(k, 0), exact


def resolution_from_model(m: PfaffianModel) -> FreeComplex:
    degs = pfaffians(m).bidegrees
    if any(d is None or d == "inhomogeneous" for d in degs):
        raise InvariantsError(f"Pfaffian bidegrees unavailable: {degs}")
    return resolution_from_degrees(degs, m.weights)


def resolution_from_degrees(degs: Sequence[tuple[int, int]], w=ZERO_WEIGHTS) -> FreeComplex:
    st = sum(d[0] for d in degs)
    sx = sum(d[1] for d in degs)
    if st % 2 or sx % 2:
        raise InvariantsError(f"sum of Pfaffian bidegrees ({st}, {sx}) is not even")
    s = (st // 2, sx // 2)
    levels = [
        [(0, 0)],
        [(-a, -b) for a, b in degs],
        [(a - s[0], b - s[1]) for a, b in degs],
        [(-s[0], -s[1])],
    ]
    return FreeComplex(levels, check_weights(w), s)


def dualizing_twist(m: PfaffianModel) -> tuple[int, int]:
    """omega_S as a twist ``O_S(a, b)``."""
    res = resolution_from_model(m)
    wa = omega_ambient(m.weights)
    return (wa[0] + res.s[0], wa[1] + res.s[1])


def relative_dualizing_twist(m: PfaffianModel) -> tuple[int, int]:
    a, b = dualizing_twist(m)
    return (a + 2, b)  # base P^1: omega_B = O(-2)


def chi_Rk(m: PfaffianModel, k: int) -> int:
    """chi of the k-th relative canonical sheaf, from the resolution."""
    if k < 2:
        raise ValueError("chi_Rk needs k >= 2")
    res = resolution_from_model(m)
    rel = relative_dualizing_twist(m)
    return res.euler_characteristic((k * rel[0], k * rel[1]))


def chi_Rk_formula(n: int, k: int) -> Fraction:
    """Closed form for the family on P^1 x P^4 with parameter n."""
    return Fraction(-8 + 16 * k + 20 * n - 41 * k * n + 41 * k * k * n, 2)


@dataclass
class FibrationInvariants:
    p_g: int
    q: int
    chi_O: int
    chi_f: int
    K2: int
    e_f: int
    p_g_exact: bool = True
    q_exact: bool = True

    def as_dict(self) -> dict:
        return asdict(self)


def K2_from_chi(chi_rk: int, chi_f: int, k: int, chi_OB: int = 1) -> Fraction:
    """Solve ``chi(R_k) = chi_f + C(k,2) K^2 - (2k-1) chi(O_B) chi(O_F)``."""
    return Fraction(chi_rk - chi_f + (2 * k - 1) * chi_OB * CHI_OF_FIBRE, comb(k, 2))


def invariants(m: PfaffianModel, check_k: Sequence[int] = (2, 3, 4)) -> FibrationInvariants:
    res = resolution_from_model(m)
    chi_O = res.euler_characteristic()
    omega = dualizing_twist(m)
    p_g, p_g_exact = res.cohomology(omega, 0)
    if not p_g_exact:
        p_g, p_g_exact = res.cohomology((0, 0), 2)
    q, q_exact = res.cohomology((0, 0), 1)
    h0, h0_exact = res.cohomology((0, 0), 0)
    if p_g_exact and q_exact and h0_exact and h0 - q + p_g != chi_O:
        raise InvariantsError(f"h0 - q + p_g = {h0 - q + p_g} disagrees with chi(O_S) = {chi_O}")
    chi_f = chi_O - CHI_OF_FIBRE  # chi(O_B) = 1 for the base P^1
    values = {k: K2_from_chi(chi_Rk(m, k), chi_f, k) for k in check_k}
    if len(set(values.values())) != 1:
        raise InvariantsError(f"K_f^2 depends on k: {values}")
    K2 = next(iter(values.values()))
    if K2.denominator != 1:
        raise InvariantsError(f"non-integral K_f^2 = {K2}")
    K2 = int(K2)
    return FibrationInvariants(p_g, q, chi_O, chi_f, K2, 12 * chi_f - K2, p_g_exact, q_exact)


def expected_rank_chi_deg(n: int, inv: FibrationInvariants | None = None, g: int = GENUS, base_genus: int = 0):
    """Rank, chi and degree of the n-th relative canonical sheaf.

    ``inv`` supplies chi_f and K_f^2; without it only the rank is returned
    alongside ``None`` placeholders.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        rank = 1
    elif n == 1:
        rank = g
    else:
        rank = (2 * n - 1) * (g - 1)
    if inv is None:
        return rank, None, None
    if n == 0:
        deg = 0
    elif n == 1:
        deg = inv.chi_f
    else:
        deg = inv.chi_f + comb(n, 2) * inv.K2
    # Riemann-Roch on the base curve
    chi = deg + rank * (1 - base_genus)
    return rank, chi, deg
