import pytest

from slopefib.fibers import _multiples, graded_ideal_dim, specialize as fibre
from slopefib.horikawa import (
    HorikawaError,
    build_K2_K3,
    build_Rk_chart,
    bundle_degree,
    expected_degree,
    horikawa,
    horikawa_module,
    mu_matrix,
    quadric_multiples_matrix,
    verify_slope,
)
from slopefib.linalg import cokernel_torsion, rank, specialize
from slopefib.pfaffian import PfaffianModel, family_A, random_quadrics
from slopefib.parser import parse
from conftest import family, horikawa_of, invariants_of


@pytest.mark.parametrize("chart", [0, 1])
def test_chart_ranks(chart):
    m = family("A", 1)
    assert [build_Rk_chart(m, k, chart).rank for k in (1, 2, 3)] == [5, 12, 20]
    K2, K3 = build_K2_K3(m, chart)
    assert (K2.rank, K3.rank) == (3, 15)


def test_n_independent_kernel_ranks():
    K2, K3 = build_K2_K3(family("A", 2), 0)
    assert (K2.rank, K3.rank) == (3, 15)


def test_k_out_of_range():
    with pytest.raises(ValueError):
        build_Rk_chart(family("A", 1), 4, 0)
    with pytest.raises(ValueError):
        build_Rk_chart(family("A", 1), 1, 2)


@pytest.mark.parametrize("c", [0, 1, 5, -7])
def test_specialized_kernel_contains_specialized_kernel(c):
    # the specialization of K_2 lies in the quadrics of the fibre over (1:c),
    # with equality away from finitely many c
    m = family("A", 1)
    F = m.field
    K2, _ = build_K2_K3(m, 0)
    spec = specialize([list(v) for v in K2.basis], c)
    f = fibre(m, (1, c))
    ideal = _multiples(f.gens, 2)
    r = rank(ideal, F)
    assert rank(ideal + spec, F) == r
    assert rank(spec, F) <= graded_ideal_dim(f, 2)


def test_mu_cross_check_against_all_cubic_monomials():
    m = family("A", 1)
    for chart in (0, 1):
        a = cokernel_torsion(mu_matrix(m, chart), m.field)
        b = cokernel_torsion(quadric_multiples_matrix(m, chart), m.field, require_torsion=False)
        assert a.total_length == b.total_length


@pytest.mark.parametrize("n", [1, 2, 3])
def test_family_A_horikawa(n):
    hk = horikawa_of("A", n)
    assert hk.support == {"(1:0)": 2 * n}
    assert hk.total_length == 2 * n and hk.H_total == n
    assert hk.even and hk.chart_consistent and not hk.problems
    assert hk.koszul_K03_length == 0 and hk.koszul_K03_free_rank == 0
    assert hk.koszul_K12_support == hk.support


@pytest.mark.parametrize("key, support", [(("B", 1), {"(1:0)": 2}), (("B", 2), {"(1:0)": 2}), (("C", 1), {"(1:0)": 4}), (("C", 2), {"(1:0)": 6})])
def test_scroll_families_frozen(key, support):
    hk = horikawa_of(*key)
    assert hk.support == support and hk.koszul_K12_support == support
    assert verify_slope(family(*key), invariants_of(*key), hk).status == "PASS"


@pytest.mark.parametrize("key", [("A", 1), ("A", 2), ("B", 1), ("C", 1)])
def test_degree_bookkeeping(key):
    m, inv = family(*key), invariants_of(*key)
    for k in (1, 2, 3):
        assert bundle_degree(m, k) == expected_degree(inv, k)


def test_horikawa_independent_of_seed_and_scaling():
    F = family("A", 1).field
    qs = random_quadrics(11, F)
    a = horikawa_module(family_A(1, qs))
    b = horikawa_module(family_A(1, tuple(q.scale(F(3)) for q in qs)))
    assert a.support == b.support == {"(1:0)": 2}


def test_slope_report_family_A():
    rep = verify_slope(family("A", 2), invariants_of("A", 2), horikawa_of("A", 2))
    d = rep.as_dict()
    assert d["status"] == "PASS" and d["K2"] == 82 and d["chi_f"] == 20 and d["H_sum"] == 2
    assert d["horikawa_identity"] and d["konno_identity"]


def test_non_torsion_cokernel_is_a_structured_fail():
    # constant in t: every fibre is the trigonal curve over (1:0) of family A
    F = family("A", 1).field
    upper = dict(family("A", 1).upper)
    upper[(0, 1)] = parse("0", F)
    for pos, s in {(1, 2): "x1", (1, 3): "x3", (1, 4): "x4"}.items():
        upper[pos] = parse(s, F)
    m = PfaffianModel((0, 0, 0, 0, 0), upper, "product", None, F)
    with pytest.raises(HorikawaError):
        horikawa_module(m)
    rep = verify_slope(m)
    assert rep.status == "FAIL" and rep.horikawa_identity is None and rep.details
