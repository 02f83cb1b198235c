from itertools import combinations, permutations

import pytest
from hypothesis import given, strategies as st

from slopefib.field import DEFAULT_PRIME, QQ, SECOND_PRIME, Field
from slopefib.linalg import (
    NonTorsionCokernel,
    cokernel_torsion,
    hermite_normal_form,
    identity,
    kernel_basis,
    matmul,
    matvec,
    poly_matrix,
    rank,
    rref,
    smith_normal_form,
    specialize,
)
from slopefib.upoly import UPoly, gcd

P = Field(DEFAULT_PRIME)
P2 = Field(SECOND_PRIME)

upolys = st.lists(st.integers(-3, 3), max_size=3).map(lambda c: UPoly(c, P))


@st.composite
def poly_matrices(draw, max_dim=3):
    m = draw(st.integers(1, max_dim))
    n = draw(st.integers(1, max_dim))
    return [[draw(upolys) for _ in range(n)] for _ in range(m)]


def _det(M):
    n = len(M)
    F = M[0][0].field
    total = UPoly((), F)
    for perm in permutations(range(n)):
        sign = 1
        for i, j in combinations(range(n), 2):
            if perm[i] > perm[j]:
                sign = -sign
        term = UPoly.const(sign, F)
        for i in range(n):
            term = term * M[i][perm[i]]
        total = total + term
    return total


def determinantal_divisors(M):
    """Oracle: D_k = gcd of all k x k minors."""
    m, n = len(M), len(M[0])
    out = []
    for k in range(1, min(m, n) + 1):
        g = UPoly((), P)
        for rows in combinations(range(m), k):
            for cols in combinations(range(n), k):
                g = gcd(g, _det([[M[i][j] for j in cols] for i in rows]))
        if not g:
            break
        out.append(g)
    return out


@given(poly_matrices())
def test_smith_matches_minor_gcds(M):
    snf = smith_normal_form(M, P)
    D = determinantal_divisors(M)
    assert snf.rank == len(D)
    prev = UPoly.const(1, P)
    for d, Dk in zip(snf.factors, D):
        assert d == Dk // prev
        prev = Dk


@given(poly_matrices())
def test_smith_reconstruction_and_chain(M):
    snf = smith_normal_form(M, P, transforms=True)
    assert matmul(matmul(snf.U, M, P), snf.V, P) == snf.diagonal(P)
    m, n = snf.shape
    assert matmul(snf.U, snf.Uinv, P) == identity(m, P)
    assert matmul(snf.V, snf.Vinv, P) == identity(n, P)
    for a, b in zip(snf.factors, snf.factors[1:]):
        assert not b % a
    assert all(d.lc() == 1 for d in snf.factors)


@given(poly_matrices())
def test_hermite_form(M):
    H, U = hermite_normal_form(M, P)
    assert matmul(U, M, P) == H
    last = -1
    for row in H:
        nz = [j for j, e in enumerate(row) if e]
        if not nz:
            continue
        assert nz[0] > last
        last = nz[0]
        assert row[nz[0]].lc() == 1


def test_smith_examples():
    t = UPoly.t_power(1, P)
    one = UPoly.const(1, P)
    zero = UPoly((), P)
    snf = smith_normal_form([[t, one], [zero, t]], P)
    assert [str(d) for d in snf.factors] == ["1", "t^2"]
    data = cokernel_torsion([[t, one], [zero, t]], P)
    assert data.total_length == 2 and data.length_at(0) == 2 and data.length_at(1) == 0
    with pytest.raises(NonTorsionCokernel):
        cokernel_torsion([[t], [zero]], P)


def test_torsion_local_lengths_over_irreducible_factors():
    # t^2 + 1 is irreducible mod p = 2^31 - 1 (p = 3 mod 4)
    M = poly_matrix([[(1, 0, 1)]], P)
    data = cokernel_torsion(M, P)
    assert data.total_length == 2
    assert [(p.degree, length) for p, length in data.local] == [(2, 2)]


int_matrices = st.integers(1, 6).flatmap(
    lambda m: st.integers(1, 6).flatmap(
        lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=m, max_size=m)
    )
)


@given(int_matrices)
def test_rank_agrees_over_Q_and_two_primes(M):
    # minors are bounded by 6! * 9^6 < both primes, so the ranks must agree
    r = rank(M, QQ)
    assert rank(M, P) == r
    assert rank(M, P2) == r
    assert len(rref(M, QQ)[1]) == r


@given(int_matrices)
def test_kernel_basis(M):
    K = kernel_basis(M, QQ)
    assert len(K) == len(M[0]) - rank(M, QQ)
    for v in K:
        assert all(x == 0 for x in matvec(M, v, QQ))


def test_specialize():
    M = poly_matrix([[(1, 1), (0, 0, 1)]], P)
    assert specialize(M, 2) == [[3, 4]]
