"""Exact linear algebra over a field and over the PID k[t].

Field matrices are lists of rows of field elements.  Polynomial matrices are
lists of rows of :class:`~slopefib.upoly.UPoly`.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .field import Field
from .upoly import UPoly, factor, multiplicity_at


# ---------------------------------------------------------------------------
# matrices over a field


def rref(M: Sequence[Sequence], F: Field) -> tuple[list[list], list[int]]:
    """Reduced row echelon form and pivot columns."""
    A = [[F(v) for v in row] for row in M]
    if not A:
        return A, []
    rows, cols = len(A), len(A[0])
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = F.inv(A[r][c])
        A[r] = [F.reduce(v * inv) for v in A[r]]
        for i in range(rows):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [F.reduce(a - f * b) for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return A, pivots


def rank(M: Sequence[Sequence], F: Field) -> int:
    """Rank by forward elimination (no back-substitution)."""
    A = [[F(v) for v in row] for row in M if any(row)]
    if not A:
        return 0
    cols = len(A[0])
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, len(A)) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = F.inv(A[r][c])
        pr = A[r]
        for i in range(r + 1, len(A)):
            if A[i][c]:
                f = F.reduce(A[i][c] * inv)
                A[i] = [F.reduce(a - f * b) for a, b in zip(A[i], pr)]
        r += 1
        if r == len(A):
            break
    return r


def kernel_basis(M: Sequence[Sequence], F: Field, ncols: int | None = None) -> list[list]:
    """Basis of ``{v : M v = 0}`` as a list of vectors."""
    if ncols is None:
        ncols = len(M[0]) if M else 0
    R, pivots = rref(M, F) if M else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [F.zero] * ncols
        v[f] = F.one
        for r, pc in enumerate(pivots):
            v[pc] = F.reduce(-R[r][f])
        basis.append(v)
    return basis


def matvec(M, v, F: Field):
    return [F.reduce(sum((a * b for a, b in zip(row, v)), F.zero)) for row in M]


# ---------------------------------------------------------------------------
# matrices over k[t]


def poly_matrix(rows: Sequence[Sequence], F: Field) -> list[list[UPoly]]:
    """Build a k[t]-matrix from rows of coefficient lists or scalars."""
    out = []
    for row in rows:
        out.append([e if isinstance(e, UPoly) else UPoly(e if isinstance(e, (list, tuple)) else (e,), F) for e in row])
    return out


def identity(n: int, F: Field) -> list[list[UPoly]]:
    one, zero = UPoly.const(1, F), UPoly((), F)
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def matmul(A, B, F: Field) -> list[list[UPoly]]:
    zero = UPoly((), F)
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    out = []
    for row in A:
        new = []
        for j in range(cols):
            acc = zero
            for k in range(inner):
                if row[k] and B[k][j]:
                    acc = acc + row[k] * B[k][j]
            new.append(acc)
        out.append(new)
    return out


def specialize(A, value) -> list[list]:
    return [[e(value) for e in row] for row in A]


@dataclass
class SmithResult:
    """``U @ M @ V == D`` with ``D`` diagonal; ``factors`` are its nonzero entries."""

    factors: list[UPoly]
    rank: int
    shape: tuple[int, int]
    U: list | None = None
    V: list | None = None
    Uinv: list | None = None
    Vinv: list | None = None

    def diagonal(self, F: Field) -> list[list[UPoly]]:
        m, n = self.shape
        zero = UPoly((), F)
        D = [[zero] * n for _ in range(m)]
        for i, d in enumerate(self.factors):
            D[i][i] = d
        return D

    @property
    def torsion_length(self) -> int:
        return sum(d.degree for d in self.factors)


def smith_normal_form(M: Sequence[Sequence[UPoly]], F: Field, transforms: bool = False) -> SmithResult:
    """Smith normal form over k[t] by Euclidean elimination on min-degree pivots.

    Invariant factors are monic and satisfy ``d1 | d2 | ...``.  With
    ``transforms=True`` the unimodular ``U, V`` and their inverses are tracked.
    """
    A = [list(row) for row in M]
    m = len(A)
    n = len(A[0]) if m else 0
    zero = UPoly((), F)
    U = identity(m, F) if transforms else None
    Uinv = identity(m, F) if transforms else None
    V = identity(n, F) if transforms else None
    Vinv = identity(n, F) if transforms else None

    def swap_rows(i, j):
        if i == j:
            return
        A[i], A[j] = A[j], A[i]
        if transforms:
            U[i], U[j] = U[j], U[i]
            for row in Uinv:
                row[i], row[j] = row[j], row[i]

    def swap_cols(i, j):
        if i == j:
            return
        for row in A:
            row[i], row[j] = row[j], row[i]
        if transforms:
            for row in V:
                row[i], row[j] = row[j], row[i]
            Vinv[i], Vinv[j] = Vinv[j], Vinv[i]

    def add_row(dst, src, c):
        # row_dst += c * row_src
        A[dst] = [a + c * b if b else a for a, b in zip(A[dst], A[src])]
        if transforms:
            U[dst] = [a + c * b if b else a for a, b in zip(U[dst], U[src])]
            for row in Uinv:
                if row[dst]:
                    row[src] = row[src] - c * row[dst]

    def add_col(dst, src, c):
        # col_dst += c * col_src
        for row in A:
            if row[src]:
                row[dst] = row[dst] + c * row[src]
        if transforms:
            for row in V:
                if row[src]:
                    row[dst] = row[dst] + c * row[src]
            Vinv[src] = [a - c * b if b else a for a, b in zip(Vinv[src], Vinv[dst])]

    def scale_row(i, u):
        A[i] = [a.scale(u) for a in A[i]]
        if transforms:
            U[i] = [a.scale(u) for a in U[i]]
            inv = F.inv(u)
            for row in Uinv:
                row[i] = row[i].scale(inv)

    factors: list[UPoly] = []
    for k in range(min(m, n)):
        best = None
        for i in range(k, m):
            for j in range(k, n):
                e = A[i][j]
                if e and (best is None or e.degree < best[0]):
                    best = (e.degree, i, j)
                    if best[0] == 0:
                        break
            if best and best[0] == 0:
                break
        if best is None:
            break
        swap_rows(k, best[1])
        swap_cols(k, best[2])
        while True:
            piv = A[k][k]
            clean = True
            for i in range(k + 1, m):
                if A[i][k]:
                    q, r = A[i][k].divmod(piv)
                    add_row(i, k, -q)
                    if r:
                        clean = False
            for j in range(k + 1, n):
                if A[k][j]:
                    q, r = A[k][j].divmod(piv)
                    add_col(j, k, -q)
                    if r:
                        clean = False
            if not clean:
                cand = [(A[i][k].degree, i, k) for i in range(k + 1, m) if A[i][k]]
                cand += [(A[k][j].degree, k, j) for j in range(k + 1, n) if A[k][j]]
                _, i, j = min(cand)
                swap_rows(k, i)
                swap_cols(k, j)
                continue
            bad = None
            if piv.degree > 0:
                for i in range(k + 1, m):
                    for j in range(k + 1, n):
                        if A[i][j] and A[i][j] % piv:
                            bad = i
                            break
                    if bad is not None:
                        break
            if bad is None:
                break
            add_row(k, bad, UPoly.const(1, F))
        lc = A[k][k].lc()
        if lc != 1:
            scale_row(k, F.inv(lc))
        factors.append(A[k][k])
    return SmithResult(factors, len(factors), (m, n), U, V, Uinv, Vinv)


def invariant_factors(M, F: Field) -> list[UPoly]:
    return smith_normal_form(M, F).factors


def hermite_normal_form(M: Sequence[Sequence[UPoly]], F: Field) -> tuple[list[list[UPoly]], list[list[UPoly]]]:
    """Row-style Hermite form: ``U @ M == H`` with ``U`` unimodular.

    ``H`` is in row echelon form, pivots are monic, and entries above a pivot
    have degree strictly below the pivot's.
    """
    A = [list(row) for row in M]
    m = len(A)
    n = len(A[0]) if m else 0
    U = identity(m, F)
    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            nz = [(A[i][c].degree, i) for i in range(r, m) if A[i][c]]
            if not nz:
                break
            _, p = min(nz)
            A[r], A[p] = A[p], A[r]
            U[r], U[p] = U[p], U[r]
            done = True
            for i in range(r + 1, m):
                if A[i][c]:
                    q, rem = A[i][c].divmod(A[r][c])
                    A[i] = [a - q * b if b else a for a, b in zip(A[i], A[r])]
                    U[i] = [a - q * b if b else a for a, b in zip(U[i], U[r])]
                    if rem:
                        done = False
            if done:
                break
        if r < m and A[r][c]:
            inv = F.inv(A[r][c].lc())
            A[r] = [a.scale(inv) for a in A[r]]
            U[r] = [a.scale(inv) for a in U[r]]
            for i in range(r):
                if A[i][c]:
                    q = A[i][c] // A[r][c]
                    if q:
                        A[i] = [a - q * b if b else a for a, b in zip(A[i], A[r])]
                        U[i] = [a - q * b if b else a for a, b in zip(U[i], U[r])]
            r += 1
    return A, U


class NonTorsionCokernel(ValueError):
    """The cokernel has a free part where a torsion module was expected."""


@dataclass
class TorsionData:
    """Torsion of a cokernel, split by irreducible factor of the invariant factors."""

    total_length: int
    free_rank: int
    rank: int
    factors: list[UPoly]
    local: list[tuple[UPoly, int]] = dc_field(default_factory=list)

    def length_at(self, root) -> int:
        return sum(multiplicity_at(d, root) for d in self.factors if d.degree > 0)

    @property
    def is_torsion(self) -> bool:
        return self.free_rank == 0


def cokernel_torsion(M, F: Field, require_torsion: bool = True, factorize: bool = True) -> TorsionData:
    """Length of the torsion of ``k[t]^rows / image(M)`` with its support.

    ``local`` lists ``(monic irreducible p, length)`` where ``length`` is the
    k-dimension of the p-primary part, i.e. ``deg(p)`` times the summed
    multiplicities of ``p`` in the invariant factors.
    """
    snf = smith_normal_form(M, F)
    rows = snf.shape[0]
    free = rows - snf.rank
    if require_torsion and free:
        raise NonTorsionCokernel(f"cokernel has free rank {free}")
    nontrivial = [d for d in snf.factors if d.degree > 0]
    local: dict = {}
    if factorize:
        for d in nontrivial:
            for p, mult in factor(d):
                local[p] = local.get(p, 0) + mult * p.degree
    return TorsionData(
        total_length=sum(d.degree for d in nontrivial),
        free_rank=free,
        rank=snf.rank,
        factors=snf.factors,
        local=sorted(local.items(), key=lambda kv: (kv[0].degree, [F.signed(v) for v in kv[0].c])),
    )
