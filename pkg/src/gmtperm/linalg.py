"""Small dense matrices over a field level; Moore matrices and dual bases."""

from __future__ import annotations

import itertools
from typing import Sequence

from .errors import NotABasis, WrongLength
from .field import FieldCtx, FieldElem, Level


class FFMatrix:
    """Square (or rectangular) matrix of FieldElem sharing one ctx and level."""

    def __init__(self, rows: Sequence[Sequence[FieldElem]]):
        self.rows = [list(r) for r in rows]
        if not self.rows or not self.rows[0]:
            raise ValueError("empty matrix")
        width = len(self.rows[0])
        if any(len(r) != width for r in self.rows):
            raise ValueError("ragged matrix")
        self.ctx = self.rows[0][0].ctx
        self.level = self.rows[0][0].level

    @classmethod
    def identity(cls, ctx: FieldCtx, n: int, level: Level = Level.EXT) -> FFMatrix:
        return cls([[ctx.one(level) if i == j else ctx.zero(level) for j in range(n)] for i in range(n)])

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.rows[0])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def transpose(self) -> FFMatrix:
        return FFMatrix([list(col) for col in zip(*self.rows)])

    def __matmul__(self, other: FFMatrix) -> FFMatrix:
        if self.shape[1] != other.shape[0]:
            raise ValueError("shape mismatch")
        cols = list(zip(*other.rows))
        zero = self.ctx.zero(self.level)
        out = []
        for row in self.rows:
            out_row = []
            for col in cols:
                acc = zero
                for a, b in zip(row, col):
                    acc = acc + a * b
                out_row.append(acc)
            out.append(out_row)
        return FFMatrix(out)

    def minor(self, i: int, j: int) -> FFMatrix:
        return FFMatrix([r[:j] + r[j + 1:] for k, r in enumerate(self.rows) if k != i])

    def __eq__(self, other):
        return isinstance(other, FFMatrix) and self.rows == other.rows

    def __repr__(self):
        return "FFMatrix(" + "; ".join(", ".join(map(str, r)) for r in self.rows) + ")"


def det(M: FFMatrix) -> FieldElem:
    """Determinant by Gaussian elimination (first nonzero pivot in each column)."""
    n, w = M.shape
    if n != w:
        raise ValueError("determinant of a non-square matrix")
    a = [list(r) for r in M.rows]
    result = M.ctx.one(M.level)
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col]), None)
        if pivot is None:
            return M.ctx.zero(M.level)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            result = -result
        p = a[col][col]
        result = result * p
        inv = p.inv()
        for r in range(col + 1, n):
            if a[r][col]:
                factor = a[r][col] * inv
                a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
    return result


def leibniz_det(M: FFMatrix) -> FieldElem:
    """Permutation-sum determinant; an oracle for n <= 4."""
    n = M.shape[0]
    total = M.ctx.zero(M.level)
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = M.ctx.one(M.level)
        for i, j in enumerate(perm):
            term = term * M.rows[i][j]
        total = total - term if inversions % 2 else total + term
    return total


def _minor_det(M: FFMatrix, i: int, j: int, oracle: bool) -> FieldElem:
    if M.shape[0] == 1:
        return M.ctx.one(M.level)
    minor = M.minor(i, j)
    return leibniz_det(minor) if oracle else det(minor)


def det_and_cofactors(M: FFMatrix, oracle: bool = False) -> tuple[FieldElem, list[FieldElem]]:
    """det(M) and the first-column cofactors c_i = (-1)^i det(minor(i, 0)).

    Each minor is eliminated independently.  With ``oracle=True`` every
    determinant goes through the Leibniz expansion instead.
    """
    n = M.shape[0]
    d = leibniz_det(M) if oracle else det(M)
    cof = []
    for i in range(n):
        m = _minor_det(M, i, 0, oracle)
        cof.append(-m if i % 2 else m)
    return d, cof


def moore_matrix(W: Sequence[FieldElem]) -> tuple[FFMatrix, bool]:
    """Moore matrix with entry (i, k) = w_i^(q^k), and whether W is a basis."""
    W = list(W)
    if not W:
        raise WrongLength("empty element list")
    ctx = W[0].ctx
    if len(W) != ctx.n:
        raise WrongLength(f"expected {ctx.n} elements, got {len(W)}")
    W = [ctx.embed(w, Level.EXT) for w in W]
    rows = []
    for w in W:
        row = [w]
        for _ in range(ctx.n - 1):
            row.append(ctx.frobenius_q(row[-1]))
        rows.append(row)
    M = FFMatrix(rows)
    return M, bool(det(M))


def is_basis(W: Sequence[FieldElem]) -> bool:
    return moore_matrix(W)[1]


def moore_product_det(S: Sequence[FieldElem]) -> FieldElem:
    """det(M_S) via the product over j of all sums x_0 s_0 + ... + x_{j-1} s_{j-1} + s_j."""
    S = list(S)
    ctx = S[0].ctx
    base = [ctx.embed(b, Level.EXT) for b in ctx.elements(Level.BASE)]
    total = ctx.one()
    for j, s in enumerate(S):
        for xs in itertools.product(base, repeat=j):
            acc = s
            for x, t in zip(xs, S):
                acc = acc + x * t
            total = total * acc
    return total


def dual_basis(W: Sequence[FieldElem], cofactors: Sequence[FieldElem] | None = None,
               detW: FieldElem | None = None) -> list[FieldElem]:
    """Trace-dual basis of W from the Moore cofactors: b_i = det^-1 c_i."""
    if cofactors is None or detW is None:
        M, ok = moore_matrix(W)
        if not ok:
            raise NotABasis("the elements are linearly dependent over the base field")
        detW, cofactors = det_and_cofactors(M)
    if not detW:
        raise NotABasis("the elements are linearly dependent over the base field")
    dinv = detW.inv()
    return [dinv * c for c in cofactors]


def solve_base(A: list[list[FieldElem]], b: list[FieldElem]) -> list[FieldElem] | None:
    """Solve A x = b over a field level by Gauss-Jordan; None if singular."""
    n = len(A)
    aug = [list(A[i]) + [b[i]] for i in range(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col]), None)
        if pivot is None:
            return None
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = aug[col][col].inv()
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [aug[i][n] for i in range(n)]


def dual_basis_linear_solve(W: Sequence[FieldElem]) -> list[FieldElem]:
    """Dual basis from the trace conditions Tr(b_i w_j) = [i == j] as a base-field system.

    Writing b_i = sum_k z_ik X^k with z_ik in F_q gives
    sum_k z_ik Tr(X^k w_j) = [i == j].
    """
    W = list(W)
    ctx = W[0].ctx
    n = ctx.n
    if len(W) != n:
        raise WrongLength(f"expected {n} elements, got {len(W)}")
    powers = [ctx.gen**k for k in range(n)]
    A = [[ctx.trace(p * w) for p in powers] for w in W]
    zero, one = ctx.zero(Level.BASE), ctx.one(Level.BASE)
    out = []
    for i in range(n):
        z = solve_base(A, [one if j == i else zero for j in range(n)])
        if z is None:
            raise NotABasis("the elements are linearly dependent over the base field")
        acc = ctx.zero()
        for zk, p in zip(z, powers):
            acc = acc + ctx.embed(zk, Level.EXT) * p
        out.append(acc)
    return out
