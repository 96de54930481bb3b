"""Generalized Moebius transformations PG(n-1, q) -> mu and their inverses.

For a basis W = (w_0, ..., w_{n-1}) of F_{q^n} over F_q the map is

    psi_W(x_0 : ... : x_{n-1}) = (x_0 w_0 + ... + x_{n-1} w_{n-1})^(q-1),

a bijection onto the group mu of ((q^n - 1)/(q - 1))-th roots of unity.
Its inverse is read off the projective polynomials

    T_i(x) = sum_k (-1)^(k(n-1)) c_i^(q^k) x^((q^k - 1)/(q - 1)),

where c_i is the (i, 0) cofactor of the Moore matrix of W.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import (
    IndexOutOfRange,
    NotABasis,
    NotInMu,
    ReportsViolation,
    ZeroInput,
)
from .field import FieldCtx, FieldElem, Level
from .linalg import FFMatrix, det_and_cofactors, moore_matrix
from .poly import UniPoly
from .projective import ProjPoint, canonical, enumerate_pg


def normal_exponents(W: Sequence[FieldElem]) -> list[int] | None:
    """If w_j = w_0^(q^e_j) with (e_j) a permutation of range(n), return (e_j)."""
    ctx = W[0].ctx
    n = ctx.n
    conj = [W[0]]
    for _ in range(n - 1):
        conj.append(ctx.frobenius_q(conj[-1]))
    if len(set(conj)) != n:
        return None
    where = {c: k for k, c in enumerate(conj)}
    exps = [where.get(w) for w in W]
    if None in exps or sorted(exps) != list(range(n)):
        return None
    return exps


class GmtContext:
    """Everything derived from one basis W: det, cofactors, dual basis, T-polynomials."""

    def __init__(self, W: Sequence[FieldElem]):
        W = list(W)
        M, ok = moore_matrix(W)
        if not ok:
            raise NotABasis("W is not a basis over the base field")
        ctx = W[0].ctx
        self.ctx: FieldCtx = ctx
        self.W = [ctx.embed(w, Level.EXT) for w in W]
        self.n = ctx.n
        self.q = ctx.q
        self.moore: FFMatrix = M
        self.det, direct = det_and_cofactors(M)

        self.normal_order = normal_exponents(self.W)
        if self.normal_order is not None:
            c0 = direct[0]
            shortcut = [
                (-1) ** ((self.n - 1) * e) * ctx.frobenius_q(c0, e) for e in self.normal_order
            ]
            if shortcut != direct:
                raise ReportsViolation("normal-basis cofactor shortcut disagrees with direct cofactors")
        self.cofactors = direct
        dinv = self.det.inv()
        self.dual = [dinv * c for c in self.cofactors]

        # (q^k - 1)/(q - 1) for k < n
        self.exponents = [(self.q**k - 1) // (self.q - 1) for k in range(self.n)]
        self.t_coeffs = [
            [(-1) ** (k * (self.n - 1)) * ctx.frobenius_q(c, k) for k in range(self.n)]
            for c in self.cofactors
        ]
        self._trace_matrix = None
        self._psi_table = None

    # ------------------------------------------------------------ polynomials

    def t_poly(self, i: int) -> UniPoly:
        self._check_index(i)
        return UniPoly.from_terms(self.ctx, Level.EXT, zip(self.exponents, self.t_coeffs[i]))

    def t_eval(self, i: int, x: FieldElem) -> FieldElem:
        self._check_index(i)
        total = self.ctx.zero()
        for e, c in zip(self.exponents, self.t_coeffs[i]):
            total = total + c * x**e
        return total

    def _check_index(self, i: int) -> None:
        if not 0 <= i < self.n:
            raise IndexOutOfRange(f"index {i} outside 0..{self.n - 1}")

    # ------------------------------------------------------------ trace coordinates

    def trace_coords(self, y: FieldElem) -> tuple[int, ...]:
        """(Tr(b_0 y), ..., Tr(b_{n-1} y)) as base codes.

        Uses the precomputed F_q-linear matrix Tr(b_i X^k); cross-checked
        against direct traces in the tests.
        """
        if self._trace_matrix is None:
            ctx = self.ctx
            cols = []
            for k in range(self.n):
                xk = ctx.gen**k
                cols.append([ctx.trace(b * xk).v for b in self.dual])
            self._trace_matrix = [[cols[k][i] for k in range(self.n)] for i in range(self.n)]
        add, mul = self.ctx._badd, self.ctx._bmul
        out = []
        for row in self._trace_matrix:
            acc = 0
            for c, t in zip(y.v, row):
                if c:
                    acc = add[acc][mul[c][t]]
            out.append(acc)
        return tuple(out)

    def trace_coords_direct(self, y: FieldElem) -> tuple[int, ...]:
        return tuple(self.ctx.trace(b * y).v for b in self.dual)

    def combine(self, coords: Sequence, basis: Sequence[FieldElem] | None = None) -> FieldElem:
        """sum_k coords[k] * basis[k] (default basis W)."""
        basis = self.W if basis is None else basis
        ctx = self.ctx
        acc = ctx.zero()
        for c, w in zip(coords, basis):
            c = c.v if isinstance(c, FieldElem) else c
            if c:
                acc = acc + ctx._scalar_ext(c, w)
        return acc

    # ------------------------------------------------------------ psi and inverses

    def psi(self, P: ProjPoint | Sequence) -> FieldElem:
        coords = P.coords if isinstance(P, ProjPoint) else tuple(P)
        if not any(coords):
            raise ZeroInput("zero vector")
        return self.combine(coords) ** (self.q - 1)

    def psi_table(self) -> dict:
        """Canonical point -> psi(point), over all of PG(n-1, q)."""
        if self._psi_table is None:
            self._psi_table = {P: self.psi(P) for P in enumerate_pg(self.ctx)}
        return self._psi_table

    def _require_mu(self, x: FieldElem) -> None:
        if not self.ctx.is_mu(x):
            raise NotInMu(f"{x} is not in mu")

    def psi_inverse(self, x: FieldElem, route: str = "t_poly") -> ProjPoint:
        self._require_mu(x)
        if route == "t_poly":
            vals = [self.t_eval(i, x) for i in range(self.n)]
            j = max((i for i, v in enumerate(vals) if v), default=None)
            if j is None:
                raise ReportsViolation("all T-polynomials vanish at a point of mu")
            inv = vals[j].inv()
            coords = [self.ctx.project(v * inv).v for v in vals[:j]]
            return ProjPoint(tuple(coords) + (1,) + (0,) * (self.n - j - 1))
        if route == "trace":
            y = self.ctx.qm1_root(x)
            return canonical(self.ctx, self.trace_coords(y))
        raise ValueError(f"unknown route {route!r}")

    def phi(self, x: FieldElem) -> tuple[int, ...]:
        """The canonical coordinate vector of psi^-1(x), via T-polynomials."""
        return self.psi_inverse(x, "t_poly").coords

    # ------------------------------------------------------------ partitions

    def partition_index(self, *, mu: FieldElem | None = None, y: FieldElem | None = None) -> int:
        """j for a point of mu (T-polynomial route) or a nonzero element (trace route)."""
        if (mu is None) == (y is None):
            raise TypeError("pass exactly one of mu= or y=")
        if y is not None:
            if not y:
                raise ZeroInput("zero has no partition index")
            coords = self.trace_coords(y)
            nz = [i for i, c in enumerate(coords) if c]
        else:
            if not mu:
                raise ZeroInput("zero has no partition index")
            self._require_mu(mu)
            nz = [i for i in range(self.n) if self.t_eval(i, mu)]
        if not nz:
            raise ReportsViolation("no nonzero coordinate")
        return max(nz)

    def verify_partitions(self) -> PartitionReport:
        ctx = self.ctx
        n, q = self.n, self.q
        S = [set() for _ in range(n)]
        for y in ctx.nonzero():
            S[self.partition_index(y=y)].add(y)
        mu = ctx.mu_elements()
        Z = [set() for _ in range(n)]
        for x in mu:
            Z[self.partition_index(mu=x)].add(x)
        C = [[] for _ in range(n)]
        for P in enumerate_pg(ctx):
            C[P.level].append(P)

        rep = PartitionReport(
            S_sizes=[len(s) for s in S],
            Z_sizes=[len(z) for z in Z],
            C_sizes=[len(c) for c in C],
        )
        problems = rep.problems
        if sum(rep.S_sizes) != ctx.order - 1:
            problems.append("S classes do not cover F^*")
        if set().union(*Z) != set(mu) or sum(rep.Z_sizes) != len(mu):
            problems.append("Z classes do not partition mu")
        if sum(rep.C_sizes) != ctx.mu_order:
            problems.append("C classes do not partition PG")
        for j in range(n):
            if rep.S_sizes[j] != (q - 1) * q**j:
                problems.append(f"|S_{j}| = {rep.S_sizes[j]}")
            if rep.Z_sizes[j] != q**j or rep.C_sizes[j] != q**j:
                problems.append(f"|Z_{j}| or |C_{j}| differs from q^{j}")
            if {self.psi(P) for P in C[j]} != Z[j]:
                problems.append(f"psi(C_{j}) != Z_{j}")
            if {y ** (q - 1) for y in S[j]} != Z[j]:
                problems.append(f"S_{j}^(q-1) != Z_{j}")
        if problems:
            raise ReportsViolation("; ".join(problems))
        return rep

    def scaled(self, c: FieldElem) -> GmtContext:
        """The context of c*W."""
        return GmtContext([c * w for w in self.W])


@dataclass
class PartitionReport:
    S_sizes: list
    Z_sizes: list
    C_sizes: list
    problems: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.problems


def gmt_context(W: Sequence[FieldElem]) -> GmtContext:
    return GmtContext(W)
