"""Subprimitive roots, cyclic projectivities and the GMT/Hirschfeld counts.

A root alpha is subprimitive when the least e with alpha^e in F_q^* is
(q^n - 1)/(q - 1).  Its minimal polynomial f = x^n - sum a_k x^k has a
companion matrix T (ones above the diagonal, last row a_0..a_{n-1}), and the
rows y_i = (1, 0, ..., 0) T^i run once through PG(n-1, q) before repeating
projectively.  Sending the point of y_i to alpha^i gives the map H_alpha.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import prod

from . import _nt
from .field import FieldCtx, FieldElem, Level
from .poly import UniPoly
from .projective import ProjPoint, canonical, enumerate_pg


@dataclass
class SubprimitiveRoot:
    alpha: FieldElem
    minpoly: tuple  # ascending base codes, monic, degree n
    companion: tuple  # n x n base codes
    rows: list  # y_i for i < (q^n - 1)/(q - 1)

    @property
    def ctx(self) -> FieldCtx:
        return self.alpha.ctx


def minimal_polynomial(x: FieldElem) -> tuple:
    """prod_k (X - x^(q^k)) over the distinct conjugates, as ascending base codes."""
    ctx = x.ctx
    conj = [x]
    while True:
        nxt = ctx.frobenius_q(conj[-1])
        if nxt == x:
            break
        conj.append(nxt)
    poly = [ctx.one()]
    for root in conj:
        shifted = [ctx.zero()] + poly
        for i in range(len(poly)):
            shifted[i] = shifted[i] - root * poly[i]
        poly = shifted
    return tuple(ctx.project(c, Level.BASE).v for c in poly)


def companion_matrix(ctx: FieldCtx, minpoly) -> tuple:
    """Rows e_1, ..., e_{n-1} then (a_0, ..., a_{n-1}) where x^n = sum a_k x^k."""
    n = len(minpoly) - 1
    neg = ctx._bneg
    rows = [tuple(1 if k == i + 1 else 0 for k in range(n)) for i in range(n - 1)]
    rows.append(tuple(neg[c] for c in minpoly[:-1]))
    return tuple(rows)


def orbit_rows(ctx: FieldCtx, T, count: int) -> list[tuple]:
    """(1, 0, ..., 0) T^i for i < count, by repeated row-times-matrix products."""
    n = len(T)
    add, mul = ctx._badd, ctx._bmul
    row = tuple(1 if k == 0 else 0 for k in range(n))
    out = []
    for _ in range(count):
        out.append(row)
        nxt = []
        for k in range(n):
            acc = 0
            for i in range(n):
                if row[i]:
                    acc = add[acc][mul[row[i]][T[i][k]]]
            nxt.append(acc)
        row = tuple(nxt)
    return out


def is_subprimitive(x: FieldElem) -> bool:
    return bool(x) and x.ctx.subprimitive_order(x) == x.ctx.mu_order


def subprimitive_root(alpha: FieldElem) -> SubprimitiveRoot:
    ctx = alpha.ctx
    f = minimal_polynomial(alpha)
    T = companion_matrix(ctx, f)
    return SubprimitiveRoot(alpha, f, T, orbit_rows(ctx, T, ctx.mu_order))


def list_subprimitive(ctx: FieldCtx) -> list[tuple[UniPoly, list[FieldElem]]]:
    """Subprimitive polynomials of degree n over F_q with their roots."""
    key = "subprimitive"
    if key not in ctx._cache:
        groups: dict = {}
        for x in ctx.nonzero():
            if ctx.subprimitive_order(x) == ctx.mu_order:
                groups.setdefault(minimal_polynomial(x), []).append(x)
        ctx._cache[key] = [
            (UniPoly(ctx, Level.BASE, [ctx.base(c) for c in f]), roots)
            for f, roots in sorted(groups.items())
        ]
    return ctx._cache[key]


def subprimitive_roots(ctx: FieldCtx) -> list[FieldElem]:
    return [a for _, roots in list_subprimitive(ctx) for a in roots]


# --------------------------------------------------------------------------
# the map H_alpha


@dataclass
class HirschfeldReport:
    row_identity_failures: list = field(default_factory=list)
    injective: bool = True
    covers_pg: bool = True
    image_is_powers: bool = True
    image_is_mu: bool = False
    alpha_in_mu: bool = False

    @property
    def ok(self) -> bool:
        return (not self.row_identity_failures and self.injective and self.covers_pg
                and self.image_is_powers and self.image_is_mu == self.alpha_in_mu)


def hirschfeld_map(s: SubprimitiveRoot) -> tuple[dict, HirschfeldReport]:
    """The table point(y_i) -> alpha^i and the checks made while building it."""
    ctx = s.ctx
    rep = HirschfeldReport()
    table: dict[ProjPoint, FieldElem] = {}
    power = ctx.one()
    powers = []
    for i, row in enumerate(s.rows):
        # sum_k y_k alpha^k must reproduce alpha^i
        acc = ctx.zero()
        ak = ctx.one()
        for c in row:
            if c:
                acc = acc + ctx._scalar_ext(c, ak)
            ak = ak * s.alpha
        if acc != power:
            rep.row_identity_failures.append(i)
        P = canonical(ctx, row)
        if P in table:
            rep.injective = False
        table[P] = power
        powers.append(power)
        power = power * s.alpha
    rep.covers_pg = set(table) == set(enumerate_pg(ctx))
    image = {y.v for y in table.values()}
    rep.image_is_powers = image == {y.v for y in powers} and len(image) == ctx.mu_order
    rep.image_is_mu = image == {x.v for x in ctx.mu_elements()}
    rep.alpha_in_mu = (s.alpha**ctx.mu_order).is_one()
    return table, rep


def distinct_at_unit_point(ctx: FieldCtx) -> bool:
    """H_alpha differ pairwise at (0:1:0:...:0), each sending it to its own root."""
    P = ProjPoint(tuple(1 if k == 1 else 0 for k in range(ctx.n)))
    seen = set()
    for a in subprimitive_roots(ctx):
        table, _ = hirschfeld_map(subprimitive_root(a))
        if table[P] != a or a.v in seen:
            return False
        seen.add(a.v)
    return True


def scaling_never_closes(ctx: FieldCtx) -> bool:
    """gamma^i * H_alpha never equals H_beta for subprimitive alpha, beta, gamma and 0 < i < mu."""
    roots = subprimitive_roots(ctx)
    pts = enumerate_pg(ctx)
    tables = {}
    for a in roots:
        t, _ = hirschfeld_map(subprimitive_root(a))
        tables[a.v] = tuple(t[P] for P in pts)
    targets = {tuple(y.v for y in t) for t in tables.values()}
    for a in roots:
        for g in roots:
            gi = ctx.one()
            for _ in range(1, ctx.mu_order):
                gi = gi * g
                if tuple((gi * y).v for y in tables[a.v]) in targets:
                    return False
    return True


# --------------------------------------------------------------------------
# counts


def gmt_count(n: int, q: int) -> int:
    """Distinct maps psi_W: ordered bases of F_{q^n}/F_q up to F_q^* scaling."""
    return prod(q**n - q**i for i in range(n)) // (q - 1)


def hirschfeld_count(n: int, q: int) -> int:
    """Subprimitive roots of degree n over F_q."""
    return (q - 1) * _nt.totient((q**n - 1) // (q - 1))


def ratio_bound(n: int, q: int) -> int:
    return q ** (n - 1) * prod(q**n - q**i for i in range(1, n - 1))


@dataclass
class CountReport:
    n: int
    q: int
    M: int
    H: int
    ratio: Fraction
    bound: int
    M_enumerated: int | None = None
    H_enumerated: int | None = None

    @property
    def inequality(self) -> bool:
        return self.ratio > self.bound

    @property
    def ok(self) -> bool:
        return (self.inequality
                and self.M_enumerated in (None, self.M)
                and self.H_enumerated in (None, self.H))


def ordered_bases(ctx: FieldCtx):
    """Every ordered F_q-basis of F_{q^n}, built one vector at a time outside the running span."""
    base_scalars = [ctx.embed(c, Level.EXT) for c in ctx.elements(Level.BASE)]

    def extend(prefix, span):
        if len(prefix) == ctx.n:
            yield tuple(prefix)
            return
        for x in ctx.nonzero():
            if x.v in span:
                continue
            new_span = {(_elem(ctx, s) + c * x).v for s in span for c in base_scalars}
            yield from extend(prefix + [x], new_span)

    yield from extend([], {ctx.zero().v})


def _elem(ctx: FieldCtx, v) -> FieldElem:
    return FieldElem(ctx, Level.EXT, v)


def count_psi_tables(ctx: FieldCtx) -> int:
    """Number of distinct psi_W over all ordered bases W."""
    pts = enumerate_pg(ctx)
    e = ctx.q - 1
    seen = set()
    for W in ordered_bases(ctx):
        row = []
        for P in pts:
            acc = ctx.zero()
            for c, w in zip(P.coords, W):
                if c:
                    acc = acc + ctx._scalar_ext(c, w)
            row.append((acc**e).v)
        seen.add(tuple(row))
    return len(seen)


ENUMERATION_LIMIT = 5000  # ordered bases


def counts(ctx: FieldCtx, enumerate_limit: int = ENUMERATION_LIMIT) -> CountReport:
    """M(n, q), H(n, q) and the ratio check; enumeration cross-checks on small fields."""
    n, q = ctx.n, ctx.q
    M, H = gmt_count(n, q), hirschfeld_count(n, q)
    rep = CountReport(n=n, q=q, M=M, H=H, ratio=Fraction(M, H), bound=ratio_bound(n, q))
    if M * (q - 1) <= enumerate_limit:
        rep.M_enumerated = count_psi_tables(ctx)
    if ctx.order <= 4096:
        rep.H_enumerated = len(subprimitive_roots(ctx))
    return rep


def all_points_have_distinct_rows(s: SubprimitiveRoot) -> bool:
    return len({canonical(s.ctx, r) for r in s.rows}) == len(s.rows)

