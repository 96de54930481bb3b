"""Points of PG(n-1, q) and maps between them.

Coordinates are tuples of base-field codes (ints).  A point is stored in
canonical form: the rightmost nonzero coordinate is 1.  Its *level* is the
position of that coordinate, which is also the class it belongs to in the
partition of PG(n-1, q) into the sets {(x_0 : ... : x_{j-1} : 1 : 0 : ... : 0)}.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import gcd
from typing import Callable, Mapping, Sequence

from .errors import BadParams, NotPermutationOfFq, ZeroVector
from .field import FieldCtx, FieldElem, Level
from .poly import UniPoly

Vec = tuple  # tuple of base codes


@dataclass(frozen=True, order=True)
class ProjPoint:
    coords: tuple

    @property
    def level(self) -> int:
        for j in range(len(self.coords) - 1, -1, -1):
            if self.coords[j]:
                return j
        raise ZeroVector("zero vector is not a projective point")

    def __str__(self):
        return "(" + ":".join(map(str, self.coords)) + ")"


def _codes(ctx: FieldCtx, v) -> Vec:
    out = []
    for c in v:
        if isinstance(c, FieldElem):
            out.append(ctx.project(c, Level.BASE).v if c.level == Level.EXT else c.v)
        else:
            out.append(int(c))
    return tuple(out)


def canonical(ctx: FieldCtx, v: Sequence) -> ProjPoint:
    """Scale a nonzero vector so its rightmost nonzero coordinate is 1."""
    v = _codes(ctx, v)
    for j in range(len(v) - 1, -1, -1):
        if v[j]:
            row = ctx._bmul[ctx._binv[v[j]]]
            return ProjPoint(tuple(row[c] for c in v))
    raise ZeroVector("cannot canonicalize the zero vector")


def scale(ctx: FieldCtx, lam: int, v: Vec) -> Vec:
    row = ctx._bmul[lam]
    return tuple(row[c] for c in v)


def nonzero_vectors(ctx: FieldCtx, n: int | None = None):
    n = ctx.n if n is None else n
    for t in itertools.product(range(ctx.q), repeat=n):
        v = t[::-1]
        if any(v):
            yield v


def enumerate_pg(ctx: FieldCtx, n: int | None = None) -> list[ProjPoint]:
    """All points, class by class; odometer order on the free coordinates within a class."""
    n = ctx.n if n is None else n
    key = ("pg", n)
    if key not in ctx._cache:
        pts = []
        for j in range(n):
            for free in itertools.product(range(ctx.q), repeat=j):
                pts.append(ProjPoint(tuple(free[::-1]) + (1,) + (0,) * (n - j - 1)))
        ctx._cache[key] = pts
    return ctx._cache[key]


def point_index(ctx: FieldCtx, n: int | None = None) -> dict:
    n = ctx.n if n is None else n
    key = ("pgidx", n)
    if key not in ctx._cache:
        ctx._cache[key] = {P: i for i, P in enumerate(enumerate_pg(ctx, n))}
    return ctx._cache[key]


# --------------------------------------------------------------------------
# maps


class PGMap:
    """A vector map g on F_q^n, read projectively.

    ``rule`` maps a coordinate tuple to a coordinate tuple.  The full table
    over nonzero vectors is materialized on first use.  g(0) is recorded as
    the zero vector.
    """

    def __init__(self, ctx: FieldCtx, rule: Callable[[Vec], Vec], kind: str = "rule",
                 params: dict | None = None, n: int | None = None):
        self.ctx = ctx
        self.n = ctx.n if n is None else n
        self.rule = rule
        self.kind = kind
        self.params = dict(params or {})
        self._table: dict | None = None
        self.zero_image = (0,) * self.n

    @classmethod
    def from_point_table(cls, ctx: FieldCtx, table: Mapping, kind: str = "table",
                         params: dict | None = None, n: int | None = None) -> PGMap:
        """g(lam * P) = table[P] for every canonical point P and scalar lam."""
        fixed = {canonical(ctx, k) if not isinstance(k, ProjPoint) else k: _codes(ctx, v)
                 for k, v in table.items()}

        def rule(v):
            return fixed[canonical(ctx, v)]

        g = cls(ctx, rule, kind=kind, params=params, n=n)
        g.point_table = fixed
        return g

    def __call__(self, v: Sequence) -> Vec:
        v = _codes(self.ctx, v)
        if not any(v):
            return self.zero_image
        return tuple(self.vector_table()[v])

    def vector_table(self) -> dict:
        if self._table is None:
            self._table = {v: _codes(self.ctx, self.rule(v)) for v in nonzero_vectors(self.ctx, self.n)}
        return self._table

    def image(self, P: ProjPoint) -> ProjPoint:
        return canonical(self.ctx, self(P.coords))

    def points_table(self) -> dict:
        """Canonical input point -> g(point) as a raw vector."""
        return {P: self(P.coords) for P in enumerate_pg(self.ctx, self.n)}


@dataclass
class NotWellDefined:
    witness: dict = field(default_factory=dict)
    ok = False


@dataclass
class WellDefinedNotBijective:
    collision: tuple = ()
    ok = False


@dataclass
class Bijection:
    sigma: list = field(default_factory=list)
    ok = True


def check_pg_map(g: PGMap):
    """Decide well-definedness and bijectivity exhaustively.

    Well-defined: g has no zero on nonzero vectors and, for each vector x,
    all of g(lam x) lie on the line through g(x).  Bijective: the induced
    point map is injective.
    """
    ctx = g.ctx
    table = g.vector_table()
    for v, img in table.items():
        if not any(img):
            return NotWellDefined({"reason": "common zero", "input": v})
    images = {}
    for P in enumerate_pg(ctx, g.n):
        target = canonical(ctx, table[P.coords])
        for lam in range(2, ctx.q):
            w = scale(ctx, lam, P.coords)
            other = canonical(ctx, table[w])
            if other != target:
                return NotWellDefined({
                    "reason": "not projectively compatible",
                    "input": P.coords, "scaled_input": w,
                    "image": target.coords, "scaled_image": other.coords,
                })
        images[P] = target
    idx = point_index(ctx, g.n)
    seen = {}
    sigma = []
    for P in enumerate_pg(ctx, g.n):
        Q = images[P]
        if Q in seen:
            return WellDefinedNotBijective((seen[Q].coords, P.coords, Q.coords))
        seen[Q] = P
        sigma.append(idx[Q])
    return Bijection(sigma)


# --------------------------------------------------------------------------
# helpers for maps of F_q


def base_table(ctx: FieldCtx, H) -> list[int]:
    """Value table (indexed by base code) of a map of F_q.

    ``H`` may be a list of base codes, a UniPoly at any level (evaluated on
    F_q; values must lie in F_q), or a callable on base FieldElems.
    """
    if isinstance(H, (list, tuple)):
        table = [int(h) for h in H]
        if len(table) != ctx.q or any(not 0 <= h < ctx.q for h in table):
            raise NotPermutationOfFq(f"table must list {ctx.q} base codes")
        return table
    out = []
    for x in ctx.elements(Level.BASE):
        y = H(ctx.embed(x, H.level)) if isinstance(H, UniPoly) else H(x)
        try:
            out.append(ctx.project(y, Level.BASE).v)
        except ArithmeticError:
            raise NotPermutationOfFq(f"value at {x} is outside the base field") from None
    return out


def require_permutation_of_base(ctx: FieldCtx, table: Sequence[int], name: str = "H") -> None:
    if sorted(table) != list(range(ctx.q)):
        raise NotPermutationOfFq(f"{name} does not permute F_{ctx.q}")


def base_interpolate(ctx: FieldCtx, table: Sequence[int]) -> UniPoly:
    """Polynomial of degree < q over F_q with the given value table."""
    q = ctx.q
    F = [ctx.base(v) for v in table]
    xs = list(ctx.elements(Level.BASE))
    coeffs = [F[0]]
    for k in range(1, q - 1):
        acc = ctx.zero(Level.BASE)
        for a in xs[1:]:
            acc = acc + F[a.v] * a ** (-k)
        coeffs.append(-acc)
    if q > 1:
        acc = ctx.zero(Level.BASE)
        for f in F:
            acc = acc + f
        coeffs.append(-acc)
    return UniPoly(ctx, Level.BASE, coeffs[:q])


# --------------------------------------------------------------------------
# builtin bijections


def identity_map(ctx: FieldCtx) -> PGMap:
    return PGMap(ctx, lambda v: v, kind="identity")


def coordinatewise_map(ctx: FieldCtx, H: Sequence) -> PGMap:
    """(x_0 : ... : x_{j-1} : 1 : 0 ...) -> (H_j(x_0) : ... : H_j(x_{j-1}) : 1 : 0 ...).

    ``H`` lists H_1 .. H_{n-1}, each a permutation of F_q (H_0 is the identity).
    """
    n = ctx.n
    if len(H) != n - 1:
        raise BadParams(f"expected {n - 1} maps H_1..H_{n - 1}, got {len(H)}")
    tables = [list(range(ctx.q))] + [base_table(ctx, h) for h in H]
    for j, t in enumerate(tables[1:], start=1):
        try:
            require_permutation_of_base(ctx, t, f"H_{j}")
        except NotPermutationOfFq as e:
            raise BadParams(str(e)) from None
    table = {}
    for P in enumerate_pg(ctx):
        j = P.level
        table[P] = tuple(tables[j][c] for c in P.coords[:j]) + P.coords[j:]
    return PGMap.from_point_table(ctx, table, kind="coordinatewise", params={"H": tables[1:]})


def coordinatewise_cases_map(ctx: FieldCtx, H: Sequence) -> PGMap:
    """Literal case form: g_k(x) = H_j(x_k / x_j) for k <= j, where x_j is the last nonzero coordinate.

    Differs from coordinatewise_map at coordinate j, which here is H_j(1).
    """
    n = ctx.n
    tables = [list(range(ctx.q))] + [base_table(ctx, h) for h in H]
    binv, bmul = ctx._binv, ctx._bmul

    def rule(v):
        j = max(i for i in range(n) if v[i])
        inv = binv[v[j]]
        return tuple(tables[j][bmul[v[k]][inv]] for k in range(j + 1)) + (0,) * (n - j - 1)

    return PGMap(ctx, rule, kind="coordinatewise_cases", params={"H": tables[1:]})


def coordinatewise_closed_map(ctx: FieldCtx, H: Sequence) -> PGMap:
    """Literal closed polynomial form:

    g_k = sum_{j >= k} H_j(x_k x_j^(q-2)) x_j^(q-1) prod_{i > j} (1 - x_i^(q-1)).
    """
    n = ctx.n
    q = ctx.q
    tables = [list(range(q))] + [base_table(ctx, h) for h in H]

    def rule(v):
        xs = [ctx.base(c) for c in v]
        out = []
        for k in range(n):
            acc = ctx.zero(Level.BASE)
            for j in range(k, n):
                arg = xs[k] * xs[j] ** (q - 2)
                term = ctx.base(tables[j][arg.v]) * xs[j] ** (q - 1)
                for i in range(j + 1, n):
                    term = term * (1 - xs[i] ** (q - 1))
                acc = acc + term
            out.append(acc.v)
        return tuple(out)

    return PGMap(ctx, rule, kind="coordinatewise_closed", params={"H": tables[1:]})


def _base_log(ctx: FieldCtx, x: int, delta: FieldElem) -> int:
    return ctx.discrete_log(ctx.base(x), delta)


def parity_twist_map(ctx: FieldCtx, delta, alpha, d: int) -> PGMap:
    """Twist (x_0 : 1 : 0 ...) to (alpha x_0^d : 1 : 0 ...) when x_0 is 0 or an even power of delta.

    All other points are fixed.  Needs q odd, delta generating F_q^*,
    alpha an even power of delta and gcd(d, q - 1) = 1.
    """
    q = ctx.q
    delta = _as_base(ctx, delta, "delta")
    alpha = _as_base(ctx, alpha, "alpha")
    if q % 2 == 0:
        raise BadParams("q must be odd")
    if not delta or ctx.mult_order(delta) != q - 1:
        raise BadParams("delta does not generate F_q^*")
    if not alpha or _base_log(ctx, alpha.v, delta) % 2:
        raise BadParams("alpha is not an even power of delta")
    if gcd(d, q - 1) != 1 or d < 1:
        raise BadParams("gcd(d, q - 1) must be 1")

    table = {}
    for P in enumerate_pg(ctx):
        if P.level == 1:
            x0 = P.coords[0]
            if x0 == 0 or _base_log(ctx, x0, delta) % 2 == 0:
                twisted = alpha * ctx.base(x0) ** d
                table[P] = (twisted.v,) + P.coords[1:]
                continue
        table[P] = P.coords
    return PGMap.from_point_table(ctx, table, kind="parity_twist",
                                  params={"delta": delta.v, "alpha": alpha.v, "d": d})


def three_set_swap_map(ctx: FieldCtx) -> PGMap:
    """The PG(2, q) bijection that moves points between the three partition classes.

    (0:0:1) -> (1:0:0), (1:0:0) -> (0:1:0), (x0:0:1) -> (x0:1:0) for x0 != 0,
    (x0:1:0) -> (x0:0:1), and (x0:x1:1) with x1 != 0 fixed.
    """
    if ctx.n != 3:
        raise BadParams("the three-set swap needs n = 3")
    table = {}
    for P in enumerate_pg(ctx):
        x0, x1, x2 = P.coords
        if P.coords == (0, 0, 1):
            table[P] = (1, 0, 0)
        elif P.coords == (1, 0, 0):
            table[P] = (0, 1, 0)
        elif x2 == 1 and x1 == 0:
            table[P] = (x0, 1, 0)
        elif x2 == 0:
            table[P] = (x0, 0, 1)
        else:
            table[P] = P.coords
    return PGMap.from_point_table(ctx, table, kind="three_set_swap")


def coordinate_permutation_map(ctx: FieldCtx, perm: Sequence[int]) -> PGMap:
    """(x_0, ..., x_{n-1}) -> (x_perm[0], ..., x_perm[n-1])."""
    perm = [int(p) for p in perm]
    if sorted(perm) != list(range(ctx.n)):
        raise BadParams("not a permutation of the coordinate positions")
    return PGMap(ctx, lambda v: tuple(v[p] for p in perm), kind="coordinate_permutation",
                 params={"perm": perm})


def linear_map(ctx: FieldCtx, matrix: Sequence[Sequence[int]]) -> PGMap:
    """Row vector times a matrix of base codes: x -> x M."""
    n = ctx.n
    M = [[int(c) for c in row] for row in matrix]
    if len(M) != n or any(len(r) != n for r in M):
        raise BadParams("matrix must be n x n")
    add, mul = ctx._badd, ctx._bmul

    def rule(v):
        out = []
        for k in range(n):
            acc = 0
            for i in range(n):
                acc = add[acc][mul[v[i]][M[i][k]]]
            out.append(acc)
        return tuple(out)

    return PGMap(ctx, rule, kind="linear", params={"matrix": M})


def table_map(ctx: FieldCtx, pairs) -> PGMap:
    """From (point, image) pairs, as in the JSON wire form."""
    table = {canonical(ctx, a): b for a, b in pairs}
    missing = [P for P in enumerate_pg(ctx) if P not in table]
    if missing:
        raise BadParams(f"table misses {len(missing)} points, e.g. {missing[0]}")
    return PGMap.from_point_table(ctx, table, kind="table")


def builtin_pg_bijections(ctx: FieldCtx, kind: str, **params) -> PGMap:
    makers = {
        "identity": lambda: identity_map(ctx),
        "coordinatewise": lambda: coordinatewise_map(ctx, params["H"]),
        "parity_twist": lambda: parity_twist_map(ctx, params["delta"], params["alpha"], params["d"]),
        "three_set_swap": lambda: three_set_swap_map(ctx),
        "coordinate_permutation": lambda: coordinate_permutation_map(ctx, params["perm"]),
        "linear": lambda: linear_map(ctx, params["matrix"]),
        "table": lambda: table_map(ctx, params["pairs"]),
    }
    if kind not in makers:
        raise BadParams(f"unknown map kind {kind!r}")
    try:
        return makers[kind]()
    except KeyError as e:
        raise BadParams(f"missing parameter {e.args[0]!r} for {kind}") from None


def _as_base(ctx: FieldCtx, x, name: str) -> FieldElem:
    if isinstance(x, FieldElem):
        try:
            return ctx.project(x, Level.BASE) if x.level == Level.EXT else ctx.embed(x, Level.BASE)
        except ArithmeticError:
            raise BadParams(f"{name} is not in F_{ctx.q}") from None
    return ctx.base(x)
