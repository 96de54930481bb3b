"""Permutations of F_{q^n} assembled from bijections of PG(n-1, q).

A PiecewisePermutation evaluates one branch per partition class of F_{q^n}^*,
keyed by the trace coordinates t_i = Tr(b_i x) against the dual basis of W.
Every construction also records the PG bijection it comes from, which lets
the verifier rebuild h on mu independently and test

    x^r h(x)^(q-1) = psi_Y(g(psi_W^-1(x)))   on mu,
    f(x) = x^r h(x^(q-1))                    on F_{q^n}.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Callable, Sequence

import numpy as np

from .errors import (
    BadParams,
    BadR,
    NonzeroConstantTerm,
    NotBijection,
    NotPermutationOfFq,
    WrongN,
    ZeroPoly,
)
from .field import FieldCtx, FieldElem, Level
from .gmt import GmtContext
from .poly import UniPoly
from .projective import (
    Bijection,
    PGMap,
    base_interpolate,
    base_table,
    check_pg_map,
    coordinatewise_map,
    parity_twist_map,
    require_permutation_of_base,
    three_set_swap_map,
)

Form = Callable[[FieldElem, tuple], FieldElem]


class PiecewisePermutation:
    """A self-map of F_{q^n} given by one closed-form branch per class.

    ``classify(x, t)`` names the branch of a nonzero x with trace
    coordinates t; ``forms[label](x, t)`` evaluates it.  When ``total`` is
    true every form is a polynomial expression that makes sense on the whole
    field (this is what branch interpolation uses); otherwise forms are only
    meaningful on their own class.
    """

    def __init__(self, gmt: GmtContext, Y: Sequence[FieldElem], r: int, source: str,
                 pg_map: PGMap, classify: Callable, forms: dict, labels: list,
                 params: dict | None = None, total: bool = True, Y_h: Sequence | None = None,
                 form_text: dict | None = None):
        self.gmt = gmt
        self.ctx: FieldCtx = gmt.ctx
        self.Y = list(Y)
        self.r = r
        self.source = source
        self.pg_map = pg_map
        self.classify_rule = classify
        self.forms = dict(forms)
        self.labels = list(labels)
        self.params = dict(params or {})
        self.total = total
        # the Y that pairs with pg_map in the h-branch formula
        self.Y_h = list(Y if Y_h is None else Y_h)
        self.form_text = dict(form_text or {})
        self._h: dict | None = None

    # ------------------------------------------------------------ evaluation

    def classify(self, x: FieldElem) -> str:
        return self.classify_rule(x, self.gmt.trace_coords(x))

    def __call__(self, x: FieldElem) -> FieldElem:
        if not x:
            return self.ctx.zero()
        t = self.gmt.trace_coords(x)
        return self.forms[self.classify_rule(x, t)](x, t)

    evaluate = __call__

    def value_table(self) -> list[FieldElem]:
        """f at every element, in enumeration order."""
        return [self(x) for x in self.ctx.elements()]

    def members(self, label: str) -> list[FieldElem]:
        return [x for x in self.ctx.nonzero() if self.classify(x) == label]

    def branch_values(self, label: str) -> list[FieldElem]:
        """Branch ``label`` on the whole field: its closed form, or zero off its class."""
        form = self.forms[label]
        out = []
        for x in self.ctx.elements():
            t = self.gmt.trace_coords(x)
            if self.total:
                out.append(form(x, t))
            elif x and self.classify_rule(x, t) == label:
                out.append(form(x, t))
            else:
                out.append(self.ctx.zero())
        return out

    # ------------------------------------------------------------ h on mu

    def h_table(self) -> dict:
        """h on mu from the PG bijection:

        h(x) = det^-r T_j(x)^r sum_k g_k(phi(x)) y_k for x in Z_j; zero off mu.
        """
        if self._h is None:
            G = self.gmt
            dinv_r = G.det.inv() ** self.r
            h = {}
            for x in self.ctx.mu_elements():
                coords = G.phi(x)
                j = _top_index(coords)
                img = self.pg_map(coords)
                h[x.v] = dinv_r * G.t_eval(j, x) ** self.r * G.combine(img, self.Y_h)
            self._h = h
        return self._h

    def h(self, x: FieldElem) -> FieldElem:
        return self.h_table().get(x.v, self.ctx.zero())

    def describe(self) -> dict:
        sizes = {lab: 0 for lab in self.labels}
        for x in self.ctx.nonzero():
            sizes[self.classify(x)] += 1
        return {
            "source": self.source,
            "r": self.r,
            "branches": [
                {"label": lab, "size": sizes[lab], "form": self.form_text.get(lab, "")}
                for lab in self.labels
            ],
        }


# --------------------------------------------------------------------------
# verification


@dataclass
class PermutationVerdict:
    ok: bool
    witness: tuple | None = None

    def __bool__(self):
        return self.ok


def verify_permutation(fn: Callable, domain) -> PermutationVerdict:
    """Exhaustive injectivity check of fn on ``domain`` (a FieldCtx means its top level)."""
    if isinstance(domain, FieldCtx):
        domain = domain.elements()
    seen = {}
    for x in domain:
        y = fn(x)
        key = (int(y.level), y.v)
        if key in seen:
            return PermutationVerdict(False, (seen[key], x, y))
        seen[key] = x
    return PermutationVerdict(True)


def verify_homogeneous(f: Callable, ctx: FieldCtx | None = None, r: int | None = None) -> PermutationVerdict:
    """f(lam x) == lam^r f(x) for all lam in F_q^* and all x."""
    ctx = f.ctx if ctx is None else ctx
    r = f.r if r is None else r
    xs = list(ctx.elements())
    fx = [f(x) for x in xs]
    for lam in ctx.nonzero(Level.BASE):
        L = ctx.embed(lam, Level.EXT)
        Lr = L**r
        for x, y in zip(xs, fx):
            if f(L * x) != Lr * y:
                return PermutationVerdict(False, (lam, x))
    return PermutationVerdict(True)


def g_on_mu(ctx: FieldCtx, r: int, h: Callable) -> dict:
    """x -> x^r h(x)^(q-1) over mu, keyed by element code."""
    return {x.v: x**r * h(x) ** (ctx.q - 1) for x in ctx.mu_elements()}


def permutes_mu(ctx: FieldCtx, values: dict) -> bool:
    mu = {x.v for x in ctx.mu_elements()}
    image = {y.v for y in values.values()}
    return image == mu


def agw_criterion(ctx: FieldCtx, r: int, h: Callable) -> bool:
    """gcd(r, q-1) = 1 and x^r h(x)^(q-1) permutes mu."""
    return gcd(r, ctx.q - 1) == 1 and permutes_mu(ctx, g_on_mu(ctx, r, h))


@dataclass
class AgwReport:
    gcd_ok: bool
    g_permutes_mu: bool
    mu_identity_failures: list = field(default_factory=list)
    f_matches_xrh: bool = True
    exhaustive: bool = True
    agrees: bool = True

    @property
    def passed(self) -> bool:
        return (self.gcd_ok and self.g_permutes_mu and not self.mu_identity_failures
                and self.f_matches_xrh and self.exhaustive and self.agrees)


def mu_identity_failures(f: PiecewisePermutation) -> list:
    """Points x of mu where x^r h(x)^(q-1) differs from psi_Y(g(psi_W^-1(x)))."""
    ctx, G = f.ctx, f.gmt
    q = ctx.q
    bad = []
    for x in ctx.mu_elements():
        lhs = x**f.r * f.h(x) ** (q - 1)
        img = f.pg_map(G.phi(x))
        rhs = G.combine(img, f.Y_h) ** (q - 1)
        if lhs != rhs:
            bad.append(x)
    return bad


def verify_agw(f: PiecewisePermutation) -> AgwReport:
    ctx = f.ctx
    gcd_ok = gcd(f.r, ctx.q - 1) == 1
    g_perm = permutes_mu(ctx, g_on_mu(ctx, f.r, f.h))
    bad = mu_identity_failures(f)
    q = ctx.q
    matches = all(f(x) == (x**f.r * f.h(x ** (q - 1)) if x else ctx.zero()) for x in ctx.elements())
    exhaustive = verify_permutation(f, ctx).ok
    return AgwReport(
        gcd_ok=gcd_ok,
        g_permutes_mu=g_perm,
        mu_identity_failures=bad,
        f_matches_xrh=matches,
        exhaustive=exhaustive,
        agrees=(gcd_ok and g_perm) == exhaustive,
    )


# --------------------------------------------------------------------------
# constructions


def _check_r(ctx: FieldCtx, r: int) -> None:
    if not isinstance(r, int) or r < 1 or gcd(r, ctx.q - 1) != 1:
        raise BadR(f"r = {r} must be a positive integer coprime to q - 1 = {ctx.q - 1}")


def _top_index(t: tuple) -> int:
    for j in range(len(t) - 1, -1, -1):
        if t[j]:
            return j
    raise ValueError("zero trace vector")


def _by_top_index(x, t) -> str:
    return f"j={_top_index(t)}"


def _ext_basis(ctx: FieldCtx, Y) -> list[FieldElem]:
    from .linalg import is_basis

    Y = [ctx.embed(y, Level.EXT) for y in Y]
    if len(Y) != ctx.n or not is_basis(Y):
        raise BadParams("Y is not a basis")
    return Y


def build_from_bijection(G: GmtContext, Y: Sequence[FieldElem], g: PGMap, r: int) -> PiecewisePermutation:
    """The generic builder: on class j,

    f(x) = t_j^r * sum_k g_k(t_0/t_j, ..., t_{j-1}/t_j, 1, 0, ..., 0) y_k.
    """
    ctx = G.ctx
    _check_r(ctx, r)
    Y = _ext_basis(ctx, Y)
    verdict = check_pg_map(g)
    if not isinstance(verdict, Bijection):
        raise NotBijection(f"the PG map is not a bijection: {verdict}")
    binv, bmul = ctx._binv, ctx._bmul

    def make(j):
        def form(x, t):
            inv = binv[t[j]]
            point = tuple(bmul[c][inv] for c in t[: j + 1]) + (0,) * (G.n - j - 1)
            scale = ctx.embed(ctx.base(t[j]), Level.EXT) ** r
            return scale * G.combine(g(point), Y)
        return form

    labels = [f"j={j}" for j in range(G.n)]
    forms = {f"j={j}": make(j) for j in range(G.n)}
    text = {f"j={j}": f"Tr(b{j} x)^{r} * sum_k g_k(point) y_k" for j in range(G.n)}
    return PiecewisePermutation(G, Y, r, "thm32", g, _by_top_index, forms, labels,
                                params={"pg_map": g.kind}, total=False, form_text=text)


def _base_pow_table(ctx: FieldCtx, e: int) -> list[FieldElem]:
    return [ctx.base(c) ** e for c in range(ctx.q)]


def construct_thm36(G: GmtContext, Y: Sequence[FieldElem], H: Sequence, r: int) -> PiecewisePermutation:
    """On class j: t_j^r (sum_{k<j} H_j(t_k / t_j) y_k + y_j), H_0 = identity.

    Each H_j is homogenized to sum_e h_e t_k^e t_j^(r-e), so branches are
    polynomial in the traces and need r >= deg H_j.
    """
    ctx = G.ctx
    n = G.n
    _check_r(ctx, r)
    Y = _ext_basis(ctx, Y)
    if len(H) != n - 1:
        raise BadParams(f"expected {n - 1} maps H_1..H_{n - 1}")
    tables = [base_table(ctx, h) for h in H]
    for j, t in enumerate(tables, start=1):
        require_permutation_of_base(ctx, t, f"H_{j}")
    polys = [UniPoly.x(ctx, Level.BASE)] + [base_interpolate(ctx, t) for t in tables]
    for j, P in enumerate(polys):
        if P.degree() > r:
            raise BadR(f"r = {r} is below deg H_{j} = {P.degree()}")
    pg = coordinatewise_map(ctx, tables)
    Ye = [ctx.embed(y, Level.EXT) for y in Y]

    def make(j):
        hterms = polys[j].terms()

        def form(x, t):
            tj = ctx.base(t[j])
            acc = ctx.zero()
            for k in range(j):
                tk = ctx.base(t[k])
                s = ctx.zero(Level.BASE)
                for e, c in hterms:
                    s = s + c * tk**e * tj ** (r - e)
                acc = acc + ctx.embed(s, Level.EXT) * Ye[k]
            return acc + ctx.embed(tj**r, Level.EXT) * Ye[j]
        return form

    labels = [f"j={j}" for j in range(n)]
    forms = {f"j={j}": make(j) for j in range(n)}
    text = {}
    for j in range(n):
        parts = [f"H_{j}(Tr(b{k} x)/Tr(b{j} x)) y{k}" for k in range(j)] + [f"y{j}"]
        text[f"j={j}"] = f"Tr(b{j} x)^{r} * (" + " + ".join(parts) + ")"
    return PiecewisePermutation(G, Y, r, "thm36", pg, _by_top_index, forms, labels,
                                params={"H": tables}, form_text=text)


@dataclass
class Thm37Params:
    """Parameters of the degree-two-extension family.

    ``H`` is a UniPoly or a base value table; ``d`` defaults to the degree
    of H as a polynomial over F_q.  ``w`` defaults to the first (q-1)-th
    root of u/v.
    """

    H: object
    r: int
    a: FieldElem
    b: FieldElem
    u: FieldElem
    v: FieldElem
    w: FieldElem | None = None
    d: int | None = None


def construct_thm37(ctx: FieldCtx, P: Thm37Params) -> PiecewisePermutation:
    """F(x) = a w^(r-d) (v-u)^r x^r if x^q = v x, else
    (x^q - v x)^r (a w^-d H(w (x^q - u x)/(x^q - v x)) + b).
    """
    q = ctx.q
    if ctx.n != 2:
        raise BadParams("this family lives on a degree-2 extension (n = 2)")
    d = P.d
    if d is None:
        d = P.H.degree() if isinstance(P.H, UniPoly) else base_interpolate(ctx, base_table(ctx, P.H)).degree()
    r = P.r
    problems = []
    if d < 1:
        problems.append("d >= 1")
    if r < d:
        problems.append("r >= d")
    if gcd(r, q - 1) != 1:
        problems.append("gcd(r, q - 1) = 1")
    a, b, u, v = (ctx.embed(z, Level.EXT) for z in (P.a, P.b, P.u, P.v))
    if not a or not b:
        problems.append("a, b nonzero")
    if not ctx.is_mu(u) or not ctx.is_mu(v):
        problems.append("u, v in mu_{q+1}")
    if u == v:
        problems.append("u != v")
    if a and b and u and v and (u / v) ** d == (a / b) ** (q - 1):
        problems.append("(u/v)^d != (a/b)^(q-1)")
    try:
        table = base_table(ctx, P.H)
        require_permutation_of_base(ctx, table)
    except NotPermutationOfFq:
        problems.append("H permutes F_q")
        table = None
    if u and v and not problems:
        if P.w is None:
            w = ctx.qm1_root(u / v)
        else:
            w = ctx.embed(P.w, Level.EXT)
            if not w or w ** (q - 1) != u / v:
                problems.append("w^(q-1) = u/v")
    if problems:
        raise BadParams("violated: " + "; ".join(problems))

    w0 = ctx.qm1_root(v)
    w1 = -w * w0
    G = GmtContext([w0, w1])
    # this family equals the coordinatewise construction on W = (w0, w1) with
    # y0 = a w^-d w0^-r, y1 = b w0^-r, rescaled by det^r
    dr = G.det**r
    Y_h = [dr * a * w ** (-d) * w0 ** (-r), dr * b * w0 ** (-r)]
    pg = coordinatewise_map(ctx, [table])
    hpoly = base_interpolate(ctx, table)
    if hpoly.degree() > r:
        raise BadParams("violated: r >= deg H on F_q")
    monomial = len(hpoly.terms()) == 1 and hpoly.terms()[0] == (d, ctx.one(Level.BASE)) and gcd(d, q - 1) == 1
    hterms = [(e, ctx.embed(c, Level.EXT)) for e, c in hpoly.terms()]
    c0 = a * w ** (r - d) * (v - u) ** r

    def classify(x, t):
        return "x^q=vx" if not (ctx.frobenius_q(x) - v * x) else "x^q!=vx"

    def form0(x, t):
        return c0 * x**r

    def form1(x, t):
        xq = ctx.frobenius_q(x)
        A = xq - u * x
        B = xq - v * x
        if monomial:
            return a * B ** (r - d) * A**d + b * B**r
        acc = ctx.zero()
        for e, c in hterms:
            acc = acc + c * w ** (e - d) * A**e * B ** (r - e)
        return a * acc + b * B**r

    labels = ["x^q=vx", "x^q!=vx"]
    text = {
        "x^q=vx": "a w^(r-d) (v-u)^r x^r",
        "x^q!=vx": ("a (x^q-vx)^(r-d) (x^q-ux)^d + b (x^q-vx)^r" if monomial
                    else "(x^q-vx)^r (a w^-d H(w (x^q-ux)/(x^q-vx)) + b)"),
    }
    params = {"H": table, "d": d, "a": a, "b": b, "u": u, "v": v, "w": w, "monomial": monomial}
    return PiecewisePermutation(G, [w0, w1], r, "thm37", pg, classify,
                                {"x^q=vx": form0, "x^q!=vx": form1}, labels,
                                params=params, Y_h=Y_h, form_text=text)


def construct_thm310(G: GmtContext, Y: Sequence[FieldElem], delta, alpha, r: int, d: int) -> PiecewisePermutation:
    """Branch (1), all j != 1 and j = 1 with t_0/t_1 an odd power of delta:
        sum_{k<=j} t_k t_j^(r-1) y_k
    branch (2), j = 1 with t_0/t_1 zero or an even power of delta:
        alpha t_0^d t_1^(r-d) y_0 + t_1^r y_1
    """
    ctx = G.ctx
    q, n = ctx.q, G.n
    if q % 2 == 0:
        raise BadParams("q must be odd")
    if gcd(r, q - 1) != 1 or r < 1:
        raise BadParams("gcd(r, q - 1) must be 1")
    if r < d:
        raise BadParams("r >= d is required")
    pg = parity_twist_map(ctx, delta, alpha, d)  # validates delta, alpha, d
    Y = _ext_basis(ctx, Y)
    delta_e = ctx.base(pg.params["delta"])
    alpha_b = ctx.base(pg.params["alpha"])
    alpha_e = ctx.embed(alpha_b, Level.EXT)
    odd = {c: ctx.discrete_log(ctx.base(c), delta_e) % 2 == 1 for c in range(1, q)}
    odd[0] = False
    binv, bmul = ctx._binv, ctx._bmul

    def classify(x, t):
        j = _top_index(t)
        if j != 1:
            return f"j={j}"
        x0 = bmul[t[0]][binv[t[1]]]
        return "j=1 odd" if odd[x0] else "j=1 even"

    def plain(j):
        def form(x, t):
            tj = ctx.embed(ctx.base(t[j]), Level.EXT)
            s = tj ** (r - 1)
            acc = ctx.zero()
            for k in range(j + 1):
                if t[k]:
                    acc = acc + ctx._scalar_ext(t[k], Y[k])
            return s * acc
        return form

    def twisted(x, t):
        t0 = ctx.embed(ctx.base(t[0]), Level.EXT)
        t1 = ctx.embed(ctx.base(t[1]), Level.EXT)
        return alpha_e * t0**d * t1 ** (r - d) * Y[0] + t1**r * Y[1]

    labels = ["j=0", "j=1 odd", "j=1 even"] + [f"j={j}" for j in range(2, n)]
    forms = {lab: plain(0 if lab == "j=0" else 1 if lab == "j=1 odd" else int(lab[2:]))
             for lab in labels if lab != "j=1 even"}
    forms["j=1 even"] = twisted
    text = {lab: f"sum_(k<=j) Tr(bk x) Tr(bj x)^{r - 1} yk" for lab in labels}
    text["j=1 even"] = f"alpha Tr(b0 x)^{d} Tr(b1 x)^{r - d} y0 + Tr(b1 x)^{r} y1"
    return PiecewisePermutation(G, Y, r, "thm310", pg, classify, forms, labels,
                                params={"delta": delta_e.v, "alpha": alpha_b.v, "d": d},
                                form_text=text)


def construct_prop312(G: GmtContext, Y: Sequence[FieldElem], r: int, literal: bool = False) -> PiecewisePermutation:
    """Five branches over F_{q^3} keyed by which trace coordinates vanish.

    The class x = x_0 w_0 maps to t_0^r y_1; ``literal=True`` uses y_2
    there instead, which collides with the class x = x_1 w_1.
    """
    ctx = G.ctx
    if G.n != 3:
        raise WrongN("this construction needs n = 3")
    _check_r(ctx, r)
    Y = _ext_basis(ctx, Y)
    pg = three_set_swap_map(ctx)
    E = lambda c: ctx.embed(ctx.base(c), Level.EXT)  # noqa: E731

    def classify(x, t):
        t0, t1, t2 = t
        if t2 and not t0 and not t1:
            return "x2"
        if not t1 and not t2:
            return "x0"
        if not t1:
            return "x0+x2"
        if not t2:
            return "x0+x1"
        return "x0+x1+x2"

    y_x0 = Y[2] if literal else Y[1]
    forms = {
        "x2": lambda x, t: E(t[2]) ** r * Y[0],
        "x0": lambda x, t: E(t[0]) ** r * y_x0,
        "x0+x2": lambda x, t: E(t[0]) * E(t[2]) ** (r - 1) * Y[0] + E(t[2]) ** r * Y[1],
        "x0+x1": lambda x, t: E(t[0]) * E(t[1]) ** (r - 1) * Y[0] + E(t[1]) ** r * Y[2],
        "x0+x1+x2": lambda x, t: (E(t[0]) * E(t[2]) ** (r - 1) * Y[0]
                                  + E(t[1]) * E(t[2]) ** (r - 1) * Y[1] + E(t[2]) ** r * Y[2]),
    }
    labels = list(forms)
    text = {
        "x2": "Tr(b2 x)^r y0",
        "x0": "Tr(b0 x)^r " + ("y2" if literal else "y1"),
        "x0+x2": "Tr(b0 x) Tr(b2 x)^(r-1) y0 + Tr(b2 x)^r y1",
        "x0+x1": "Tr(b0 x) Tr(b1 x)^(r-1) y0 + Tr(b1 x)^r y2",
        "x0+x1+x2": "Tr(b0 x) Tr(b2 x)^(r-1) y0 + Tr(b1 x) Tr(b2 x)^(r-1) y1 + Tr(b2 x)^r y2",
    }
    return PiecewisePermutation(G, Y, r, "prop312", pg, classify, forms, labels,
                                params={"literal": literal}, form_text=text)


# --------------------------------------------------------------------------
# interpolation


def interpolate_table(ctx: FieldCtx, values: Sequence[FieldElem]) -> UniPoly:
    """The polynomial of degree < Q agreeing with ``values`` (indexed by element index).

    For 1 <= k <= Q-2 the coefficient of x^k is -sum_{a != 0} f(a) a^-k; the
    constant is f(0) and the top coefficient is -sum_a f(a).  The sums run
    in the log domain over base-p digit vectors of element indices.
    """
    Q = ctx.order
    N = Q - 1
    p = ctx.p
    if len(values) != Q:
        raise ValueError(f"need {Q} values")
    antilog, log = ctx.log_tables(Level.EXT)
    antilog = np.asarray(antilog, dtype=np.int64)
    idx = np.array([ctx.index(v) for v in values], dtype=np.int64)
    width = ctx.m * ctx.n
    digits = np.zeros((Q, width), dtype=np.int64)
    rest = np.arange(Q, dtype=np.int64)
    for i in range(width):
        digits[:, i] = rest % p
        rest //= p
    weights = p ** np.arange(width, dtype=np.int64)

    # f(g^t) for t = 0..N-1, kept where nonzero
    fvals = idx[antilog]
    nz = np.nonzero(fvals)[0]
    ts = nz.astype(np.int64)
    logs = np.asarray(log, dtype=np.int64)[fvals[nz]]

    coeff_idx = np.zeros(Q, dtype=np.int64)
    coeff_idx[0] = idx[0]
    if len(ts):
        chunk = max(1, 4_000_000 // (len(ts) * width))
        for start in range(1, Q - 1, chunk):
            ks = np.arange(start, min(start + chunk, Q - 1), dtype=np.int64)
            term_logs = (logs[None, :] - ts[None, :] * ks[:, None]) % N
            sums = digits[antilog[term_logs]].sum(axis=1) % p
            coeff_idx[ks] = (((p - sums) % p) @ weights)
    total = digits[idx].sum(axis=0) % p
    coeff_idx[Q - 1] = int(((p - total) % p) @ weights)
    coeffs = [ctx.from_index(Level.EXT, int(c)) for c in coeff_idx]
    return UniPoly(ctx, Level.EXT, coeffs)


def interpolate_univariate(fn: Callable, ctx: FieldCtx) -> UniPoly:
    """Interpolate a self-map of F_{q^n} given as a callable."""
    return interpolate_table(ctx, [fn(x) for x in ctx.elements()])


def interpolate_branch(f: PiecewisePermutation, label: str) -> UniPoly:
    """Interpolant of one branch; agrees with f on that branch's class."""
    return interpolate_table(f.ctx, f.branch_values(label))


def newton_interpolate(points: Sequence[tuple[FieldElem, FieldElem]]) -> UniPoly:
    """Newton divided differences; an O(N^2) oracle for small domains."""
    xs = [x for x, _ in points]
    ctx, level = xs[0].ctx, xs[0].level
    coef = [y for _, y in points]
    n = len(points)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    X = UniPoly.x(ctx, level)
    result = UniPoly(ctx, level, [coef[-1]])
    for i in range(n - 2, -1, -1):
        result = result * (X - UniPoly(ctx, level, [xs[i]])) + UniPoly(ctx, level, [coef[i]])
    return result


@dataclass
class IndexDecomposition:
    r: int
    s: int
    ell: int
    h: UniPoly


def index_decompose(P: UniPoly) -> IndexDecomposition:
    """Write P = x^r h(x^s) with the largest s dividing Q - 1."""
    if not P:
        raise ZeroPoly("the zero polynomial has no index")
    if P.coeff(0):
        raise NonzeroConstantTerm("P(0) must be 0")
    N = P.ctx.size(P.level) - 1
    support = P.support()
    r = support[0]
    s = N
    for e in support:
        s = gcd(s, e - r)
    h = UniPoly.from_terms(P.ctx, P.level, {(e - r) // s: P.coeff(e) for e in support})
    return IndexDecomposition(r=r, s=s, ell=N // s, h=h)
