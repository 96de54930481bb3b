"""Command-line front end.

Exit codes: 0 success, 1 a verification failed, 2 usage or parameter error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field

from .acceptance import DEFAULT_SEED, GRID, TINY_GRID, run_all
from .errors import BadParams, GmtPermError
from .field import FieldCtx, Level
from .gmt import GmtContext
from .hirschfeld import counts, hirschfeld_map, list_subprimitive, subprimitive_root
from .permpoly import (
    PiecewisePermutation,
    Thm37Params,
    build_from_bijection,
    construct_prop312,
    construct_thm36,
    construct_thm37,
    construct_thm310,
    index_decompose,
    interpolate_branch,
    interpolate_table,
    verify_agw,
    verify_homogeneous,
    verify_permutation,
)
from .projective import identity_map
from .serialize import (
    SpecError,
    elem_from_json,
    elem_to_json,
    format_field,
    gmt_to_json,
    parse_basis,
    parse_field,
    perm_from_json,
    perm_to_json,
    pgmap_from_json,
    poly_from_json,
    poly_to_json,
    report_to_json,
)

MAX_FIELD_ENV = "GMTPERM_MAX_FIELD"
DEFAULT_MAX_FIELD = 1 << 16


class UsageError(Exception):
    pass


class VerificationFailed(Exception):
    def __init__(self, doc):
        super().__init__("verification failed")
        self.doc = doc


@dataclass
class RunConfig:
    command: str
    field_spec: str | None = None
    output: str = "json"
    level: str = "exhaustive"
    seed: int = DEFAULT_SEED
    params: dict = field(default_factory=dict)

    def max_field(self) -> int:
        raw = os.environ.get(MAX_FIELD_ENV, str(DEFAULT_MAX_FIELD))
        try:
            return int(raw)
        except ValueError:
            raise UsageError(f"{MAX_FIELD_ENV} must be an integer") from None

    def field_ctx(self, enumerates: bool = True) -> FieldCtx:
        if not self.field_spec:
            raise UsageError("--field is required")
        ctx = parse_field(self.field_spec)
        if enumerates and ctx.order > self.max_field():
            raise UsageError(f"field of order {ctx.order} exceeds the cap {self.max_field()} "
                             f"(set {MAX_FIELD_ENV} to raise it)")
        return ctx


# --------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", dest="field_spec",
                        help='e.g. "p=3;base=[0,1];ext=[[1],[0],[1]]", "p=3;auto;n=2", "p=2;m=3;n=3;conway"')
    common.add_argument("--format", dest="output", choices=["json", "text"], default="json")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--level", choices=["fast", "exhaustive"], default="exhaustive",
                        help="fast checks bijectivity only; exhaustive adds homogeneity and AGW")

    construct_args = argparse.ArgumentParser(add_help=False)
    construct_args.add_argument("--family", choices=["thm36", "thm37", "thm310", "prop312", "generic"])
    construct_args.add_argument("--basis-w", default="poly",
                                help="poly | normal | random[:seed] | JSON list of elements")
    construct_args.add_argument("--basis-y", default=None, help="defaults to the W basis")
    construct_args.add_argument("--r", type=int, default=1)
    construct_args.add_argument("--H", dest="H", default=None,
                                help="JSON: value tables of permutations of F_q")
    construct_args.add_argument("--d", type=int, default=None)
    for name in ("a", "b", "u", "v", "w"):
        construct_args.add_argument(f"--{name}", default=None, help="element JSON")
    construct_args.add_argument("--delta", default=None, help="base element (index or vector)")
    construct_args.add_argument("--alpha", default=None, help="base element (index or vector)")
    construct_args.add_argument("--literal", action="store_true",
                                help="use the literal y2 in the x = x0 w0 class (not a permutation)")
    construct_args.add_argument("--pg-map", default=None,
                                help='JSON like {"kind":"linear","params":{"matrix":[[...]]}}')
    construct_args.add_argument("--interpolate", action="store_true")
    construct_args.add_argument("--powers", action="store_true",
                                help="annotate coefficients with powers of the fixed generator")

    p = argparse.ArgumentParser(prog="gmtperm", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)
    f = sub.add_parser("field", parents=[common], help="describe a field tower")
    f.add_argument("--element", default=None, help="element JSON to analyse")
    g = sub.add_parser("gmt", parents=[common], help="Moore data, T-polynomials and partitions of a basis")
    g.add_argument("--basis-w", default="poly")
    g.add_argument("--powers", action="store_true")
    sub.add_parser("construct", parents=[common, construct_args], help="build and verify a permutation")
    v = sub.add_parser("verify", parents=[common, construct_args], help="verify a stored construction")
    v.add_argument("--input", default=None, help="JSON file from construct ('-' for stdin)")
    i = sub.add_parser("interpolate", parents=[common], help="interpolate a construction or a value table")
    i.add_argument("--input", default=None)
    i.add_argument("--values", default=None, help="JSON list of element values in enumeration order")
    i.add_argument("--branch", default=None)
    i.add_argument("--powers", action="store_true")
    sub.add_parser("count", parents=[common], help="M(n,q), H(n,q) and the ratio check")
    h = sub.add_parser("hirschfeld", parents=[common], help="subprimitive roots and their maps")
    h.add_argument("--alpha", default=None, help="print the full table for this root")
    s = sub.add_parser("selftest", parents=[common], help="run the acceptance criteria")
    s.add_argument("--grid", choices=["small", "tiny"], default="small")
    s.add_argument("--only", type=int, nargs="*", default=None)
    return p


# --------------------------------------------------------------------------
# commands


def _json_arg(text: str, what: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        raise UsageError(f"{what} is not valid JSON: {text!r}") from None


def _read_input(path: str):
    try:
        raw = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e}") from None
    doc = _json_arg(raw, "input")
    if not isinstance(doc, dict):
        raise UsageError("input must be a JSON object")
    try:
        return perm_from_json(doc.get("artifact", doc))
    except KeyError as e:
        raise UsageError(f"input lacks the key {e.args[0]!r}") from None


def cmd_field(cfg: RunConfig, args) -> dict:
    ctx = cfg.field_ctx(enumerates=False)
    out = {
        "field": format_field(ctx),
        "p": ctx.p, "q": ctx.q, "m": ctx.m, "n": ctx.n, "order": ctx.order,
        "base_modulus": list(ctx.base_modulus),
        "ext_modulus": [list(ctx._bdigits[c]) for c in ctx.ext_modulus],
        "mu_order": ctx.mu_order,
    }
    if ctx.order <= cfg.max_field():
        gen = ctx.generator()
        out["generator"] = elem_to_json(gen)
        out["generator_text"] = ctx.format(gen)
    if args.element is not None:
        x = elem_from_json(ctx, _json_arg(args.element, "--element"))
        info = {"element": elem_to_json(x), "text": ctx.format(x),
                "trace": elem_to_json(ctx.trace(x)), "norm": elem_to_json(ctx.norm(x))}
        if x:
            info["log"] = ctx.discrete_log(x)
            info["order"] = ctx.mult_order(x)
            info["subprimitive_order"] = ctx.subprimitive_order(x)
        out["analysis"] = info
    return out


def cmd_gmt(cfg: RunConfig, args) -> dict:
    ctx = cfg.field_ctx()
    G = GmtContext(parse_basis(ctx, args.basis_w, cfg.seed))
    out = gmt_to_json(G, ctx.generator() if args.powers else None)
    out["partitions"] = report_to_json(G.verify_partitions())
    return out


def _construct(cfg: RunConfig, args) -> PiecewisePermutation:
    ctx = cfg.field_ctx()
    family = args.family
    if family is None:
        raise UsageError("--family is required")
    H = _json_arg(args.H, "--H") if args.H is not None else None
    if family == "thm37":
        missing = [k for k in ("a", "b", "u", "v") if getattr(args, k) is None]
        if missing:
            raise UsageError("thm37 needs " + ", ".join(f"--{k}" for k in missing))
        el = {k: elem_from_json(ctx, _json_arg(getattr(args, k), f"--{k}")) for k in ("a", "b", "u", "v")}
        w = elem_from_json(ctx, _json_arg(args.w, "--w")) if args.w is not None else None
        if H is None:
            H = list(range(ctx.q))
        elif isinstance(H, dict):
            H = poly_from_json(ctx, H)
        return construct_thm37(ctx, Thm37Params(H=H, r=args.r, w=w, d=args.d, **el))
    W = parse_basis(ctx, args.basis_w, cfg.seed)
    Y = parse_basis(ctx, args.basis_y, cfg.seed + 1) if args.basis_y else W
    G = GmtContext(W)
    if family == "thm36":
        if H is None:
            H = [list(range(ctx.q))] * (ctx.n - 1)
        return construct_thm36(G, Y, H, args.r)
    if family == "thm310":
        if args.delta is None:
            delta = ctx.generator(Level.BASE)
        else:
            delta = elem_from_json(ctx, _json_arg(args.delta, "--delta"), Level.BASE)
        alpha = (elem_from_json(ctx, _json_arg(args.alpha, "--alpha"), Level.BASE)
                 if args.alpha is not None else ctx.one(Level.BASE))
        return construct_thm310(G, Y, delta, alpha, args.r, args.d if args.d is not None else 1)
    if family == "prop312":
        return construct_prop312(G, Y, args.r, literal=args.literal)
    g = pgmap_from_json(ctx, _json_arg(args.pg_map, "--pg-map")) if args.pg_map else identity_map(ctx)
    return build_from_bijection(G, Y, g, args.r)


def _verdicts(cfg: RunConfig, f: PiecewisePermutation) -> tuple[dict, bool]:
    perm = verify_permutation(f, f.ctx)
    out = {"is_permutation": perm.ok}
    if not perm.ok:
        x, y, img = perm.witness
        out["collision"] = [elem_to_json(x), elem_to_json(y), elem_to_json(img)]
    ok = perm.ok
    if cfg.level == "exhaustive":
        hom = verify_homogeneous(f)
        agw = verify_agw(f)
        out["is_homogeneous"] = hom.ok
        out["agw"] = report_to_json(agw)
        ok = ok and hom.ok and agw.passed
    return out, ok


def _interpolants(f: PiecewisePermutation, powers: bool) -> dict:
    ctx = f.ctx
    gen = ctx.generator() if powers else None
    out = {"branches": {lab: poly_to_json(interpolate_branch(f, lab), gen) for lab in f.labels}}
    full = interpolate_table(ctx, f.value_table())
    out["full"] = poly_to_json(full, gen)
    if full and not full.coeff(0):
        dec = index_decompose(full)
        out["index"] = {"r": dec.r, "s": dec.s, "ell": dec.ell, "h": poly_to_json(dec.h, gen)}
    return out


def cmd_construct(cfg: RunConfig, args) -> dict:
    f = _construct(cfg, args)
    out = {"artifact": perm_to_json(f), "description": f.describe()}
    verdicts, ok = _verdicts(cfg, f)
    out.update(verdicts)
    if args.interpolate:
        out["interpolants"] = _interpolants(f, args.powers)
    if not ok:
        raise VerificationFailed(out)
    return out


def cmd_verify(cfg: RunConfig, args) -> dict:
    if args.input is not None:
        f = _read_input(args.input)
        cap = cfg.max_field()
        if f.ctx.order > cap:
            raise UsageError(f"field of order {f.ctx.order} exceeds the cap {cap}")
    else:
        f = _construct(cfg, args)
    out = {"artifact": perm_to_json(f)}
    verdicts, ok = _verdicts(cfg, f)
    out.update(verdicts)
    if not ok:
        raise VerificationFailed(out)
    return out


def cmd_interpolate(cfg: RunConfig, args) -> dict:
    if args.input is not None:
        f = _read_input(args.input)
        ctx = f.ctx
        if ctx.order > cfg.max_field():
            raise UsageError(f"field of order {ctx.order} exceeds the cap")
        if args.branch is not None:
            if args.branch not in f.labels:
                raise UsageError(f"unknown branch {args.branch!r}; choose from {f.labels}")
            P = interpolate_branch(f, args.branch)
        else:
            P = interpolate_table(ctx, f.value_table())
    elif args.values is not None:
        ctx = cfg.field_ctx()
        vals = [elem_from_json(ctx, v) for v in _json_arg(args.values, "--values")]
        if len(vals) != ctx.order:
            raise UsageError(f"--values needs {ctx.order} entries")
        P = interpolate_table(ctx, vals)
    else:
        raise UsageError("give --input or --values")
    gen = ctx.generator() if args.powers else None
    out = {"field": format_field(ctx), "polynomial": poly_to_json(P, gen), "text": P.format()}
    if P and not P.coeff(0):
        dec = index_decompose(P)
        out["index"] = {"r": dec.r, "s": dec.s, "ell": dec.ell, "h": poly_to_json(dec.h, gen)}
    return out


def cmd_count(cfg: RunConfig, args) -> dict:
    ctx = cfg.field_ctx(enumerates=False)
    rep = counts(ctx) if ctx.order <= cfg.max_field() else counts(ctx, enumerate_limit=0)
    out = {"M": rep.M, "H": rep.H, "n": rep.n, "q": rep.q, "ratio": str(rep.ratio),
           "bound": rep.bound, "inequality": rep.inequality,
           "M_enumerated": rep.M_enumerated, "H_enumerated": rep.H_enumerated}
    if not rep.ok:
        raise VerificationFailed(out)
    return out


def cmd_hirschfeld(cfg: RunConfig, args) -> dict:
    ctx = cfg.field_ctx()
    polys = []
    ok = True
    for P, roots in list_subprimitive(ctx):
        entries = []
        for a in roots:
            _, rep = hirschfeld_map(subprimitive_root(a))
            ok = ok and rep.ok
            entries.append({"alpha": elem_to_json(a), "text": ctx.format(a), "checks_pass": rep.ok,
                            "image_is_mu": rep.image_is_mu})
        polys.append({"polynomial": [list(ctx._bdigits[c.v]) for c in P.coeffs], "roots": entries})
    out = {"field": format_field(ctx), "polynomial_count": len(polys),
           "root_count": sum(len(p["roots"]) for p in polys), "polynomials": polys}
    if args.alpha is not None:
        a = elem_from_json(ctx, _json_arg(args.alpha, "--alpha"))
        s = subprimitive_root(a)
        if ctx.subprimitive_order(a) != ctx.mu_order:
            raise BadParams("--alpha is not subprimitive")
        table, rep = hirschfeld_map(s)
        out["map"] = {
            "alpha": elem_to_json(a),
            "minpoly": [list(ctx._bdigits[c]) for c in s.minpoly],
            "companion": [list(r) for r in s.companion],
            "pairs": [[list(P.coords), elem_to_json(y)] for P, y in table.items()],
            "report": report_to_json(rep),
        }
        ok = ok and rep.ok
    if not ok:
        raise VerificationFailed(out)
    return out


def cmd_selftest(cfg: RunConfig, args) -> dict:
    grid = GRID if args.grid == "small" else TINY_GRID
    echo = print if cfg.output == "text" else None
    results = run_all(grid, cfg.seed, only=args.only, echo=echo)
    out = {"grid": args.grid, "seed": cfg.seed,
           "criteria": [report_to_json(r) for r in results],
           "passed": all(r.passed for r in results)}
    if not out["passed"]:
        raise VerificationFailed(out)
    return out


COMMANDS = {
    "field": cmd_field,
    "gmt": cmd_gmt,
    "construct": cmd_construct,
    "verify": cmd_verify,
    "interpolate": cmd_interpolate,
    "count": cmd_count,
    "hirschfeld": cmd_hirschfeld,
    "selftest": cmd_selftest,
}


def _emit(doc, output: str, stream) -> None:
    if output == "json":
        print(json.dumps(doc), file=stream)
        return
    if isinstance(doc, dict) and "criteria" in doc:
        print("all criteria passed" if doc["passed"] else "some criteria FAILED", file=stream)
        return
    for k, v in doc.items():
        print(f"{k}: {v if isinstance(v, (str, int, bool)) else json.dumps(v)}", file=stream)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    cfg = RunConfig(command=args.command, field_spec=args.field_spec, output=args.output,
                    level=args.level, seed=args.seed)
    try:
        doc = COMMANDS[args.command](cfg, args)
    except VerificationFailed as e:
        _emit(e.doc, cfg.output, sys.stdout)
        return 1
    except (UsageError, SpecError, GmtPermError) as e:
        print(f"gmtperm {args.command}: error: {e}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return 2
    _emit(doc, cfg.output, sys.stdout)
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
