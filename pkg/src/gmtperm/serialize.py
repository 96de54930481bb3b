"""JSON wire forms for fields, elements, polynomials, GMT contexts and constructions.

Elements are written as coefficient vectors, innermost level first: an ext
element is a list of n base elements, each a list of m prime coefficients
(ascending).  Base elements are a single list of m coefficients and prime
elements a bare int.  Generator powers are an optional annotation and are
ignored when parsing.
"""

from __future__ import annotations

import dataclasses
import json
import random
import re
from fractions import Fraction
from typing import Any, Sequence

from .conway import conway_tower
from .errors import BadParams, GmtPermError
from .field import FieldCtx, FieldElem, Level, make_field_tower
from .gmt import GmtContext
from .linalg import is_basis
from .permpoly import (
    PiecewisePermutation,
    Thm37Params,
    build_from_bijection,
    construct_prop312,
    construct_thm36,
    construct_thm37,
    construct_thm310,
)
from .poly import UniPoly
from .projective import PGMap, ProjPoint, builtin_pg_bijections, enumerate_pg

LEVEL_NAMES = {Level.PRIME: "prime", Level.BASE: "base", Level.EXT: "ext"}
LEVELS = {v: k for k, v in LEVEL_NAMES.items()}


class SpecError(GmtPermError, ValueError):
    """A field spec, basis keyword or JSON document could not be parsed."""


# --------------------------------------------------------------------------
# field specs


def format_field(ctx: FieldCtx) -> str:
    ext = [list(ctx._bdigits[c]) for c in ctx.ext_modulus]
    return (f"p={ctx.p};base={json.dumps(list(ctx.base_modulus), separators=(',', ':'))};"
            f"ext={json.dumps(ext, separators=(',', ':'))}")


def parse_field(spec: str) -> FieldCtx:
    """Read ``p=<prime>;base=[...];ext=[...]`` and its shorthands.

    ``m=<int>`` / ``n=<int>`` request the lex-smallest modulus of that
    degree, a bare ``auto`` fills whichever modulus is missing that way, and
    ``conway`` builds both levels from the Conway table.
    """
    fields: dict[str, Any] = {}
    flags = set()
    for part in filter(None, (s.strip() for s in spec.split(";"))):
        if "=" not in part:
            flags.add(part.lower())
            continue
        key, _, value = part.partition("=")
        key = key.strip().lower()
        try:
            fields[key] = json.loads(value)
        except json.JSONDecodeError:
            raise SpecError(f"cannot read {key}={value!r}") from None
    unknown = set(fields) - {"p", "base", "ext", "m", "n"}
    unknown |= flags - {"auto", "conway"}
    if unknown:
        raise SpecError(f"unknown field spec entries: {sorted(unknown)}")
    if "p" not in fields or not isinstance(fields["p"], int):
        raise SpecError("field spec needs p=<prime>")
    p = fields["p"]
    if "conway" in flags:
        if "base" in fields or "ext" in fields:
            raise SpecError("conway fixes both moduli")
        return conway_tower(p, fields.get("m", 1), fields.get("n", 2))
    if "base" in fields and "m" in fields:
        raise SpecError("give base= or m=, not both")
    if "ext" in fields and "n" in fields:
        raise SpecError("give ext= or n=, not both")
    base = fields.get("base", fields.get("m"))
    ext = fields.get("ext", fields.get("n"))
    if (base is None or ext is None) and "auto" not in flags:
        raise SpecError("field spec needs both moduli (or degrees), or 'auto'")
    base = 1 if base is None else base
    ext = 2 if ext is None else ext
    try:
        return make_field_tower(p, base, ext)
    except (TypeError, ValueError) as e:
        if isinstance(e, GmtPermError):
            raise
        raise SpecError(str(e)) from None


# --------------------------------------------------------------------------
# elements


def elem_to_json(x: FieldElem):
    ctx = x.ctx
    if x.level == Level.PRIME:
        return x.v
    if x.level == Level.BASE:
        return list(ctx._bdigits[x.v])
    return [list(ctx._bdigits[c]) for c in x.v]


def elem_from_json(ctx: FieldCtx, data, level: Level = Level.EXT) -> FieldElem:
    """Parse an element; lists of ints at ext level are read as base indices."""
    try:
        if level == Level.PRIME:
            if not isinstance(data, int):
                raise SpecError("prime elements are ints")
            return FieldElem(ctx, Level.PRIME, data % ctx.p)
        if level == Level.BASE:
            if isinstance(data, int):
                return ctx.base(data)
            return ctx.base([int(c) for c in data])
        if isinstance(data, int):
            return ctx.embed(ctx.base(data), Level.EXT)
        if isinstance(data, str):
            return parse_power(ctx, data)
        return ctx.ext([c if isinstance(c, int) else [int(d) for d in c] for c in data])
    except (TypeError, ValueError) as e:
        if isinstance(e, GmtPermError):
            raise
        raise SpecError(f"bad element {data!r}: {e}") from None


_POWER = re.compile(r"^\s*g\s*\^\s*(-?\d+)\s*$")


def parse_power(ctx: FieldCtx, text: str) -> FieldElem:
    """``g^k`` for the fixed generator, ``0`` or ``1``."""
    text = text.strip()
    if text in ("0", "1"):
        return ctx.scalar(int(text))
    m = _POWER.match(text)
    if not m:
        raise SpecError(f"cannot read element {text!r}")
    return ctx.generator() ** int(m.group(1))


def power_of(ctx: FieldCtx, x: FieldElem, gen: FieldElem) -> int | None:
    return None if not x else ctx.discrete_log(ctx.embed(x, Level.EXT), gen)


# --------------------------------------------------------------------------
# polynomials


def poly_to_json(P: UniPoly, generator: FieldElem | None = None) -> dict:
    out = {
        "level": LEVEL_NAMES[P.level],
        "terms": [{"e": e, "c": elem_to_json(c)} for e, c in P.terms()],
    }
    if generator is not None:
        out["generator"] = elem_to_json(generator)
        out["powers"] = [{"e": e, "log": power_of(P.ctx, c, generator)} for e, c in P.terms()]
    return out


def poly_from_json(ctx: FieldCtx, data: dict) -> UniPoly:
    level = LEVELS.get(data.get("level", "ext"))
    if level is None:
        raise SpecError(f"unknown level {data.get('level')!r}")
    terms = [(int(t["e"]), elem_from_json(ctx, t["c"], level)) for t in data["terms"]]
    return UniPoly.from_terms(ctx, level, terms)


# --------------------------------------------------------------------------
# bases


def parse_basis(ctx: FieldCtx, data, seed: int | None = None) -> list[FieldElem]:
    """A basis from a keyword (``poly``, ``std``, ``normal``, ``random``) or a JSON list."""
    if isinstance(data, str):
        word = data.strip()
        if word.startswith("["):
            return parse_basis(ctx, json.loads(word), seed)
        if word in ("poly", "std"):
            return [ctx.gen**k for k in range(ctx.n)]
        if word == "normal":
            return normal_basis(ctx)
        if word.startswith("random"):
            _, _, s = word.partition(":")
            return random_basis(ctx, random.Random(int(s) if s else (seed or 0)))
        raise SpecError(f"unknown basis keyword {word!r}")
    W = [elem_from_json(ctx, c) for c in data]
    if len(W) != ctx.n or not is_basis(W):
        raise BadParams("the given elements do not form a basis")
    return W


def normal_basis(ctx: FieldCtx) -> list[FieldElem]:
    """(w, w^q, ..., w^(q^(n-1))) for the first w, in enumeration order, that gives a basis."""
    for w in ctx.nonzero():
        W = [w]
        for _ in range(ctx.n - 1):
            W.append(ctx.frobenius_q(W[-1]))
        if is_basis(W):
            return W
    raise AssertionError("every finite extension has a normal basis")  # pragma: no cover


def random_basis(ctx: FieldCtx, rng: random.Random) -> list[FieldElem]:
    while True:
        W = [ctx.from_index(Level.EXT, rng.randrange(1, ctx.order)) for _ in range(ctx.n)]
        if is_basis(W):
            return W


# --------------------------------------------------------------------------
# GMT contexts


def gmt_to_json(G: GmtContext, generator: FieldElem | None = None) -> dict:
    ctx = G.ctx
    return {
        "field": format_field(ctx),
        "W": [elem_to_json(w) for w in G.W],
        "det": ctx.format(G.det),
        "det_vector": elem_to_json(G.det),
        "cofactors": [elem_to_json(c) for c in G.cofactors],
        "dual": [elem_to_json(b) for b in G.dual],
        "T": [poly_to_json(G.t_poly(i), generator) for i in range(G.n)],
    }


def gmt_from_json(data: dict) -> GmtContext:
    ctx = parse_field(data["field"])
    G = GmtContext([elem_from_json(ctx, w) for w in data["W"]])
    if "det_vector" in data and elem_from_json(ctx, data["det_vector"]) != G.det:
        raise SpecError("stored determinant does not match the basis")
    return G


# --------------------------------------------------------------------------
# PG maps

_REBUILDABLE = {"identity", "coordinatewise", "parity_twist", "three_set_swap",
                "coordinate_permutation", "linear"}


def pgmap_to_json(g: PGMap) -> dict:
    if g.kind in _REBUILDABLE:
        return {"kind": g.kind, "params": _plain(g.params)}
    pairs = [[list(P.coords), list(g(P.coords))] for P in enumerate_pg(g.ctx)]
    return {"kind": "table", "pairs": pairs}


def pgmap_from_json(ctx: FieldCtx, data: dict) -> PGMap:
    kind = data.get("kind")
    params = dict(data.get("params", {}))
    if kind == "table":
        params["pairs"] = data["pairs"]
    return builtin_pg_bijections(ctx, kind, **params)


# --------------------------------------------------------------------------
# constructions


def perm_to_json(f: PiecewisePermutation) -> dict:
    ctx = f.ctx
    out = {
        "field": format_field(ctx),
        "family": f.source,
        "r": f.r,
        "W": [elem_to_json(w) for w in f.gmt.W],
        "Y": [elem_to_json(y) for y in f.Y],
    }
    p = f.params
    if f.source == "thm32":
        out["pg_map"] = pgmap_to_json(f.pg_map)
    elif f.source == "thm36":
        out["H"] = [list(t) for t in p["H"]]
    elif f.source == "thm37":
        out.pop("W")
        out.pop("Y")
        out.update(H=list(p["H"]), d=p["d"],
                   **{k: elem_to_json(p[k]) for k in ("a", "b", "u", "v", "w")})
    elif f.source == "thm310":
        out.update(delta=list(ctx._bdigits[p["delta"]]), alpha=list(ctx._bdigits[p["alpha"]]),
                   d=p["d"])
    elif f.source == "prop312":
        out["literal"] = bool(p.get("literal", False))
    return out


def perm_from_json(data: dict) -> PiecewisePermutation:
    ctx = parse_field(data["field"])
    family = data.get("family")
    r = int(data["r"])
    if family == "thm37":
        P = Thm37Params(
            H=[int(c) for c in data["H"]], d=int(data["d"]), r=r,
            **{k: elem_from_json(ctx, data[k]) for k in ("a", "b", "u", "v", "w")},
        )
        return construct_thm37(ctx, P)
    G = GmtContext(parse_basis(ctx, data["W"]))
    Y = parse_basis(ctx, data["Y"])
    if family == "thm32":
        return build_from_bijection(G, Y, pgmap_from_json(ctx, data["pg_map"]), r)
    if family == "thm36":
        return construct_thm36(G, Y, [[int(c) for c in t] for t in data["H"]], r)
    if family == "thm310":
        return construct_thm310(G, Y, elem_from_json(ctx, data["delta"], Level.BASE),
                                elem_from_json(ctx, data["alpha"], Level.BASE), r, int(data["d"]))
    if family == "prop312":
        return construct_prop312(G, Y, r, literal=bool(data.get("literal", False)))
    raise SpecError(f"unknown family {family!r}")


# --------------------------------------------------------------------------
# reports and generic values


def _plain(obj):
    """Best-effort conversion of reports and parameters into JSON values."""
    if isinstance(obj, FieldElem):
        return elem_to_json(obj)
    if isinstance(obj, ProjPoint):
        return list(obj.coords)
    if isinstance(obj, UniPoly):
        return poly_to_json(obj)
    if isinstance(obj, Fraction):
        return str(obj)
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        out = {f.name: _plain(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
        for name in ("ok", "passed", "inequality"):
            if hasattr(type(obj), name) and isinstance(getattr(type(obj), name), property):
                out[name] = getattr(obj, name)
        return out
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        return [_plain(v) for v in obj]
    return obj


def report_to_json(report) -> dict:
    return _plain(report)


def dumps(doc, indent: int | None = None) -> str:
    return json.dumps(_plain(doc), indent=indent, sort_keys=False)


def elems(ctx: FieldCtx, data: Sequence, level: Level = Level.EXT) -> list[FieldElem]:
    return [elem_from_json(ctx, d, level) for d in data]
