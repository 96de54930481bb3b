"""Univariate polynomials over one level of a field tower."""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from .errors import LevelMismatch
from .field import FieldCtx, FieldElem, Level


class UniPoly:
    """Dense polynomial with ascending FieldElem coefficients.

    Trailing zeros are stripped, so the zero polynomial has no coefficients.
    """

    __slots__ = ("ctx", "level", "coeffs")

    def __init__(self, ctx: FieldCtx, level: Level, coeffs: Sequence[FieldElem]):
        coeffs = list(coeffs)
        for c in coeffs:
            if c.level != level:
                raise LevelMismatch(f"coefficient at {c.level.name}, polynomial at {level.name}")
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        self.ctx = ctx
        self.level = level
        self.coeffs = tuple(coeffs)

    @classmethod
    def from_terms(cls, ctx: FieldCtx, level: Level, terms: Mapping[int, FieldElem] | Iterable):
        items = terms.items() if isinstance(terms, Mapping) else terms
        items = [(int(e), c) for e, c in items]
        top = max((e for e, _ in items), default=-1)
        coeffs = [ctx.zero(level)] * (top + 1)
        for e, c in items:
            if e < 0:
                raise ValueError("negative exponent")
            coeffs[e] = coeffs[e] + c
        return cls(ctx, level, coeffs)

    @classmethod
    def monomial(cls, ctx: FieldCtx, e: int, c: FieldElem | None = None, level: Level = Level.EXT):
        return cls.from_terms(ctx, level, {e: ctx.one(level) if c is None else c})

    @classmethod
    def x(cls, ctx: FieldCtx, level: Level = Level.EXT):
        return cls.monomial(ctx, 1, level=level)

    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def terms(self) -> list[tuple[int, FieldElem]]:
        return [(e, c) for e, c in enumerate(self.coeffs) if c]

    def support(self) -> list[int]:
        return [e for e, c in enumerate(self.coeffs) if c]

    def coeff(self, e: int) -> FieldElem:
        if 0 <= e < len(self.coeffs):
            return self.coeffs[e]
        return self.ctx.zero(self.level)

    def __bool__(self):
        return bool(self.coeffs)

    def __call__(self, x: FieldElem) -> FieldElem:
        if x.level != self.level:
            x = self.ctx.embed(x, self.level)
        total = self.ctx.zero(self.level)
        # sparse evaluation: interpolants here rarely have many terms
        for e, c in self.terms():
            total = total + c * x**e
        return total

    def __add__(self, other: UniPoly) -> UniPoly:
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(self.ctx, self.level, [self.coeff(i) + other.coeff(i) for i in range(n)])

    def __neg__(self) -> UniPoly:
        return UniPoly(self.ctx, self.level, [-c for c in self.coeffs])

    def __sub__(self, other: UniPoly) -> UniPoly:
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, FieldElem):
            return UniPoly(self.ctx, self.level, [c * other for c in self.coeffs])
        self._check(other)
        if not self or not other:
            return UniPoly(self.ctx, self.level, [])
        out = [self.ctx.zero(self.level)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in other.terms():
            for j, b in self.terms():
                out[i + j] = out[i + j] + a * b
        return UniPoly(self.ctx, self.level, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> UniPoly:
        result = UniPoly(self.ctx, self.level, [self.ctx.one(self.level)])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def reduce_field(self) -> UniPoly:
        """Reduce modulo x^Q - x, where Q is the size of the polynomial's level.

        The result is the unique polynomial of degree < Q with the same
        values on that field.
        """
        Q = self.ctx.size(self.level)
        if len(self.coeffs) <= Q:
            return self
        out = list(self.coeffs[:Q])
        for e in range(Q, len(self.coeffs)):
            c = self.coeffs[e]
            if c:
                k = (e - 1) % (Q - 1) + 1
                out[k] = out[k] + c
        return UniPoly(self.ctx, self.level, out)

    def _check(self, other):
        if not isinstance(other, UniPoly):
            raise TypeError("expected a UniPoly")
        if other.level != self.level:
            raise LevelMismatch("polynomials at different levels")

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.level == other.level and self.ctx == other.ctx and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((int(self.level), self.coeffs))

    def format(self, var: str = "x") -> str:
        parts = []
        for e, c in reversed(self.terms()):
            cs = str(c)
            if " " in cs or "+" in cs:
                cs = f"({cs})"
            mono = "" if e == 0 else (var if e == 1 else f"{var}^{e}")
            if not mono:
                parts.append(cs)
            elif c.is_one():
                parts.append(mono)
            else:
                parts.append(f"{cs}*{mono}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"UniPoly({self.format()})"
