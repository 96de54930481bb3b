"""Exact arithmetic in a two-level tower F_p < F_q = F_{p^m} < F_{q^n}.

Elements are encoded compactly:

* prime level: an int in ``range(p)``;
* base level: an int *code* ``sum(a_i * p**i)`` built from the coefficient
  vector ``(a_0, ..., a_{m-1})`` of the element over F_p;
* ext level: a tuple of ``n`` base codes, the coefficient vector over F_q.

The integer code of an element (its *index*) is its position in the odometer
enumeration of coefficient vectors, least-significant coefficient fastest.
Every "smallest element" rule in the package refers to that order.

Base-field multiplication and addition are tabulated at construction; ext
arithmetic is schoolbook polynomial multiplication over those tables followed
by reduction modulo the ext modulus.
"""

from __future__ import annotations

import itertools
from enum import IntEnum
from math import isqrt
from typing import Iterator, Sequence

from . import _nt
from .errors import (
    DegreeTooSmall,
    DivisionByZero,
    InternalSubfieldViolation,
    LevelMismatch,
    LogOfZero,
    NotInMu,
    NotPrime,
    ReducibleModulus,
    ZeroInput,
)


class Level(IntEnum):
    PRIME = 0
    BASE = 1
    EXT = 2


# --------------------------------------------------------------------------
# polynomial helpers over coefficient codes (used for modulus validation)


def _poly_rem(f: list[int], g: Sequence[int], add, neg, mul) -> list[int]:
    """Remainder of f by the monic polynomial g; coefficients are codes."""
    f = list(f)
    dg = len(g) - 1
    for d in range(len(f) - 1, dg - 1, -1):
        c = f[d]
        if c:
            for k in range(dg):
                f[d - dg + k] = add(f[d - dg + k], neg(mul(c, g[k])))
            f[d] = 0
    return f[:dg]


def _monics(q: int, degree: int) -> Iterator[list[int]]:
    """Monic polynomials of the given degree in odometer order of the lower coefficients."""
    for low in itertools.product(range(q), repeat=degree):
        yield list(low[::-1]) + [1]


def _is_irreducible(f: Sequence[int], q: int, add, neg, mul) -> bool:
    # full trial division by every monic polynomial of degree <= deg/2
    d = len(f) - 1
    for deg in range(1, d // 2 + 1):
        for g in _monics(q, deg):
            if not any(_poly_rem(list(f), g, add, neg, mul)):
                return False
    return True


def _first_irreducible(q: int, degree: int, add, neg, mul) -> list[int]:
    for f in _monics(q, degree):
        if _is_irreducible(f, q, add, neg, mul):
            return f
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


# --------------------------------------------------------------------------


class FieldCtx:
    """Immutable description of the tower F_p < F_q < F_{q^n}.

    ``base_modulus`` is a monic irreducible polynomial of degree m over F_p
    (ascending int coefficients).  ``ext_modulus`` is a monic irreducible
    polynomial of degree n over F_q whose coefficients are base codes.
    """

    def __init__(
        self,
        p: int,
        base_modulus: Sequence[int],
        ext_modulus: Sequence[int],
        base_label: str = "z",
        ext_label: str = "w",
    ):
        if not _nt.is_prime(p):
            raise NotPrime(f"{p} is not prime")
        bm = [int(c) % p for c in base_modulus]
        if len(bm) - 1 < 1:
            raise DegreeTooSmall("base modulus must have degree >= 1")
        if bm[-1] != 1:
            raise ValueError("base modulus must be monic")
        padd = lambda a, b: (a + b) % p  # noqa: E731
        pneg = lambda a: (-a) % p  # noqa: E731
        pmul = lambda a, b: (a * b) % p  # noqa: E731
        if not _is_irreducible(bm, p, padd, pneg, pmul):
            raise ReducibleModulus(f"{bm} is reducible over F_{p}")

        self.p = p
        self.m = len(bm) - 1
        self.q = p**self.m
        self.base_modulus = tuple(bm)
        self._build_base_tables()

        em = [int(c) for c in ext_modulus]
        if any(not 0 <= c < self.q for c in em):
            raise ValueError("ext modulus coefficients must be base codes in range(q)")
        if len(em) - 1 < 2:
            raise DegreeTooSmall("ext modulus must have degree >= 2")
        if em[-1] != 1:
            raise ValueError("ext modulus must be monic")
        if not _is_irreducible(em, self.q, self._badd_f, self._bneg.__getitem__, self._bmul_f):
            raise ReducibleModulus(f"{em} is reducible over F_{self.q}")

        self.n = len(em) - 1
        self.ext_modulus = tuple(em)
        self.order = self.q**self.n
        self.base_label = base_label
        self.ext_label = ext_label
        self._nem = [self._bneg[c] for c in em[:-1]]
        self._cache: dict = {}

        self._frob_images = self._frobenius_images()

    # ------------------------------------------------------------ base tables

    def _digits(self, code: int) -> tuple[int, ...]:
        p = self.p
        out = []
        for _ in range(self.m):
            code, r = divmod(code, p)
            out.append(r)
        return tuple(out)

    def _encode(self, digits: Sequence[int]) -> int:
        code = 0
        for d in reversed(digits):
            code = code * self.p + d % self.p
        return code

    def _build_base_tables(self) -> None:
        p, q, m = self.p, self.q, self.m
        digits = [self._digits(c) for c in range(q)]
        self._bdigits = digits
        if p == 2:
            add = [[a ^ b for b in range(q)] for a in range(q)]
        else:
            add = [
                [self._encode([(x + y) % p for x, y in zip(da, db)]) for db in digits]
                for da in digits
            ]
        neg = [self._encode([(-x) % p for x in d]) for d in digits]
        bm = self.base_modulus

        def mulx(code: int) -> int:
            d = [0] + list(digits[code])
            top = d[m]
            return self._encode([(d[i] - top * bm[i]) % p for i in range(m)])

        def scal(k: int, code: int) -> int:
            return self._encode([(k * x) % p for x in digits[code]])

        mul = []
        for a in range(q):
            powers = [a]
            for _ in range(m - 1):
                powers.append(mulx(powers[-1]))
            row = [0]
            for v in powers:
                mults = [scal(k, v) for k in range(p)]
                row = [add[r][mk] for mk in mults for r in row]
            mul.append(row)
        inv = [0] * q
        for a in range(1, q):
            inv[a] = mul[a].index(1)

        self._badd = add
        self._bneg = neg
        self._bmul = mul
        self._binv = inv
        self._badd_f = lambda a, b: add[a][b]
        self._bmul_f = lambda a, b: mul[a][b]

    # ------------------------------------------------------------ ext kernels

    def _eadd(self, a, b):
        add = self._badd
        return tuple(add[x][y] for x, y in zip(a, b))

    def _eneg(self, a):
        neg = self._bneg
        return tuple(neg[x] for x in a)

    def _esub(self, a, b):
        add, neg = self._badd, self._bneg
        return tuple(add[x][neg[y]] for x, y in zip(a, b))

    def _escale(self, c: int, a):
        row = self._bmul[c]
        return tuple(row[x] for x in a)

    def _scalar_ext(self, c: int, w: FieldElem) -> FieldElem:
        """Base code c times an ext element."""
        return FieldElem(self, Level.EXT, self._escale(c, w.v))

    def _emul(self, a, b):
        n = self.n
        add, mul = self._badd, self._bmul
        prod = [0] * (2 * n - 1)
        for i, ai in enumerate(a):
            if ai:
                row = mul[ai]
                for j, bj in enumerate(b):
                    if bj:
                        prod[i + j] = add[prod[i + j]][row[bj]]
        nem = self._nem
        for d in range(2 * n - 2, n - 1, -1):
            c = prod[d]
            if c:
                row = mul[c]
                base = d - n
                for k in range(n):
                    prod[base + k] = add[prod[base + k]][row[nem[k]]]
        return tuple(prod[:n])

    def _epow(self, a, e: int):
        result = self._one_ext
        if e == 0:
            return result
        base = a
        while True:
            if e & 1:
                result = self._emul(result, base)
            e >>= 1
            if not e:
                return result
            base = self._emul(base, base)

    @property
    def _one_ext(self):
        return (1,) + (0,) * (self.n - 1)

    def _frobenius_images(self):
        # (X^k)^q for k < n; x -> x^q is F_q-linear on coefficient vectors
        n = self.n
        images = []
        for k in range(n):
            xk = tuple(1 if i == k else 0 for i in range(n))
            images.append(self._epow(xk, self.q))
        return images

    def _efrob(self, a):
        out = (0,) * self.n
        for c, img in zip(a, self._frob_images):
            if c:
                out = self._eadd(out, self._escale(c, img))
        return out

    # ------------------------------------------------------------ dispatch

    def size(self, level: Level) -> int:
        return (self.p, self.q, self.order)[level]

    def degree(self, level: Level) -> int:
        """Extension degree of ``level`` over the level below it."""
        return (1, self.m, self.n)[level]

    def zero(self, level: Level = Level.EXT) -> FieldElem:
        return FieldElem(self, level, (0,) * self.n if level == Level.EXT else 0)

    def one(self, level: Level = Level.EXT) -> FieldElem:
        return FieldElem(self, level, self._one_ext if level == Level.EXT else 1)

    def scalar(self, k: int, level: Level = Level.EXT) -> FieldElem:
        """The prime-field integer k embedded at ``level``."""
        c = k % self.p
        if level == Level.EXT:
            return FieldElem(self, level, (c,) + (0,) * (self.n - 1))
        return FieldElem(self, level, c)

    @property
    def gen(self) -> FieldElem:
        """The class of X in F_q[X]/(ext_modulus)."""
        return FieldElem(self, Level.EXT, tuple(1 if i == 1 else 0 for i in range(self.n)))

    @property
    def base_gen(self) -> FieldElem:
        """The class of x in F_p[x]/(base_modulus)."""
        if self.m == 1:
            return FieldElem(self, Level.BASE, (-self.base_modulus[0]) % self.p)
        return FieldElem(self, Level.BASE, self.p)

    def base(self, value: int | Sequence[int]) -> FieldElem:
        """A base element from its index or its coefficient vector over F_p."""
        if isinstance(value, int):
            if not 0 <= value < self.q:
                raise ValueError(f"base index {value} out of range")
            return FieldElem(self, Level.BASE, value)
        digits = list(value)
        if len(digits) > self.m:
            raise ValueError("too many base coefficients")
        return FieldElem(self, Level.BASE, self._encode(digits + [0] * (self.m - len(digits))))

    def ext(self, coeffs: Sequence) -> FieldElem:
        """An ext element from its coefficients over F_q.

        Each coefficient may be a base FieldElem, a base index (int) or a
        coefficient vector over F_p.
        """
        coeffs = list(coeffs)
        if len(coeffs) > self.n:
            raise ValueError("too many ext coefficients")
        codes = []
        for c in coeffs:
            if isinstance(c, FieldElem):
                codes.append(self.embed(c, Level.BASE).v)
            else:
                codes.append(self.base(c).v)
        return FieldElem(self, Level.EXT, tuple(codes + [0] * (self.n - len(codes))))

    def index(self, x: FieldElem) -> int:
        if x.level == Level.EXT:
            i = 0
            for c in reversed(x.v):
                i = i * self.q + c
            return i
        return x.v

    def from_index(self, level: Level, i: int) -> FieldElem:
        if level == Level.EXT:
            codes = []
            for _ in range(self.n):
                i, r = divmod(i, self.q)
                codes.append(r)
            return FieldElem(self, level, tuple(codes))
        return FieldElem(self, level, i)

    def elements(self, level: Level = Level.EXT) -> Iterator[FieldElem]:
        """All elements of ``level`` in enumeration order."""
        if level == Level.EXT:
            for t in itertools.product(range(self.q), repeat=self.n):
                yield FieldElem(self, level, t[::-1])
        else:
            for i in range(self.size(level)):
                yield FieldElem(self, level, i)

    def nonzero(self, level: Level = Level.EXT) -> Iterator[FieldElem]:
        it = self.elements(level)
        next(it)
        return it

    def embed(self, x: FieldElem, level: Level) -> FieldElem:
        """Embed x into a level at or above its own."""
        if x.level > level:
            raise LevelMismatch(f"cannot embed {x.level.name} element into {level.name}")
        v = x.v  # a prime scalar c has base code c
        if level == Level.EXT and x.level != Level.EXT:
            v = (v,) + (0,) * (self.n - 1)
        return FieldElem(self, level, v)

    def in_base(self, x: FieldElem) -> bool:
        return x.level != Level.EXT or not any(x.v[1:])

    def project(self, x: FieldElem, level: Level = Level.BASE) -> FieldElem:
        """Project an element lying in a subfield down to ``level``."""
        v = x.v
        lv = x.level
        if lv == level:
            return x
        if lv == Level.EXT:
            if any(v[1:]):
                raise InternalSubfieldViolation(f"{x} is not in F_{self.q}")
            v = v[0]
            lv = Level.BASE
        if level == Level.PRIME and lv == Level.BASE:
            if v >= self.p:
                raise InternalSubfieldViolation(f"{x} is not in F_{self.p}")
        return FieldElem(self, level, v)

    # ------------------------------------------------------------ Frobenius, trace, norm

    def frobenius_q(self, x: FieldElem, k: int = 1) -> FieldElem:
        """x**(q**k); identity on the base and prime levels."""
        if k < 0:
            raise ValueError("k must be non-negative")
        if x.level != Level.EXT:
            return x
        v = x.v
        for _ in range(k % self.n):
            v = self._efrob(v)
        return FieldElem(self, Level.EXT, v)

    def trace(self, x: FieldElem) -> FieldElem:
        """Relative trace Tr_q^{q^n}(x) as a base element."""
        self._require_ext(x)
        total = x.v
        v = x.v
        for _ in range(self.n - 1):
            v = self._efrob(v)
            total = self._eadd(total, v)
        return self.project(FieldElem(self, Level.EXT, total))

    def norm(self, x: FieldElem) -> FieldElem:
        """Relative norm N_q^{q^n}(x) as a base element."""
        self._require_ext(x)
        total = x.v
        v = x.v
        for _ in range(self.n - 1):
            v = self._efrob(v)
            total = self._emul(total, v)
        return self.project(FieldElem(self, Level.EXT, total))

    def _require_ext(self, x: FieldElem) -> None:
        if x.level != Level.EXT:
            raise LevelMismatch("expected an ext-level element")

    # ------------------------------------------------------------ multiplicative structure

    def mult_order(self, x: FieldElem) -> int:
        if not x:
            raise ZeroInput("zero has no multiplicative order")
        N = self.size(x.level) - 1
        order = N
        for prime, e in _nt.factorize(N).items():
            for _ in range(e):
                if (x ** (order // prime)).is_one():
                    order //= prime
                else:
                    break
        return order

    def generator(self, level: Level = Level.EXT) -> FieldElem:
        """Smallest element (enumeration order) generating the multiplicative group."""
        key = ("gen", level)
        if key not in self._cache:
            N = self.size(level) - 1
            for x in self.nonzero(level):
                if self.mult_order(x) == N:
                    self._cache[key] = x
                    break
        return self._cache[key]

    def discrete_log(self, x: FieldElem, base: FieldElem | None = None) -> int:
        """Baby-step giant-step logarithm of x to ``base`` (default: the fixed generator)."""
        if not x:
            raise LogOfZero("log of zero")
        level = x.level
        g = self.generator(level) if base is None else base
        if g.level != level:
            raise LevelMismatch("log base must share the level of its argument")
        N = self.mult_order(g)
        key = ("bsgs", level, g.v)
        if key not in self._cache:
            steps = isqrt(N) + 1
            table = {}
            cur = self.one(level)
            for j in range(steps):
                table.setdefault(cur.v, j)
                cur = cur * g
            self._cache[key] = (steps, table, g ** (-steps))
        steps, table, giant = self._cache[key]
        gamma = x
        for i in range(steps + 1):
            j = table.get(gamma.v)
            if j is not None:
                return (i * steps + j) % N
            gamma = gamma * giant
        raise ValueError(f"{x} is not a power of {g}")

    def generator_and_log(self, x: FieldElem | None = None, level: Level = Level.EXT):
        g = self.generator(level if x is None else x.level)
        return g, (None if x is None else self.discrete_log(x, g))

    def log_tables(self, level: Level = Level.EXT) -> tuple[list[int], list[int]]:
        """(antilog, log) as index lists for the fixed generator; log[0] is -1."""
        key = ("logtab", level)
        if key not in self._cache:
            g = self.generator(level)
            N = self.size(level) - 1
            antilog = []
            log = [-1] * (N + 1)
            cur = self.one(level)
            for t in range(N):
                i = self.index(cur)
                antilog.append(i)
                log[i] = t
                cur = cur * g
            self._cache[key] = (antilog, log)
        return self._cache[key]

    @property
    def mu_order(self) -> int:
        """(q^n - 1)/(q - 1), the size of PG(n-1, q) and of mu."""
        return (self.order - 1) // (self.q - 1)

    def is_mu(self, x: FieldElem) -> bool:
        return x.level == Level.EXT and bool(x) and (x ** self.mu_order).is_one()

    def mu_elements(self) -> list[FieldElem]:
        """The (q^n-1)/(q-1)-th roots of unity, in enumeration order."""
        key = "mu"
        if key not in self._cache:
            self._cache[key] = [x for x in self.nonzero() if (x ** self.mu_order).is_one()]
        return self._cache[key]

    def qm1_root(self, x: FieldElem) -> FieldElem:
        """Some y with y**(q-1) == x (the first in enumeration order)."""
        key = "qm1"
        if key not in self._cache:
            roots: dict = {}
            for y in self.nonzero():
                roots.setdefault((y ** (self.q - 1)).v, y)
            self._cache[key] = roots
        try:
            return self._cache[key][x.v]
        except KeyError:
            raise NotInMu(f"{x} is not a (q-1)-th power") from None

    def subprimitive_order(self, x: FieldElem) -> int:
        """Smallest e >= 1 with x**e in F_q^*."""
        if not x:
            raise ZeroInput("zero has no subprimitive order")
        if x.level != Level.EXT:
            return 1
        for e in _nt.divisors(self.order - 1):
            if self.in_base(x**e):
                return e
        raise AssertionError("unreachable")  # pragma: no cover

    # ------------------------------------------------------------ misc

    def format(self, x: FieldElem) -> str:
        if x.level == Level.PRIME:
            return str(x.v)
        if x.level == Level.BASE:
            return self._format_base(x.v)
        terms = []
        for k in range(self.n - 1, -1, -1):
            c = x.v[k]
            if not c:
                continue
            cs = self._format_base(c)
            if self.m > 1 and "+" in cs:
                cs = f"({cs})"
            if k == 0:
                terms.append(cs)
                continue
            mono = self.ext_label if k == 1 else f"{self.ext_label}^{k}"
            terms.append(mono if c == 1 else f"{cs}*{mono}")
        return " + ".join(terms) if terms else "0"

    def _format_base(self, code: int) -> str:
        if self.m == 1:
            return str(code)
        terms = []
        d = self._bdigits[code]
        for k in range(self.m - 1, -1, -1):
            c = d[k]
            if not c:
                continue
            if k == 0:
                terms.append(str(c))
                continue
            mono = self.base_label if k == 1 else f"{self.base_label}^{k}"
            terms.append(mono if c == 1 else f"{c}*{mono}")
        return "+".join(terms) if terms else "0"

    def _key(self):
        return (self.p, self.base_modulus, self.ext_modulus)

    def __eq__(self, other):
        return isinstance(other, FieldCtx) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return (
            f"FieldCtx(p={self.p}, q={self.q}, n={self.n}, "
            f"base={list(self.base_modulus)}, ext={list(self.ext_modulus)})"
        )


class FieldElem:
    """An element of one level of a FieldCtx tower.

    Arithmetic operators require both operands at the same level; a plain
    int operand is read as a prime-field scalar.
    """

    __slots__ = ("ctx", "level", "v")

    def __init__(self, ctx: FieldCtx, level: Level, v):
        self.ctx = ctx
        self.level = level
        self.v = v

    @property
    def coeffs(self) -> tuple:
        """Coefficient vector over the level below (ints for the base level)."""
        ctx = self.ctx
        if self.level == Level.EXT:
            return tuple(FieldElem(ctx, Level.BASE, c) for c in self.v)
        if self.level == Level.BASE:
            return ctx._bdigits[self.v]
        return (self.v,)

    def _coerce(self, other) -> FieldElem:
        if isinstance(other, FieldElem):
            if other.level != self.level:
                raise LevelMismatch(f"{self.level.name} vs {other.level.name}")
            if other.ctx is not self.ctx and other.ctx != self.ctx:
                raise LevelMismatch("elements of different fields")
            return other
        if isinstance(other, int):
            return self.ctx.scalar(other, self.level)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        ctx, lv = self.ctx, self.level
        if lv == Level.EXT:
            return FieldElem(ctx, lv, ctx._eadd(self.v, o.v))
        if lv == Level.BASE:
            return FieldElem(ctx, lv, ctx._badd[self.v][o.v])
        return FieldElem(ctx, lv, (self.v + o.v) % ctx.p)

    __radd__ = __add__

    def __neg__(self):
        ctx, lv = self.ctx, self.level
        if lv == Level.EXT:
            return FieldElem(ctx, lv, ctx._eneg(self.v))
        if lv == Level.BASE:
            return FieldElem(ctx, lv, ctx._bneg[self.v])
        return FieldElem(ctx, lv, (-self.v) % ctx.p)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        ctx, lv = self.ctx, self.level
        if lv == Level.EXT:
            return FieldElem(ctx, lv, ctx._emul(self.v, o.v))
        if lv == Level.BASE:
            return FieldElem(ctx, lv, ctx._bmul[self.v][o.v])
        return FieldElem(ctx, lv, (self.v * o.v) % ctx.p)

    __rmul__ = __mul__

    def inv(self) -> FieldElem:
        if not self:
            raise DivisionByZero("inverse of zero")
        ctx, lv = self.ctx, self.level
        if lv == Level.EXT:
            return FieldElem(ctx, lv, ctx._epow(self.v, ctx.order - 2))
        if lv == Level.BASE:
            return FieldElem(ctx, lv, ctx._binv[self.v])
        return FieldElem(ctx, lv, pow(self.v, -1, ctx.p))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inv()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inv()

    def __pow__(self, e: int):
        if e < 0:
            return self.inv() ** (-e)
        ctx, lv = self.ctx, self.level
        if lv == Level.EXT:
            return FieldElem(ctx, lv, ctx._epow(self.v, e))
        if e == 0:
            return ctx.one(lv)
        if lv == Level.BASE:
            mul = ctx._bmul
            result, base = 1, self.v
            while e:
                if e & 1:
                    result = mul[result][base]
                base = mul[base][base]
                e >>= 1
            return FieldElem(ctx, lv, result)
        return FieldElem(ctx, lv, pow(self.v, e, ctx.p))

    def __bool__(self):
        return any(self.v) if self.level == Level.EXT else self.v != 0

    def is_one(self) -> bool:
        if self.level == Level.EXT:
            return self.v[0] == 1 and not any(self.v[1:])
        return self.v == 1

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return (
                self.level == other.level
                and self.v == other.v
                and (self.ctx is other.ctx or self.ctx == other.ctx)
            )
        if isinstance(other, int):
            return self.v == self.ctx.scalar(other, self.level).v
        return NotImplemented

    def __hash__(self):
        return hash((int(self.level), self.v))

    def __repr__(self):
        return self.ctx.format(self)

    __str__ = __repr__


# --------------------------------------------------------------------------
# construction


_INTERNED: dict = {}


def make_field_tower(
    p: int,
    base: int | Sequence[int] = 1,
    ext: int | Sequence = 2,
    *,
    base_label: str = "z",
    ext_label: str = "w",
) -> FieldCtx:
    """Build F_p < F_q < F_{q^n}.

    ``base`` is either the base modulus (ascending coefficients over F_p) or
    an int m requesting the lexicographically smallest monic irreducible of
    degree m.  ``ext`` is either the ext modulus (coefficients given as base
    indices or coefficient vectors over F_p) or an int n for the smallest
    irreducible of degree n over F_q.
    """
    if not _nt.is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if isinstance(base, int):
        if base < 1:
            raise DegreeTooSmall("m must be >= 1")
        bm = _first_irreducible(
            p, base, lambda a, b: (a + b) % p, lambda a: (-a) % p, lambda a, b: (a * b) % p
        )
    else:
        bm = [int(c) for c in base]
    if isinstance(ext, int) and ext < 2:
        raise DegreeTooSmall("n must be >= 2")

    key = (p, tuple(bm), ext if isinstance(ext, int) else _freeze(ext), base_label, ext_label)
    if key in _INTERNED:
        return _INTERNED[key]

    tables = _BaseTables(p, bm)
    if isinstance(ext, int):
        em = _first_irreducible(tables.q, ext, tables.add, tables.neg, tables.mul)
    else:
        em = [_base_code(tables, c) for c in ext]

    ctx = FieldCtx(p, bm, em, base_label=base_label, ext_label=ext_label)
    _INTERNED[key] = ctx
    return ctx


def _freeze(obj):
    if isinstance(obj, (list, tuple)):
        return tuple(_freeze(o) for o in obj)
    return obj


class _BaseTables:
    """Stand-alone base-field tables used before a full FieldCtx exists."""

    def __init__(self, p: int, bm: Sequence[int]):
        half = FieldCtx.__new__(FieldCtx)
        half.p = p
        half.m = len(bm) - 1
        half.q = p**half.m
        half.base_modulus = tuple(int(c) % p for c in bm)
        if half.m < 1:
            raise DegreeTooSmall("base modulus must have degree >= 1")
        padd = lambda a, b: (a + b) % p  # noqa: E731
        if not _is_irreducible(list(half.base_modulus), p, padd, lambda a: (-a) % p,
                               lambda a, b: (a * b) % p):
            raise ReducibleModulus(f"{list(bm)} is reducible over F_{p}")
        half._build_base_tables()
        self.p, self.m, self.q = p, half.m, half.q
        self.add = half._badd_f
        self.neg = half._bneg.__getitem__
        self.mul = half._bmul_f
        self.encode = half._encode


def _base_code(tables: _BaseTables, c) -> int:
    if isinstance(c, int):
        if not 0 <= c < tables.q:
            raise ValueError(f"base index {c} out of range")
        return c
    digits = list(c)
    if len(digits) > tables.m:
        raise ValueError("too many base coefficients")
    return tables.encode(digits + [0] * (tables.m - len(digits)))
