"""Slow, table-free reference arithmetic used only by the tests.

Elements of F_q = F_p[z]/(base) are lists of m ints; elements of
F_{q^n} = F_q[X]/(ext) are lists of n such lists.  Everything is schoolbook
polynomial multiplication followed by long division.
"""

from __future__ import annotations

import itertools


class NaiveTower:
    def __init__(self, p, base, ext):
        self.p = p
        self.base = [c % p for c in base]
        self.m = len(base) - 1
        self.ext = [self.bvec(c) for c in ext]
        self.n = len(ext) - 1
        self.q = p**self.m

    # -- base level ------------------------------------------------------
    def bvec(self, c):
        if isinstance(c, int):  # base index, digits base p
            out = []
            for _ in range(self.m):
                c, r = divmod(c, self.p)
                out.append(r)
            return out
        return list(c) + [0] * (self.m - len(c))

    def badd(self, a, b):
        return [(x + y) % self.p for x, y in zip(a, b)]

    def bneg(self, a):
        return [(-x) % self.p for x in a]

    def bmul(self, a, b):
        p, m = self.p, self.m
        prod = [0] * (2 * m - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
        for k in range(len(prod) - 1, m - 1, -1):
            c = prod[k]
            if c:
                for i in range(m + 1):
                    prod[k - m + i] = (prod[k - m + i] - c * self.base[i]) % p
        return prod[:m]

    def bzero(self):
        return [0] * self.m

    def bone(self):
        return [1] + [0] * (self.m - 1)

    # -- ext level -------------------------------------------------------
    def add(self, a, b):
        return [self.badd(x, y) for x, y in zip(a, b)]

    def sub(self, a, b):
        return [self.badd(x, self.bneg(y)) for x, y in zip(a, b)]

    def mul(self, a, b):
        n = self.n
        prod = [self.bzero() for _ in range(2 * n - 1)]
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                prod[i + j] = self.badd(prod[i + j], self.bmul(x, y))
        for k in range(len(prod) - 1, n - 1, -1):
            c = prod[k]
            if any(c):
                for i in range(n + 1):
                    prod[k - n + i] = self.badd(prod[k - n + i], self.bneg(self.bmul(c, self.ext[i])))
        return prod[:n]

    def one(self):
        return [self.bone()] + [self.bzero() for _ in range(self.n - 1)]

    def zero(self):
        return [self.bzero() for _ in range(self.n)]

    def pow(self, a, e):
        out = self.one()
        for _ in range(e):
            out = self.mul(out, a)
        return out

    def fastpow(self, a, e):
        out, base = self.one(), a
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    def trace(self, a):
        acc = self.zero()
        cur = a
        for _ in range(self.n):
            acc = self.add(acc, cur)
            cur = self.fastpow(cur, self.q)
        return acc

    def elements(self):
        for digits in itertools.product(range(self.p), repeat=self.m * self.n):
            flat = list(digits[::-1])
            yield [flat[k * self.m:(k + 1) * self.m] for k in range(self.n)]


def from_elem(x):
    """FieldElem at ext level -> nested coefficient lists."""
    ctx = x.ctx
    return [list(ctx._bdigits[c]) for c in x.v]


def to_elem(ctx, a):
    return ctx.ext([list(c) for c in a])


def naive_for(ctx) -> NaiveTower:
    return NaiveTower(ctx.p, list(ctx.base_modulus), [list(ctx._bdigits[c]) for c in ctx.ext_modulus])


def poly_has_root_prime(coeffs, p):
    return any(sum(c * x**i for i, c in enumerate(coeffs)) % p == 0 for x in range(p))


def leibniz(rows, mul, add, neg, one, zero):
    """Determinant by the permutation expansion, for plain callables."""
    n = len(rows)
    total = zero
    for perm in itertools.permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        term = one
        for i in range(n):
            term = mul(term, rows[i][perm[i]])
        total = add(total, term if sign == 1 else neg(term))
    return total
