"""The Conway table against a from-scratch search over F_p[x]."""

import itertools

import pytest

from gmtperm.conway import CONWAY, conway_tower, is_primitive_poly
from gmtperm.field import Level


def _mulmod(a, b, f, p):
    d = len(f) - 1
    prod = [0] * (2 * d - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    for k in range(len(prod) - 1, d - 1, -1):
        c = prod[k]
        if c:
            for i in range(d + 1):
                prod[k - d + i] = (prod[k - d + i] - c * f[i]) % p
    return prod[:d]


def _x_pow(e, f, p):
    d = len(f) - 1
    out = [1] + [0] * (d - 1)
    base = [0, 1] + [0] * (d - 2) if d > 1 else [(-f[0]) % p]
    while e:
        if e & 1:
            out = _mulmod(out, base, f, p)
        base = _mulmod(base, base, f, p)
        e >>= 1
    return out


def _prime_factors(n):
    out, k = set(), 2
    while k * k <= n:
        while n % k == 0:
            out.add(k)
            n //= k
        k += 1
    if n > 1:
        out.add(n)
    return out


def _primitive(f, p):
    d = len(f) - 1
    N = p**d - 1
    one = [1] + [0] * (d - 1)
    return _x_pow(N, f, p) == one and all(_x_pow(N // r, f, p) != one for r in _prime_factors(N))


def _evaluate_at_power(g, e, f, p):
    """g(x^e) mod f."""
    d = len(f) - 1
    xe = _x_pow(e, f, p)
    acc, cur = [0] * d, [1] + [0] * (d - 1)
    for c in g:
        acc = [(a + c * b) % p for a, b in zip(acc, cur)]
        cur = _mulmod(cur, xe, f, p)
    return acc


def _compatible(f, p, table):
    d = len(f) - 1
    for e in range(1, d):
        if d % e == 0:
            g = table[(p, e)]
            if any(_evaluate_at_power(g, (p**d - 1) // (p**e - 1), f, p)):
                return False
    return True


def _conway_key(f, p):
    d = len(f) - 1
    return tuple(((-1) ** (d - i) * f[i]) % p for i in range(d - 1, -1, -1))


def _search(p, d, table):
    candidates = sorted((list(c) + [1] for c in itertools.product(range(p), repeat=d)),
                        key=lambda f: _conway_key(f, p))
    return next(f for f in candidates if _primitive(f, p) and _compatible(f, p, table))


@pytest.mark.parametrize("key", sorted(CONWAY))
def test_table_entry_is_the_least_compatible_primitive_polynomial(key):
    p, d = key
    f = CONWAY[key]
    assert len(f) == d + 1 and f[-1] == 1
    assert _primitive(f, p)
    assert is_primitive_poly(p, f)
    assert _compatible(f, p, CONWAY)
    if p**d <= 5000:
        assert _search(p, d, CONWAY) == f


@pytest.mark.parametrize("pmn", [(2, 3, 3), (3, 2, 3), (2, 2, 3), (3, 1, 4), (5, 2, 2)])
def test_conway_tower_generator_is_primitive_and_base_matches(pmn):
    p, m, n = pmn
    ctx = conway_tower(p, m, n)
    assert ctx.mult_order(ctx.gen) == ctx.order - 1
    # the base generator is the norm-style power of the ext generator
    zeta = ctx.gen ** ((ctx.order - 1) // (ctx.q - 1))
    if m > 1:
        assert zeta == ctx.embed(ctx.base_gen, Level.EXT)
