"""A small table of Conway polynomials and towers built from them.

Coefficients are ascending.  The table only covers the degrees that desk-scale
towers need; the tests check primitivity and subfield compatibility of every
entry.
"""

from __future__ import annotations

import itertools

from .field import FieldCtx, make_field_tower

CONWAY = {
    (2, 1): [1, 1],
    (2, 2): [1, 1, 1],
    (2, 3): [1, 1, 0, 1],
    (2, 4): [1, 1, 0, 0, 1],
    (2, 5): [1, 0, 1, 0, 0, 1],
    (2, 6): [1, 1, 0, 1, 1, 0, 1],
    (2, 7): [1, 1, 0, 0, 0, 0, 0, 1],
    (2, 8): [1, 0, 1, 1, 1, 0, 0, 0, 1],
    (2, 9): [1, 0, 0, 0, 1, 0, 0, 0, 0, 1],
    (2, 10): [1, 1, 1, 1, 0, 1, 1, 0, 0, 0, 1],
    (2, 12): [1, 1, 0, 1, 0, 1, 1, 1, 0, 0, 0, 0, 1],
    (3, 1): [1, 1],
    (3, 2): [2, 2, 1],
    (3, 3): [1, 2, 0, 1],
    (3, 4): [2, 0, 0, 2, 1],
    (3, 5): [1, 2, 0, 0, 0, 1],
    (3, 6): [2, 2, 1, 0, 2, 0, 1],
    (5, 1): [3, 1],
    (5, 2): [2, 4, 1],
    (5, 3): [3, 3, 0, 1],
    (5, 4): [2, 4, 4, 0, 1],
    (7, 1): [4, 1],
    (7, 2): [3, 6, 1],
    (7, 3): [4, 0, 6, 1],
}


def conway_polynomial(p: int, d: int) -> list[int]:
    try:
        return list(CONWAY[(p, d)])
    except KeyError:
        raise KeyError(f"no Conway polynomial for p={p}, degree {d} in the table") from None


def conway_tower(p: int, m: int, n: int, **labels) -> FieldCtx:
    """F_p < F_{p^m} < F_{p^mn} with both levels cut out by Conway polynomials.

    The ext generator X is a root of the degree-mn Conway polynomial; the
    base generator is identified with X^((p^mn - 1)/(p^m - 1)), whose
    minimal polynomial is the degree-m Conway polynomial when the table
    entries are compatible.  The ext modulus is the minimal polynomial of X
    over that copy of F_{p^m}.
    """
    big_mod = conway_polynomial(p, m * n)
    if m == 1:
        return make_field_tower(p, [0, 1], big_mod, **labels)
    flat = make_field_tower(p, [0, 1], big_mod)
    X = flat.gen
    zeta = X ** ((flat.order - 1) // (p**m - 1))
    small_mod = conway_polynomial(p, m)
    # coordinates of every element of F_p(zeta) in the basis 1, zeta, ..., zeta^(m-1)
    powers = [zeta**i for i in range(m)]
    coords = {}
    for digits in itertools.product(range(p), repeat=m):
        acc = flat.zero()
        for c, z in zip(digits, powers):
            acc = acc + c * z
        coords[acc] = list(digits)
    check = flat.zero()
    for c, z in zip(small_mod, [zeta**i for i in range(m + 1)]):
        check = check + c * z
    if check:
        raise ValueError("Conway table entries are not compatible")
    # minimal polynomial of X over F_p(zeta): prod_k (T - X^(q^k))
    q = p**m
    poly = [flat.one()]
    for k in range(n):
        root = X ** (q**k)
        shifted = [flat.zero()] + poly
        for i in range(len(poly)):
            shifted[i] = shifted[i] - root * poly[i]
        poly = shifted
    ext_mod = [coords[c] for c in poly]
    return make_field_tower(p, small_mod, ext_mod, **labels)


def is_primitive_poly(p: int, coeffs) -> bool:
    """Whether the root of a monic irreducible polynomial over F_p generates the full group."""
    d = len(coeffs) - 1
    if d == 1:
        root = (-coeffs[0]) % p
        if root == 0:
            return False
        order = 1
        x = root
        while x != 1:
            x = x * root % p
            order += 1
        return order == p - 1
    ctx = make_field_tower(p, [0, 1], coeffs)
    return ctx.mult_order(ctx.gen) == ctx.order - 1

