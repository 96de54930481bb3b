from fractions import Fraction
from math import gcd

import pytest

from gmtperm.field import Level, make_field_tower
from gmtperm.hirschfeld import (
    all_points_have_distinct_rows,
    companion_matrix,
    count_psi_tables,
    counts,
    distinct_at_unit_point,
    gmt_count,
    hirschfeld_count,
    hirschfeld_map,
    is_subprimitive,
    list_subprimitive,
    minimal_polynomial,
    ordered_bases,
    ratio_bound,
    scaling_never_closes,
    subprimitive_root,
    subprimitive_roots,
)
from gmtperm.linalg import is_basis
from gmtperm.projective import enumerate_pg


def _euler_phi(n):
    return sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


def test_counts_small_values():
    assert gmt_count(2, 3) == 24
    assert gmt_count(3, 2) == 168
    assert hirschfeld_count(2, 3) == 4
    assert hirschfeld_count(3, 2) == 6
    assert ratio_bound(2, 3) == 3
    assert ratio_bound(3, 2) == 4 * (8 - 2)


@pytest.mark.parametrize("n,q", [(2, 2), (2, 3), (3, 2), (2, 4), (2, 5), (3, 3), (4, 2), (2, 7), (2, 9), (3, 4)])
def test_count_formulas_against_direct_counting(n, q):
    # oracle: ordered bases are n-tuples of independent vectors; psi is constant on F_q^* scalings
    ordered = 1
    for i in range(n):
        ordered *= q**n - q**i
    assert gmt_count(n, q) * (q - 1) == ordered
    mu = (q**n - 1) // (q - 1)
    assert hirschfeld_count(n, q) == (q - 1) * _euler_phi(mu)
    rep_ratio = Fraction(gmt_count(n, q), hirschfeld_count(n, q))
    assert rep_ratio > ratio_bound(n, q)


@pytest.mark.parametrize("spec", [(3, 1, 2), (2, 1, 3), (2, 1, 2), (2, 2, 2)])
def test_psi_table_count_by_enumeration(spec):
    ctx = make_field_tower(*spec)
    bases = list(ordered_bases(ctx))
    assert all(is_basis(list(W)) for W in bases[::11])
    assert len(bases) == gmt_count(ctx.n, ctx.q) * (ctx.q - 1)
    assert count_psi_tables(ctx) == gmt_count(ctx.n, ctx.q)


@pytest.mark.parametrize("spec", [(3, 1, 2), (2, 1, 3), (2, 2, 2), (3, 1, 3), (5, 1, 2), (2, 1, 4)])
def test_subprimitive_roots_by_definition(spec):
    ctx = make_field_tower(*spec)
    q, mu = ctx.q, ctx.mu_order
    # oracle: least e with x^e in F_q, scanned directly
    expected = set()
    for x in ctx.nonzero():
        e = next(e for e in range(1, ctx.order) if ctx.in_base(x**e))
        if e == mu:
            expected.add(x.v)
    assert {a.v for a in subprimitive_roots(ctx)} == expected
    assert len(expected) == hirschfeld_count(ctx.n, q)
    assert all(is_subprimitive(a) for a in subprimitive_roots(ctx))


def test_every_primitive_element_of_f9_is_subprimitive(f9):
    prim = [x for x in f9.nonzero() if f9.mult_order(x) == 8]
    assert {x.v for x in prim} <= {a.v for a in subprimitive_roots(f9)}
    assert len(subprimitive_roots(f9)) == 4


def test_subprimitive_polynomials_f9(f9):
    groups = list_subprimitive(f9)
    assert len(groups) == 2
    for P, roots in groups:
        assert P.degree() == 2
        for a in roots:
            value = f9.zero()
            for e, c in P.terms():
                value = value + f9.embed(c, Level.EXT) * a**e
            assert not value


def test_companion_matrix_shape(f9):
    a = subprimitive_roots(f9)[0]
    f = minimal_polynomial(a)
    T = companion_matrix(f9, f)
    assert T[0] == (0, 1)
    assert T[1] == (f9._bneg[f[0]], f9._bneg[f[1]])


@pytest.mark.parametrize("spec", [(3, 1, 2), (2, 1, 3), (2, 2, 2), (3, 1, 3), (5, 1, 2), (2, 1, 4), (2, 1, 5)])
def test_hirschfeld_maps_are_bijections_onto_powers(spec):
    ctx = make_field_tower(*spec)
    pts = set(enumerate_pg(ctx))
    for a in subprimitive_roots(ctx):
        s = subprimitive_root(a)
        assert all_points_have_distinct_rows(s)
        table, rep = hirschfeld_map(s)
        assert rep.ok, rep
        assert set(table) == pts
        # independent check of the row identity sum_k y_k alpha^k = alpha^i
        for i, row in enumerate(s.rows[:20]):
            acc = ctx.zero()
            for k, c in enumerate(row):
                acc = acc + ctx.embed(ctx.base(c), Level.EXT) * a**k
            assert acc == a**i
        assert rep.image_is_mu == (a**ctx.mu_order).is_one()


@pytest.mark.parametrize("spec", [(3, 1, 2), (2, 1, 3), (2, 2, 2)])
def test_distinct_and_non_closing(spec):
    ctx = make_field_tower(*spec)
    assert distinct_at_unit_point(ctx)
    assert scaling_never_closes(ctx)


def test_counts_report(f9):
    rep = counts(f9)
    assert (rep.M, rep.H, rep.M_enumerated, rep.H_enumerated) == (24, 4, 24, 4)
    assert rep.ratio == Fraction(6) and rep.bound == 3
    assert rep.ok
    big = counts(make_field_tower(3, 2, 3), enumerate_limit=0)
    assert big.M_enumerated is None and big.inequality
