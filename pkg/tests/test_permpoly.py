import random
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gmtperm.acceptance import (
    F512_POWERS,
    F512_SUPPORTS,
    F729_POWERS,
    F512_THREE_SET_POWERS,
    f512_example,
    f729_example,
    f512_three_set_example,
)
from gmtperm.conway import conway_tower
from gmtperm.errors import BadParams, BadR, NonzeroConstantTerm, NotBijection, WrongN, ZeroPoly
from gmtperm.field import Level, make_field_tower
from gmtperm.gmt import GmtContext
from gmtperm.linalg import is_basis
from gmtperm.permpoly import (
    Thm37Params,
    agw_criterion,
    build_from_bijection,
    construct_prop312,
    construct_thm36,
    construct_thm37,
    construct_thm310,
    mu_identity_failures,
    index_decompose,
    interpolate_branch,
    interpolate_table,
    interpolate_univariate,
    newton_interpolate,
    verify_agw,
    verify_homogeneous,
    verify_permutation,
)
from gmtperm.poly import UniPoly
from gmtperm.projective import (
    PGMap,
    coordinate_permutation_map,
    enumerate_pg,
    identity_map,
    linear_map,
    three_set_swap_map,
)


def _basis(ctx, rng):
    while True:
        W = [ctx.from_index(Level.EXT, rng.randrange(1, ctx.order)) for _ in range(ctx.n)]
        if is_basis(W):
            return W


def _perm(q, rng):
    t = list(range(q))
    rng.shuffle(t)
    return t


# ---------------------------------------------------------------- interpolation


def test_interpolation_against_newton_oracle():
    ctx = make_field_tower(3, 1, 3)
    rng = random.Random(1)
    values = [ctx.from_index(Level.EXT, rng.randrange(ctx.order)) for _ in range(ctx.order)]
    fast = interpolate_table(ctx, values)
    slow = newton_interpolate(list(zip(ctx.elements(), values)))
    assert fast == slow
    assert [fast(x) for x in ctx.elements()] == values


F64 = make_field_tower(2, 2, 3)
F81 = make_field_tower(3, 2, 2)


@pytest.mark.parametrize("ctx", [F64, F81], ids=["F64", "F81"])
@settings(max_examples=10, deadline=None)
@given(data=st.data())
def test_interpolating_a_polynomial_recovers_it(ctx, data):
    coeffs = data.draw(st.lists(st.integers(0, ctx.order - 1), min_size=1, max_size=ctx.order))
    P = UniPoly(ctx, Level.EXT, [ctx.from_index(Level.EXT, c) for c in coeffs])
    assert interpolate_univariate(P, ctx) == P


def test_index_decompose_examples(f9):
    i = f9.gen
    X = UniPoly.x(f9)
    # x^3 + i x^7 = x^3 (1 + i x^4): r = 3, s = 4, ell = 2
    P = X**3 + UniPoly.monomial(f9, 7, i)
    dec = index_decompose(P)
    assert (dec.r, dec.s, dec.ell) == (3, 4, 2)
    assert dec.h == UniPoly.from_terms(f9, Level.EXT, {0: f9.one(), 1: i})
    mono = index_decompose(UniPoly.monomial(f9, 5))
    assert (mono.r, mono.s, mono.ell) == (5, 8, 1)
    with pytest.raises(ZeroPoly):
        index_decompose(UniPoly(f9, Level.EXT, []))
    with pytest.raises(NonzeroConstantTerm):
        index_decompose(X + UniPoly.monomial(f9, 0))


# ---------------------------------------------------------------- verifiers


def test_square_map_is_not_a_permutation_of_f5():
    ctx = make_field_tower(5, 1, 2)
    sq = verify_permutation(lambda x: x * x, ctx.elements(Level.BASE))
    assert not sq
    first, second, image = sq.witness
    assert image == ctx.base(4) and {first.v, second.v} == {2, 3}
    assert verify_permutation(lambda x: x**3, ctx.elements(Level.BASE))


def test_agw_criterion_matches_exhaustive_check_on_monomials(f81):
    q = f81.q
    for r in range(1, 6):
        for s in range(0, 6):
            h = UniPoly.monomial(f81, s)
            predicted = agw_criterion(f81, r, h)
            actual = verify_permutation(lambda x: x**r * h(x ** (q - 1)), f81).ok
            # oracle: x^(r + s(q-1)) permutes F_81 iff gcd(r + s(q-1), 80) = 1
            assert actual == (gcd(r + s * (q - 1), f81.order - 1) == 1)
            assert predicted == actual


# ---------------------------------------------------------------- generic builder


@pytest.mark.parametrize("spec", [(2, 1, 3), (3, 1, 2), (2, 2, 2), (3, 1, 3)])
def test_generic_builder_with_several_pg_maps(spec):
    ctx = make_field_tower(*spec)
    rng = random.Random(str(spec))
    G = GmtContext(_basis(ctx, rng))
    Y = _basis(ctx, rng)
    maps = [identity_map(ctx), coordinate_permutation_map(ctx, list(range(ctx.n))[::-1])]
    if ctx.n == 3:
        maps.append(three_set_swap_map(ctx))
    for g in maps:
        f = build_from_bijection(G, Y, g, 1)
        rep = verify_agw(f)
        assert rep.passed, rep
        assert verify_homogeneous(f)


def test_generic_builder_rejects_non_bijection(f9):
    G = GmtContext([f9.one(), f9.gen])
    with pytest.raises(NotBijection):
        build_from_bijection(G, G.W, linear_map(f9, [[1, 1], [1, 1]]), 1)
    with pytest.raises(BadR):
        build_from_bijection(G, G.W, identity_map(f9), 2)


def test_identity_map_with_w_equal_y():
    # on class j the branch is t_j^(r-1) * x, so r = 1 gives the identity
    ctx = make_field_tower(2, 2, 3)
    rng = random.Random(5)
    W = _basis(ctx, rng)
    G = GmtContext(W)
    assert all(build_from_bijection(G, W, identity_map(ctx), 1)(x) == x for x in ctx.elements())
    f = build_from_bijection(G, W, identity_map(ctx), 2)
    for x in ctx.nonzero():
        t = [c for c in G.trace_coords(x) if c]
        assert f(x) == ctx.embed(ctx.base(t[-1]), Level.EXT) * x


# ---------------------------------------------------------------- sensitivity controls


def test_corrupting_h_at_one_point_breaks_the_agw_identity():
    ctx = make_field_tower(3, 1, 3)
    rng = random.Random(3)
    G = GmtContext(_basis(ctx, rng))
    f = construct_thm36(G, _basis(ctx, rng), [_perm(3, rng), _perm(3, rng)], 1)
    assert verify_agw(f).passed
    x0 = ctx.mu_elements()[4]
    f.h_table()[x0.v] = f.h_table()[x0.v] * ctx.gen
    rep = verify_agw(f)
    assert mu_identity_failures(f) == [x0]
    assert not rep.passed


def test_offsetting_a_branch_breaks_bijectivity():
    ctx = make_field_tower(2, 1, 3)
    rng = random.Random(4)
    G = GmtContext(_basis(ctx, rng))
    f = construct_thm36(G, _basis(ctx, rng), [_perm(2, rng), _perm(2, rng)], 1)
    assert verify_permutation(f, ctx)
    original = f.forms["j=1"]
    f.forms["j=1"] = lambda x, t: original(x, t) + ctx.one()
    assert not verify_permutation(f, ctx)


# ---------------------------------------------------------------- families


@pytest.mark.parametrize("spec", [(2, 1, 2), (3, 1, 2), (2, 1, 3), (3, 1, 3), (5, 1, 2), (2, 2, 2), (7, 1, 2)])
def test_coordinatewise_family(spec):
    ctx = make_field_tower(*spec)
    rng = random.Random(str(spec) + "36")
    for _ in range(3):
        G = GmtContext(_basis(ctx, rng))
        H = [_perm(ctx.q, rng) for _ in range(ctx.n - 1)]
        r = next(r for r in range(ctx.q - 1, 10 * ctx.q) if gcd(r, ctx.q - 1) == 1)
        f = construct_thm36(G, _basis(ctx, rng), H, r)
        assert verify_agw(f).passed
        assert verify_homogeneous(f)


def test_coordinatewise_family_needs_r_above_degree():
    ctx = make_field_tower(5, 1, 2)
    G = GmtContext([ctx.one(), ctx.gen])
    cube = [c**3 % 5 for c in range(5)]  # x^3 permutes F_5 and has degree 3
    with pytest.raises(BadR):
        construct_thm36(G, G.W, [cube], 1)
    assert verify_agw(construct_thm36(G, G.W, [cube], 3)).passed


def test_degree_two_family_worked_instance(f9):
    i = f9.gen
    one = f9.one()
    P = Thm37Params(H=[0, 1, 2], r=1, a=one, b=one, u=i, v=one)
    f = construct_thm37(f9, P)
    assert f.params["d"] == 1
    assert verify_agw(f).passed
    # the x^q = v x class is F_3^* when v = 1
    assert {x.v for x in f.members("x^q=vx")} == {x.v for x in f9.nonzero() if f9.in_base(x)}


@pytest.mark.parametrize("q", [3, 4, 5, 7, 8, 9])
def test_degree_two_family_random(q):
    from gmtperm._nt import prime_power

    p, m = prime_power(q)
    ctx = make_field_tower(p, m, 2)
    rng = random.Random(q)
    mu = ctx.mu_elements()
    built = 0
    while built < 3:
        H = _perm(q, rng)
        u, v = rng.sample(mu, 2)
        a, b = (ctx.from_index(Level.EXT, rng.randrange(1, ctx.order)) for _ in range(2))
        r = rng.choice([k for k in range(q, 3 * q) if gcd(k, q - 1) == 1])
        try:
            f = construct_thm37(ctx, Thm37Params(H=H, r=r, a=a, b=b, u=u, v=v))
        except BadParams:
            continue
        assert verify_agw(f).passed
        built += 1


def test_degree_two_family_rejects_bad_params(f9):
    i, one = f9.gen, f9.one()
    with pytest.raises(BadParams):
        construct_thm37(f9, Thm37Params(H=[0, 1, 2], r=1, a=one, b=one, u=one, v=one))
    with pytest.raises(BadParams):
        construct_thm37(f9, Thm37Params(H=[0, 0, 2], r=1, a=one, b=one, u=i, v=one))
    with pytest.raises(BadParams):
        construct_thm37(make_field_tower(3, 1, 3), Thm37Params(H=[0, 1, 2], r=1, a=one, b=one, u=i, v=one))


@pytest.mark.parametrize("spec", [(3, 1, 2), (5, 1, 2), (3, 1, 3), (7, 1, 2), (3, 2, 2)])
def test_parity_twist_family(spec):
    ctx = make_field_tower(*spec)
    rng = random.Random(str(spec) + "310")
    q = ctx.q
    delta = ctx.generator(Level.BASE)
    for _ in range(3):
        d = rng.choice([d for d in range(1, q) if gcd(d, q - 1) == 1])
        r = next(r for r in range(d, 4 * q) if gcd(r, q - 1) == 1)
        alpha = delta ** (2 * rng.randrange((q - 1) // 2))
        f = construct_thm310(GmtContext(_basis(ctx, rng)), _basis(ctx, rng), delta, alpha, r, d)
        assert verify_agw(f).passed


def test_parity_twist_family_q3_worked_instance(f9):
    # q = 3: delta = 2, alpha = 1, d = 1 twists (x_0 : 1) for x_0 in {0, 1} to itself
    G = GmtContext([f9.one(), f9.gen])
    f = construct_thm310(G, G.W, 2, 1, 1, 1)
    assert all(f(x) == x for x in f9.elements())
    g = construct_thm310(G, G.W, 2, 1, 1, 1)
    assert verify_agw(g).passed
    with pytest.raises(BadParams):
        construct_thm310(GmtContext([make_field_tower(2, 2, 2).one(), make_field_tower(2, 2, 2).gen]),
                         [make_field_tower(2, 2, 2).one(), make_field_tower(2, 2, 2).gen], 1, 1, 1, 1)


@pytest.mark.parametrize("spec", [(2, 1, 3), (3, 1, 3), (2, 2, 3), (5, 1, 3)])
def test_three_set_family(spec):
    ctx = make_field_tower(*spec)
    rng = random.Random(str(spec) + "312")
    G = GmtContext(_basis(ctx, rng))
    f = construct_prop312(G, _basis(ctx, rng), 1)
    assert verify_agw(f).passed
    assert [b["size"] > 0 for b in f.describe()["branches"]] == [True] * 5


@pytest.mark.parametrize("spec", [(2, 1, 3), (3, 1, 3)])
def test_three_set_family_literal_reading_is_not_a_permutation(spec):
    ctx = make_field_tower(*spec)
    rng = random.Random(str(spec) + "literal")
    G = GmtContext(_basis(ctx, rng))
    f = construct_prop312(G, _basis(ctx, rng), 1, literal=True)
    assert not verify_permutation(f, ctx)
    with pytest.raises(WrongN):
        construct_prop312(GmtContext([make_field_tower(3, 1, 2).one(), make_field_tower(3, 1, 2).gen]),
                          [make_field_tower(3, 1, 2).one(), make_field_tower(3, 1, 2).gen], 1)


# ---------------------------------------------------------------- worked examples over F_512 and F_729


@pytest.fixture(scope="module")
def f512_perm():
    return f512_example()


def test_f512_example_is_permutation_with_reference_supports(f512_perm):
    assert verify_permutation(f512_perm, f512_perm.ctx)
    for label, support in F512_SUPPORTS.items():
        assert interpolate_branch(f512_perm, label).support() == support
    dec = index_decompose(interpolate_univariate(f512_perm, f512_perm.ctx))
    assert (dec.r, dec.ell) == (2, 73)


def _logs(f, label, gen):
    scale = f.gmt.det**f.r
    return {e: f.ctx.discrete_log(scale * c, gen) for e, c in interpolate_branch(f, label).terms()}


def test_f512_example_reference_powers_under_conway_moduli():
    ctx = conway_tower(2, 3, 3)
    f = f512_example(ctx, ctx.gen)
    # the reference coefficients carry an extra factor det(M_W)^r relative to ours
    assert ctx.discrete_log(f.gmt.det, ctx.gen) == 365
    for label, want in F512_POWERS.items():
        assert _logs(f, label, ctx.gen) == want


def test_f729_example_reference_powers_under_conway_moduli():
    ctx = conway_tower(3, 2, 3)
    f = f729_example(ctx, ctx.gen)
    assert verify_permutation(f, ctx)
    assert ctx.discrete_log(f.gmt.det, ctx.gen) == 273
    for label, want in F729_POWERS.items():
        assert _logs(f, label, ctx.gen) == want


def test_f512_three_set_example_reference_powers_under_conway_moduli():
    ctx = conway_tower(2, 3, 3)
    f = f512_three_set_example(ctx, ctx.gen)
    assert verify_permutation(f, ctx)
    for label, want in F512_THREE_SET_POWERS.items():
        assert _logs(f, label, ctx.gen) == want
    # the literal reading of the x = x_0 w_0 branch is not a permutation
    lit = construct_prop312(f.gmt, f.Y, 1, literal=True)
    assert not verify_permutation(lit, ctx)


def test_examples_under_auto_moduli_are_permutations():
    for f in (f729_example(), f512_three_set_example()):
        assert verify_agw(f).passed


def test_pg_map_table_round_trip(f9):
    g = PGMap.from_point_table(f9, {P: P.coords for P in enumerate_pg(f9)})
    G = GmtContext([f9.one(), f9.gen])
    assert verify_agw(build_from_bijection(G, G.W, g, 1)).passed
