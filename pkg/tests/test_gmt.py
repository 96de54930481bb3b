import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gmtperm.errors import IndexOutOfRange, NotABasis, NotInMu, ZeroInput
from gmtperm.field import Level, make_field_tower
from gmtperm.gmt import GmtContext, normal_exponents
from gmtperm.linalg import is_basis
from gmtperm.projective import ProjPoint, enumerate_pg
from gmtperm.serialize import normal_basis


def test_psi_values_f9(f9):
    i = f9.gen
    G = GmtContext([f9.one(), i])
    # (x_0 + x_1 i)^2 worked out by hand over F_3
    assert G.psi(ProjPoint((1, 0))) == f9.one()
    assert G.psi(ProjPoint((0, 1))) == f9.scalar(2)
    assert G.psi(ProjPoint((1, 1))) == f9.scalar(2) * i
    assert G.psi(ProjPoint((2, 1))) == i


def test_t_polynomials_f9(f9):
    i = f9.gen
    G = GmtContext([f9.one(), i])
    assert G.det == i
    T0 = G.t_poly(0)
    assert T0.terms() == [(0, f9.scalar(2) * i), (1, f9.scalar(2) * i)]
    T1 = G.t_poly(1)
    # c_1 = -1, sign (-1)^(k(n-1)) flips the k = 1 term
    assert T1.terms() == [(0, f9.scalar(-1)), (1, f9.one())]
    for x in f9.mu_elements():
        assert T0(x) == G.t_eval(0, x)


def test_errors(f9):
    i = f9.gen
    G = GmtContext([f9.one(), i])
    with pytest.raises(NotABasis):
        GmtContext([i, i])
    with pytest.raises(NotInMu):
        G.psi_inverse(i + 1)
    with pytest.raises(ZeroInput):
        G.psi((0, 0))
    with pytest.raises(IndexOutOfRange):
        G.t_poly(2)
    with pytest.raises(TypeError):
        G.partition_index(mu=f9.one(), y=f9.one())
    with pytest.raises(ZeroInput):
        G.partition_index(y=f9.zero())


def _bases(ctx):
    return st.lists(
        st.integers(1, ctx.order - 1).map(lambda k: ctx.from_index(Level.EXT, k)),
        min_size=ctx.n, max_size=ctx.n,
    ).filter(is_basis)


F27 = make_field_tower(3, 1, 3)
F81 = make_field_tower(3, 2, 2)
F64 = make_field_tower(2, 2, 3)
F125 = make_field_tower(5, 1, 3)
FIELDS = [F27, F81, F64, F125]
IDS = ["F27", "F81", "F64", "F125"]


@pytest.mark.parametrize("ctx", FIELDS, ids=IDS)
@settings(max_examples=8, deadline=None)
@given(data=st.data())
def test_psi_is_bijection_and_both_inverses_agree(ctx, data):
    G = GmtContext(data.draw(_bases(ctx)))
    pts = enumerate_pg(ctx)
    images = {P: G.psi(P) for P in pts}
    assert set(images.values()) == set(ctx.mu_elements())
    for P, x in images.items():
        assert G.psi_inverse(x, "t_poly") == P
        assert G.psi_inverse(x, "trace") == P


@pytest.mark.parametrize("ctx", FIELDS, ids=IDS)
@settings(max_examples=8, deadline=None)
@given(data=st.data())
def test_partitions_and_trace_coordinates(ctx, data):
    G = GmtContext(data.draw(_bases(ctx)))
    rep = G.verify_partitions()
    q = ctx.q
    assert rep.ok
    assert rep.S_sizes == [(q - 1) * q**j for j in range(ctx.n)]
    assert rep.Z_sizes == rep.C_sizes == [q**j for j in range(ctx.n)]
    for k in range(0, ctx.order, 7):
        y = ctx.from_index(Level.EXT, k)
        coords = G.trace_coords(y)
        assert coords == G.trace_coords_direct(y)
        assert G.combine(coords) == y


@pytest.mark.parametrize("ctx", FIELDS, ids=IDS)
@settings(max_examples=8, deadline=None)
@given(data=st.data())
def test_scaling_the_basis(ctx, data):
    G = GmtContext(data.draw(_bases(ctx)))
    c = ctx.from_index(Level.EXT, data.draw(st.integers(1, ctx.order - 1)))
    S = G.scaled(c)
    factor = c ** (ctx.q - 1)
    for P in enumerate_pg(ctx)[:40]:
        assert S.psi(P) == factor * G.psi(P)
    lam = ctx.embed(ctx.from_index(Level.BASE, data.draw(st.integers(1, ctx.q - 1))), Level.EXT)
    assert GmtContext([lam * w for w in G.W]).psi_table() == G.psi_table()


@pytest.mark.parametrize("spec", [(2, 1, 3), (3, 1, 2), (3, 1, 3), (2, 2, 2), (2, 1, 4)])
def test_normal_basis_shortcut_agrees(spec):
    ctx = make_field_tower(*spec)
    W = normal_basis(ctx)
    assert normal_exponents(W) == list(range(ctx.n))
    # exponents are read relative to the first entry
    shuffled = [W[1], W[0]] + W[2:]
    assert normal_exponents(shuffled) == [0, ctx.n - 1] + list(range(1, ctx.n - 1))
    for basis in (W, shuffled):
        G = GmtContext(basis)  # raises if the shortcut disagrees with the cofactors
        assert G.normal_order is not None


def test_partition_index_routes_agree(f81):
    G = GmtContext([f81.gen, f81.one()])
    for y in f81.nonzero():
        assert G.partition_index(y=y) == G.partition_index(mu=y ** (f81.q - 1))
