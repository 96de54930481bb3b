import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gmtperm.errors import BadParams, NotPrime
from gmtperm.field import Level, make_field_tower
from gmtperm.gmt import GmtContext
from gmtperm.permpoly import (
    Thm37Params,
    build_from_bijection,
    construct_prop312,
    construct_thm36,
    construct_thm37,
    construct_thm310,
)
from gmtperm.poly import UniPoly
from gmtperm.projective import enumerate_pg, linear_map, table_map, three_set_swap_map
from gmtperm.serialize import (
    SpecError,
    elem_from_json,
    elem_to_json,
    format_field,
    gmt_from_json,
    gmt_to_json,
    parse_basis,
    parse_field,
    perm_from_json,
    perm_to_json,
    pgmap_from_json,
    pgmap_to_json,
    poly_from_json,
    poly_to_json,
    report_to_json,
)


def test_field_specs():
    ctx = parse_field("p=2;base=[1,1,0,1];n=3")
    assert (ctx.q, ctx.n) == (8, 3)
    assert parse_field("p=3;auto;n=2") == make_field_tower(3, 1, 2)
    assert parse_field("p=3;auto") == make_field_tower(3, 1, 2)
    assert parse_field("p=5;m=1;n=2") == make_field_tower(5, 1, 2)
    assert parse_field(format_field(ctx)) == ctx
    assert parse_field("p=2;conway;m=3;n=3").order == 512


@pytest.mark.parametrize("bad", ["p=3", "base=[0,1];n=2", "p=3;auto;x=1", "p=3;m=1;base=[0,1];n=2",
                                 "p=3;base=[0,1;n=2", "p=3;auto;nonsense"])
def test_bad_field_specs(bad):
    with pytest.raises(SpecError):
        parse_field(bad)


def test_non_prime_field_spec():
    with pytest.raises(NotPrime):
        parse_field("p=4;auto;n=2")


def test_element_wire_form(f9, f512):
    i = f9.gen
    assert elem_to_json(i) == [[0], [1]]
    assert elem_to_json(f9.scalar(2)) == [[2], [0]]
    assert elem_from_json(f9, [[0], [1]]) == i
    assert elem_from_json(f9, [0, 1]) == i  # base indices
    assert elem_from_json(f9, 2) == f9.scalar(2)
    g = f512.generator()
    assert elem_from_json(f512, "g^5") == g**5
    assert elem_from_json(f512, "1") == f512.one()
    with pytest.raises(SpecError):
        elem_from_json(f512, "h^2")


F512 = make_field_tower(2, [1, 1, 0, 1], 3)
F81 = make_field_tower(3, 2, 2)


@pytest.mark.parametrize("ctx", [F512, F81], ids=["F512", "F81"])
@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_element_and_polynomial_round_trip(ctx, data):
    k = data.draw(st.integers(0, ctx.order - 1))
    x = ctx.from_index(Level.EXT, k)
    assert elem_from_json(ctx, json.loads(json.dumps(elem_to_json(x)))) == x
    c = ctx.from_index(Level.BASE, k % ctx.q)
    assert elem_from_json(ctx, elem_to_json(c), Level.BASE) == c
    terms = data.draw(st.dictionaries(st.integers(0, 600), st.integers(1, ctx.order - 1), max_size=6))
    P = UniPoly.from_terms(ctx, Level.EXT, {e: ctx.from_index(Level.EXT, v) for e, v in terms.items()})
    doc = json.loads(json.dumps(poly_to_json(P, ctx.generator())))
    assert poly_from_json(ctx, doc) == P
    assert len(doc["powers"]) == len(P.terms())


def test_gmt_round_trip(f9):
    G = GmtContext([f9.one(), f9.gen])
    doc = gmt_to_json(G)
    assert doc["det"] == "i"
    assert doc["dual"] == [[[2], [0]], [[0], [1]]]
    H = gmt_from_json(json.loads(json.dumps(doc)))
    assert H.W == G.W and H.det == G.det
    doc["det_vector"] = [[1], [0]]
    with pytest.raises(SpecError):
        gmt_from_json(doc)


def test_basis_keywords(f81):
    assert parse_basis(f81, "poly") == [f81.one(), f81.gen]
    normal = parse_basis(f81, "normal")
    assert normal[1] == f81.frobenius_q(normal[0])
    assert parse_basis(f81, "random:3") == parse_basis(f81, "random", seed=3)
    with pytest.raises(BadParams):
        parse_basis(f81, "[[[1,0],[0,0]], [[2,0],[0,0]]]")
    with pytest.raises(SpecError):
        parse_basis(f81, "dual")


def _same_values(f, g):
    return all(f(x) == g(x) for x in f.ctx.elements())


def test_pgmap_round_trip(f27):
    for g in (three_set_swap_map(f27), linear_map(f27, [[0, 1, 0], [0, 0, 1], [1, 0, 0]])):
        h = pgmap_from_json(f27, json.loads(json.dumps(pgmap_to_json(g))))
        assert all(h(P.coords) == g(P.coords) for P in enumerate_pg(f27))
    pairs = [(P.coords, P.coords) for P in enumerate_pg(f27)]
    t = table_map(f27, pairs)
    assert pgmap_to_json(t)["kind"] == "table"


def test_construction_round_trips(f9, f27):
    one, i = f9.one(), f9.gen
    W27 = parse_basis(f27, "poly")
    G27 = GmtContext(W27)
    builds = [
        build_from_bijection(G27, W27, three_set_swap_map(f27), 1),
        construct_thm36(G27, parse_basis(f27, "normal"), [[2, 0, 1], [1, 2, 0]], 1),
        construct_thm37(f9, Thm37Params(H=[0, 1, 2], r=1, a=one, b=one, u=i, v=one)),
        construct_thm310(GmtContext([one, i]), [one, i], 2, 1, 1, 1),
        construct_prop312(G27, W27, 1),
        construct_prop312(G27, W27, 1, literal=True),
    ]
    for f in builds:
        doc = json.loads(json.dumps(perm_to_json(f)))
        g = perm_from_json(doc)
        assert g.source == f.source
        assert _same_values(f, g)


def test_reports_are_plain_json(f9):
    G = GmtContext([f9.one(), f9.gen])
    doc = report_to_json(G.verify_partitions())
    assert doc["ok"] is True and doc["S_sizes"] == [2, 6]
    json.dumps(doc)
