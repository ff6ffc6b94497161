import random
from collections import Counter

import pytest

from cqlnet import fixtures
from cqlnet.category import Loop
from cqlnet.formula import anf, anf_star, parse_formula
from cqlnet.freecat import (
    UNIT,
    FreeArrow,
    boundary,
    complete,
    coname_of,
    denote,
    embed,
    epsilon,
    eta,
    fa_equal,
    fmt_arrow,
    identity,
    injection,
    name_of,
    parse_arrow,
    permutation,
    projection,
    scalar,
    symmetry,
    trace_arrow,
    wiring,
    wiring_dagger,
    wiring_dual,
    zero,
)
from cqlnet.net import parse_net
from cqlnet.randgen import random_anf, random_free_arrow, random_wiring


def _anf(text, cat):
    return anf(parse_formula(text, cat))


def _arrow_onto(cat, rng, dom, cod):
    entries = {}
    for i in range(len(cod)):
        for j in range(len(dom)):
            if rng.random() < 0.3:
                continue
            c = Counter()
            for _ in range(rng.randint(1, 2)):
                c[random_wiring(cat, rng, dom[j], cod[i])] += 1
            if c:
                entries[(i, j)] = c
    return FreeArrow(cat, dom, cod, entries)


def test_identity_laws(pauli8):
    rng = random.Random(3)
    for _ in range(20):
        f = random_free_arrow(pauli8, rng)
        assert fa_equal(identity(pauli8, f.dom) >> f, f)
        assert fa_equal(f >> identity(pauli8, f.cod), f)


def test_compose_associative(pauli8):
    rng = random.Random(7)
    for _ in range(15):
        f = random_free_arrow(pauli8, rng)
        g = _arrow_onto(pauli8, rng, f.cod, random_anf(pauli8, rng))
        h = _arrow_onto(pauli8, rng, g.cod, random_anf(pauli8, rng))
        assert fa_equal((f >> g) >> h, f >> (g >> h))


def test_tensor_associative_and_unital(pauli8):
    rng = random.Random(9)
    for _ in range(10):
        f = random_free_arrow(pauli8, rng)
        g = random_free_arrow(pauli8, rng)
        h = random_free_arrow(pauli8, rng)
        assert fa_equal((f @ g) @ h, f @ (g @ h))
        one = identity(pauli8, UNIT)
        assert fa_equal(one @ f, f)
        assert fa_equal(f @ one, f)


def test_interchange(pauli8):
    rng = random.Random(13)
    for _ in range(10):
        f1 = random_free_arrow(pauli8, rng)
        g1 = _arrow_onto(pauli8, rng, f1.cod, random_anf(pauli8, rng))
        f2 = random_free_arrow(pauli8, rng)
        g2 = _arrow_onto(pauli8, rng, f2.cod, random_anf(pauli8, rng))
        assert fa_equal((f1 @ f2) >> (g1 @ g2), (f1 >> g1) @ (f2 >> g2))


def test_embed_is_a_functor(pauli8):
    for f in ["X", "Z", "XZ", "m1"]:
        for g in ["X", "Z", "id Q"]:
            lhs = embed(pauli8, f) >> embed(pauli8, g)
            rhs = embed(pauli8, pauli8.compose(f, g))
            assert fa_equal(lhs, rhs)
    assert fa_equal(embed(pauli8, "id Q"), identity(pauli8, _anf("Q", pauli8)))
    assert fa_equal(embed(pauli8, "X").dagger(), embed(pauli8, pauli8.dagger("X")))


def test_snake_identities(pauli8):
    for text in ["Q", "(Q* x Q)", "((Q x Q) + I)"]:
        a = _anf(text, pauli8)
        sa = anf_star(a)
        left = (identity(pauli8, a) @ eta(pauli8, a)) >> (
            epsilon(pauli8, a) @ identity(pauli8, a)
        )
        assert fa_equal(left, identity(pauli8, a))
        right = (eta(pauli8, a) @ identity(pauli8, sa)) >> (
            identity(pauli8, sa) @ epsilon(pauli8, a)
        )
        assert fa_equal(right, identity(pauli8, sa))


def test_epsilon_is_swapped_eta_dagger(pauli8):
    for text in ["Q", "(Q* x Q)", "((Q x Q) + I)"]:
        a = _anf(text, pauli8)
        lhs = epsilon(pauli8, a)
        rhs = symmetry(pauli8, a, anf_star(a)) >> eta(pauli8, a).dagger()
        assert fa_equal(lhs, rhs)


def test_name_absorbs_postcomposition(pauli8):
    # (id_{A*} x g) after name(f) is name(f then g)
    rng = random.Random(17)
    for _ in range(10):
        f = random_free_arrow(pauli8, rng)
        g = _arrow_onto(pauli8, rng, f.cod, random_anf(pauli8, rng))
        lhs = name_of(f) >> (identity(pauli8, anf_star(f.dom)) @ g)
        assert fa_equal(lhs, name_of(f >> g))


def test_name_absorbs_precomposition(pauli8):
    # (k* x id_B) after name(f) is name(k then f)
    rng = random.Random(19)
    for _ in range(10):
        k = random_free_arrow(pauli8, rng)
        f = _arrow_onto(pauli8, rng, k.cod, random_anf(pauli8, rng))
        lhs = name_of(f) >> (k.dual() @ identity(pauli8, f.cod))
        assert fa_equal(lhs, name_of(k >> f))


def test_name_coname_compose(pauli8):
    # (coname f x id_C) after (id_A x name g) is f then g
    rng = random.Random(23)
    for _ in range(10):
        f = random_free_arrow(pauli8, rng)
        g = _arrow_onto(pauli8, rng, f.cod, random_anf(pauli8, rng))
        a, c = f.dom, g.cod
        lhs = (identity(pauli8, a) @ name_of(g)) >> (
            coname_of(f) @ identity(pauli8, c)
        )
        assert fa_equal(lhs, f >> g)


def test_name_pair_with_coname_bridge(pauli8):
    # (id x coname g x id) after (name f x name h) is name(f then g then h)
    rng = random.Random(29)
    for _ in range(8):
        f = random_free_arrow(pauli8, rng)
        g = _arrow_onto(pauli8, rng, f.cod, random_anf(pauli8, rng))
        h = _arrow_onto(pauli8, rng, g.cod, random_anf(pauli8, rng))
        lhs = (name_of(f) @ name_of(h)) >> (
            identity(pauli8, anf_star(f.dom)) @ coname_of(g) @ identity(pauli8, h.cod)
        )
        assert fa_equal(lhs, name_of(f >> g >> h))


def test_name_then_coname_traces(pauli8):
    q = _anf("Q", pauli8)
    for f, g in [("X", "Z"), ("Z", "X"), ("XZ", "XZ"), ("id Q", "m1")]:
        mid = symmetry(pauli8, anf_star(q), q)
        got = name_of(embed(pauli8, f)) >> mid >> coname_of(embed(pauli8, g))
        want = scalar(pauli8, [pauli8.loop_of(pauli8.compose(f, g))])
        assert fa_equal(got, want)


def test_biproduct_projection_injection(pauli8):
    parts = [_anf("Q", pauli8), _anf("(Q* x Q)", pauli8), UNIT]
    for j in range(3):
        for i in range(3):
            got = injection(pauli8, parts, j) >> projection(pauli8, parts, i)
            if i == j:
                assert fa_equal(got, identity(pauli8, parts[j]))
            else:
                assert fa_equal(got, zero(pauli8, parts[j], parts[i]))


def test_biproduct_injections_sum_to_identity(pauli8):
    parts = [_anf("Q", pauli8), _anf("(Q* x Q)", pauli8), UNIT]
    whole = tuple(w for p in parts for w in p)
    total = zero(pauli8, whole, whole)
    for k in range(3):
        total = total + (projection(pauli8, parts, k) >> injection(pauli8, parts, k))
    assert fa_equal(total, identity(pauli8, whole))


def test_addition_laws(pauli8):
    rng = random.Random(31)
    for _ in range(10):
        f = random_free_arrow(pauli8, rng)
        g = _arrow_onto(pauli8, rng, f.dom, f.cod)
        h = _arrow_onto(pauli8, rng, f.cod, random_anf(pauli8, rng))
        k = _arrow_onto(pauli8, rng, random_anf(pauli8, rng), f.dom)
        z = zero(pauli8, f.dom, f.cod)
        assert fa_equal(f + g, g + f)
        assert fa_equal(f + z, f)
        assert fa_equal((f + g) >> h, (f >> h) + (g >> h))
        assert fa_equal(k >> (f + g), (k >> f) + (k >> g))
        assert fa_equal(k >> z, zero(pauli8, k.dom, z.cod))


def test_tensor_distributes_over_sum(pauli8):
    rng = random.Random(37)
    for _ in range(8):
        f = random_free_arrow(pauli8, rng)
        g = _arrow_onto(pauli8, rng, f.dom, f.cod)
        h = random_free_arrow(pauli8, rng)
        assert fa_equal((f + g) @ h, (f @ h) + (g @ h))
        assert fa_equal(h @ (f + g), (h @ f) + (h @ g))


def test_scalars_commute_and_collect_loops(pauli8):
    la = pauli8.loop_of("X")
    lb = pauli8.loop_of("mXZ")
    sa = scalar(pauli8, [la])
    sb = scalar(pauli8, [lb])
    assert fa_equal(sa @ sb, scalar(pauli8, [la, lb]))
    assert fa_equal(sa @ sb, sb @ sa)
    two = scalar(pauli8, [], mult=2)
    assert fa_equal(two, scalar(pauli8, []) + scalar(pauli8, []))
    rng = random.Random(41)
    f = random_free_arrow(pauli8, rng)
    assert fa_equal(f.scale(sa), sa @ f)
    assert fa_equal(sa @ f, f @ sa)


def test_dagger_laws(pauli8):
    rng = random.Random(43)
    for _ in range(10):
        f = random_free_arrow(pauli8, rng)
        g = _arrow_onto(pauli8, rng, f.cod, random_anf(pauli8, rng))
        h = _arrow_onto(pauli8, rng, f.dom, f.cod)
        assert fa_equal(f.dagger().dagger(), f)
        assert fa_equal((f >> g).dagger(), g.dagger() >> f.dagger())
        assert fa_equal((f @ g).dagger(), f.dagger() @ g.dagger())
        assert fa_equal((f + h).dagger(), f.dagger() + h.dagger())


def test_dual_laws(pauli8):
    rng = random.Random(47)
    for _ in range(10):
        f = random_free_arrow(pauli8, rng)
        g = _arrow_onto(pauli8, rng, f.cod, random_anf(pauli8, rng))
        assert fa_equal(f.dual().dual(), f)
        assert fa_equal((f >> g).dual(), g.dual() >> f.dual())
        assert fa_equal(f.dagger().dual(), f.dual().dagger())


def test_wiring_dagger_and_dual_involutive(pauli8):
    rng = random.Random(53)
    for _ in range(25):
        dom = tuple(random_anf(pauli8, rng)[0])
        cod = tuple(random_anf(pauli8, rng)[0])
        t = random_wiring(pauli8, rng, dom, cod)
        assert wiring_dagger(pauli8, wiring_dagger(pauli8, t)) == t
        assert wiring_dual(wiring_dual(t, pauli8), pauli8) == t


def test_permutation_composes(pauli8):
    q = _anf("Q", pauli8)
    qq = _anf("(Q* x Q)", pauli8)
    both = permutation(pauli8, [q, qq], [1, 0]) >> permutation(pauli8, [qq, q], [1, 0])
    from cqlnet.formula import anf_kron

    assert fa_equal(both, identity(pauli8, anf_kron(q, qq)))
    sym = symmetry(pauli8, q, q)
    assert fa_equal(sym >> sym, identity(pauli8, anf_kron(q, q)))


def test_trace_of_tensor_with_identity(pauli8):
    q = _anf("Q", pauli8)
    g = embed(pauli8, "X")
    f = g @ identity(pauli8, q)
    got = trace_arrow(f, q, q, q)
    want = g.scale(scalar(pauli8, [pauli8.loop_of("id Q")]))
    assert fa_equal(got, want)


def test_yanking(pauli8):
    q = _anf("Q", pauli8)
    got = trace_arrow(symmetry(pauli8, q, q), q, q, q)
    assert fa_equal(got, identity(pauli8, q))


def test_fmt_parse_round_trip(pauli8):
    rng = random.Random(59)
    for _ in range(15):
        f = random_free_arrow(pauli8, rng)
        back = parse_arrow(fmt_arrow(f), pauli8)
        assert fa_equal(back, f)
        assert back.dom == f.dom and back.cod == f.cod
    for fa in [eta(pauli8, _anf("((Q x Q) + I)", pauli8)), scalar(pauli8, [Loop("Q", "X")])]:
        assert fa_equal(parse_arrow(fmt_arrow(fa), pauli8), fa)


def test_wiring_rejects_bad_pairings(pauli8):
    from cqlnet.formula import Literal

    q, qs = Literal("Q"), Literal("Q", True)
    with pytest.raises(ValueError, match="polarity"):
        wiring((q,), (q,), [(1, 0, "id Q")], (), pauli8)
    with pytest.raises(ValueError, match="cover"):
        wiring((q,), (qs, q), [(0, 2, "id Q")], (), pauli8)
    with pytest.raises(ValueError, match="out of range"):
        wiring((q,), (q,), [(0, 5, "id Q")], (), pauli8)
    from cqlnet.category import load_category

    two = load_category("category two\nobject A\nobject B\n")
    a, b = Literal("A"), Literal("B")
    with pytest.raises(ValueError, match="does not join"):
        wiring((a,), (b,), [(0, 1, "id A")], (), two)


def test_boundary_orientation(pauli8):
    from cqlnet.formula import Literal

    q, qs = Literal("Q"), Literal("Q", True)
    assert boundary((q, qs), (q,)) == (qs, q, q)


def test_free_arrow_shape_checks(pauli8):
    rng = random.Random(61)
    f = random_free_arrow(pauli8, rng)
    with pytest.raises(ValueError, match="entry"):
        FreeArrow(pauli8, f.dom, f.cod, {(99, 0): Counter()})
    g = random_free_arrow(pauli8, rng)
    while g.dom == f.cod:
        g = random_free_arrow(pauli8, rng)
    with pytest.raises(ValueError, match="compose"):
        f >> g
    with pytest.raises(TypeError):
        hash(f)


def test_denote_fixtures(pauli8):
    bell = parse_net(fixtures.BELL_NET, pauli8)
    assert fa_equal(denote(bell), name_of(embed(pauli8, "id Q")))
    bellx = parse_net(fixtures.BELLX_NET, pauli8)
    assert fa_equal(denote(bellx), name_of(embed(pauli8, "X")))
    chain = parse_net(fixtures.CHAIN_NET, pauli8)
    assert fa_equal(denote(chain), denote(bell))
    ring = parse_net(fixtures.RING_NET, pauli8)
    assert fa_equal(denote(ring), scalar(pauli8, [Loop("Q", "Z")]))


def test_complete_round_trip_on_fixtures(pauli8):
    for fa in [
        embed(pauli8, "X"),
        eta(pauli8, _anf("Q", pauli8)),
        injection(pauli8, [_anf("Q", pauli8), UNIT], 0),
        scalar(pauli8, [Loop("Q", "XZ")], mult=2),
    ]:
        net = complete(fa)
        assert fa_equal(denote(net), name_of(fa))
