import pytest

from cqlnet import fixtures
from cqlnet.errors import NetError, ParseError
from cqlnet.formula import Atom, DualAtom, Tensor, parse_formula
from cqlnet.net import (
    AxLink,
    CutLink,
    Net,
    SliceBuilder,
    cut_sides,
    labels,
    parse_net,
    print_net,
    to_dot,
    topo_order,
    validate_net,
)


def test_parse_bell(pauli8):
    net = parse_net(fixtures.BELL_NET, pauli8)
    assert net.name == "bell"
    assert net.conclusions == (DualAtom("Q"), Atom("Q"))
    assert len(net.slices) == 1
    s = net.slices[0]
    assert s.links == {"a": AxLink("id Q")}
    assert s.outs == (("a", 0), ("a", 1))


def test_labels_bell(pauli8):
    net = parse_net(fixtures.BELL_NET, pauli8)
    labs = labels(net.slices[0], pauli8)
    assert labs[("a", 0)] == DualAtom("Q")
    assert labs[("a", 1)] == Atom("Q")


def test_parse_swapping(pauli8):
    net = parse_net(fixtures.SWAPPING_NET, pauli8)
    assert len(net.slices) == 4
    assert net.conclusions[0] == parse_formula("((I + I) + (I + I))")
    for s in net.slices:
        assert len(s.outs) == 3


def test_print_parse_round_trip(pauli8):
    for text in [
        fixtures.BELL_NET,
        fixtures.BELLX_NET,
        fixtures.CHAIN_NET,
        fixtures.RING_NET,
        fixtures.SWAPPING_NET,
    ]:
        net = parse_net(text, pauli8)
        printed = print_net(net)
        again = parse_net(printed, pauli8)
        assert print_net(again) == printed


def test_cut_sides_orientation(pauli8):
    net = parse_net(fixtures.CHAIN_NET, pauli8)
    s = net.slices[0]
    # both cuts were written plain-first
    assert cut_sides(s, pauli8, "#c0") == (0, 1)
    assert cut_sides(s, pauli8, "#c1") == (0, 1)


def test_cut_sides_reversed_inputs(pauli8):
    text = fixtures.RING_NET.replace("cut a.1 , b.0 : X", "cut b.0 , a.1 : X")
    net = parse_net(text, pauli8)
    cuts = [
        lid
        for lid, link in net.slices[0].links.items()
        if isinstance(link, CutLink) and link.arrow == "X"
    ]
    assert cut_sides(net.slices[0], pauli8, cuts[0]) == (1, 0)


def test_id_cut_inference_on_atoms(pauli8):
    text = (
        "net n\n"
        "conclusions Q* , Q\n"
        "slice\n"
        "  ax a : X\n"
        "  ax b : X\n"
        "  cut a.1 , b.0 : id\n"
        "  out a.0 , b.1\n"
        "end\n"
    )
    net = parse_net(text, pauli8)
    cut = [l for l in net.slices[0].links.values() if isinstance(l, CutLink)][0]
    assert cut.arrow == "id Q"
    assert cut.formula is None


def test_id_cut_inference_on_compounds(pauli8):
    text = (
        "net n\n"
        "conclusions\n"
        "slice\n"
        "  ax a : id Q\n"
        "  ax b : id Q\n"
        "  times t = a.1 b.0\n"
        "  times u = a.0 b.1\n"
        "  cut t.0 , u.0 : id\n"
        "  out\n"
        "end\n"
    )
    net = parse_net(text, pauli8)
    cut = [l for l in net.slices[0].links.values() if isinstance(l, CutLink)][0]
    assert cut.formula == Tensor(Atom("Q"), DualAtom("Q"))


def test_port_used_twice_rejected(pauli8):
    text = (
        "net n\nconclusions Q* , Q*\nslice\n  ax a : id Q\n"
        "  out a.0 , a.0\nend\n"
    )
    with pytest.raises(NetError, match="2 times"):
        parse_net(text, pauli8)


def test_dangling_output_rejected(pauli8):
    text = "net n\nconclusions Q*\nslice\n  ax a : id Q\n  out a.0\nend\n"
    with pytest.raises(NetError, match="0 times"):
        parse_net(text, pauli8)


def test_conclusion_mismatch_rejected(pauli8):
    text = "net n\nconclusions Q , Q\nslice\n  ax a : id Q\n  out a.0 , a.1\nend\n"
    with pytest.raises(NetError, match="conclusion mismatch"):
        parse_net(text, pauli8)


def test_out_arity_mismatch_rejected(pauli8):
    text = "net n\nconclusions Q*\nslice\n  ax a : id Q\n  out a.0 , a.1\nend\n"
    with pytest.raises(NetError, match="declares"):
        parse_net(text, pauli8)


def test_cut_type_mismatch_rejected(pauli8):
    text = (
        "net n\nconclusions Q* , Q*\nslice\n  ax a : id Q\n  ax b : id Q\n"
        "  cut a.1 , b.1 : X\n  out a.0 , b.0\nend\n"
    )
    with pytest.raises(NetError, match="do not match"):
        parse_net(text, pauli8)


def test_dangling_unit_rejected(pauli8):
    text = "net n\nconclusions I\nslice\n  unit u\n  out u.0\nend\n"
    with pytest.raises(NetError, match="unit"):
        parse_net(text, pauli8)


def test_unit_under_times_rejected(pauli8):
    # the times links produce (Q x I) and (Q* x I), which the label pass rejects
    text = (
        "net n\nconclusions Q* , Q\nslice\n"
        "  unit u\n  unit v\n  ax a : id Q\n  ax b : id Q\n"
        "  times t = a.1 u.0\n  times w = b.0 v.0\n"
        "  cut t.0 , w.0 : id\n  out b.1 , a.0\nend\n"
    )
    with pytest.raises(NetError, match="I may not"):
        parse_net(text, pauli8)


def test_unit_feeding_id_cut_allowed(pauli8):
    text = (
        "net n\nconclusions\nslice\n  unit u\n  unit v\n"
        "  cut u.0 , v.0 : id\n  out\nend\n"
    )
    net = parse_net(text, pauli8)
    cut = [l for l in net.slices[0].links.values() if isinstance(l, CutLink)][0]
    assert cut.formula is not None


def test_zero_conclusion_with_slices_rejected(pauli8):
    text = "net n\nconclusions 0\nslice\n  ax a : id Q\n  out a.0\nend\n"
    with pytest.raises(NetError):
        parse_net(text, pauli8)


def test_zero_conclusion_empty_net(pauli8):
    net = parse_net("net n\nconclusions 0\n", pauli8)
    assert net.slices == ()
    validate_net(net)


def test_cyclic_wiring_rejected(pauli8):
    # two times links feeding each other
    text = (
        "net n\nconclusions\nslice\n  ax a : id Q\n"
        "  times t = w.0 a.0\n  times w = t.0 a.1\n  out\nend\n"
    )
    with pytest.raises(NetError, match="cyclic"):
        parse_net(text, pauli8)


def test_unknown_arrow_rejected(pauli8):
    text = "net n\nconclusions Q* , Q\nslice\n  ax a : W\n  out a.0 , a.1\nend\n"
    with pytest.raises(ParseError, match="unknown arrow"):
        parse_net(text, pauli8)


def test_unknown_port_rejected(pauli8):
    text = "net n\nconclusions Q* , Q\nslice\n  ax a : id Q\n  out z.0 , a.1\nend\n"
    with pytest.raises(ParseError, match="unknown link"):
        parse_net(text, pauli8)


def test_duplicate_link_id_rejected(pauli8):
    text = (
        "net n\nconclusions Q* , Q\nslice\n  ax a : id Q\n  ax a : X\n"
        "  out a.0 , a.1\nend\n"
    )
    with pytest.raises(ParseError, match="duplicate link id"):
        parse_net(text, pauli8)


def test_missing_out_rejected(pauli8):
    text = "net n\nconclusions Q* , Q\nslice\n  ax a : id Q\nend\n"
    with pytest.raises(ParseError, match="no out line"):
        parse_net(text, pauli8)


def test_topo_order_producers_first(pauli8):
    net = parse_net(fixtures.SWAPPING_NET, pauli8)
    for s in net.slices:
        order = topo_order(s)
        pos = {lid: k for k, lid in enumerate(order)}
        for (lid, _), (pid, _) in s.wires.items():
            if not isinstance(s.links[lid], CutLink):
                assert pos[pid] < pos[lid]


def test_slice_builder_realizes_components(pauli8):
    f = parse_formula("((Q* x Q) + I)")
    b = SliceBuilder()
    top = b.realize_component(f, 0)
    assert len(b.holes) == 2
    lid = b.fresh("a")
    b.links[lid] = AxLink("id Q")
    b.place(0, (lid, 0))
    b.place(1, (lid, 1))
    s = b.build([top])
    net = Net("built", (f,), (s,), pauli8)
    validate_net(net)


def test_slice_builder_unit_component(pauli8):
    f = parse_formula("((Q* x Q) + I)")
    b = SliceBuilder()
    top = b.realize_component(f, 1)
    assert len(b.holes) == 0
    s = b.build([top])
    net = Net("built", (f,), (s,), pauli8)
    validate_net(net)


def test_to_dot_mentions_slices_and_conclusions(pauli8):
    net = parse_net(fixtures.SWAPPING_NET, pauli8)
    dot = to_dot(net)
    assert "cluster_0" in dot and "cluster_3" in dot
    assert "concl_2" in dot
    assert dot.count("style=dashed") == 12


def test_net_str_is_printable(pauli8):
    net = parse_net(fixtures.BELL_NET, pauli8)
    assert str(net) == print_net(net)
