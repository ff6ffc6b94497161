"""Cut elimination on slices, and canonical normal forms for nets.

Every cut in a well-formed slice is one of: an axiom-to-axiom chain, an axiom
cut back on itself, a cut on a tensor, plus, or unit formula, or a closed
loop (an identity cut on both outputs of one endo axiom).  All but the last
are redexes; closed loops are normal and denote loop scalars.  Each step
removes links or turns a non-identity self-cut into a closed loop, so
reduction terminates in at most as many steps as there are links.

A normal slice is determined by its plus choices, the pairing of its
conclusion leaves, and its loop classes; nets compare equal when their
normal slices match as multisets over equal conclusion lists.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import net as nets
from .errors import NetError
from .formula import Atom, DualAtom, Plus, Tensor, Unit


@dataclass(frozen=True)
class Redex:
    """A reducible cut: which cut, and which rule applies."""

    cut: str
    rule: str  # "ax-self" | "ax-ax" | "times" | "plus" | "unit"
    detail: tuple = ()


def _classify(s, cat, cid):
    """The redex at cut ``cid``, or None for a closed loop (normal)."""
    link = s.links[cid]
    if link.arrow is not None:
        sp, ss = nets.cut_sides(s, cat, cid)
        f_ax = s.wires[(cid, sp)][0]
        h_ax = s.wires[(cid, ss)][0]
        if f_ax == h_ax:
            if cat.is_identity(link.arrow):
                return None  # closed loop, a normal scalar
            return Redex(cid, "ax-self")
        return Redex(cid, "ax-ax")
    formula = link.formula
    if isinstance(formula, Unit):
        return Redex(cid, "unit")
    if isinstance(formula, Tensor):
        return Redex(cid, "times")
    if isinstance(formula, Plus):
        side = {nets.Plus1Link: 1, nets.Plus2Link: 2}
        i = side[type(s.links[s.wires[(cid, 0)][0]])]
        j = side[type(s.links[s.wires[(cid, 1)][0]])]
        return Redex(cid, "plus", (i, j))
    raise AssertionError(f"unexpected cut formula {formula!r}")


def find_redexes(s, cat):
    """All redexes of a slice, sorted by cut id."""
    out = []
    for cid in sorted(s.links):
        if isinstance(s.links[cid], nets.CutLink):
            r = _classify(s, cat, cid)
            if r is not None:
                out.append(r)
    return out


def _id_cut(cat, formula, port_f, port_fstar):
    """An identity cut on ``formula``, normalizing atom cuts to arrow cuts.

    ``port_f`` produces ``formula`` and ``port_fstar`` its dual; returns
    (link, input-0 port, input-1 port) with the orientation the link expects.
    """
    if isinstance(formula, Atom):
        return nets.CutLink(arrow=cat.identity(formula.name)), port_f, port_fstar
    if isinstance(formula, DualAtom):
        return nets.CutLink(arrow=cat.identity(formula.name)), port_fstar, port_f
    return nets.CutLink(formula=formula), port_f, port_fstar


def step(s, cat, redex):
    """Apply one redex; returns the new slice, or None when the slice deletes."""
    if redex.cut not in s.links or not isinstance(s.links[redex.cut], nets.CutLink):
        raise ValueError(f"stale redex: no cut {redex.cut}")
    current = _classify(s, cat, redex.cut)
    if current is None or current.rule != redex.rule:
        raise ValueError(f"stale redex: cut {redex.cut} is now {current!r}")
    cid = redex.cut
    link = s.links[cid]
    links = dict(s.links)
    wires = dict(s.wires)
    outs = list(s.outs)
    rev = s.consumers()

    def rewire(old_port, new_port):
        consumer = rev.get(old_port)
        if consumer is not None:
            wires[consumer] = new_port
        else:
            outs[outs.index(old_port)] = new_port

    def drop_link(lid):
        for slot in range(nets.in_arity(links[lid])):
            del wires[(lid, slot)]
        del links[lid]

    if redex.rule == "ax-self":
        sp, ss = nets.cut_sides(s, cat, cid)
        ax = s.wires[(cid, sp)][0]
        loop_arrow = cat.compose(links[ax].arrow, link.arrow)
        a = cat.dom(loop_arrow)
        links[ax] = nets.AxLink(loop_arrow)
        links[cid] = nets.CutLink(arrow=cat.identity(a))
        wires[(cid, 0)] = (ax, 1)
        wires[(cid, 1)] = (ax, 0)
    elif redex.rule == "ax-ax":
        sp, ss = nets.cut_sides(s, cat, cid)
        f_ax = s.wires[(cid, sp)][0]
        h_ax = s.wires[(cid, ss)][0]
        f, h = links[f_ax].arrow, links[h_ax].arrow
        composite = cat.compose(cat.compose(f, link.arrow), h)
        nid = min(f_ax, h_ax)
        drop_link(cid)
        del links[f_ax]
        del links[h_ax]
        links[nid] = nets.AxLink(composite)
        rewire((f_ax, 0), (nid, 0))
        rewire((h_ax, 1), (nid, 1))
    elif redex.rule == "times":
        t1 = s.wires[(cid, 0)][0]
        t2 = s.wires[(cid, 1)][0]
        x_p, y_p = s.wires[(t1, 0)], s.wires[(t1, 1)]
        xs_p, ys_p = s.wires[(t2, 0)], s.wires[(t2, 1)]
        formula = link.formula
        drop_link(cid)
        drop_link(t1)
        drop_link(t2)
        cx, in0, in1 = _id_cut(cat, formula.left, x_p, xs_p)
        links[cid] = cx
        wires[(cid, 0)], wires[(cid, 1)] = in0, in1
        cy, in0, in1 = _id_cut(cat, formula.right, y_p, ys_p)
        links[t1] = cy
        wires[(t1, 0)], wires[(t1, 1)] = in0, in1
    elif redex.rule == "plus":
        i, j = redex.detail
        p1 = s.wires[(cid, 0)][0]
        p2 = s.wires[(cid, 1)][0]
        if i != j:
            return None
        w_p = s.wires[(p1, 0)]
        w_q = s.wires[(p2, 0)]
        formula = link.formula
        chosen = formula.left if i == 1 else formula.right
        drop_link(cid)
        drop_link(p1)
        drop_link(p2)
        c, in0, in1 = _id_cut(cat, chosen, w_p, w_q)
        links[cid] = c
        wires[(cid, 0)], wires[(cid, 1)] = in0, in1
    elif redex.rule == "unit":
        u1 = s.wires[(cid, 0)][0]
        u2 = s.wires[(cid, 1)][0]
        drop_link(cid)
        del links[u1]
        del links[u2]
    else:
        raise AssertionError(f"unknown rule {redex.rule}")
    return nets.Slice(links, wires, tuple(outs))


def normalize_slice(s, cat, strategy="min", rng=None, on_step=None):
    """Reduce one slice to normal form; returns (slice or None, step count)."""
    steps = 0
    while True:
        redexes = find_redexes(s, cat)
        if not redexes:
            return s, steps
        if strategy == "min":
            r = redexes[0]
        elif strategy == "random":
            r = rng.choice(redexes)
        else:
            raise ValueError(f"unknown strategy {strategy!r}")
        s2 = step(s, cat, r)
        steps += 1
        if on_step is not None:
            remaining = 0 if s2 is None else len(s2.links)
            on_step(r, remaining)
        if s2 is None:
            return None, steps
        s = s2


# ---------------------------------------------------------------------------
# canonical forms


@dataclass(frozen=True, order=True)
class CanonicalSlice:
    """What survives of a normal slice: plus bits, leaf pairing, loops.

    ``choices`` lists plus branches (True = right) in conclusion traversal
    order; ``pairs`` joins leaf positions (negative, positive, arrow); loops
    are sorted loop classes.
    """

    choices: tuple
    pairs: tuple
    loops: tuple


@dataclass(frozen=True)
class NormalNet:
    """A normal form: conclusions plus the sorted multiset of normal slices."""

    conclusions: tuple
    slices: tuple


def canonicalize_slice(s, cat):
    """Extract the canonical form of a normal slice."""
    if find_redexes(s, cat):
        raise ValueError("slice is not normal")
    loops = []
    loop_axioms = set()
    for cid, link in s.links.items():
        if isinstance(link, nets.CutLink):
            ax = s.wires[(cid, 0)][0]
            loops.append(cat.loop_of(s.links[ax].arrow))
            loop_axioms.add(ax)
    choices = []
    leaf_of = {}

    def walk(port):
        lid, slot = port
        link = s.links[lid]
        if isinstance(link, nets.AxLink):
            leaf_of[port] = len(leaf_of)
        elif isinstance(link, nets.TimesLink):
            walk(s.wires[(lid, 0)])
            walk(s.wires[(lid, 1)])
        elif isinstance(link, nets.Plus1Link):
            choices.append(False)
            walk(s.wires[(lid, 0)])
        elif isinstance(link, nets.Plus2Link):
            choices.append(True)
            walk(s.wires[(lid, 0)])
        # units contribute nothing

    for port in s.outs:
        walk(port)
    pairs = []
    for lid, link in s.links.items():
        if isinstance(link, nets.AxLink) and lid not in loop_axioms:
            pairs.append((leaf_of[(lid, 0)], leaf_of[(lid, 1)], link.arrow))
    pairs.sort(key=lambda p: min(p[0], p[1]))
    return CanonicalSlice(tuple(choices), tuple(pairs), tuple(sorted(loops)))


def reconstruct_slice(cs, conclusions, cat):
    """The normal slice denoted by a canonical form, with deterministic ids."""
    b = nets.SliceBuilder()
    bits = iter(cs.choices)
    tops = [b.realize_choices(f, bits) for f in conclusions]
    leftover = next(bits, None)
    if leftover is not None:
        raise ValueError("too many plus choices for these conclusions")
    for neg, pos, f in cs.pairs:
        lid = b.fresh("a")
        b.links[lid] = nets.AxLink(f)
        b.place(neg, (lid, 0))
        b.place(pos, (lid, 1))
    for lp in cs.loops:
        b.add_loop(cat, lp)
    return b.build(tops)


def normalize(net, strategy="min", seed=0, trace=None):
    """The normal form of a net: reduce every slice, canonicalize, sort."""
    rng = random.Random(seed)
    canon = []
    for k, s in enumerate(net.slices):
        def on_step(r, remaining, k=k):
            if trace is not None:
                trace.append(f"slice {k}: {r.rule} at {r.cut}: {remaining} links")
        nf, _ = normalize_slice(s, net.cat, strategy, rng, on_step)
        if nf is not None:
            canon.append(canonicalize_slice(nf, net.cat))
    return NormalNet(net.conclusions, tuple(sorted(canon)))


def to_net(nn, cat, name="normal"):
    """Rebuild a Net from a normal form."""
    slices = tuple(reconstruct_slice(cs, nn.conclusions, cat) for cs in nn.slices)
    net = nets.Net(name, nn.conclusions, slices, cat)
    nets.validate_net(net)
    return net


def beta_equal(n1, n2, strategy="min", seed=0):
    """Whether two nets over the same conclusions have the same normal form."""
    if n1.cat is not n2.cat:
        raise ValueError("nets over different categories")
    if n1.conclusions != n2.conclusions:
        raise ValueError("nets have different conclusions")
    return normalize(n1, strategy, seed) == normalize(n2, strategy, seed)
