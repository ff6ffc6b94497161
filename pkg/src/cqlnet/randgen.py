"""Seeded random nets and free arrows for property tests.

Generated formulas are balanced: every additive branch carries matching
dual/plain atom pairs, so every slice can be closed with axioms.  Slices are
seeded with cut chains, identity-cut towers, and closed rings so that all
rewrite rules fire on random inputs.
"""

from __future__ import annotations

from collections import Counter

from .category import Loop
from .formula import Atom, DualAtom, Literal, Plus, Tensor, Unit, star
from .freecat import FreeArrow, wiring
from .net import AxLink, CutLink, Net, SliceBuilder, validate_net


def _endos(cat, obj):
    return [f for f, (a, b) in cat.arrows.items() if a == obj and b == obj]


def balanced_formula(cat, rng, depth=2):
    """A random formula whose every additive branch pairs duals with plains."""
    roll = rng.random()
    if depth <= 0 or roll < 0.3:
        if roll < 0.08:
            return Unit()
        obj = rng.choice(cat.objects)
        return Tensor(DualAtom(obj), Atom(obj))
    left = balanced_formula(cat, rng, depth - 1)
    right = balanced_formula(cat, rng, depth - 1)
    if roll < 0.6 and not (isinstance(left, Unit) or isinstance(right, Unit)):
        return Tensor(left, right)
    return Plus(left, right)


def _branch(f, rng):
    """Random plus choices for one branch: (choice bits, leaf literals)."""
    match f:
        case Unit():
            return [], []
        case Atom(name):
            return [], [Literal(name, False)]
        case DualAtom(name):
            return [], [Literal(name, True)]
        case Tensor(l, r):
            bl, ll = _branch(l, rng)
            br, lr = _branch(r, rng)
            return bl + br, ll + lr
        case Plus(l, r):
            bit = rng.random() < 0.5
            bits, leaves = _branch(r if bit else l, rng)
            return [bit] + bits, leaves
    raise AssertionError(f"cannot sample {f!r}")


def _chain_ports(b, cat, rng, f):
    """Ports (starred end, plain end) realizing f, sometimes as a cut chain."""
    if rng.random() < 0.5:
        for _ in range(8):
            g = rng.choice(sorted(cat.arrows))
            if cat.dom(g) != cat.dom(f):
                continue
            h = rng.choice(_endos(cat, cat.cod(g)))
            pre = cat.compose(g, h)
            ks = [
                k
                for k, typ in cat.arrows.items()
                if typ == (cat.cod(pre), cat.cod(f)) and cat.compose(pre, k) == f
            ]
            if not ks:
                continue
            k = rng.choice(sorted(ks))
            a1 = b.fresh("a")
            b.links[a1] = AxLink(g)
            a2 = b.fresh("a")
            b.links[a2] = AxLink(k)
            cid = b.fresh("#c")
            b.links[cid] = CutLink(arrow=h)
            b.wires[(cid, 0)] = (a1, 1)
            b.wires[(cid, 1)] = (a2, 0)
            return (a1, 0), (a2, 1)
    lid = b.fresh("a")
    b.links[lid] = AxLink(f)
    return (lid, 0), (lid, 1)


def _add_tower(b, cat, rng, leaves):
    """An identity cut joining two freshly realized dual trees."""
    x = balanced_formula(cat, rng, depth=1)
    bits0, l0 = _branch(x, rng)
    bits1, l1 = _branch(star(x), rng)
    t0 = b.realize_choices(x, iter(bits0))
    t1 = b.realize_choices(star(x), iter(bits1))
    cid = b.fresh("#c")
    b.links[cid] = CutLink(formula=x)
    b._attach((cid, 0), t0)
    b._attach((cid, 1), t1)
    leaves.extend(l0)
    leaves.extend(l1)


def _add_ring(b, cat, rng):
    """A closed ring of two axioms joined by two labelled cuts."""
    obj = rng.choice(cat.objects)
    endos = _endos(cat, obj)
    a1 = b.fresh("a")
    b.links[a1] = AxLink(rng.choice(endos))
    a2 = b.fresh("a")
    b.links[a2] = AxLink(rng.choice(endos))
    c1 = b.fresh("#c")
    b.links[c1] = CutLink(arrow=rng.choice(endos))
    b.wires[(c1, 0)] = (a1, 1)
    b.wires[(c1, 1)] = (a2, 0)
    c2 = b.fresh("#c")
    b.links[c2] = CutLink(arrow=rng.choice(endos))
    b.wires[(c2, 0)] = (a2, 1)
    b.wires[(c2, 1)] = (a1, 0)


def random_slice(cat, rng, conclusions):
    b = SliceBuilder()
    leaves = []
    tops = []
    for f in conclusions:
        bits, ls = _branch(f, rng)
        tops.append(b.realize_choices(f, iter(bits)))
        leaves.extend(ls)
    if rng.random() < 0.5:
        _add_tower(b, cat, rng, leaves)
    if rng.random() < 0.4:
        _add_ring(b, cat, rng)
    if rng.random() < 0.3:
        obj = rng.choice(cat.objects)
        b.add_loop(cat, Loop(obj, rng.choice(_endos(cat, obj))))
    byobj = {}
    for hole, lit in enumerate(leaves):
        byobj.setdefault(lit.name, ([], []))[0 if lit.star else 1].append(hole)
    for obj, (stars, plains) in sorted(byobj.items()):
        if len(stars) != len(plains):
            raise AssertionError(f"unbalanced leaves for {obj}")
        rng.shuffle(stars)
        endos = _endos(cat, obj)
        for hs, hp in zip(stars, plains):
            p_star, p_plain = _chain_ports(b, cat, rng, rng.choice(endos))
            b.place(hs, p_star)
            b.place(hp, p_plain)
    return b.build(tops)


def _conclusion(cat, rng):
    # a bare I conclusion would leave its unit link dangling, which the
    # correctness criterion rejects
    while True:
        f = balanced_formula(cat, rng, depth=2)
        if not isinstance(f, Unit):
            return f


def random_net(cat, rng, name="random", conclusions=None, max_links=None):
    """A random valid net with 1 to 3 slices over shared conclusions.

    ``conclusions`` fixes the conclusion list instead of sampling one;
    ``max_links`` resamples until every slice fits the bound.
    """
    for _ in range(200):
        concl = conclusions
        if concl is None:
            concl = tuple(_conclusion(cat, rng) for _ in range(rng.randint(1, 2)))
        slices = tuple(
            random_slice(cat, rng, concl) for _ in range(rng.randint(1, 3))
        )
        if max_links is not None and any(len(s.links) > max_links for s in slices):
            continue
        net = Net(name, concl, slices, cat)
        validate_net(net)
        return net
    raise AssertionError("could not sample a net within the size bound")


def _balanced_word(cat, rng):
    w = []
    for _ in range(rng.randint(0, 2)):
        obj = rng.choice(cat.objects)
        pair = [Literal(obj, True), Literal(obj, False)]
        rng.shuffle(pair)
        w.extend(pair)
    return tuple(w)


def random_anf(cat, rng):
    return tuple(_balanced_word(cat, rng) for _ in range(rng.randint(1, 3)))


def random_wiring(cat, rng, domw, codw):
    bnd = [lit.dual() for lit in domw] + list(codw)
    byobj = {}
    for k, lit in enumerate(bnd):
        byobj.setdefault(lit.name, ([], []))[0 if lit.star else 1].append(k)
    pairs = []
    for obj, (negs, poss) in sorted(byobj.items()):
        endos = _endos(cat, obj)
        rng.shuffle(negs)
        for neg, pos in zip(negs, poss):
            pairs.append((neg, pos, rng.choice(endos)))
    loops = []
    if rng.random() < 0.3:
        obj = rng.choice(cat.objects)
        loops.append(cat.loop_of(rng.choice(_endos(cat, obj))))
    return wiring(domw, codw, pairs, loops, cat)


def random_free_arrow(cat, rng):
    """A random free arrow between balanced additive normal forms."""
    dom = random_anf(cat, rng)
    cod = random_anf(cat, rng)
    entries = {}
    for i in range(len(cod)):
        for j in range(len(dom)):
            if rng.random() < 0.35:
                continue
            c = Counter()
            for _ in range(rng.randint(1, 2)):
                c[random_wiring(cat, rng, dom[j], cod[i])] += rng.randint(1, 2)
            entries[(i, j)] = c
    return FreeArrow(cat, dom, cod, entries)
