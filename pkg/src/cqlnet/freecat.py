"""The free strongly compact closed category with biproducts over a category.

Objects are additive normal forms (tuples of tensor words); an arrow is a
matrix of finite multisets of wirings.  A wiring between two words pairs up
the starred and unstarred literals on its boundary (the starred duals of the
domain word followed by the codomain word), labels each pair with a
generating arrow whose domain sits at the starred end, and carries a multiset
of loop classes.  Composition traces paths through the shared interface;
cycles that close up inside the interface become loops.

``denote`` interprets a proof net here; ``complete`` goes back, rebuilding a
net from any arrow, one slice per wiring.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass

from . import net as nets
from .category import Loop
from .errors import ParseError
from .formula import (
    Atom,
    DualAtom,
    Plus,
    Tensor,
    Unit,
    anf,
    anf_formula,
    anf_kron,
    anf_kron_all,
    anf_star,
    fmt_anf,
    parse_anf,
    split_commas,
    star,
)

UNIT = ((),)


def boundary(dom, cod):
    """Boundary literals of a wiring: duals of the domain word, then the codomain."""
    return tuple(lit.dual() for lit in dom) + tuple(cod)


@dataclass(frozen=True)
class Wiring:
    """A pairing of boundary literals with arrow labels, plus loop classes.

    ``pairs`` holds (negative position, positive position, arrow) with the
    arrow's domain at the negative (starred) end; positions index the
    boundary.  ``loops`` is a sorted multiset of loop classes.
    """

    dom: tuple
    cod: tuple
    pairs: tuple
    loops: tuple


def wiring(dom, cod, pairs, loops=(), cat=None):
    """Build a wiring in canonical order, checking the pairing is well-typed."""
    dom, cod = tuple(dom), tuple(cod)
    bnd = boundary(dom, cod)
    used = [0] * len(bnd)
    for neg, pos, f in pairs:
        if not (0 <= neg < len(bnd) and 0 <= pos < len(bnd)):
            raise ValueError(f"pair ({neg}, {pos}) out of range")
        if not bnd[neg].star or bnd[pos].star:
            raise ValueError(f"pair ({neg}, {pos}) has wrong polarity")
        used[neg] += 1
        used[pos] += 1
        if cat is not None:
            if cat.dom(f) != bnd[neg].name or cat.cod(f) != bnd[pos].name:
                raise ValueError(
                    f"label {f}: {cat.dom(f)} -> {cat.cod(f)} does not join "
                    f"{bnd[neg]} to {bnd[pos]}"
                )
    if any(u != 1 for u in used):
        raise ValueError("pairs must cover every boundary position exactly once")
    pairs = tuple(sorted(pairs, key=lambda p: min(p[0], p[1])))
    loops = tuple(sorted(loops))
    if cat is not None:
        for lp in loops:
            if not isinstance(lp, Loop):
                raise ValueError(f"bad loop {lp!r}")
    return Wiring(dom, cod, pairs, loops)


def wiring_compose(cat, t1, t2):
    """Path composition: glue t1's codomain to t2's domain, trace the strands."""
    if t1.cod != t2.dom:
        raise ValueError("wiring composition: interface words differ")
    n1, m = len(t1.dom), len(t1.cod)
    partner = {}
    label_at = {}
    for neg, pos, f in t1.pairs:
        partner[("a", neg)] = ("a", pos)
        label_at[("a", neg)] = f
    for neg, pos, f in t2.pairs:
        partner[("b", neg)] = ("b", pos)
        label_at[("b", neg)] = f

    def cross(node):
        # interface: t1 codomain position <-> t2 star(dom) position
        side, k = node
        if side == "a" and k >= n1:
            return ("b", k - n1)
        if side == "b" and k < m:
            return ("a", k + n1)
        return None

    def to_out(node):
        side, k = node
        return k if side == "a" else n1 + (k - m)

    starts = [("a", p) for p in range(n1) if t1.dom[p].dual().star]
    starts += [("b", m + q) for q in range(len(t2.cod)) if t2.cod[q].star]
    visited = set()
    out_pairs = []
    for start in starts:
        acc = None
        cur = start
        while True:
            f = label_at[cur]
            acc = f if acc is None else cat.compose(acc, f)
            visited.add(cur)
            nxt = partner[cur]
            crossed = cross(nxt)
            if crossed is None:
                out_pairs.append((to_out(start), to_out(nxt), acc))
                break
            cur = crossed
    cycles = []
    for start in sorted(set(partner) - visited):
        if start in visited:
            continue
        acc = None
        cur = start
        while True:
            f = label_at[cur]
            acc = f if acc is None else cat.compose(acc, f)
            visited.add(cur)
            cur = cross(partner[cur])
            if cur == start:
                break
        cycles.append(cat.loop_of(acc))
    loops = t1.loops + t2.loops + tuple(cycles)
    return wiring(t1.dom, t2.cod, out_pairs, loops, cat)


def wiring_tensor(cat, t1, t2):
    n1, m1 = len(t1.dom), len(t1.cod)
    n2, m2 = len(t2.dom), len(t2.cod)
    n = n1 + n2

    def map1(p):
        return p if p < n1 else n + (p - n1)

    def map2(p):
        return n1 + p if p < n2 else n + m1 + (p - n2)

    pairs = [(map1(a), map1(b), f) for a, b, f in t1.pairs]
    pairs += [(map2(a), map2(b), f) for a, b, f in t2.pairs]
    return wiring(t1.dom + t2.dom, t1.cod + t2.cod, pairs, t1.loops + t2.loops, cat)


def wiring_dagger(cat, t):
    n, m = len(t.dom), len(t.cod)

    def flip(p):
        return m + p if p < n else p - n

    pairs = [(flip(pos), flip(neg), cat.dagger(f)) for neg, pos, f in t.pairs]
    loops = [cat.loop_dagger(lp) for lp in t.loops]
    return wiring(t.cod, t.dom, pairs, loops, cat)


def wiring_dual(t, cat=None):
    n, m = len(t.dom), len(t.cod)

    def shift(p):
        return m + p if p < n else p - n

    pairs = [(shift(neg), shift(pos), f) for neg, pos, f in t.pairs]
    return wiring(
        tuple(l.dual() for l in t.cod), tuple(l.dual() for l in t.dom), pairs, t.loops, cat
    )


def wiring_name(t):
    """Reinterpret u -> v as I -> star(u) ++ v; same boundary, same pairing."""
    return Wiring((), boundary(t.dom, t.cod), t.pairs, t.loops)


def wiring_coname(t):
    """Reinterpret u -> v as u ++ star(v) -> I; same boundary, same pairing."""
    return Wiring(t.dom + tuple(l.dual() for l in t.cod), (), t.pairs, t.loops)


# ---------------------------------------------------------------------------
# free arrows


class FreeArrow:
    """A matrix of wiring multisets between two ANFs over a fixed category.

    ``entries[(i, j)]`` is a Counter of wirings from dom word j to cod word i;
    missing entries are zero.  ``>>`` composes left-to-right, ``@`` tensors,
    ``+`` adds.
    """

    __slots__ = ("cat", "dom", "cod", "entries")

    def __init__(self, cat, dom, cod, entries):
        self.cat = cat
        self.dom = tuple(tuple(w) for w in dom)
        self.cod = tuple(tuple(w) for w in cod)
        norm = {}
        for (i, j), multi in entries.items():
            if not (0 <= i < len(self.cod) and 0 <= j < len(self.dom)):
                raise ValueError(f"entry ({i}, {j}) out of range")
            c = Counter()
            for t, mult in Counter(multi).items():
                if mult <= 0:
                    continue
                if t.dom != self.dom[j] or t.cod != self.cod[i]:
                    raise ValueError(f"entry ({i}, {j}): wiring has wrong words")
                c[t] = mult
            if c:
                norm[(i, j)] = c
        self.entries = norm

    def _like(self, other):
        if not isinstance(other, FreeArrow):
            raise TypeError(f"not a free arrow: {other!r}")
        if other.cat is not self.cat:
            raise ValueError("free arrows over different categories")

    def then(self, other):
        """The composite: self followed by other."""
        self._like(other)
        if self.cod != other.dom:
            raise ValueError(
                f"compose: {fmt_anf(self.cod)} does not match {fmt_anf(other.dom)}"
            )
        out = {}
        for (i, j), c2 in other.entries.items():
            for (jj, k), c1 in self.entries.items():
                if jj != j:
                    continue
                tgt = out.setdefault((i, k), Counter())
                for t1, m1 in c1.items():
                    for t2, m2 in c2.items():
                        tgt[wiring_compose(self.cat, t1, t2)] += m1 * m2
        return FreeArrow(self.cat, self.dom, other.cod, out)

    def tensor(self, other):
        self._like(other)
        out = {}
        for (i1, j1), c1 in self.entries.items():
            for (i2, j2), c2 in other.entries.items():
                key = (i1 * len(other.cod) + i2, j1 * len(other.dom) + j2)
                tgt = out.setdefault(key, Counter())
                for t1, m1 in c1.items():
                    for t2, m2 in c2.items():
                        tgt[wiring_tensor(self.cat, t1, t2)] += m1 * m2
        return FreeArrow(
            self.cat,
            anf_kron(self.dom, other.dom),
            anf_kron(self.cod, other.cod),
            out,
        )

    def dagger(self):
        out = {}
        for (i, j), c in self.entries.items():
            out[(j, i)] = Counter(
                {wiring_dagger(self.cat, t): m for t, m in c.items()}
            )
        return FreeArrow(self.cat, self.cod, self.dom, out)

    def dual(self):
        """The contravariant duality A -> B into B* -> A*."""
        out = {}
        for (i, j), c in self.entries.items():
            out[(j, i)] = Counter({wiring_dual(t, self.cat): m for t, m in c.items()})
        return FreeArrow(self.cat, anf_star(self.cod), anf_star(self.dom), out)

    def add(self, other):
        self._like(other)
        if self.dom != other.dom or self.cod != other.cod:
            raise ValueError("add: shapes differ")
        out = {}
        for key in set(self.entries) | set(other.entries):
            out[key] = self.entries.get(key, Counter()) + other.entries.get(key, Counter())
        return FreeArrow(self.cat, self.dom, self.cod, out)

    def scale(self, s):
        """Multiply by a scalar (an arrow I -> I)."""
        self._like(s)
        if s.dom != UNIT or s.cod != UNIT:
            raise ValueError("scale: not a scalar")
        return s.tensor(self)

    def __rshift__(self, other):
        return self.then(other)

    def __matmul__(self, other):
        return self.tensor(other)

    def __add__(self, other):
        return self.add(other)

    def __eq__(self, other):
        if not isinstance(other, FreeArrow):
            return NotImplemented
        return (
            self.cat is other.cat
            and self.dom == other.dom
            and self.cod == other.cod
            and self.entries == other.entries
        )

    def __hash__(self):
        raise TypeError("free arrows are not hashable")

    def __str__(self):
        return fmt_arrow(self)


def fa_equal(f, g):
    """Decide equality of two free arrows with the same shape."""
    if not isinstance(f, FreeArrow) or not isinstance(g, FreeArrow):
        raise TypeError("fa_equal wants two free arrows")
    f._like(g)
    if f.dom != g.dom or f.cod != g.cod:
        raise ValueError(
            f"fa_equal: shapes differ: {fmt_anf(f.dom)} -> {fmt_anf(f.cod)} vs "
            f"{fmt_anf(g.dom)} -> {fmt_anf(g.cod)}"
        )
    return f.entries == g.entries


# ---------------------------------------------------------------------------
# constructors


def _id_pairs(cat, w, neg_base, pos_base):
    """Pairs joining star(w) at neg_base to w at pos_base with identities."""
    pairs = []
    for k, lit in enumerate(w):
        a, b = neg_base + k, pos_base + k
        if lit.star:
            a, b = b, a
        pairs.append((a, b, cat.identity(lit.name)))
    return pairs


def _id_wiring(cat, w):
    return wiring(w, w, _id_pairs(cat, w, 0, len(w)), (), cat)


def identity(cat, a):
    a = tuple(a)
    return FreeArrow(
        cat, a, a, {(i, i): Counter({_id_wiring(cat, w): 1}) for i, w in enumerate(a)}
    )


def zero(cat, dom, cod):
    return FreeArrow(cat, dom, cod, {})


def embed(cat, f):
    """A generating arrow as a free arrow between singleton words."""
    from .formula import Literal

    u = (Literal(cat.dom(f)),)
    v = (Literal(cat.cod(f)),)
    return FreeArrow(
        cat, (u,), (v,), {(0, 0): Counter({wiring(u, v, [(0, 1, f)], (), cat): 1})}
    )


def _cap_pairs(cat, w):
    # boundary is star(w) ++ w, positions k and len(w) + k
    return _id_pairs(cat, w, 0, len(w))


def eta(cat, a):
    """I -> star(A) x A, the diagonal of caps."""
    a = tuple(a)
    cod = anf_kron(anf_star(a), a)
    entries = {}
    for i, w in enumerate(a):
        t = wiring((), tuple(l.dual() for l in w) + w, _cap_pairs(cat, w), (), cat)
        entries[(i * len(a) + i, 0)] = Counter({t: 1})
    return FreeArrow(cat, UNIT, cod, entries)


def epsilon(cat, a):
    """A x star(A) -> I, the codiagonal of cups."""
    a = tuple(a)
    dom = anf_kron(a, anf_star(a))
    entries = {}
    for i, w in enumerate(a):
        t = wiring(w + tuple(l.dual() for l in w), (), _cap_pairs(cat, w), (), cat)
        entries[(0, i * len(a) + i)] = Counter({t: 1})
    return FreeArrow(cat, dom, UNIT, entries)


def name_of(fa):
    """A -> B into I -> star(A) x B by bending the domain up."""
    cod = anf_kron(anf_star(fa.dom), fa.cod)
    out = {}
    for (i, j), c in fa.entries.items():
        row = j * len(fa.cod) + i
        out[(row, 0)] = Counter({wiring_name(t): m for t, m in c.items()})
    return FreeArrow(fa.cat, UNIT, cod, out)


def coname_of(fa):
    """A -> B into A x star(B) -> I by bending the codomain down."""
    dom = anf_kron(fa.dom, anf_star(fa.cod))
    out = {}
    for (i, j), c in fa.entries.items():
        col = j * len(fa.cod) + i
        out[(0, col)] = Counter({wiring_coname(t): m for t, m in c.items()})
    return FreeArrow(fa.cat, dom, UNIT, out)


def injection(cat, parts, k):
    """The k-th biproduct injection parts[k] -> parts[0] + ... + parts[n-1]."""
    parts = [tuple(p) for p in parts]
    cod = tuple(w for p in parts for w in p)
    off = sum(len(p) for p in parts[:k])
    entries = {
        (off + i, i): Counter({_id_wiring(cat, w): 1}) for i, w in enumerate(parts[k])
    }
    return FreeArrow(cat, parts[k], cod, entries)


def projection(cat, parts, k):
    """The k-th biproduct projection, the dagger of the injection."""
    return injection(cat, parts, k).dagger()


def permutation(cat, factors, perm):
    """Permute tensor factors: codomain position t holds factors[perm[t]]."""
    factors = [tuple(f) for f in factors]
    if sorted(perm) != list(range(len(factors))):
        raise ValueError(f"not a permutation: {perm}")
    dom = anf_kron_all(factors)
    cod = anf_kron_all([factors[p] for p in perm])
    lens = [len(f) for f in factors]
    entries = {}
    for multi in itertools.product(*[range(n) for n in lens]):
        words = [factors[s][multi[s]] for s in range(len(factors))]
        dom_word = tuple(lit for w in words for lit in w)
        cod_word = tuple(lit for p in perm for lit in words[p])
        j = 0
        for s, n in zip(multi, lens):
            j = j * n + s
        i = 0
        for t in range(len(perm)):
            i = i * lens[perm[t]] + multi[perm[t]]
        dom_off = [0]
        for w in words:
            dom_off.append(dom_off[-1] + len(w))
        cod_off = {}
        run = 0
        for t, p in enumerate(perm):
            cod_off[p] = run
            run += len(words[p])
        pairs = []
        for s, w in enumerate(words):
            for k, lit in enumerate(w):
                a = dom_off[s] + k
                b = len(dom_word) + cod_off[s] + k
                if lit.star:
                    a, b = b, a
                pairs.append((a, b, cat.identity(lit.name)))
        entries[(i, j)] = Counter({wiring(dom_word, cod_word, pairs, (), cat): 1})
    return FreeArrow(cat, dom, cod, entries)


def symmetry(cat, a, b):
    return permutation(cat, [a, b], [1, 0])


def scalar(cat, loops, mult=1):
    """The scalar I -> I carrying the given loop classes."""
    t = wiring((), (), (), tuple(sorted(loops)), cat)
    return FreeArrow(cat, UNIT, UNIT, {(0, 0): Counter({t: mult})})


def trace_arrow(f, a, b, c):
    """Partial trace over c of f: a x c -> b x c."""
    cat = f.cat
    a, b, c = tuple(a), tuple(b), tuple(c)
    if f.dom != anf_kron(a, c) or f.cod != anf_kron(b, c):
        raise ValueError("trace: shape mismatch")
    sc = anf_star(c)
    first = identity(cat, a) @ eta(cat, sc)
    mid = f @ identity(cat, sc)
    last = identity(cat, b) @ epsilon(cat, c)
    return first >> mid >> last


# ---------------------------------------------------------------------------
# denotation of nets


def denote_slice(s, cat, conclusions):
    """The arrow I -> tensor of the conclusions denoted by one slice."""
    labs = nets.labels(s, cat)
    edges = []  # (producing port, ANF)
    d = identity(cat, UNIT)

    def edge_index(port):
        for k, (p, _) in enumerate(edges):
            if p == port:
                return k
        raise AssertionError(f"no open edge for {port}")

    def bring_together(p1, p2):
        """Permute edges so p1, p2 sit adjacent (in that order); return index."""
        i1, i2 = edge_index(p1), edge_index(p2)
        rest = [k for k in range(len(edges)) if k not in (i1, i2)]
        at = sum(1 for k in rest if k < min(i1, i2))
        order = rest[:at] + [i1, i2] + rest[at:]
        nonlocal d
        if order != list(range(len(edges))):
            d = d >> permutation(cat, [e[1] for e in edges], order)
            edges[:] = [edges[k] for k in order]
        return at

    def apply_at(pos, count, arrow, new_edges):
        nonlocal d
        pre = anf_kron_all([e[1] for e in edges[:pos]])
        post = anf_kron_all([e[1] for e in edges[pos + count:]])
        lifted = identity(cat, pre) @ arrow @ identity(cat, post)
        d = d >> lifted
        edges[pos : pos + count] = new_edges

    for lid in nets.topo_order(s):
        link = s.links[lid]
        if isinstance(link, nets.AxLink):
            d = d @ name_of(embed(cat, link.arrow))
            edges.append(((lid, 0), anf(labs[(lid, 0)])))
            edges.append(((lid, 1), anf(labs[(lid, 1)])))
        elif isinstance(link, nets.UnitLink):
            edges.append(((lid, 0), UNIT))
        elif isinstance(link, nets.TimesLink):
            p0, p1 = s.wires[(lid, 0)], s.wires[(lid, 1)]
            at = bring_together(p0, p1)
            merged = anf_kron(edges[at][1], edges[at + 1][1])
            edges[at : at + 2] = [((lid, 0), merged)]
        elif isinstance(link, nets.Plus1Link):
            p = s.wires[(lid, 0)]
            at = edge_index(p)
            a_here = edges[at][1]
            arrow = injection(cat, [a_here, anf(link.other)], 0)
            apply_at(at, 1, arrow, [((lid, 0), arrow.cod)])
        elif isinstance(link, nets.Plus2Link):
            p = s.wires[(lid, 0)]
            at = edge_index(p)
            a_here = edges[at][1]
            arrow = injection(cat, [anf(link.other), a_here], 1)
            apply_at(at, 1, arrow, [((lid, 0), arrow.cod)])
        elif isinstance(link, nets.CutLink):
            if link.arrow is not None:
                sp, ss = nets.cut_sides(s, cat, lid)
                p_plain = s.wires[(lid, sp)]
                p_star = s.wires[(lid, ss)]
                at = bring_together(p_plain, p_star)
                apply_at(at, 2, coname_of(embed(cat, link.arrow)), [])
            else:
                p0, p1 = s.wires[(lid, 0)], s.wires[(lid, 1)]
                at = bring_together(p0, p1)
                apply_at(at, 2, epsilon(cat, edges[at][1]), [])

    if [p for p, _ in edges] != list(s.outs):
        order = [edge_index(p) for p in s.outs]
        d = d >> permutation(cat, [e[1] for e in edges], order)
    want = anf_kron_all([anf(f) for f in conclusions])
    if d.cod != want:
        raise AssertionError("denotation has unexpected codomain")
    return d


def denote(net):
    """The arrow denoted by a net: the sum over its slices."""
    cat = net.cat
    cod = anf_kron_all([anf(f) for f in net.conclusions])
    out = zero(cat, UNIT, cod)
    for s in net.slices:
        out = out + denote_slice(s, cat, net.conclusions)
    return out


# ---------------------------------------------------------------------------
# completeness: rebuild a net from an arrow


def complete(fa, name="completed"):
    """A net whose denotation is the name of ``fa``, one slice per wiring.

    Conclusions are (star of the domain, codomain) as canonical formulas,
    omitting a side that is bare I.  Each wiring becomes the slice realizing
    its matrix entry's plus branches, with one axiom per pair and one closed
    loop per loop class.
    """
    cat = fa.cat
    concl = []
    dom_f = anf_formula(anf_star(fa.dom))
    cod_f = anf_formula(fa.cod)
    keep_dom = fa.dom != UNIT
    keep_cod = fa.cod != UNIT
    if keep_dom:
        concl.append(dom_f)
    if keep_cod:
        concl.append(cod_f)

    slices = []
    for (i, j) in sorted(fa.entries):
        by_key = sorted(
            fa.entries[(i, j)].items(), key=lambda kv: (kv[0].pairs, kv[0].loops)
        )
        for t, mult in by_key:
            for _ in range(mult):
                b = nets.SliceBuilder()
                tops = []
                if keep_dom:
                    tops.append(b.realize_component(dom_f, j))
                if keep_cod:
                    tops.append(b.realize_component(cod_f, i))
                # hole order matches boundary order: star(dom word), then cod word
                for neg, pos, g in t.pairs:
                    lid = b.fresh("a")
                    b.links[lid] = nets.AxLink(g)
                    b.place(neg, (lid, 0))
                    b.place(pos, (lid, 1))
                for lp in t.loops:
                    b.add_loop(cat, lp)
                slices.append(b.build(tops))
    net = nets.Net(name, tuple(concl), tuple(slices), cat)
    nets.validate_net(net)
    return net


# ---------------------------------------------------------------------------
# text format


def fmt_wiring(t):
    pp = " , ".join(f"{neg}<->{pos} : {f}" for neg, pos, f in t.pairs)
    lp = " , ".join(str(lp) for lp in t.loops)
    pp = f" {pp}" if pp else ""
    lp = f" {lp}" if lp else ""
    return f"(pairs:{pp}; loops:{lp})"


def fmt_arrow(fa):
    lines = [f"arrow : {fmt_anf(fa.dom)} -> {fmt_anf(fa.cod)}"]
    for (i, j) in sorted(fa.entries):
        c = fa.entries[(i, j)]
        parts = []
        for t in sorted(c, key=lambda t: (t.pairs, t.loops)):
            parts.extend([fmt_wiring(t)] * c[t])
        lines.append(f"entry ({i},{j}): {{ " + " , ".join(parts) + " }")
    return "\n".join(lines) + "\n"


def _parse_wiring(text, dom, cod, cat, lineno):
    text = text.strip()
    if not (text.startswith("(") and text.endswith(")")):
        raise ParseError(lineno, f"bad wiring {text!r}")
    body = text[1:-1]
    ppart, semi, lpart = body.partition(";")
    ppart = ppart.strip()
    lpart = lpart.strip()
    if not semi or not ppart.startswith("pairs:") or not lpart.startswith("loops:"):
        raise ParseError(lineno, "wiring wants '(pairs: ...; loops: ...)'")
    pairs = []
    ptext = ppart[len("pairs:"):].strip()
    if ptext:
        for item in ptext.split(","):
            pp, colon, label = item.partition(":")
            a, arrowsym, btxt = pp.partition("<->")
            if not colon or not arrowsym:
                raise ParseError(lineno, f"bad pair {item.strip()!r}")
            label = " ".join(label.split())
            if label not in cat.arrows:
                raise ParseError(lineno, f"unknown arrow {label!r}")
            pairs.append((int(a), int(btxt), label))
    loops = []
    ltext = lpart[len("loops:"):].strip()
    if ltext:
        for item in ltext.split(","):
            item = item.strip()
            if not (item.startswith("[") and item.endswith("]")):
                raise ParseError(lineno, f"bad loop {item!r}")
            obj, colon, arrow = item[1:-1].partition(":")
            obj = obj.strip()
            arrow = " ".join(arrow.split())
            if not colon or obj not in cat.objects or arrow not in cat.arrows:
                raise ParseError(lineno, f"bad loop {item!r}")
            if cat.dom(arrow) != obj or cat.cod(arrow) != obj:
                raise ParseError(lineno, f"loop arrow {arrow} is not an endo of {obj}")
            loops.append(cat.loop_of(arrow))
    try:
        return wiring(dom, cod, pairs, loops, cat)
    except ValueError as exc:
        raise ParseError(lineno, str(exc)) from exc


def parse_arrow(text, cat):
    """Parse the textual form produced by fmt_arrow."""
    dom = cod = None
    entries = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "arrow":
            if dom is not None:
                raise ParseError(lineno, "duplicate arrow line")
            _, colon, sig = rest.partition(":") if not rest.startswith(":") else ("", ":", rest[1:])
            if not colon:
                raise ParseError(lineno, "expected 'arrow : dom -> cod'")
            dtext, arr, ctext = sig.partition("->")
            if not arr:
                raise ParseError(lineno, "expected 'arrow : dom -> cod'")
            dom = parse_anf(dtext, cat, lineno)
            cod = parse_anf(ctext, cat, lineno)
        elif head == "entry":
            if dom is None:
                raise ParseError(lineno, "entry before arrow line")
            idx, colon, body = rest.partition(":")
            idx = idx.strip()
            body = body.strip()
            if not colon or not (idx.startswith("(") and idx.endswith(")")):
                raise ParseError(lineno, "expected 'entry (i,j): { ... }'")
            try:
                i, j = (int(p) for p in idx[1:-1].split(","))
            except ValueError as exc:
                raise ParseError(lineno, f"bad entry index {idx!r}") from exc
            if not (0 <= i < len(cod) and 0 <= j < len(dom)):
                raise ParseError(lineno, f"entry index {idx} out of range")
            if not (body.startswith("{") and body.endswith("}")):
                raise ParseError(lineno, "expected 'entry (i,j): { ... }'")
            inner = body[1:-1].strip()
            c = entries.setdefault((i, j), Counter())
            if inner:
                for wtext in split_commas(inner):
                    c[_parse_wiring(wtext, dom[j], cod[i], cat, lineno)] += 1
        else:
            raise ParseError(lineno, f"unknown directive {head!r}")
    if dom is None:
        raise ParseError(1, "missing arrow line")
    return FreeArrow(cat, dom, cod, entries)
