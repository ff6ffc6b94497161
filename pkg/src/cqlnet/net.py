"""Proof nets: slices of links wired together, with validation and printing.

A net is a finite multiset of slices over a shared conclusion list.  Each
slice is a set of links (axioms, cuts, times, plus, unit) wired output-to-
input, with every dangling output listed in order on the ``out`` line.

Ports are written ``<link id>.<slot>``; axioms have outputs 0 and 1, the
other producing links output 0.  Cuts have no outputs and no written id.
"""

from __future__ import annotations

from dataclasses import dataclass

from .category import Category
from .errors import NetError, ParseError
from .formula import (
    Atom,
    DualAtom,
    Formula,
    Plus,
    Tensor,
    Unit,
    Zero,
    fmt,
    parse_formula,
    split_commas,
    star,
    validate,
)

Port = tuple[str, int]


@dataclass(frozen=True)
class AxLink:
    """Axiom for an arrow f: A -> B; outputs 0: A*, 1: B."""

    arrow: str


@dataclass(frozen=True)
class CutLink:
    """A cut; either arrow-labelled (atoms) or an identity cut on a formula.

    Exactly one of ``arrow``/``formula`` is set.  Atom-level identity cuts are
    normalized to arrow cuts labelled ``id A``.  For formula cuts, ``formula``
    is the label of input 0 and input 1 carries its dual.
    """

    arrow: str | None = None
    formula: Formula | None = None


@dataclass(frozen=True)
class TimesLink:
    """Inputs 0: A, 1: B; output 0: (A x B)."""


@dataclass(frozen=True)
class Plus1Link:
    """Input 0: A; output 0: (A + other)."""

    other: Formula


@dataclass(frozen=True)
class Plus2Link:
    """Input 0: B; output 0: (other + B)."""

    other: Formula


@dataclass(frozen=True)
class UnitLink:
    """No inputs; output 0: I."""


Link = AxLink | CutLink | TimesLink | Plus1Link | Plus2Link | UnitLink


def out_arity(link):
    if isinstance(link, AxLink):
        return 2
    if isinstance(link, CutLink):
        return 0
    return 1


def in_arity(link):
    if isinstance(link, (CutLink, TimesLink)):
        return 2
    if isinstance(link, (Plus1Link, Plus2Link)):
        return 1
    return 0


@dataclass
class Slice:
    """One slice: links, wires (input port -> producing output port), outs."""

    links: dict[str, Link]
    wires: dict[Port, Port]
    outs: tuple[Port, ...]

    def consumers(self):
        """Reverse wire map: producing output port -> consuming input port."""
        rev = {}
        for inp, outp in self.wires.items():
            rev[outp] = inp
        return rev


@dataclass
class Net:
    name: str
    conclusions: tuple[Formula, ...]
    slices: tuple[Slice, ...]
    cat: Category

    def __str__(self):
        return print_net(self)


def labels(slice_, cat):
    """Formula label of every output port; raises NetError on cyclic wiring."""
    memo = {}
    state = {}

    def lab(port):
        if port in memo:
            return memo[port]
        if state.get(port) == "open":
            raise NetError("cyclic wiring")
        state[port] = "open"
        lid, slot = port
        link = slice_.links[lid]
        if isinstance(link, AxLink):
            a, b = cat.dom(link.arrow), cat.cod(link.arrow)
            out = DualAtom(a) if slot == 0 else Atom(b)
        elif isinstance(link, UnitLink):
            out = Unit()
        elif isinstance(link, TimesLink):
            l0 = lab(slice_.wires[(lid, 0)])
            l1 = lab(slice_.wires[(lid, 1)])
            if isinstance(l0, Unit) or isinstance(l1, Unit):
                raise NetError(f"times {lid}: I may not appear under x")
            out = Tensor(l0, l1)
        elif isinstance(link, Plus1Link):
            out = Plus(lab(slice_.wires[(lid, 0)]), link.other)
        elif isinstance(link, Plus2Link):
            out = Plus(link.other, lab(slice_.wires[(lid, 0)]))
        else:
            raise NetError(f"link {lid} has no outputs")
        state[port] = "done"
        memo[port] = out
        return out

    for lid, link in slice_.links.items():
        for slot in range(out_arity(link)):
            lab((lid, slot))
    return memo


def cut_sides(slice_, cat, cid):
    """Orient a cut: (plain-side input slot, starred-side input slot).

    For an arrow cut labelled g the plain side carries dom(g) and the starred
    side (cod g)*.  For a formula cut the plain side is the one labelled by
    the stored formula.
    """
    link = slice_.links[cid]
    labs = labels(slice_, cat)
    l0 = labs[slice_.wires[(cid, 0)]]
    l1 = labs[slice_.wires[(cid, 1)]]
    if link.arrow is not None:
        plain = Atom(cat.dom(link.arrow))
        starred = DualAtom(cat.cod(link.arrow))
        if (l0, l1) == (plain, starred):
            return 0, 1
        if (l1, l0) == (plain, starred):
            return 1, 0
        raise NetError(f"cut {link.arrow}: inputs {fmt(l0)}, {fmt(l1)} do not match")
    if l0 == link.formula and l1 == star(link.formula):
        return 0, 1
    raise NetError(f"identity cut on {fmt(link.formula)}: inputs do not match")


def validate_slice(slice_, cat, conclusions):
    """Well-formedness of one slice against the net's conclusion list."""
    seen_out = {}
    for lid, link in slice_.links.items():
        for slot in range(out_arity(link)):
            seen_out[(lid, slot)] = 0
    want_in = set()
    for lid, link in slice_.links.items():
        for slot in range(in_arity(link)):
            want_in.add((lid, slot))
    if set(slice_.wires.keys()) != want_in:
        missing = want_in - set(slice_.wires.keys())
        extra = set(slice_.wires.keys()) - want_in
        raise NetError(f"bad wiring: missing inputs {sorted(missing)}, stray {sorted(extra)}")
    for inp, outp in slice_.wires.items():
        if outp not in seen_out:
            raise NetError(f"wire into {inp} from unknown port {outp}")
        seen_out[outp] += 1
    for port in slice_.outs:
        if port not in seen_out:
            raise NetError(f"out lists unknown port {port}")
        seen_out[port] += 1
    for port, n in seen_out.items():
        if n != 1:
            raise NetError(f"port {port[0]}.{port[1]} used {n} times, want exactly 1")

    labs = labels(slice_, cat)

    if len(slice_.outs) != len(conclusions):
        raise NetError(
            f"slice has {len(slice_.outs)} conclusions, net declares {len(conclusions)}"
        )
    for port, want in zip(slice_.outs, conclusions):
        got = labs[port]
        if got != want:
            raise NetError(f"conclusion mismatch: {fmt(got)} at {port[0]}.{port[1]}, want {fmt(want)}")

    rev = slice_.consumers()
    for lid, link in slice_.links.items():
        if isinstance(link, CutLink):
            cut_sides(slice_, cat, lid)
        if isinstance(link, UnitLink):
            consumer = rev.get((lid, 0))
            if consumer is None:
                raise NetError(f"unit {lid} feeds a conclusion; I must meet a plus or id cut")
            clink = slice_.links[consumer[0]]
            ok = isinstance(clink, (Plus1Link, Plus2Link)) or (
                isinstance(clink, CutLink) and clink.formula == Unit()
            )
            if not ok:
                raise NetError(f"unit {lid} must feed a plus link or an id cut on I")


def validate_net(net):
    for f in net.conclusions:
        validate(f, net.cat)
        if f == Zero() and net.slices:
            raise NetError("a net with conclusion 0 must have no slices")
    for s in net.slices:
        validate_slice(s, net.cat, net.conclusions)


# ---------------------------------------------------------------------------
# programmatic construction


class SliceBuilder:
    """Accumulates links for one slice, leaving holes for axiom outputs.

    ``realize_component``/``realize_choices`` build the link tree under one
    conclusion, picking a branch at every plus; atom leaves become numbered
    holes in left-to-right order, filled by ``place`` once axioms exist.
    """

    def __init__(self):
        self.links = {}
        self.wires = {}
        self.holes = []
        self.hole_sites = {}
        self.counts = {}

    def fresh(self, prefix):
        n = self.counts.get(prefix, 0)
        self.counts[prefix] = n + 1
        return f"{prefix}{n}"

    def _leaf(self):
        hole = len(self.holes)
        self.holes.append(None)
        return ("#hole", hole)

    def _attach(self, input_port, below):
        if below[0] == "#hole":
            self.hole_sites[below[1]] = input_port
        else:
            self.wires[input_port] = below

    def _times(self, below_l, below_r):
        lid = self.fresh("t")
        self.links[lid] = TimesLink()
        self._attach((lid, 0), below_l)
        self._attach((lid, 1), below_r)
        return (lid, 0)

    def _plus(self, right_chosen, below, other):
        lid = self.fresh("p")
        self.links[lid] = Plus2Link(other) if right_chosen else Plus1Link(other)
        self._attach((lid, 0), below)
        return (lid, 0)

    def _unit(self):
        lid = self.fresh("u")
        self.links[lid] = UnitLink()
        return (lid, 0)

    def realize_component(self, formula, comp):
        """Realize the branch picking ANF component ``comp`` of ``formula``."""
        from .formula import anf as _anf

        match formula:
            case Unit():
                return self._unit()
            case Atom(_) | DualAtom(_):
                return self._leaf()
            case Tensor(l, r):
                nr = len(_anf(r))
                below_l = self.realize_component(l, comp // nr)
                below_r = self.realize_component(r, comp % nr)
                return self._times(below_l, below_r)
            case Plus(l, r):
                nl = len(_anf(l))
                if comp < nl:
                    return self._plus(False, self.realize_component(l, comp), r)
                return self._plus(True, self.realize_component(r, comp - nl), l)
        raise AssertionError(f"cannot realize {formula!r}")

    def realize_choices(self, formula, choices):
        """Realize branches following an iterator of plus bits (True = right)."""
        match formula:
            case Unit():
                return self._unit()
            case Atom(_) | DualAtom(_):
                return self._leaf()
            case Tensor(l, r):
                below_l = self.realize_choices(l, choices)
                below_r = self.realize_choices(r, choices)
                return self._times(below_l, below_r)
            case Plus(l, r):
                bit = next(choices)
                if not bit:
                    return self._plus(False, self.realize_choices(l, choices), r)
                return self._plus(True, self.realize_choices(r, choices), l)
        raise AssertionError(f"cannot realize {formula!r}")

    def place(self, hole, port):
        """Fill a hole with an axiom output port."""
        site = self.hole_sites.get(hole)
        if site is not None:
            self.wires[site] = port
        self.holes[hole] = port

    def add_loop(self, cat, loop):
        """A closed loop: an axiom for the endo plus an identity cut."""
        lid = self.fresh("a")
        self.links[lid] = AxLink(loop.arrow)
        cid = f"#c{self.counts.get('#c', 0)}"
        self.counts["#c"] = self.counts.get("#c", 0) + 1
        self.links[cid] = CutLink(arrow=cat.identity(loop.obj))
        self.wires[(cid, 0)] = (lid, 1)
        self.wires[(cid, 1)] = (lid, 0)

    def build(self, tops):
        outs = []
        for top in tops:
            if top[0] == "#hole":
                port = self.holes[top[1]]
                if port is None:
                    raise AssertionError("unfilled hole")
                outs.append(port)
            else:
                outs.append(top)
        return Slice(self.links, self.wires, tuple(outs))


# ---------------------------------------------------------------------------
# parsing


def _parse_port(tok, lineno):
    tok = tok.strip()
    lid, dot, slot = tok.rpartition(".")
    if not dot or not slot.isdigit():
        raise ParseError(lineno, f"bad port {tok!r}")
    return (lid.strip(), int(slot))


def parse_net(text, cat):
    """Parse and validate a net file against a category."""
    name = None
    conclusions = None
    slices = []
    cur = None  # (links, wires-as-(in, port text), outs) while inside a slice
    cut_count = 0

    def resolve_slice(links, pending, outs_toks, lineno):
        wires = {}
        for inp, (tok, ln) in pending.items():
            port = _parse_port(tok, ln)
            if port[0] not in links:
                raise ParseError(ln, f"unknown link {port[0]!r}")
            if port[1] >= out_arity(links[port[0]]):
                raise ParseError(ln, f"link {port[0]} has no output {port[1]}")
            wires[inp] = port
        outs = []
        for tok, ln in outs_toks:
            port = _parse_port(tok, ln)
            if port[0] not in links:
                raise ParseError(ln, f"unknown link {port[0]!r}")
            outs.append(port)
        return Slice(links, wires, tuple(outs))

    lines = text.splitlines()
    i = 0
    while i < len(lines):
        lineno = i + 1
        line = lines[i].split("#", 1)[0].strip()
        i += 1
        if not line:
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "net":
            if name is not None:
                raise ParseError(lineno, "duplicate net line")
            name = rest
        elif head == "conclusions":
            if conclusions is not None:
                raise ParseError(lineno, "duplicate conclusions line")
            if rest:
                conclusions = tuple(
                    parse_formula(part, cat, lineno) for part in split_commas(rest)
                )
            else:
                conclusions = ()
        elif line == "slice":
            if conclusions is None:
                raise ParseError(lineno, "slice before conclusions")
            if cur is not None:
                raise ParseError(lineno, "nested slice")
            cur = ({}, {}, None)
        elif line == "end":
            if cur is None:
                raise ParseError(lineno, "end outside slice")
            links, pending, outs_toks = cur
            if outs_toks is None:
                raise ParseError(lineno, "slice has no out line")
            slices.append(resolve_slice(links, pending, outs_toks, lineno))
            cur = None
        elif head in ("ax", "unit", "times", "plus1", "plus2", "cut", "out"):
            if cur is None:
                raise ParseError(lineno, f"{head} outside slice")
            links, pending, outs_toks = cur

            def fresh(lid):
                lid = lid.strip()
                if not lid or any(c.isspace() or c in ".,:|=#" for c in lid):
                    raise ParseError(lineno, f"bad link id {lid!r}")
                if lid in links:
                    raise ParseError(lineno, f"duplicate link id {lid!r}")
                return lid

            if head == "ax":
                lid, colon, arrow = rest.partition(":")
                if not colon:
                    raise ParseError(lineno, "expected 'ax id : f'")
                arrow = " ".join(arrow.split())
                if arrow not in cat.arrows:
                    raise ParseError(lineno, f"unknown arrow {arrow!r}")
                links[fresh(lid)] = AxLink(arrow)
            elif head == "unit":
                links[fresh(rest)] = UnitLink()
            elif head == "times":
                lid, eq, ports = rest.partition("=")
                if not eq:
                    raise ParseError(lineno, "expected 'times id = p q'")
                toks = ports.split()
                if len(toks) != 2:
                    raise ParseError(lineno, "times takes exactly two ports")
                lid = fresh(lid)
                links[lid] = TimesLink()
                pending[(lid, 0)] = (toks[0], lineno)
                pending[(lid, 1)] = (toks[1], lineno)
            elif head in ("plus1", "plus2"):
                lid, eq, body = rest.partition("=")
                if not eq or "|" not in body:
                    raise ParseError(lineno, f"expected '{head} id = ... | ...'")
                lhs, _, rhs = body.partition("|")
                lid = fresh(lid)
                if head == "plus1":
                    port_tok, other = lhs, rhs
                else:
                    other, port_tok = lhs, rhs
                formula = parse_formula(other, cat, lineno)
                links[lid] = Plus1Link(formula) if head == "plus1" else Plus2Link(formula)
                pending[(lid, 0)] = (port_tok, lineno)
            elif head == "cut":
                body, colon, label = rest.rpartition(":")
                if not colon:
                    raise ParseError(lineno, "expected 'cut p , q : label'")
                ports = split_commas(body)
                if len(ports) != 2:
                    raise ParseError(lineno, "cut takes exactly two ports")
                label = " ".join(label.split())
                cid = f"#c{cut_count}"
                cut_count += 1
                links[cid] = ("cut-placeholder", label, lineno)
                pending[(cid, 0)] = (ports[0], lineno)
                pending[(cid, 1)] = (ports[1], lineno)
            elif head == "out":
                if outs_toks is not None:
                    raise ParseError(lineno, "duplicate out line")
                outs_toks = [] if not rest else [(tok, lineno) for tok in split_commas(rest)]
            cur = (links, pending, outs_toks)
        else:
            raise ParseError(lineno, f"unknown directive {head!r}")
    if cur is not None:
        raise ParseError(len(lines), "unterminated slice")
    if name is None:
        raise ParseError(1, "missing net line")
    if conclusions is None:
        raise ParseError(1, "missing conclusions line")

    # resolve cut labels now that wires exist and labels can be computed
    for s in slices:
        placeholders = {
            lid: ph for lid, ph in s.links.items() if isinstance(ph, tuple)
        }
        for lid, (_, label, ln) in placeholders.items():
            if label == "id":
                s.links[lid] = CutLink(formula=Unit())  # placeholder, fixed below
            elif label in cat.arrows:
                s.links[lid] = CutLink(arrow=label)
            else:
                raise ParseError(ln, f"unknown cut label {label!r}")
        labs = labels(s, cat)
        for lid, (_, label, ln) in placeholders.items():
            if label == "id":
                s.links[lid] = _infer_id_cut(s, cat, lid, labs, ln)
    net = Net(name, conclusions, tuple(slices), cat)
    validate_net(net)
    return net


def _infer_id_cut(s, cat, cid, labs, lineno):
    l0 = labs[s.wires[(cid, 0)]]
    l1 = labs[s.wires[(cid, 1)]]
    atoms = [l for l in (l0, l1) if isinstance(l, Atom)]
    duals = [l for l in (l0, l1) if isinstance(l, DualAtom)]
    if atoms:
        return CutLink(arrow=cat.identity(atoms[0].name))
    if duals:
        return CutLink(arrow=cat.identity(duals[0].name))
    if star(l0) == l1:
        return CutLink(formula=l0)
    raise ParseError(lineno, f"id cut inputs {fmt(l0)}, {fmt(l1)} are not dual")


# ---------------------------------------------------------------------------
# printing


def topo_order(slice_):
    """Links in dependency order, producers first, cuts last, ties by id."""
    done = set()
    order = []
    remaining = {
        lid for lid, link in slice_.links.items() if not isinstance(link, CutLink)
    }
    while remaining:
        ready = sorted(
            lid
            for lid in remaining
            if all(
                slice_.wires[(lid, k)][0] in done
                for k in range(in_arity(slice_.links[lid]))
            )
        )
        if not ready:
            raise NetError("cyclic wiring")
        for lid in ready:
            order.append(lid)
            done.add(lid)
            remaining.discard(lid)
    order.extend(sorted(lid for lid, l in slice_.links.items() if isinstance(l, CutLink)))
    return order


def _fmt_port(port):
    return f"{port[0]}.{port[1]}"


def print_net(net):
    out = [f"net {net.name}"]
    concl = " , ".join(fmt(f) for f in net.conclusions)
    out.append(f"conclusions {concl}".rstrip())
    for s in net.slices:
        out.append("slice")
        for lid in topo_order(s):
            link = s.links[lid]
            if isinstance(link, AxLink):
                out.append(f"  ax {lid} : {link.arrow}")
            elif isinstance(link, UnitLink):
                out.append(f"  unit {lid}")
            elif isinstance(link, TimesLink):
                p0, p1 = s.wires[(lid, 0)], s.wires[(lid, 1)]
                out.append(f"  times {lid} = {_fmt_port(p0)} {_fmt_port(p1)}")
            elif isinstance(link, Plus1Link):
                out.append(f"  plus1 {lid} = {_fmt_port(s.wires[(lid, 0)])} | {fmt(link.other)}")
            elif isinstance(link, Plus2Link):
                out.append(f"  plus2 {lid} = {fmt(link.other)} | {_fmt_port(s.wires[(lid, 0)])}")
            elif isinstance(link, CutLink):
                p0, p1 = s.wires[(lid, 0)], s.wires[(lid, 1)]
                label = link.arrow if link.arrow is not None else "id"
                out.append(f"  cut {_fmt_port(p0)} , {_fmt_port(p1)} : {label}")
        ports = " , ".join(_fmt_port(p) for p in s.outs)
        out.append(f"  out {ports}".rstrip())
        out.append("end")
    return "\n".join(out) + "\n"


def to_dot(net):
    """GraphViz rendering: one cluster per slice, shared conclusion anchors."""
    lines = ["digraph net {", "  rankdir=BT;"]
    for k, f in enumerate(net.conclusions):
        lines.append(f'  concl_{k} [shape=box, label="{fmt(f)}"];')
    for si, s in enumerate(net.slices):
        ids = {lid: n for n, lid in enumerate(sorted(s.links))}
        lines.append(f"  subgraph cluster_{si} {{")
        lines.append(f'    label="slice {si}";')
        labs = labels(s, net.cat)
        for lid, link in s.links.items():
            if isinstance(link, AxLink):
                text = f"ax {lid}: {link.arrow}"
            elif isinstance(link, CutLink):
                text = f"cut: {link.arrow if link.arrow else 'id ' + fmt(link.formula)}"
            elif isinstance(link, TimesLink):
                text = f"times {lid}"
            elif isinstance(link, Plus1Link):
                text = f"plus1 {lid} | {fmt(link.other)}"
            elif isinstance(link, Plus2Link):
                text = f"plus2 {lid} | {fmt(link.other)}"
            else:
                text = f"unit {lid}"
            lines.append(f'    s{si}_n{ids[lid]} [label="{text}"];')
        for inp, outp in s.wires.items():
            lines.append(
                f'    s{si}_n{ids[outp[0]]} -> s{si}_n{ids[inp[0]]} '
                f'[label="{fmt(labs[outp])}"];'
            )
        lines.append("  }")
        for k, port in enumerate(s.outs):
            lines.append(f"  s{si}_n{ids[port[0]]} -> concl_{k} [style=dashed];")
    lines.append("}")
    return "\n".join(lines) + "\n"
