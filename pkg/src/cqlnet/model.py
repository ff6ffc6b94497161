"""Exact matrix models: evaluate arrows and nets in finite dimension.

Scalars are either exact elements of Q(sqrt2, i) stored as four rationals
(a + b sqrt2 + (c + d sqrt2) i), or booleans with or/and.  Matrices are dense
lists of such scalars; all comparisons are exact.

``eval_free`` evaluates a free arrow entry by entry from its wirings.
``eval_net`` evaluates a net directly by contracting the model tensors along
the links, never building wirings, so the two paths check each other.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import ModelError, ParseError
from .formula import anf
from . import net as nets


@dataclass(frozen=True)
class Qi2:
    """An element a + b sqrt2 + (c + d sqrt2) i with rational a, b, c, d."""

    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)
    c: Fraction = Fraction(0)
    d: Fraction = Fraction(0)

    def __add__(self, o):
        return Qi2(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)

    def __neg__(self):
        return Qi2(-self.a, -self.b, -self.c, -self.d)

    def __mul__(self, o):
        # (x1 + y1 i)(x2 + y2 i) with x, y in Q(sqrt2)
        a = self.a * o.a + 2 * self.b * o.b - (self.c * o.c + 2 * self.d * o.d)
        b = self.a * o.b + self.b * o.a - (self.c * o.d + self.d * o.c)
        c = self.a * o.c + 2 * self.b * o.d + self.c * o.a + 2 * self.d * o.b
        d = self.a * o.d + self.b * o.c + self.c * o.b + self.d * o.a
        return Qi2(a, b, c, d)

    def conj(self):
        return Qi2(self.a, self.b, -self.c, -self.d)

    def __str__(self):
        if self.b == self.c == self.d == 0:
            return str(self.a)
        return f"({self.a}, {self.b}, {self.c}, {self.d})"


class ExactRing:
    """Q(sqrt2, i) with complex conjugation."""

    name = "exact"
    zero = Qi2()
    one = Qi2(Fraction(1))

    @staticmethod
    def add(x, y):
        return x + y

    @staticmethod
    def mul(x, y):
        return x * y

    @staticmethod
    def conj(x):
        return x.conj()

    @staticmethod
    def parse(token, lineno):
        token = token.strip()
        if token.startswith("("):
            if not token.endswith(")"):
                raise ParseError(lineno, f"bad scalar {token!r}")
            parts = token[1:-1].split(",")
            if len(parts) != 4:
                raise ParseError(lineno, f"scalar wants four components: {token!r}")
            try:
                return Qi2(*(Fraction(p.strip()) for p in parts))
            except (ValueError, ZeroDivisionError) as exc:
                raise ParseError(lineno, f"bad scalar {token!r}") from exc
        try:
            return Qi2(Fraction(token))
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(lineno, f"bad scalar {token!r}") from exc

    @staticmethod
    def fmt(x):
        return str(x)


class BoolRing:
    """Truth values with or/and; conjugation is the identity."""

    name = "bool"
    zero = False
    one = True

    @staticmethod
    def add(x, y):
        return x or y

    @staticmethod
    def mul(x, y):
        return x and y

    @staticmethod
    def conj(x):
        return x

    @staticmethod
    def parse(token, lineno):
        token = token.strip()
        if token not in ("0", "1"):
            raise ParseError(lineno, f"boolean scalar wants 0 or 1, got {token!r}")
        return token == "1"

    @staticmethod
    def fmt(x):
        return "1" if x else "0"


class Matrix:
    """A dense matrix over one of the scalar rings."""

    __slots__ = ("ring", "rows", "ncols")

    def __init__(self, ring, rows, ncols=None):
        self.ring = ring
        self.rows = [list(r) for r in rows]
        if self.rows:
            self.ncols = len(self.rows[0])
            if any(len(r) != self.ncols for r in self.rows):
                raise ValueError("ragged matrix")
        else:
            if ncols is None:
                raise ValueError("empty matrix needs an explicit column count")
            self.ncols = ncols

    @classmethod
    def zeros(cls, ring, nrows, ncols):
        return cls(ring, [[ring.zero] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, ring, n):
        return cls(
            ring,
            [[ring.one if i == j else ring.zero for j in range(n)] for i in range(n)],
            n,
        )

    @property
    def nrows(self):
        return len(self.rows)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def at(self, i, j):
        return self.rows[i][j]

    def put(self, i, j, v):
        self.rows[i][j] = v

    def add_at(self, i, j, v):
        self.rows[i][j] = self.ring.add(self.rows[i][j], v)

    def mul(self, other):
        if self.ncols != other.nrows:
            raise ValueError("matrix shapes do not compose")
        out = Matrix.zeros(self.ring, self.nrows, other.ncols)
        for i in range(self.nrows):
            for k in range(self.ncols):
                x = self.rows[i][k]
                if x == self.ring.zero:
                    continue
                for j in range(other.ncols):
                    out.add_at(i, j, self.ring.mul(x, other.rows[k][j]))
        return out

    def add(self, other):
        if self.shape != other.shape:
            raise ValueError("matrix shapes differ")
        return Matrix(
            self.ring,
            [
                [self.ring.add(x, y) for x, y in zip(r1, r2)]
                for r1, r2 in zip(self.rows, other.rows)
            ],
            self.ncols,
        )

    def kron(self, other):
        out = Matrix.zeros(self.ring, self.nrows * other.nrows, self.ncols * other.ncols)
        for i1 in range(self.nrows):
            for j1 in range(self.ncols):
                x = self.rows[i1][j1]
                for i2 in range(other.nrows):
                    for j2 in range(other.ncols):
                        out.put(
                            i1 * other.nrows + i2,
                            j1 * other.ncols + j2,
                            self.ring.mul(x, other.rows[i2][j2]),
                        )
        return out

    def dagger(self):
        out = Matrix.zeros(self.ring, self.ncols, self.nrows)
        for i in range(self.nrows):
            for j in range(self.ncols):
                out.put(j, i, self.ring.conj(self.rows[i][j]))
        return out

    def trace(self):
        if self.nrows != self.ncols:
            raise ValueError("trace of a non-square matrix")
        t = self.ring.zero
        for i in range(self.nrows):
            t = self.ring.add(t, self.rows[i][i])
        return t

    def column(self):
        """Flatten to a single column, row-major."""
        return [x for r in self.rows for x in r]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.ring is other.ring
            and self.shape == other.shape
            and self.rows == other.rows
        )

    def __str__(self):
        body = " ; ".join(
            "[" + ", ".join(self.ring.fmt(x) for x in r) + "]" for r in self.rows
        )
        return f"[ {body} ]"


class Interpretation:
    """Dimensions for objects and matrices for arrows, functorially checked."""

    def __init__(self, name, cat, ring, dims, mats):
        self.name = name
        self.cat = cat
        self.ring = ring
        self.dims = dict(dims)
        for obj in cat.objects:
            if obj not in self.dims:
                raise ModelError(f"no dimension for object {obj}")
            if not isinstance(self.dims[obj], int) or self.dims[obj] < 0:
                raise ModelError(f"bad dimension for {obj}")
        self.mats = {}
        for obj in cat.objects:
            self.mats[cat.identity(obj)] = Matrix.identity(ring, self.dims[obj])
        for f, m in mats.items():
            want = (self.dims[cat.cod(f)], self.dims[cat.dom(f)])
            if m.shape != want:
                raise ModelError(f"mat {f}: shape {m.shape}, want {want}")
            if cat.is_identity(f):
                if m != self.mats[f]:
                    raise ModelError(f"mat {f} must be the identity matrix")
                continue
            self.mats[f] = m
        for f in cat.arrows:
            if f not in self.mats:
                raise ModelError(f"no matrix for arrow {f}")
        for f in cat.arrows:
            for g in cat.arrows:
                if cat.cod(f) != cat.dom(g):
                    continue
                h = cat.compose(f, g)
                if self.mats[h] != self.mats[g].mul(self.mats[f]):
                    raise ModelError(f"matrices break composition on {f} ; {g} = {h}")
        for f in cat.arrows:
            if self.mats[cat.dagger(f)] != self.mats[f].dagger():
                raise ModelError(f"matrices break dagger on {f}")

    def mat(self, f):
        return self.mats[f]

    def dim_word(self, w):
        n = 1
        for lit in w:
            n *= self.dims[lit.name]
        return n

    def dim_anf(self, a):
        return sum(self.dim_word(w) for w in a)

    def dim_formula(self, f):
        return self.dim_anf(anf(f))


def _split_top(text, sep, lineno):
    """Split on sep at zero bracket/paren depth."""
    parts = []
    depth = 0
    cur = []
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
            if depth < 0:
                raise ParseError(lineno, "unbalanced brackets")
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if depth != 0:
        raise ParseError(lineno, "unbalanced brackets")
    parts.append("".join(cur))
    return parts


def _parse_matrix(text, ring, lineno):
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise ParseError(lineno, "matrix wants [ [ ... ] ; [ ... ] ]")
    inner = text[1:-1].strip()
    if not inner:
        raise ParseError(lineno, "empty matrix literal")
    rows = []
    width = None
    for rtext in _split_top(inner, ";", lineno):
        rtext = rtext.strip()
        if not (rtext.startswith("[") and rtext.endswith("]")):
            raise ParseError(lineno, f"matrix row wants [ ... ]: {rtext!r}")
        body = rtext[1:-1].strip()
        row = [] if not body else [
            ring.parse(tok, lineno) for tok in _split_top(body, ",", lineno)
        ]
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise ParseError(lineno, "ragged matrix rows")
        rows.append(row)
    return Matrix(ring, rows, width)


def load_model(text, cat):
    """Parse and validate a model file against a category."""
    name = None
    ring = None
    dims = {}
    raw_mats = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "model":
            if name is not None:
                raise ParseError(lineno, "duplicate model line")
            mname, over, cname = rest.partition(" over ")
            if not over:
                raise ParseError(lineno, "expected 'model name over category'")
            name = mname.strip()
            if cname.strip() != cat.name:
                raise ParseError(
                    lineno, f"model is over {cname.strip()!r}, category is {cat.name!r}"
                )
        elif head == "scalars":
            if ring is not None:
                raise ParseError(lineno, "duplicate scalars line")
            if rest == "exact":
                ring = ExactRing
            elif rest == "bool":
                ring = BoolRing
            else:
                raise ParseError(lineno, f"unknown scalar kind {rest!r}")
        elif head == "dim":
            obj, eq, val = rest.partition("=")
            obj = obj.strip()
            if not eq or not val.strip().isdigit():
                raise ParseError(lineno, "expected 'dim Obj = n'")
            if obj in dims:
                raise ParseError(lineno, f"duplicate dim for {obj}")
            if obj not in cat.objects:
                raise ParseError(lineno, f"unknown object {obj!r}")
            dims[obj] = int(val.strip())
        elif head == "mat":
            f, eq, val = rest.partition("=")
            f = " ".join(f.split())
            if not eq:
                raise ParseError(lineno, "expected 'mat f = [ ... ]'")
            if f not in cat.arrows:
                raise ParseError(lineno, f"unknown arrow {f!r}")
            if f in raw_mats:
                raise ParseError(lineno, f"duplicate mat for {f}")
            raw_mats[f] = (val, lineno)
        else:
            raise ParseError(lineno, f"unknown directive {head!r}")
    if name is None:
        raise ModelError("missing model line")
    if ring is None:
        ring = ExactRing
    mats = {f: _parse_matrix(val, ring, ln) for f, (val, ln) in raw_mats.items()}
    return Interpretation(name, cat, ring, dims, mats)


# ---------------------------------------------------------------------------
# evaluation of free arrows


def eval_wiring(t, interp):
    """The matrix of one wiring: pair factors times loop traces."""
    ring = interp.ring
    lfac = ring.one
    for lp in t.loops:
        lfac = ring.mul(lfac, interp.mat(lp.arrow).trace())
    ddims = [interp.dims[l.name] for l in t.dom]
    cdims = [interp.dims[l.name] for l in t.cod]
    n = len(t.dom)
    out = Matrix.zeros(ring, interp.dim_word(t.cod), interp.dim_word(t.dom))
    for bi, beta in enumerate(itertools.product(*[range(d) for d in cdims])):
        for ai, alpha in enumerate(itertools.product(*[range(d) for d in ddims])):

            def val_at(k):
                return alpha[k] if k < n else beta[k - n]

            v = lfac
            for neg, pos, f in t.pairs:
                v = ring.mul(v, interp.mat(f).at(val_at(pos), val_at(neg)))
            out.put(bi, ai, v)
    return out


def eval_free(fa, interp):
    """The block matrix of a free arrow."""
    if fa.cat is not interp.cat:
        raise ValueError("arrow and model use different categories")
    ring = interp.ring
    row_off = [0]
    for w in fa.cod:
        row_off.append(row_off[-1] + interp.dim_word(w))
    col_off = [0]
    for w in fa.dom:
        col_off.append(col_off[-1] + interp.dim_word(w))
    out = Matrix.zeros(ring, row_off[-1], col_off[-1])
    for (i, j), c in fa.entries.items():
        for t, mult in c.items():
            block = eval_wiring(t, interp)
            for bi in range(block.nrows):
                for bj in range(block.ncols):
                    v = block.at(bi, bj)
                    for _ in range(mult):
                        out.add_at(row_off[i] + bi, col_off[j] + bj, v)
    return out


# ---------------------------------------------------------------------------
# direct evaluation of nets


def _edge_dims(interp, a):
    """Per-component word sizes of an ANF under the model's dimensions."""
    return [[interp.dims[l.name] for l in w] for w in a]


def eval_slice(s, interp):
    """Contract one slice to a vector over its conclusions' index space."""
    cat = interp.cat
    ring = interp.ring
    edges = []  # (port, per-component dim lists)
    state = {(): ring.one}

    def edge_index(port):
        for k, (p, _) in enumerate(edges):
            if p == port:
                return k
        raise AssertionError(f"no open edge for {port}")

    def contract(kp, kq, weight):
        """Remove key slots kp, kq, combining with weight(valp, valq)."""
        nonlocal state
        out = {}
        hi, lo = max(kp, kq), min(kp, kq)
        for key, v in state.items():
            w = weight(key[kp], key[kq], v)
            if w is None:
                continue
            ks = list(key)
            del ks[hi]
            del ks[lo]
            ks = tuple(ks)
            out[ks] = ring.add(out.get(ks, ring.zero), w)
        state = out
        del edges[hi]
        del edges[lo]

    for lid in nets.topo_order(s):
        link = s.links[lid]
        if isinstance(link, nets.AxLink):
            f = link.arrow
            m = interp.mat(f)
            da, db = interp.dims[cat.dom(f)], interp.dims[cat.cod(f)]
            out = {}
            for key, v in state.items():
                for a in range(da):
                    for bval in range(db):
                        x = m.at(bval, a)
                        if x == ring.zero:
                            continue
                        out_key = key + ((0, (a,)), (0, (bval,)))
                        out[out_key] = ring.add(
                            out.get(out_key, ring.zero), ring.mul(v, x)
                        )
            state = out
            edges.append(((lid, 0), [[da]]))
            edges.append(((lid, 1), [[db]]))
        elif isinstance(link, nets.UnitLink):
            state = {key + ((0, ()),): v for key, v in state.items()}
            edges.append(((lid, 0), [[]]))
        elif isinstance(link, nets.TimesLink):
            k0 = edge_index(s.wires[(lid, 0)])
            k1 = edge_index(s.wires[(lid, 1)])
            d0, d1 = edges[k0][1], edges[k1][1]
            merged = [w0 + w1 for w0 in d0 for w1 in d1]
            out = {}
            for key, v in state.items():
                c0, w0 = key[k0]
                c1, w1 = key[k1]
                slot = (c0 * len(d1) + c1, w0 + w1)
                ks = list(key)
                hi, lo = max(k0, k1), min(k0, k1)
                del ks[hi]
                del ks[lo]
                ks.append(slot)
                ks = tuple(ks)
                out[ks] = ring.add(out.get(ks, ring.zero), v)
            state = out
            hi, lo = max(k0, k1), min(k0, k1)
            del edges[hi]
            del edges[lo]
            edges.append(((lid, 0), merged))
        elif isinstance(link, (nets.Plus1Link, nets.Plus2Link)):
            k = edge_index(s.wires[(lid, 0)])
            other_dims = _edge_dims(interp, anf(link.other))
            here = edges[k][1]
            if isinstance(link, nets.Plus1Link):
                shift = 0
                merged = here + other_dims
            else:
                shift = len(other_dims)
                merged = other_dims + here
            out = {}
            for key, v in state.items():
                c, w = key[k]
                ks = list(key)
                ks[k] = (c + shift, w)
                out[tuple(ks)] = ring.add(out.get(tuple(ks), ring.zero), v)
            state = out
            edges[k] = ((lid, 0), merged)
        elif isinstance(link, nets.CutLink):
            if link.arrow is not None:
                g = link.arrow
                m = interp.mat(g)
                sp, ss = nets.cut_sides(s, cat, lid)
                kp = edge_index(s.wires[(lid, sp)])
                kq = edge_index(s.wires[(lid, ss)])

                def weight(slot_p, slot_q, v, m=m):
                    (_, (a,)) = slot_p
                    (_, (g_idx,)) = slot_q
                    x = m.at(g_idx, a)
                    if x == ring.zero:
                        return None
                    return ring.mul(v, x)

                contract(kp, kq, weight)
            else:
                kp = edge_index(s.wires[(lid, 0)])
                kq = edge_index(s.wires[(lid, 1)])

                def weight(slot_p, slot_q, v):
                    return v if slot_p == slot_q else None

                contract(kp, kq, weight)

    perm = [edge_index(p) for p in s.outs]
    final_dims = [edges[k][1] for k in perm]
    total = 1
    for d in final_dims:
        total *= sum(_word_size(w) for w in d)
    vec = [ring.zero] * total
    for key, v in state.items():
        ordered = [key[k] for k in perm]
        idx = _flat_index(ordered, final_dims)
        vec[idx] = ring.add(vec[idx], v)
    return vec


def _word_size(dims):
    n = 1
    for d in dims:
        n *= d
    return n


def _flat_index(slots, edge_dims):
    """Index into the block layout of the tensor of the edges' ANFs."""
    total_dims = [sum(_word_size(w) for w in d) for d in edge_dims]
    off = 0
    prefix = 1
    for e, ((comp, _), d) in enumerate(zip(slots, edge_dims)):
        base = sum(_word_size(w) for w in d[:comp])
        suffix = 1
        for t in total_dims[e + 1:]:
            suffix *= t
        off += prefix * base * suffix
        prefix *= _word_size(d[comp])
    # within-block: concatenated word indices, row-major
    widx = []
    wdims = []
    for (comp, w), d in zip(slots, edge_dims):
        widx.extend(w)
        wdims.extend(d[comp])
    inner = 0
    for x, dctx in zip(widx, wdims):
        inner = inner * dctx + x
    return off + inner


def eval_net(net, interp):
    """The vector denoted by a net, as a one-column matrix."""
    if net.cat is not interp.cat:
        raise ValueError("net and model use different categories")
    ring = interp.ring
    total = 1
    for f in net.conclusions:
        total *= interp.dim_formula(f)
    acc = [ring.zero] * total
    for s in net.slices:
        vec = eval_slice(s, interp)
        acc = [ring.add(x, y) for x, y in zip(acc, vec)]
    return Matrix(ring, [[x] for x in acc], 1)