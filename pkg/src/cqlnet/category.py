"""Finite generating categories with involution, and their loop classes.

A category file lists objects, arrows, a composition table, and an involution
(dagger).  Identities are implicit and named ``id <Obj>``.  Endomorphisms are
grouped into loop classes, the symmetric-transitive closure of g.f ~ f.g;
scalar loops in the free category are only meaningful up to this equivalence.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CategoryError, ParseError


@dataclass(frozen=True, order=True)
class Loop:
    """Canonical representative (object, endo arrow) of a loop class."""

    obj: str
    arrow: str

    def __str__(self):
        return f"[{self.obj} : {self.arrow}]"


def _check_name(name, lineno):
    if not name or not (name[0].isalpha() or name[0] == "_"):
        raise ParseError(lineno, f"bad identifier {name!r}")
    if not all(c.isalnum() or c == "_" for c in name):
        raise ParseError(lineno, f"bad identifier {name!r}")


class Category:
    """A finite category presented by a total composition table and a dagger.

    ``arrows`` maps every arrow name (identities included) to ``(dom, cod)``.
    ``compose(f, g)`` is the composite g.f for f: A -> B, g: B -> C.
    """

    def __init__(self, name, objects, arrows, table, dagger):
        self.name = name
        self.objects = tuple(objects)
        if len(set(self.objects)) != len(self.objects):
            raise CategoryError("duplicate object")
        for obj in self.objects:
            if obj in ("I", "x", "id"):
                raise CategoryError(f"object name {obj!r} is reserved")
        self.arrows = {}
        for obj in self.objects:
            self.arrows[self.identity(obj)] = (obj, obj)
        for f, (a, b) in arrows.items():
            if f in self.arrows:
                raise CategoryError(f"duplicate or reserved arrow name {f!r}")
            if a not in self.objects or b not in self.objects:
                raise CategoryError(f"arrow {f}: unknown object")
            self.arrows[f] = (a, b)

        self._table = {}
        for f, (a, b) in self.arrows.items():
            self._table[(self.identity(a), f)] = f
            self._table[(f, self.identity(b))] = f
        for (f, g), h in table.items():
            self._require_arrow(f)
            self._require_arrow(g)
            self._require_arrow(h)
            if self.cod(f) != self.dom(g):
                raise CategoryError(f"compose {f} ; {g}: not composable")
            if self.dom(h) != self.dom(f) or self.cod(h) != self.cod(g):
                raise CategoryError(f"compose {f} ; {g} = {h}: composite has wrong type")
            old = self._table.get((f, g))
            if old is not None and old != h:
                raise CategoryError(f"compose {f} ; {g}: conflicts with identity law")
            self._table[(f, g)] = h

        for f in self.arrows:
            for g in self.arrows:
                if self.cod(f) == self.dom(g) and (f, g) not in self._table:
                    raise CategoryError(f"composition not total: {f} ; {g} undefined")
        for f in self.arrows:
            for g in self.arrows:
                if self.cod(f) != self.dom(g):
                    continue
                for h in self.arrows:
                    if self.dom(h) != self.cod(g):
                        continue
                    left = self._table[(self._table[(f, g)], h)]
                    right = self._table[(f, self._table[(g, h)])]
                    if left != right:
                        raise CategoryError(
                            f"associativity fails on {f} ; {g} ; {h}: {left} != {right}"
                        )

        self._dagger = {self.identity(obj): self.identity(obj) for obj in self.objects}
        for f, g in dagger.items():
            self._require_arrow(f)
            self._require_arrow(g)
            if f in self._dagger and self._dagger[f] != g:
                raise CategoryError(f"dagger {f}: conflicting declaration")
            self._dagger[f] = g
        for f, (a, b) in self.arrows.items():
            g = self._dagger.get(f)
            if g is None:
                raise CategoryError(f"dagger undefined for {f}")
            if self.arrows[g] != (b, a):
                raise CategoryError(f"dagger {f} = {g}: wrong type")
            if self._dagger[g] != f:
                raise CategoryError(f"dagger not involutive on {f}")
        for f in self.arrows:
            for g in self.arrows:
                if self.cod(f) != self.dom(g):
                    continue
                gf = self._table[(f, g)]
                want = self._table[(self._dagger[g], self._dagger[f])]
                if self._dagger[gf] != want:
                    raise CategoryError(f"dagger not contravariant on {f} ; {g}")

        self._loop_rep = self._close_loops()

    def _require_arrow(self, f):
        if f not in self.arrows:
            raise CategoryError(f"unknown arrow {f!r}")

    @staticmethod
    def identity(obj):
        return f"id {obj}"

    def is_identity(self, f):
        return f == self.identity(self.dom(f))

    def dom(self, f):
        self._require_arrow(f)
        return self.arrows[f][0]

    def cod(self, f):
        self._require_arrow(f)
        return self.arrows[f][1]

    def compose(self, f, g):
        """The composite g.f for f: A -> B, g: B -> C."""
        if self.cod(f) != self.dom(g):
            raise CategoryError(f"compose {f} ; {g}: not composable")
        return self._table[(f, g)]

    def dagger(self, f):
        self._require_arrow(f)
        return self._dagger[f]

    def endos(self):
        """All endomorphism arrow names, identities included."""
        return [f for f, (a, b) in self.arrows.items() if a == b]

    def _close_loops(self):
        # union-find over endos; g.f ~ f.g for every f: A -> B, g: B -> A
        parent = {e: e for e in self.endos()}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x, y):
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[rx] = ry

        for f, (a, b) in self.arrows.items():
            for g, (c, d) in self.arrows.items():
                if b == c and d == a:
                    union(self._table[(f, g)], self._table[(g, f)])
        reps = {}
        classes = {}
        for e in parent:
            classes.setdefault(find(e), []).append(e)
        for members in classes.values():
            rep = min(Loop(self.dom(e), e) for e in members)
            for e in members:
                reps[e] = rep
        return reps

    def loop_of(self, endo):
        """The loop class of a single endomorphism."""
        f = endo
        self._require_arrow(f)
        a, b = self.arrows[f]
        if a != b:
            raise CategoryError(f"loop of non-endo arrow {f}")
        return self._loop_rep[f]

    def loop_of_word(self, base, word):
        """The loop class of a cyclically composable word of arrows at ``base``.

        ``word`` lists arrows f1, ..., fn with dom(f1) = base, cod(fi) =
        dom(f(i+1)), cod(fn) = base; the class is that of fn...f1.  An empty
        word gives the identity loop at ``base``.
        """
        cur = self.identity(base)
        for f in word:
            cur = self.compose(cur, f)
        if self.cod(cur) != base:
            raise CategoryError(f"loop word at {base} does not close")
        return self._loop_rep[cur]

    def loop_dagger(self, loop):
        """Dagger descends to loop classes."""
        return self._loop_rep[self._dagger[loop.arrow]]

    def loop_classes(self):
        """All loop classes, as a sorted tuple of representatives."""
        return tuple(sorted(set(self._loop_rep.values())))


def _arrow_name(tok, lineno, what="arrow"):
    name = " ".join(tok.split())
    if name.startswith("id "):
        _check_name(name[3:], lineno)
        return name
    _check_name(name, lineno)
    if name == "id":
        raise ParseError(lineno, f"{what} name 'id' is reserved")
    return name


def load_category(text):
    """Parse and validate a category file."""
    name = None
    objects = []
    arrows = {}
    table = {}
    dagger = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "category":
            if name is not None:
                raise ParseError(lineno, "duplicate category line")
            _check_name(rest, lineno)
            name = rest
        elif head == "object":
            _check_name(rest, lineno)
            objects.append(rest)
        elif head == "arrow":
            sig, _, typing = rest.partition(":")
            f = sig.strip()
            _check_name(f, lineno)
            if f == "id" or f.startswith("id "):
                raise ParseError(lineno, "arrow names starting with 'id' are reserved")
            a, arr, b = typing.partition("->")
            if not arr:
                raise ParseError(lineno, "expected 'arrow f : A -> B'")
            if f in arrows:
                raise ParseError(lineno, f"duplicate arrow {f!r}")
            arrows[f] = (a.strip(), b.strip())
        elif head == "compose":
            lhs, eq, h = rest.partition("=")
            if not eq:
                raise ParseError(lineno, "expected 'compose f ; g = h'")
            f, semi, g = lhs.partition(";")
            if not semi:
                raise ParseError(lineno, "expected 'compose f ; g = h'")
            key = (_arrow_name(f, lineno), _arrow_name(g, lineno))
            if key in table:
                raise ParseError(lineno, f"duplicate compose line for {key[0]} ; {key[1]}")
            table[key] = _arrow_name(h, lineno)
        elif head == "dagger":
            f, eq, g = rest.partition("=")
            if not eq:
                raise ParseError(lineno, "expected 'dagger f = g'")
            f = _arrow_name(f, lineno)
            if f in dagger:
                raise ParseError(lineno, f"duplicate dagger line for {f}")
            dagger[f] = _arrow_name(g, lineno)
        else:
            raise ParseError(lineno, f"unknown directive {head!r}")
    if name is None:
        raise CategoryError("missing category line")
    return Category(name, objects, arrows, table, dagger)
