"""Formulas over a generating category, and their additive normal forms.

Grammar: ``F ::= '0' | 'I' | Atom | F '*' | '(' F 'x' F ')' | '(' F '+' F ')'``.
Duals are pushed to the atoms on construction, so ``Tensor``/``Plus`` nodes
never sit under a star.  ``I`` may appear only as a whole formula or directly
under ``+``; ``0`` only as a whole formula.

The additive normal form (ANF) of a formula is the tuple of its tensor words:
distributing every ``+`` out of every ``x`` left-to-right.  A word is a tuple
of literals, the empty word being ``I``; the empty ANF is ``0``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import FormulaError, ParseError


class Formula:
    __slots__ = ()

    def __str__(self):
        return fmt(self)


@dataclass(frozen=True)
class Zero(Formula):
    pass


@dataclass(frozen=True)
class Unit(Formula):
    pass


@dataclass(frozen=True)
class Atom(Formula):
    name: str


@dataclass(frozen=True)
class DualAtom(Formula):
    name: str


@dataclass(frozen=True)
class Tensor(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Plus(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, order=True)
class Literal:
    """An atom or dual atom inside a tensor word."""

    name: str
    star: bool = False

    def dual(self):
        return Literal(self.name, not self.star)

    def __str__(self):
        return self.name + ("*" if self.star else "")


# ---------------------------------------------------------------------------
# structural operations


def star(f):
    """The dual formula, with stars pushed to the atoms."""
    match f:
        case Zero() | Unit():
            return f
        case Atom(name):
            return DualAtom(name)
        case DualAtom(name):
            return Atom(name)
        case Tensor(l, r):
            return Tensor(star(l), star(r))
        case Plus(l, r):
            return Plus(star(l), star(r))
    raise TypeError(f"not a formula: {f!r}")


def validate(f, cat=None):
    """Check the unit and zero restrictions (and atom names, given a category)."""

    def walk(g, under):
        match g:
            case Zero():
                raise FormulaError("0 may only appear as a whole formula")
            case Unit():
                if under == "x":
                    raise FormulaError("I may not appear under x")
            case Atom(name) | DualAtom(name):
                if cat is not None and name not in cat.objects:
                    raise FormulaError(f"unknown atom {name!r}")
            case Tensor(l, r):
                walk(l, "x")
                walk(r, "x")
            case Plus(l, r):
                walk(l, "+")
                walk(r, "+")
            case _:
                raise TypeError(f"not a formula: {g!r}")

    if isinstance(f, Zero):
        return
    walk(f, None)


def anf(f):
    """The additive normal form: a tuple of tensor words."""
    match f:
        case Zero():
            return ()
        case Unit():
            return ((),)
        case Atom(name):
            return ((Literal(name, False),),)
        case DualAtom(name):
            return ((Literal(name, True),),)
        case Plus(l, r):
            return anf(l) + anf(r)
        case Tensor(l, r):
            return tuple(u + v for u in anf(l) for v in anf(r))
    raise TypeError(f"not a formula: {f!r}")


def anf_star(a):
    """Literal-wise dual of an ANF; commutes with ``anf`` and ``star``."""
    return tuple(tuple(lit.dual() for lit in w) for w in a)


def anf_kron(a, b):
    """Tensor of ANFs: all concatenations u+v, u-major."""
    return tuple(u + v for u in a for v in b)


def anf_kron_all(parts):
    out = ((),)
    for p in parts:
        out = anf_kron(out, p)
    return out


def word_formula(w):
    if not w:
        return Unit()
    out = DualAtom(w[0].name) if w[0].star else Atom(w[0].name)
    for lit in w[1:]:
        out = Tensor(out, DualAtom(lit.name) if lit.star else Atom(lit.name))
    return out


def anf_formula(a):
    """A canonical formula with the given ANF (left-nested sums of words)."""
    if not a:
        return Zero()
    out = word_formula(a[0])
    for w in a[1:]:
        out = Plus(out, word_formula(w))
    return out


def fmt_word(w):
    if not w:
        return "I"
    return " x ".join(str(lit) for lit in w)


def fmt_anf(a):
    if not a:
        return "0"
    return " + ".join(fmt_word(w) for w in a)


def parse_anf(text, cat=None, lineno=0):
    """Parse an ANF written as words joined by '+', literals joined by 'x'."""
    text = text.strip()
    if text == "0":
        return ()
    words = []
    for wtext in text.split("+"):
        wtext = wtext.strip()
        if wtext == "I":
            words.append(())
            continue
        toks = wtext.split()
        if len(toks) % 2 == 0 or any(t != "x" for t in toks[1::2]):
            raise ParseError(lineno, f"bad word {wtext!r}: literals joined by ' x '")
        lits = []
        for ltext in toks[0::2]:
            starred = ltext.endswith("*")
            name = ltext[:-1] if starred else ltext
            if not name or not (name[0].isalpha() or name[0] == "_"):
                raise ParseError(lineno, f"bad literal {ltext!r}")
            if cat is not None and name not in cat.objects:
                raise ParseError(lineno, f"unknown atom {name!r}")
            lits.append(Literal(name, starred))
        words.append(tuple(lits))
    return tuple(words)


def fmt(f):
    match f:
        case Zero():
            return "0"
        case Unit():
            return "I"
        case Atom(name):
            return name
        case DualAtom(name):
            return name + "*"
        case Tensor(l, r):
            return f"({fmt(l)} x {fmt(r)})"
        case Plus(l, r):
            return f"({fmt(l)} + {fmt(r)})"
    raise TypeError(f"not a formula: {f!r}")


# ---------------------------------------------------------------------------
# parsing


def _tokenize(text, lineno):
    toks = []
    i = 0
    while i < len(text):
        c = text[i]
        if c.isspace():
            i += 1
        elif c in "()*+":
            toks.append(c)
            i += 1
        elif c.isalnum() or c == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(text[i:j])
            i = j
        else:
            raise ParseError(lineno, f"bad character {c!r} in formula")
    return toks


def _parse(toks, pos, lineno):
    if pos >= len(toks):
        raise ParseError(lineno, "unexpected end of formula")
    t = toks[pos]
    if t == "(":
        left, pos = _parse(toks, pos + 1, lineno)
        if pos >= len(toks) or toks[pos] not in ("x", "+"):
            raise ParseError(lineno, "expected 'x' or '+' in formula")
        op = toks[pos]
        right, pos = _parse(toks, pos + 1, lineno)
        if pos >= len(toks) or toks[pos] != ")":
            raise ParseError(lineno, "expected ')' in formula")
        node = Tensor(left, right) if op == "x" else Plus(left, right)
        pos += 1
    elif t == "0":
        node, pos = Zero(), pos + 1
    elif t == "I":
        node, pos = Unit(), pos + 1
    elif t[0].isalpha() or t[0] == "_":
        node, pos = Atom(t), pos + 1
    else:
        raise ParseError(lineno, f"unexpected token {t!r} in formula")
    while pos < len(toks) and toks[pos] == "*":
        node = star(node)
        pos += 1
    return node, pos


def parse_formula(text, cat=None, lineno=0):
    """Parse one formula; validates restrictions, and atoms if a category is given."""
    toks = _tokenize(text, lineno)
    node, pos = _parse(toks, 0, lineno)
    if pos != len(toks):
        raise ParseError(lineno, f"trailing tokens after formula: {' '.join(toks[pos:])}")
    try:
        validate(node, cat)
    except FormulaError as exc:
        raise ParseError(lineno, str(exc)) from exc
    return node


def split_commas(text):
    """Split on commas at paren depth 0 (for conclusion lists and the like)."""
    parts = []
    depth = 0
    cur = []
    for c in text:
        if c == "(":
            depth += 1
        elif c == ")":
            depth -= 1
        if c == "," and depth == 0:
            parts.append("".join(cur).strip())
            cur = []
        else:
            cur.append(c)
    parts.append("".join(cur).strip())
    return parts
