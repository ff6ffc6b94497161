import pytest

from cqlnet.errors import FormulaError, ParseError
from cqlnet.formula import (
    Atom,
    DualAtom,
    Literal,
    Plus,
    Tensor,
    Unit,
    Zero,
    anf,
    anf_formula,
    anf_kron,
    anf_star,
    fmt,
    fmt_anf,
    parse_anf,
    parse_formula,
    split_commas,
    star,
    validate,
    word_formula,
)


def test_parse_and_fmt_round_trip():
    for text in [
        "Q",
        "Q*",
        "I",
        "0",
        "(Q x Q)",
        "(Q* x Q)",
        "(Q + I)",
        "((Q x Q) + (Q* x Q*))",
        "((I + I) + (I + I))",
    ]:
        f = parse_formula(text)
        assert parse_formula(fmt(f)) == f


def test_star_pushes_to_atoms():
    f = parse_formula("((Q x Q) + I)")
    assert star(f) == parse_formula("((Q* x Q*) + I)")
    g = parse_formula("(Q + Q*)*")
    assert g == Plus(DualAtom("Q"), Atom("Q"))


def test_star_involution():
    f = parse_formula("((Q* x (Q + I)) + Q)")
    assert star(star(f)) == f


def test_anf_distributes():
    f = parse_formula("((Q + I) x Q*)")
    assert anf(f) == (
        (Literal("Q"), Literal("Q", True)),
        (Literal("Q", True),),
    )
    assert anf(parse_formula("0")) == ()
    assert anf(parse_formula("I")) == ((),)


def test_anf_nested_oracle():
    # ((A + B) x (C + D)) enumerates words in row-major order
    f = Tensor(Plus(Atom("A"), Atom("B")), Plus(Atom("C"), Atom("D")))
    assert anf(f) == (
        (Literal("A"), Literal("C")),
        (Literal("A"), Literal("D")),
        (Literal("B"), Literal("C")),
        (Literal("B"), Literal("D")),
    )


def test_anf_star_commutes_with_star():
    f = parse_formula("((Q* x (Q + I)) + (Q x Q))")
    assert anf(star(f)) == anf_star(anf(f))


def test_anf_formula_round_trip():
    for text in ["0", "I", "(Q + I)", "((Q + I) x Q*)", "(Q* x (Q x Q))"]:
        a = anf(parse_formula(text))
        assert anf(anf_formula(a)) == a


def test_word_formula():
    assert word_formula(()) == Unit()
    w = (Literal("Q", True), Literal("Q"))
    assert word_formula(w) == Tensor(DualAtom("Q"), Atom("Q"))


def test_parse_anf_round_trip():
    for text in ["0", "I", "Q* x Q", "Q* x Q + I", "Q + Q + Q*"]:
        a = parse_anf(text)
        assert parse_anf(fmt_anf(a)) == a
    assert parse_anf("I + I") == ((), ())


def test_parse_anf_rejects_garbage():
    with pytest.raises(ParseError):
        parse_anf("Q Q")
    with pytest.raises(ParseError):
        parse_anf("Q x")
    with pytest.raises(ParseError):
        parse_anf("3Q")


def test_anf_kron_is_row_major():
    a = ((Literal("A"),), (Literal("B"),))
    b = ((Literal("C"),), (Literal("D"),))
    assert anf_kron(a, b) == (
        (Literal("A"), Literal("C")),
        (Literal("A"), Literal("D")),
        (Literal("B"), Literal("C")),
        (Literal("B"), Literal("D")),
    )


def test_validate_unit_restriction():
    validate(parse_formula("(Q + I)"))
    with pytest.raises(FormulaError, match="I may not"):
        validate(Tensor(Unit(), Atom("Q")))


def test_validate_zero_restriction():
    validate(Zero())
    with pytest.raises(FormulaError, match="0 may only"):
        validate(Tensor(Zero(), Atom("Q")))
    with pytest.raises(FormulaError, match="0 may only"):
        validate(Plus(Atom("Q"), Zero()))


def test_validate_atom_names(c2):
    validate(parse_formula("(Q x Q*)"), c2)
    with pytest.raises(FormulaError, match="unknown atom"):
        validate(parse_formula("R"), c2)


def test_parse_formula_errors():
    for text in ["", "(Q x Q", "Q )", "(Q x x Q)", "(Q % Q)", "(Q x Q +)"]:
        with pytest.raises(ParseError):
            parse_formula(text)


def test_parse_formula_against_category(c2):
    assert parse_formula("Q*", c2) == DualAtom("Q")
    with pytest.raises(ParseError):
        parse_formula("R", c2)


def test_double_star_parses():
    assert parse_formula("Q**") == Atom("Q")
    assert parse_formula("(Q x Q*)*") == Tensor(DualAtom("Q"), Atom("Q"))


def test_split_commas():
    assert split_commas("a , b , c") == ["a", "b", "c"]
    assert split_commas("(a , b) , c") == ["(a , b)", "c"]
    assert split_commas("x") == ["x"]
