"""Proof nets over a finite dagger category, with exact matrix models."""

from .category import Category, Loop, load_category
from .errors import CategoryError, FormulaError, ModelError, NetError, ParseError
from .formula import (
    Atom,
    DualAtom,
    Formula,
    Literal,
    Plus,
    Tensor,
    Unit,
    Zero,
    anf,
    fmt,
    parse_formula,
    star,
)
from .freecat import (
    FreeArrow,
    Wiring,
    complete,
    denote,
    fa_equal,
    fmt_arrow,
    parse_arrow,
    wiring,
)
from .model import Interpretation, Matrix, eval_free, eval_net, load_model
from .net import Net, Slice, SliceBuilder, parse_net, print_net, to_dot, validate_net
from .rewrite import NormalNet, beta_equal, normalize, to_net

__version__ = "0.1.0"

__all__ = [
    "Atom",
    "Category",
    "CategoryError",
    "DualAtom",
    "Formula",
    "FormulaError",
    "FreeArrow",
    "Interpretation",
    "Literal",
    "Loop",
    "Matrix",
    "ModelError",
    "Net",
    "NetError",
    "NormalNet",
    "ParseError",
    "Plus",
    "Slice",
    "SliceBuilder",
    "Tensor",
    "Unit",
    "Wiring",
    "Zero",
    "anf",
    "beta_equal",
    "complete",
    "denote",
    "eval_free",
    "eval_net",
    "fa_equal",
    "fmt",
    "fmt_arrow",
    "load_category",
    "load_model",
    "normalize",
    "parse_arrow",
    "parse_formula",
    "parse_net",
    "print_net",
    "star",
    "to_dot",
    "to_net",
    "validate_net",
    "wiring",
]
