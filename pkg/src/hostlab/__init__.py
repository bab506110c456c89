"""Finite-model laboratory for tiered set theory over hereditarily finite sets."""

from .errors import (
    BoundExceeded,
    BudgetExceeded,
    CaptureError,
    CodeOverflow,
    ConfigError,
    EvaluationError,
    FormulaSyntaxError,
    HostError,
    NotAFunction,
)
from .formula import parse, relativize, render
from .hf import EMPTY, HfSet, decode, parse_hf, powerset, von_neumann
from .model import Structure, axiom_audit, check_closed, evaluate, satisfies

__version__ = "0.1.0"

__all__ = [
    "EMPTY",
    "BoundExceeded",
    "BudgetExceeded",
    "CaptureError",
    "CodeOverflow",
    "ConfigError",
    "EvaluationError",
    "FormulaSyntaxError",
    "HfSet",
    "HostError",
    "NotAFunction",
    "Structure",
    "axiom_audit",
    "check_closed",
    "decode",
    "evaluate",
    "parse",
    "parse_hf",
    "powerset",
    "relativize",
    "render",
    "satisfies",
    "von_neumann",
]
