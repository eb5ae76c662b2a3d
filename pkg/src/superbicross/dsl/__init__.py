"""The ``.hsa`` presentation language: parser, printer and model builder."""

from .printer import print_expression, print_presentation, print_tensor_expression
from .semantics import DslModel, build_model, doc_from_bicross, doc_from_hopf, run_checks
from .syntax import (
    DslError,
    DslSemanticError,
    DslSyntaxError,
    ParityMismatch,
    PresentationDoc,
    UndeclaredGenerator,
    parse_expression,
    parse_presentation,
    parse_tensor_expression,
)

__all__ = [
    "DslError",
    "DslSemanticError",
    "DslSyntaxError",
    "ParityMismatch",
    "UndeclaredGenerator",
    "PresentationDoc",
    "DslModel",
    "parse_presentation",
    "parse_expression",
    "parse_tensor_expression",
    "print_presentation",
    "print_expression",
    "print_tensor_expression",
    "build_model",
    "run_checks",
    "doc_from_hopf",
    "doc_from_bicross",
]
