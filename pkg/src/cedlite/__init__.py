"""cedlite: a small proof-checker kernel for a type theory with implicit
products, dependent intersections, and equality of erased untyped terms."""

from .erasure import PApp, PLam, PRef, PVar, PureTerm, embed, erase, \
    free_in_erasure
from .normalize import Fuel, FuelExhausted, NormalForm, conv, is_identity, \
    normalize
from .parser import ParseError, ResolveError, parse_files, parse_signature, \
    parse_term, parse_type
from .printer import print_classifier, print_decl, print_erased, print_kind, \
    print_pure, print_term, print_type
from .syntax import Assertion, Decl, KernelError, Signature
from .typecheck import CheckError, Checker, CheckReport, check_signature

__all__ = [
    "Assertion", "CheckError", "Checker", "CheckReport", "Decl", "Fuel",
    "FuelExhausted", "KernelError", "NormalForm", "PApp", "PLam", "PRef",
    "PVar", "ParseError", "PureTerm", "ResolveError", "Signature",
    "check_signature", "conv", "embed", "erase", "free_in_erasure",
    "is_identity", "normalize", "parse_files", "parse_signature",
    "parse_term", "parse_type", "print_classifier", "print_decl",
    "print_erased", "print_kind", "print_pure", "print_term", "print_type",
]
