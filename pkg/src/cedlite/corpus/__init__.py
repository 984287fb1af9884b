"""Bundled surface-language development, checked in dependency order."""

from __future__ import annotations

from importlib import resources

FILE_ORDER = [
    "nat.ced",
    "list.ced",
    "vec.ced",
    "coercions-v2l.ced",
    "coercions-l2v.ced",
    "reuse-vec.ced",
    "vecl-v2u.ced",
    "reuse-list.ced",
    "map-nested.ced",
    "reuse-nested.ced",
    "negative.ced",
]


def corpus_texts() -> list[tuple[str, str]]:
    """(filename, source) pairs in checking order."""
    pkg = resources.files(__name__)
    return [(name, (pkg / name).read_text(encoding="utf-8"))
            for name in FILE_ORDER]


def load_corpus():
    """Parse the bundled corpus into one signature."""
    from ..parser import parse_signature
    from ..syntax import Signature

    sig = Signature()
    for name, text in corpus_texts():
        parse_signature(text, filename=name, sig=sig)
    return sig
