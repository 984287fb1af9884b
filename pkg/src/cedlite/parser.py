"""Concrete syntax: lexer, declaration parser, and name resolution.

A file is a sequence of `name ◂ classifier = body .` declarations and
`#assert-*` directives; comments run from `--` to end of line. Unicode
tokens and their ASCII aliases lex identically:

    λ \\     Λ /\\    Π Pi    ∀ forall    ι iota    ★ *     · @
    ➔ ->    ➾ =>    ≃ ==    ς ~         ρ rho     β beta  ◂ <|

Whitespace around `-` is significant: `-t` (tight) is an erased
application, a freestanding `-` separates a ρ proof from its body, and
identifiers may contain interior dashes (`v2l-v2l`). A `.` directly
followed by `1` or `2` with no space before it is a projection.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from . import syntax as S
from .syntax import Assertion, Decl, KernelError, Pos, Signature


def _located(msg: str, pos: Optional[Pos], filename: Optional[str]) -> str:
    where = ":".join(s for s in (filename, str(pos) if pos else None) if s)
    return f"{where}: {msg}" if where else msg


class ParseError(KernelError):
    def __init__(self, msg: str, pos: Optional[Pos] = None,
                 filename: Optional[str] = None):
        super().__init__(_located(msg, pos, filename))
        self.pos = pos


class ResolveError(KernelError):
    def __init__(self, msg: str, pos: Optional[Pos] = None,
                 filename: Optional[str] = None):
        super().__init__(_located(msg, pos, filename))
        self.pos = pos


# ---------------------------------------------------------------------------
# Lexer

@dataclass
class Token:
    kind: str
    text: str
    pos: Pos


_SINGLE = {
    "λ": "LAM", "Λ": "BIGLAM", "Π": "PI", "∀": "FORALL", "ι": "IOTA",
    "★": "STAR", "*": "STAR", "➔": "ARROW", "➾": "FATARROW", "≃": "SIMEQ",
    "ς": "SIGMA", "~": "SIGMA", "β": "BETA", "·": "CDOT", "@": "CDOT",
    "◂": "ASCRIBE", "\\": "LAM", "(": "LPAREN", ")": "RPAREN",
    "[": "LBRACKET", "]": "RBRACKET", "{": "LBRACE", "}": "RBRACE",
    ",": "COMMA", ":": "COLON",
}

_KEYWORDS = {"Pi": "PI", "forall": "FORALL", "iota": "IOTA",
             "rho": "RHO", "beta": "BETA"}


def _ident_start(c: str) -> bool:
    return c.isalpha() or c == "_"


def _ident_char(c: str) -> bool:
    return c.isalnum() or c in "_'′"


def tokenize(text: str, filename: str = "<input>") -> list[Token]:
    toks: list[Token] = []
    i, line, col = 0, 1, 1
    n = len(text)

    def pos() -> Pos:
        return Pos(line, col)

    def err(msg: str):
        raise ParseError(msg, pos(), filename)

    while i < n:
        c = text[i]
        if c == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if c in " \t\r":
            i += 1
            col += 1
            continue
        start = pos()
        if c == "-":
            nxt = text[i + 1] if i + 1 < n else ""
            if nxt == "-":
                while i < n and text[i] != "\n":
                    i += 1
                continue
            if nxt == ">":
                toks.append(Token("ARROW", "->", start))
                i += 2
                col += 2
                continue
            if nxt == "" or nxt in " \t\r\n":
                toks.append(Token("DASH", "-", start))
                i += 1
                col += 1
                continue
            toks.append(Token("ERASED", "-", start))
            i += 1
            col += 1
            continue
        if c == "=":
            nxt = text[i + 1] if i + 1 < n else ""
            if nxt == "=":
                toks.append(Token("SIMEQ", "==", start))
                i += 2
                col += 2
                continue
            if nxt == ">":
                toks.append(Token("FATARROW", "=>", start))
                i += 2
                col += 2
                continue
            toks.append(Token("EQUALS", "=", start))
            i += 1
            col += 1
            continue
        if c == "/":
            if i + 1 < n and text[i + 1] == "\\":
                toks.append(Token("BIGLAM", "/\\", start))
                i += 2
                col += 2
                continue
            err("stray '/'")
        if c == "<":
            if i + 1 < n and text[i + 1] == "|":
                toks.append(Token("ASCRIBE", "<|", start))
                i += 2
                col += 2
                continue
            err("stray '<'")
        if c == ".":
            tight_left = i > 0 and text[i - 1] not in " \t\r\n"
            nxt = text[i + 1] if i + 1 < n else ""
            if tight_left and nxt in "12":
                toks.append(Token("PROJ", nxt, start))
                i += 2
                col += 2
                continue
            toks.append(Token("DOT", ".", start))
            i += 1
            col += 1
            continue
        if c == "#":
            j = i + 1
            while j < n and (text[j].isalnum() or text[j] == "-"):
                j += 1
            word = text[i:j]
            toks.append(Token("DIRECTIVE", word, start))
            col += j - i
            i = j
            continue
        if c in ("ρ",):
            if i + 1 < n and text[i + 1] == "+":
                toks.append(Token("RHOPLUS", "ρ+", start))
                i += 2
                col += 2
                continue
            toks.append(Token("RHO", "ρ", start))
            i += 1
            col += 1
            continue
        if c in _SINGLE:
            toks.append(Token(_SINGLE[c], c, start))
            i += 1
            col += 1
            continue
        if _ident_start(c):
            j = i + 1
            while j < n:
                if _ident_char(text[j]):
                    j += 1
                elif text[j] == "-" and j + 1 < n and _ident_char(text[j + 1]):
                    # interior dash, as in v2l-v2l
                    j += 1
                else:
                    break
            word = text[i:j]
            col += j - i
            i = j
            if word in _KEYWORDS:
                kind = _KEYWORDS[word]
                if kind == "RHO" and i < n and text[i] == "+":
                    toks.append(Token("RHOPLUS", "rho+", start))
                    i += 1
                    col += 1
                else:
                    toks.append(Token(kind, word, start))
            else:
                toks.append(Token("IDENT", word, start))
            continue
        err(f"unexpected character {c!r}")
    toks.append(Token("EOF", "", Pos(line, col)))
    return toks


# ---------------------------------------------------------------------------
# Surface AST (names unresolved)

@dataclass
class SNode:
    pos: Pos


@dataclass
class SVar(SNode):
    name: str


@dataclass
class SStar(SNode):
    pass


@dataclass
class SLam(SNode):
    binder: str
    ann: Optional[SNode]
    body: SNode


@dataclass
class SBigLam(SNode):
    binder: str
    body: SNode


@dataclass
class SBinder(SNode):
    head: str  # "all" | "pi" | "iota"
    binder: str
    cls: SNode
    body: SNode


@dataclass
class SArrow(SNode):
    fat: bool
    lhs: SNode
    rhs: SNode


@dataclass
class SApp(SNode):
    style: str  # "explicit" | "erased" | "type"
    fn: SNode
    arg: SNode


@dataclass
class SPair(SNode):
    left: SNode
    right: SNode


@dataclass
class SProj(SNode):
    sub: SNode
    which: int


@dataclass
class SBeta(SNode):
    witness: Optional[SNode]


@dataclass
class SRho(SNode):
    plus: bool
    proof: SNode
    body: SNode


@dataclass
class SSigma(SNode):
    proof: SNode


@dataclass
class SEq(SNode):
    lhs: SNode
    rhs: SNode


_ATOM_STARTERS = {"IDENT", "LPAREN", "LBRACKET", "BETA", "STAR", "LBRACE"}


class _Parser:
    def __init__(self, toks: list[Token], filename: str):
        self.toks = toks
        self.i = 0
        self.filename = filename

    def peek(self) -> Token:
        return self.toks[self.i]

    def next(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, kind: str) -> Token:
        t = self.next()
        if t.kind != kind:
            raise ParseError(
                f"expected {kind}, found {t.kind} {t.text!r}",
                t.pos, self.filename)
        return t

    # expression grammar, loosest first:
    #   expr   := binders | ρ ... | ς expr | arrows (≃ arrows)?
    #   arrows := app ((➔|➾) expr)?
    #   app    := atom (atom | -atom | · atom)*
    def parse_expr(self) -> SNode:
        t = self.peek()
        if t.kind == "LAM":
            self.next()
            binder = self.expect("IDENT").text
            ann = None
            if self.peek().kind == "COLON":
                self.next()
                ann = self.parse_expr()
            self.expect("DOT")
            return SLam(t.pos, binder, ann, self.parse_expr())
        if t.kind == "BIGLAM":
            self.next()
            binder = self.expect("IDENT").text
            self.expect("DOT")
            return SBigLam(t.pos, binder, self.parse_expr())
        if t.kind in ("PI", "FORALL", "IOTA"):
            self.next()
            head = {"PI": "pi", "FORALL": "all", "IOTA": "iota"}[t.kind]
            binder = self.expect("IDENT").text
            self.expect("COLON")
            cls = self.parse_expr()
            self.expect("DOT")
            return SBinder(t.pos, head, binder, cls, self.parse_expr())
        if t.kind in ("RHO", "RHOPLUS"):
            self.next()
            proof = self.parse_proof()
            self.expect("DASH")
            return SRho(t.pos, t.kind == "RHOPLUS", proof, self.parse_expr())
        if t.kind == "SIGMA":
            self.next()
            return SSigma(t.pos, self.parse_expr())
        lhs = self.parse_arrows()
        if self.peek().kind == "SIMEQ":
            self.next()
            return SEq(lhs.pos, lhs, self.parse_arrows())
        return lhs

    def parse_proof(self) -> SNode:
        t = self.peek()
        if t.kind == "SIGMA":
            self.next()
            return SSigma(t.pos, self.parse_proof())
        return self.parse_app()

    def parse_arrows(self) -> SNode:
        lhs = self.parse_app()
        t = self.peek()
        if t.kind in ("ARROW", "FATARROW"):
            # the codomain extends maximally right and may itself bind
            self.next()
            return SArrow(lhs.pos, t.kind == "FATARROW", lhs, self.parse_expr())
        return lhs

    def parse_app(self) -> SNode:
        node = self.parse_atom()
        while True:
            t = self.peek()
            if t.kind in _ATOM_STARTERS:
                node = SApp(node.pos, "explicit", node, self.parse_atom())
            elif t.kind == "ERASED":
                self.next()
                node = SApp(node.pos, "erased", node, self.parse_atom())
            elif t.kind == "CDOT":
                self.next()
                node = SApp(node.pos, "type", node, self.parse_atom())
            else:
                return node

    def parse_atom(self) -> SNode:
        t = self.next()
        if t.kind == "IDENT":
            return self.postfix(SVar(t.pos, t.text))
        if t.kind == "LPAREN":
            e = self.parse_expr()
            self.expect("RPAREN")
            return self.postfix(e)
        if t.kind == "LBRACKET":
            left = self.parse_expr()
            self.expect("COMMA")
            right = self.parse_expr()
            self.expect("RBRACKET")
            return self.postfix(SPair(t.pos, left, right))
        if t.kind == "BETA":
            if self.peek().kind == "LBRACE":
                self.next()
                w = self.parse_expr()
                self.expect("RBRACE")
                return SBeta(t.pos, w)
            return SBeta(t.pos, None)
        if t.kind == "STAR":
            return SStar(t.pos)
        if t.kind == "LBRACE":
            lhs = self.parse_arrows()
            self.expect("SIMEQ")
            rhs = self.parse_arrows()
            self.expect("RBRACE")
            return self.postfix(SEq(t.pos, lhs, rhs))
        raise ParseError(
            f"expected a term or type, found {t.kind} {t.text!r}",
            t.pos, self.filename)

    def postfix(self, node: SNode) -> SNode:
        while self.peek().kind == "PROJ":
            t = self.next()
            node = SProj(t.pos, node, int(t.text))
        return node

    # --- declarations and directives ------------------------------------

    def parse_decl_core(self) -> tuple[str, SNode, SNode, Pos]:
        name_tok = self.expect("IDENT")
        self.expect("ASCRIBE")
        classifier = self.parse_expr()
        self.expect("EQUALS")
        body = self.parse_expr()
        self.expect("DOT")
        return name_tok.text, classifier, body, name_tok.pos

    def parse_items(self) -> list:
        items = []
        while True:
            t = self.peek()
            if t.kind == "EOF":
                return items
            if t.kind == "DIRECTIVE":
                items.append(self.parse_directive())
                continue
            if t.kind == "IDENT":
                items.append(("decl", self.parse_decl_core(), False))
                continue
            raise ParseError(
                f"expected a declaration or directive, "
                f"found {t.kind} {t.text!r}", t.pos, self.filename)

    def parse_directive(self):
        t = self.next()
        if t.text == "#assert-id":
            return ("assert", Assertion("identity", self.expect("IDENT").text,
                                        pos=t.pos))
        if t.text == "#assert-not-id":
            return ("assert", Assertion("not-identity",
                                        self.expect("IDENT").text, pos=t.pos))
        if t.text == "#assert-eq":
            a = self.expect("IDENT").text
            b = self.expect("IDENT").text
            return ("assert", Assertion("erase-equal", a, other=b, pos=t.pos))
        if t.text == "#assert-erase":
            name = self.expect("IDENT").text
            self.expect("EQUALS")
            payload = self.parse_expr()
            self.expect("DOT")
            return ("assert-erase", name, payload, t.pos)
        if t.text == "#assert-fail":
            return ("decl", self.parse_decl_core(), True)
        raise ParseError(f"unknown directive {t.text}", t.pos,
                         self.filename)


# ---------------------------------------------------------------------------
# Elaboration: classify as term/type/kind and resolve names to indices

def _is_kind_syntax(s: SNode) -> bool:
    if isinstance(s, SStar):
        return True
    if isinstance(s, SArrow) and not s.fat:
        return _is_kind_syntax(s.rhs)
    if isinstance(s, SBinder) and s.head == "pi":
        return _is_kind_syntax(s.body)
    return False


class _Elab:
    def __init__(self, sig: Signature, filename: str = "<input>"):
        self.sig = sig
        self.filename = filename
        self.env: list[str] = []  # binder names, innermost last

    def fail(self, msg: str, pos: Optional[Pos]):
        raise ResolveError(msg, pos, self.filename)

    def _lookup(self, name: str) -> Optional[int]:
        for depth, bound in enumerate(reversed(self.env)):
            if bound == name:
                return depth
        return None

    def _push(self, name: str):
        self.env.append(name)

    def _pop(self):
        self.env.pop()

    def classifier(self, s: SNode) -> Union[S.Type, S.Kind]:
        return self.kind(s) if _is_kind_syntax(s) else self.type(s)

    def term(self, s: SNode) -> S.Term:
        match s:
            case SVar(pos, name):
                idx = self._lookup(name)
                if idx is not None:
                    return S.Var(idx)
                decl = self.sig.lookup(name)
                if decl is None:
                    self.fail(f"unbound identifier {name}", pos)
                if decl.level != "term":
                    self.fail(f"{name} is a type-level definition, not a term", pos)
                return S.Ref(name)
            case SLam(_, binder, ann, body):
                a = self.type(ann) if ann is not None else None
                self._push(binder)
                try:
                    return S.Lam(binder, a, self.term(body))
                finally:
                    self._pop()
            case SBigLam(_, binder, body):
                self._push(binder)
                try:
                    return S.ILam(binder, self.term(body))
                finally:
                    self._pop()
            case SApp(_, style, fn, arg):
                f = self.term(fn)
                if style == "explicit":
                    return S.App(f, self.term(arg))
                if style == "erased":
                    return S.EApp(f, self.term(arg))
                return S.TApp(f, self.type(arg))
            case SPair(_, left, right):
                return S.Pair(self.term(left), self.term(right))
            case SProj(_, sub, which):
                return S.Proj(self.term(sub), which)
            case SBeta(_, witness):
                return S.Beta(self.term(witness) if witness else None)
            case SRho(_, plus, proof, body):
                return S.Rho(self.term(proof), self.term(body), plus)
            case SSigma(_, proof):
                return S.Symm(self.term(proof))
            case SEq(pos, _, _) | SArrow(pos, _, _, _) | SBinder(pos, _, _, _, _):
                self.fail("type syntax in a term position", pos)
            case SStar(pos):
                self.fail("★ in a term position", pos)
        raise TypeError(s)

    def type(self, s: SNode) -> S.Type:
        match s:
            case SVar(pos, name):
                idx = self._lookup(name)
                if idx is not None:
                    return S.TVar(idx)
                decl = self.sig.lookup(name)
                if decl is None:
                    self.fail(f"unbound identifier {name}", pos)
                if decl.level != "type":
                    self.fail(f"{name} is a term-level definition, not a type", pos)
                return S.TRef(name)
            case SBinder(_, head, binder, cls, body):
                if head == "all":
                    dom = self.classifier(cls)
                    self._push(binder)
                    try:
                        return S.All(binder, dom, self.type(body))
                    finally:
                        self._pop()
                if head == "pi":
                    dom = self.type(cls)
                    self._push(binder)
                    try:
                        return S.Pi(binder, dom, self.type(body))
                    finally:
                        self._pop()
                left = self.type(cls)
                self._push(binder)
                try:
                    return S.Iota(binder, left, self.type(body))
                finally:
                    self._pop()
            case SArrow(_, fat, lhs, rhs):
                dom = self.type(lhs)
                self._push("")
                try:
                    body = self.type(rhs)
                finally:
                    self._pop()
                return S.All("", dom, body) if fat else S.Pi("", dom, body)
            case SLam(pos, binder, ann, body):
                if ann is None:
                    self.fail("type-level λ binders must be annotated", pos)
                dom = self.classifier(ann)
                self._push(binder)
                try:
                    return S.TLam(binder, dom, self.type(body))
                finally:
                    self._pop()
            case SApp(_, style, fn, arg):
                f = self.type(fn)
                if style == "type":
                    return S.AppT(f, self.type(arg))
                if style == "explicit":
                    return S.AppTm(f, self.term(arg))
                self.fail("erased application in a type position", s.pos)
            case SEq(_, lhs, rhs):
                return S.Eq(self.term(lhs), self.term(rhs))
            case SStar(pos):
                self.fail("★ is a kind, not a type", pos)
            case SBigLam(pos, _, _) | SBeta(pos, _) | SRho(pos, _, _, _) \
                    | SSigma(pos, _) | SPair(pos, _, _) | SProj(pos, _, _):
                self.fail("term syntax in a type position", pos)
        raise TypeError(s)

    def kind(self, s: SNode) -> S.Kind:
        match s:
            case SStar(_):
                return S.Star()
            case SArrow(pos, fat, lhs, rhs):
                if fat:
                    self.fail("➾ cannot appear in a kind", pos)
                if _is_kind_syntax(lhs):
                    dom_k = self.kind(lhs)
                    self._push("")
                    try:
                        return S.KPiK("", dom_k, self.kind(rhs))
                    finally:
                        self._pop()
                dom = self.type(lhs)
                self._push("")
                try:
                    return S.KPi("", dom, self.kind(rhs))
                finally:
                    self._pop()
            case SBinder(pos, head, binder, cls, body):
                if head != "pi":
                    self.fail("only Π binders may appear in kinds", pos)
                if _is_kind_syntax(cls):
                    dom_k = self.kind(cls)
                    self._push(binder)
                    try:
                        return S.KPiK(binder, dom_k, self.kind(body))
                    finally:
                        self._pop()
                dom = self.type(cls)
                self._push(binder)
                try:
                    return S.KPi(binder, dom, self.kind(body))
                finally:
                    self._pop()
        self.fail("expected a kind", s.pos)


def _elaborate_items(items, sig: Signature, filename: str) -> None:
    for item in items:
        match item:
            case ("decl", (name, cls_s, body_s, pos), expect_fail):
                if not expect_fail and name in sig:
                    raise ResolveError(f"duplicate definition {name}", pos,
                                       filename)
                elab = _Elab(sig, filename)
                if _is_kind_syntax(cls_s):
                    classifier = elab.kind(cls_s)
                    body = elab.type(body_s)
                    level = "type"
                else:
                    classifier = elab.type(cls_s)
                    body = elab.term(body_s)
                    level = "term"
                sig.add(Decl(name, level, classifier, body, pos=pos,
                             expect_fail=expect_fail))
            case ("assert", assertion):
                _attach(sig, assertion, filename)
            case ("assert-erase", name, payload_s, pos):
                payload = _Elab(sig, filename).term(payload_s)
                _attach(sig, Assertion("erases-to", name, payload=payload,
                                       pos=pos), filename)


def _attach(sig: Signature, assertion: Assertion,
            filename: Optional[str] = None) -> None:
    decl = sig.lookup(assertion.target)
    if decl is None:
        raise ResolveError(f"assertion names unknown definition "
                           f"{assertion.target}", assertion.pos, filename)
    if decl.level != "term":
        raise ResolveError(f"assertion target {assertion.target} has no "
                           f"erasure (type-level)", assertion.pos, filename)
    if assertion.other is not None:
        other = sig.lookup(assertion.other)
        if other is None or other.level != "term":
            raise ResolveError(f"assertion names unknown term definition "
                               f"{assertion.other}", assertion.pos, filename)
    decl.assertions.append(assertion)


# ---------------------------------------------------------------------------
# Entry points

def parse_signature(text: str, filename: str = "<input>",
                    sig: Optional[Signature] = None) -> Signature:
    """Parse and resolve declarations, extending `sig` when given."""
    if sig is None:
        sig = Signature()
    items = _Parser(tokenize(text, filename), filename).parse_items()
    _elaborate_items(items, sig, filename)
    return sig


def parse_files(paths, sig: Optional[Signature] = None) -> Signature:
    if sig is None:
        sig = Signature()
    for path in paths:
        with open(path, encoding="utf-8") as fh:
            parse_signature(fh.read(), filename=str(path), sig=sig)
    return sig


def parse_term(text: str, sig: Optional[Signature] = None) -> S.Term:
    """Parse a standalone term (closed up to definitions in `sig`)."""
    sig = sig if sig is not None else Signature()
    toks = tokenize(text)
    p = _Parser(toks, "<term>")
    node = p.parse_expr()
    p.expect("EOF")
    return _Elab(sig).term(node)


def parse_type(text: str, sig: Optional[Signature] = None) -> S.Type:
    sig = sig if sig is not None else Signature()
    toks = tokenize(text)
    p = _Parser(toks, "<type>")
    node = p.parse_expr()
    p.expect("EOF")
    elab = _Elab(sig)
    return elab.kind(node) if _is_kind_syntax(node) else elab.type(node)
