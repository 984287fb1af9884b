"""Printing for terms, types, kinds, and pure terms.

Annotated output reparses to an alpha-equal AST. Binder hints are kept
where possible and freshened against enclosing binders and any
definition names referenced below, so shadowing never captures on the
way back in.
"""

from __future__ import annotations

from . import erasure as E
from . import syntax as S

_UNI = {
    "lam": "λ", "ilam": "Λ", "pi": "Π", "all": "∀", "iota": "ι",
    "star": "★", "arrow": "➔", "fatarrow": "➾", "eq": "≃", "cdot": "·",
    "beta": "β", "rho": "ρ", "rhoplus": "ρ+", "sigma": "ς", "ascribe": "◂",
}
_ASCII = {
    "lam": "\\", "ilam": "/\\", "pi": "Pi", "all": "forall", "iota": "iota",
    "star": "*", "arrow": "->", "fatarrow": "=>", "eq": "==", "cdot": "@",
    "beta": "beta", "rho": "rho", "rhoplus": "rho+", "sigma": "~",
    "ascribe": "<|",
}

# precedence: 0 expr (binders, ρ, ς, ≃), 1 arrows, 2 application, 3 atoms
_EXPR, _ARROW, _APP, _ATOM = 0, 1, 2, 3


def _ref_names(node, out: set[str]) -> None:
    if isinstance(node, (S.Ref, S.TRef, E.PRef)):
        out.add(node.name)
        return
    for f in getattr(node, "__dataclass_fields__", {}):
        sub = getattr(node, f)
        if hasattr(sub, "__dataclass_fields__"):
            _ref_names(sub, out)


def _uses_binder(body, depth: int = 0) -> bool:
    """Does de Bruijn index `depth` occur in `body`?"""
    if isinstance(body, (S.Var, S.TVar, E.PVar)):
        return body.idx == depth
    binders = (S.Lam, S.ILam, S.All, S.Pi, S.TLam, S.Iota, S.KPi, S.KPiK,
               E.PLam)
    is_binder = isinstance(body, binders)
    for f in getattr(body, "__dataclass_fields__", {}):
        sub = getattr(body, f)
        if hasattr(sub, "__dataclass_fields__"):
            under = is_binder and f in ("body", "right")
            if _uses_binder(sub, depth + (1 if under else 0)):
                return True
    return False


class _Printer:
    def __init__(self, ascii_only: bool = False):
        self.sym = _ASCII if ascii_only else _UNI

    def fresh(self, hint: str, env: list[str], below) -> str:
        taken = set(env)
        _ref_names(below, taken)
        name = hint or "x"
        while name in taken:
            name += "'"
        return name

    @staticmethod
    def wrap(text: str, level: int, ctx: int) -> str:
        return f"({text})" if level < ctx else text

    def term(self, t, env: list[str], ctx: int = _EXPR) -> str:
        sym = self.sym
        match t:
            case S.Var(idx):
                return env[len(env) - 1 - idx] if idx < len(env) \
                    else f"?{idx - len(env)}"
            case S.Ref(name):
                return name
            case S.Lam(hint, ann, body):
                x = self.fresh(hint, env, body)
                a = f" : {self.type(ann, env)}" if ann is not None else ""
                s = f"{sym['lam']} {x}{a} . {self.term(body, env + [x])}"
                return self.wrap(s, _EXPR, ctx)
            case S.ILam(hint, body):
                x = self.fresh(hint, env, body)
                s = f"{sym['ilam']} {x} . {self.term(body, env + [x])}"
                return self.wrap(s, _EXPR, ctx)
            case S.App(f, a):
                s = f"{self.term(f, env, _APP)} {self.term(a, env, _ATOM)}"
                return self.wrap(s, _APP, ctx)
            case S.EApp(f, a):
                s = f"{self.term(f, env, _APP)} -{self.term(a, env, _ATOM)}"
                return self.wrap(s, _APP, ctx)
            case S.TApp(f, ty):
                s = (f"{self.term(f, env, _APP)} {sym['cdot']} "
                     f"{self.type(ty, env, _ATOM)}")
                return self.wrap(s, _APP, ctx)
            case S.Pair(l, r):
                return f"[ {self.term(l, env)} , {self.term(r, env)} ]"
            case S.Proj(sub, which):
                return f"{self.term(sub, env, _ATOM)}.{which}"
            case S.Beta(None):
                return sym["beta"]
            case S.Beta(w):
                return f"{sym['beta']}{{{self.term(w, env)}}}"
            case S.Rho(proof, body, plus):
                kw = sym["rhoplus"] if plus else sym["rho"]
                s = f"{kw} {self.term(proof, env, _APP)} - {self.term(body, env)}"
                return self.wrap(s, _EXPR, ctx)
            case S.Symm(proof):
                s = f"{sym['sigma']} {self.term(proof, env, _APP)}"
                return self.wrap(s, _EXPR, ctx)
        raise TypeError(t)

    def type(self, ty, env: list[str], ctx: int = _EXPR) -> str:
        sym = self.sym
        match ty:
            case S.TVar(idx):
                return env[len(env) - 1 - idx] if idx < len(env) \
                    else f"?{idx - len(env)}"
            case S.TRef(name):
                return name
            case S.All(hint, dom, body):
                if not _uses_binder(body) and S.is_type(dom):
                    s = (f"{self.type(dom, env, _APP)} {sym['fatarrow']} "
                         f"{self.type(body, env + [''], _ARROW)}")
                    return self.wrap(s, _ARROW, ctx)
                dom_s = self.kind(dom, env) if S.is_kind(dom) \
                    else self.type(dom, env)
                x = self.fresh(hint, env, body)
                s = f"{sym['all']} {x} : {dom_s} . {self.type(body, env + [x])}"
                return self.wrap(s, _EXPR, ctx)
            case S.Pi(hint, dom, body):
                if not _uses_binder(body):
                    s = (f"{self.type(dom, env, _APP)} {sym['arrow']} "
                         f"{self.type(body, env + [''], _ARROW)}")
                    return self.wrap(s, _ARROW, ctx)
                x = self.fresh(hint, env, body)
                s = (f"{sym['pi']} {x} : {self.type(dom, env)} . "
                     f"{self.type(body, env + [x])}")
                return self.wrap(s, _EXPR, ctx)
            case S.TLam(hint, dom, body):
                dom_s = self.kind(dom, env) if S.is_kind(dom) \
                    else self.type(dom, env)
                x = self.fresh(hint, env, body)
                s = f"{sym['lam']} {x} : {dom_s} . {self.type(body, env + [x])}"
                return self.wrap(s, _EXPR, ctx)
            case S.AppT(f, a):
                s = (f"{self.type(f, env, _APP)} {sym['cdot']} "
                     f"{self.type(a, env, _ATOM)}")
                return self.wrap(s, _APP, ctx)
            case S.AppTm(f, a):
                s = f"{self.type(f, env, _APP)} {self.term(a, env, _ATOM)}"
                return self.wrap(s, _APP, ctx)
            case S.Iota(hint, left, right):
                x = self.fresh(hint, env, right)
                s = (f"{sym['iota']} {x} : {self.type(left, env)} . "
                     f"{self.type(right, env + [x])}")
                return self.wrap(s, _EXPR, ctx)
            case S.Eq(l, r):
                s = f"{self.term(l, env, _APP)} {sym['eq']} {self.term(r, env, _APP)}"
                return self.wrap(s, _EXPR, ctx)
        raise TypeError(ty)

    def kind(self, k, env: list[str], ctx: int = _EXPR) -> str:
        sym = self.sym
        match k:
            case S.Star():
                return sym["star"]
            case S.KPi(hint, dom, body):
                if not _uses_binder(body):
                    s = (f"{self.type(dom, env, _APP)} {sym['arrow']} "
                         f"{self.kind(body, env + [''], _ARROW)}")
                    return self.wrap(s, _ARROW, ctx)
                x = self.fresh(hint, env, body)
                s = (f"{sym['pi']} {x} : {self.type(dom, env)} . "
                     f"{self.kind(body, env + [x])}")
                return self.wrap(s, _EXPR, ctx)
            case S.KPiK(hint, dom, body):
                if not _uses_binder(body):
                    s = (f"{self.kind(dom, env, _APP)} {sym['arrow']} "
                         f"{self.kind(body, env + [''], _ARROW)}")
                    return self.wrap(s, _ARROW, ctx)
                x = self.fresh(hint, env, body)
                s = (f"{sym['pi']} {x} : {self.kind(dom, env)} . "
                     f"{self.kind(body, env + [x])}")
                return self.wrap(s, _EXPR, ctx)
        raise TypeError(k)

    def pure(self, p, env: list[str], ctx: int = _EXPR) -> str:
        match p:
            case E.PVar(idx):
                return env[len(env) - 1 - idx] if idx < len(env) \
                    else f"?{idx - len(env)}"
            case E.PRef(name):
                return name
            case E.PLam(hint, body):
                x = self.fresh(hint, env, body)
                s = f"{self.sym['lam']} {x} . {self.pure(body, env + [x])}"
                return self.wrap(s, _EXPR, ctx)
            case E.PApp(f, a):
                s = f"{self.pure(f, env, _APP)} {self.pure(a, env, _ATOM)}"
                return self.wrap(s, _APP, ctx)
        raise TypeError(p)


def print_term(t, ascii_only: bool = False, env: list[str] | None = None) -> str:
    return _Printer(ascii_only).term(t, env or [])


def print_type(ty, ascii_only: bool = False, env: list[str] | None = None) -> str:
    return _Printer(ascii_only).type(ty, env or [])


def print_kind(k, ascii_only: bool = False, env: list[str] | None = None) -> str:
    return _Printer(ascii_only).kind(k, env or [])


def print_classifier(c, ascii_only: bool = False) -> str:
    p = _Printer(ascii_only)
    return p.kind(c, []) if S.is_kind(c) else p.type(c, [])


def print_pure(p, ascii_only: bool = False, env: list[str] | None = None) -> str:
    return _Printer(ascii_only).pure(p, env or [])


def print_erased(t, ascii_only: bool = False) -> str:
    """Erased view of an annotated term."""
    return print_pure(E.erase(t), ascii_only)


def print_decl(decl: S.Decl, ascii_only: bool = False) -> str:
    p = _Printer(ascii_only)
    cls = p.kind(decl.classifier, []) if decl.level == "type" \
        else p.type(decl.classifier, [])
    body = p.type(decl.body, []) if decl.level == "type" \
        else p.term(decl.body, [])
    return f"{decl.name} {p.sym['ascribe']} {cls} = {body} ."
