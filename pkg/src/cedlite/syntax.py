"""Resolved abstract syntax: annotated terms, types, kinds, signatures.

Bound variables are de Bruijn indices (0 = innermost binder); binder
names are kept only as printing hints and are excluded from equality,
so structural `==` is alpha-equivalence on every AST here. Term and
type variables share one index space: the context is a single telescope
and a binder's classifier decides which flavor it introduces.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

Term = Union[
    "Var", "Ref", "Lam", "ILam", "App", "EApp", "TApp",
    "Pair", "Proj", "Beta", "Rho", "Symm",
]
Type = Union[
    "TVar", "TRef", "All", "Pi", "TLam", "AppT", "AppTm", "Iota", "Eq",
]
Kind = Union["Star", "KPi", "KPiK"]


class KernelError(Exception):
    """Base for all kernel-raised errors."""


@dataclass
class Pos:
    line: int
    col: int

    def __str__(self) -> str:
        return f"{self.line}:{self.col}"


# ---------------------------------------------------------------------------
# Annotated terms

@dataclass(frozen=True)
class Var:
    idx: int


@dataclass(frozen=True)
class Ref:
    name: str


@dataclass(frozen=True)
class Lam:
    name: str = field(compare=False)
    ann: Optional[Type]
    body: Term


@dataclass(frozen=True)
class ILam:
    """Implicit abstraction; erased, binder must not survive erasure."""
    name: str = field(compare=False)
    body: Term


@dataclass(frozen=True)
class App:
    fn: Term
    arg: Term


@dataclass(frozen=True)
class EApp:
    """Erased application `t -s`; the argument never reaches the erasure."""
    fn: Term
    arg: Term


@dataclass(frozen=True)
class TApp:
    """Type application `t · T`."""
    fn: Term
    ty: Type


@dataclass(frozen=True)
class Pair:
    """Intersection introduction `[t , t']`."""
    left: Term
    right: Term


@dataclass(frozen=True)
class Proj:
    sub: Term
    which: int  # 1 or 2


@dataclass(frozen=True)
class Beta:
    """Reflexivity `β` or `β{t}` (erases to the witness, default identity)."""
    witness: Optional[Term] = None


@dataclass(frozen=True)
class Rho:
    """Equality elimination `ρ q - t`; `ρ+` normalizes the goal first."""
    proof: Term
    body: Term
    normalize_first: bool = False


@dataclass(frozen=True)
class Symm:
    """Equality symmetry `ς q`."""
    proof: Term


# ---------------------------------------------------------------------------
# Types

@dataclass(frozen=True)
class TVar:
    idx: int


@dataclass(frozen=True)
class TRef:
    name: str


@dataclass(frozen=True)
class All:
    """Implicit product `∀ x : dom . body`; dom a kind binds a type
    variable, dom a type binds an erased term variable. `➾` is the
    non-dependent spelling."""
    name: str = field(compare=False)
    dom: Union[Type, Kind]
    body: Type


@dataclass(frozen=True)
class Pi:
    """Explicit product `Π x : dom . body`; `➔` when non-dependent."""
    name: str = field(compare=False)
    dom: Type
    body: Type


@dataclass(frozen=True)
class TLam:
    name: str = field(compare=False)
    dom: Union[Type, Kind]
    body: Type


@dataclass(frozen=True)
class AppT:
    """Type-level application to a type: `T · S`."""
    fn: Type
    arg: Type


@dataclass(frozen=True)
class AppTm:
    """Type-level application to a term: `T t`."""
    fn: Type
    arg: Term


@dataclass(frozen=True)
class Iota:
    """Dependent intersection `ι x : left . right`."""
    name: str = field(compare=False)
    left: Type
    right: Type


@dataclass(frozen=True)
class Eq:
    """Untyped-term equality `{l ≃ r}`; operands are scoped, not typed."""
    lhs: Term
    rhs: Term


# ---------------------------------------------------------------------------
# Kinds

@dataclass(frozen=True)
class Star:
    pass


@dataclass(frozen=True)
class KPi:
    """Term-indexed kind `Π x : T . κ` (`T ➔ κ` when non-dependent)."""
    name: str = field(compare=False)
    dom: Type
    body: Kind


@dataclass(frozen=True)
class KPiK:
    """Type-indexed kind `Π X : κ . κ'` (`κ ➔ κ'` when non-dependent)."""
    name: str = field(compare=False)
    dom: Kind
    body: Kind


# ---------------------------------------------------------------------------
# Shifting and substitution (uniform over the shared index space)

def _under(val, k: int):
    return shift(val, k) if k else val


def shift(node, by: int, cutoff: int = 0):
    """Add `by` to every free index >= cutoff, in any AST."""
    match node:
        case Var(idx):
            return Var(idx + by) if idx >= cutoff else node
        case TVar(idx):
            return TVar(idx + by) if idx >= cutoff else node
        case Ref() | TRef() | Star() | Beta(None):
            return node
        case Lam(name, ann, body):
            a = shift(ann, by, cutoff) if ann is not None else None
            return Lam(name, a, shift(body, by, cutoff + 1))
        case ILam(name, body):
            return ILam(name, shift(body, by, cutoff + 1))
        case App(f, a):
            return App(shift(f, by, cutoff), shift(a, by, cutoff))
        case EApp(f, a):
            return EApp(shift(f, by, cutoff), shift(a, by, cutoff))
        case TApp(f, ty):
            return TApp(shift(f, by, cutoff), shift(ty, by, cutoff))
        case Pair(l, r):
            return Pair(shift(l, by, cutoff), shift(r, by, cutoff))
        case Proj(sub, w):
            return Proj(shift(sub, by, cutoff), w)
        case Beta(w):
            return Beta(shift(w, by, cutoff))
        case Rho(p, b, nf):
            return Rho(shift(p, by, cutoff), shift(b, by, cutoff), nf)
        case Symm(p):
            return Symm(shift(p, by, cutoff))
        case All(name, dom, body):
            return All(name, shift(dom, by, cutoff), shift(body, by, cutoff + 1))
        case Pi(name, dom, body):
            return Pi(name, shift(dom, by, cutoff), shift(body, by, cutoff + 1))
        case TLam(name, dom, body):
            return TLam(name, shift(dom, by, cutoff), shift(body, by, cutoff + 1))
        case AppT(f, a):
            return AppT(shift(f, by, cutoff), shift(a, by, cutoff))
        case AppTm(f, a):
            return AppTm(shift(f, by, cutoff), shift(a, by, cutoff))
        case Iota(name, l, r):
            return Iota(name, shift(l, by, cutoff), shift(r, by, cutoff + 1))
        case Eq(l, r):
            return Eq(shift(l, by, cutoff), shift(r, by, cutoff))
        case KPi(name, dom, body):
            return KPi(name, shift(dom, by, cutoff), shift(body, by, cutoff + 1))
        case KPiK(name, dom, body):
            return KPiK(name, shift(dom, by, cutoff), shift(body, by, cutoff + 1))
    raise TypeError(node)


def subst(node, j: int, val):
    """Replace index j by `val` (a Term or a Type); decrement frees above j.

    Hitting a term variable with a Type substituend (or vice versa) means
    the input confused the two flavors; that is an internal error.
    """
    match node:
        case Var(idx):
            if idx == j:
                if not is_term(val):
                    raise KernelError("type substituted into term position")
                return val
            return Var(idx - 1) if idx > j else node
        case TVar(idx):
            if idx == j:
                if is_term(val):
                    raise KernelError("term substituted into type position")
                return val
            return TVar(idx - 1) if idx > j else node
        case Ref() | TRef() | Star() | Beta(None):
            return node
        case Lam(name, ann, body):
            a = subst(ann, j, val) if ann is not None else None
            return Lam(name, a, subst(body, j + 1, _under(val, 1)))
        case ILam(name, body):
            return ILam(name, subst(body, j + 1, _under(val, 1)))
        case App(f, a):
            return App(subst(f, j, val), subst(a, j, val))
        case EApp(f, a):
            return EApp(subst(f, j, val), subst(a, j, val))
        case TApp(f, ty):
            return TApp(subst(f, j, val), subst(ty, j, val))
        case Pair(l, r):
            return Pair(subst(l, j, val), subst(r, j, val))
        case Proj(sub, w):
            return Proj(subst(sub, j, val), w)
        case Beta(w):
            return Beta(subst(w, j, val))
        case Rho(p, b, nf):
            return Rho(subst(p, j, val), subst(b, j, val), nf)
        case Symm(p):
            return Symm(subst(p, j, val))
        case All(name, dom, body):
            return All(name, subst(dom, j, val), subst(body, j + 1, _under(val, 1)))
        case Pi(name, dom, body):
            return Pi(name, subst(dom, j, val), subst(body, j + 1, _under(val, 1)))
        case TLam(name, dom, body):
            return TLam(name, subst(dom, j, val), subst(body, j + 1, _under(val, 1)))
        case AppT(f, a):
            return AppT(subst(f, j, val), subst(a, j, val))
        case AppTm(f, a):
            return AppTm(subst(f, j, val), subst(a, j, val))
        case Iota(name, l, r):
            return Iota(name, subst(l, j, val), subst(r, j + 1, _under(val, 1)))
        case Eq(l, r):
            return Eq(subst(l, j, val), subst(r, j, val))
        case KPi(name, dom, body):
            return KPi(name, subst(dom, j, val), subst(body, j + 1, _under(val, 1)))
        case KPiK(name, dom, body):
            return KPiK(name, subst(dom, j, val), subst(body, j + 1, _under(val, 1)))
    raise TypeError(node)


_TERM_NODES = (Var, Ref, Lam, ILam, App, EApp, TApp, Pair, Proj, Beta, Rho, Symm)
_TYPE_NODES = (TVar, TRef, All, Pi, TLam, AppT, AppTm, Iota, Eq)
_KIND_NODES = (Star, KPi, KPiK)

_BINDER_NODES = (Lam, ILam, All, Pi, TLam, Iota, KPi, KPiK)


def occurs_index(node, idx: int) -> bool:
    """Does de Bruijn index `idx` occur anywhere in `node`?

    Duck-typed over dataclass ASTs; in binder nodes only the `body` and
    `right` fields sit under the binder.
    """
    if isinstance(node, (Var, TVar)) or type(node).__name__ == "PVar":
        return node.idx == idx
    under_binder = isinstance(node, _BINDER_NODES) \
        or type(node).__name__ == "PLam"
    for f in getattr(node, "__dataclass_fields__", {}):
        sub = getattr(node, f)
        if hasattr(sub, "__dataclass_fields__"):
            bump = 1 if under_binder and f in ("body", "right") else 0
            if occurs_index(sub, idx + bump):
                return True
    return False


def is_term(node) -> bool:
    return isinstance(node, _TERM_NODES)


def is_type(node) -> bool:
    return isinstance(node, _TYPE_NODES)


def is_kind(node) -> bool:
    return isinstance(node, _KIND_NODES)


# ---------------------------------------------------------------------------
# Signatures

@dataclass
class Assertion:
    kind: str          # "identity" | "not-identity" | "erases-to" | "erase-equal"
    target: str
    payload: Optional[Term] = None   # erases-to: the stated pure-form term
    other: Optional[str] = None      # erase-equal: the second definition
    pos: Optional[Pos] = None

    def describe(self) -> str:
        if self.kind == "erase-equal":
            return f"erase-equal {self.target} {self.other}"
        return f"{self.kind} {self.target}"


@dataclass
class Decl:
    name: str
    level: str                      # "term" | "type"
    classifier: Union[Type, Kind]
    body: Union[Term, Type]
    pos: Optional[Pos] = None
    assertions: list[Assertion] = field(default_factory=list)
    expect_fail: bool = False       # declared under #assert-fail; not registered


class Signature:
    """Ordered top-level definitions plus caches keyed by this instance.

    The caches memoize per-definition erasures and normal forms; they are
    write-once per name, so concurrent readers are safe.
    """

    def __init__(self) -> None:
        self.decls: list[Decl] = []
        self._by_name: dict[str, Decl] = {}
        self._erasures: dict[str, object] = {}
        self._def_nfs: dict[str, object] = {}

    def __contains__(self, name: str) -> bool:
        return name in self._by_name

    def lookup(self, name: str) -> Optional[Decl]:
        return self._by_name.get(name)

    def add(self, decl: Decl) -> None:
        if not decl.expect_fail:
            if decl.name in self._by_name:
                raise KernelError(f"duplicate definition {decl.name}")
            self._by_name[decl.name] = decl
        self.decls.append(decl)

    def checkable(self) -> list[Decl]:
        return self.decls
