"""Bidirectional type and kind checking with erased conversion.

Definitional equality throughout is conversion of erasures; embedded
term positions in types are compared that way, equality-type operands
are required to be in scope but never themselves typed, and the ρ rule
rewrites every occurrence whose erasure converts with the equation's
left side.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from . import syntax as S
from .erasure import PureTerm, embed, erase, free_in_erasure
from .normalize import Fuel, FuelExhausted, normalize, shift_pure
from .printer import print_classifier, print_pure
from .syntax import Decl, KernelError, Signature, occurs_index, shift, subst


class CheckError(KernelError):
    """Declaration-level failure; `kind` names the error class."""

    def __init__(self, kind: str, msg: str):
        super().__init__(msg)
        self.kind = kind


@dataclass
class CtxEntry:
    name: str
    classifier: Union[S.Type, S.Kind]
    erased: bool = False


Context = list  # of CtxEntry, innermost binding last


@dataclass
class AssertionOutcome:
    description: str
    ok: bool
    detail: str = ""


@dataclass
class DeclReport:
    name: str
    level: str
    status: str                      # "ok" | "type error" | "assertion failure"
    classifier: str
    erasure_nf: Optional[str] = None
    assertions: list[AssertionOutcome] = field(default_factory=list)
    steps_used: int = 0
    warnings: list[str] = field(default_factory=list)
    error: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.status == "ok"


@dataclass
class CheckReport:
    decls: list[DeclReport] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(d.ok for d in self.decls)

    def find(self, name: str) -> Optional[DeclReport]:
        for d in self.decls:
            if d.name == name:
                return d
        return None


class Checker:
    """Checks one declaration; accumulates reduction steps and warnings."""

    def __init__(self, sig: Signature, fuel: Fuel = Fuel()):
        self.sig = sig
        self.fuel = fuel
        self.steps = 0
        self.warnings: list[str] = []

    # --- conversion plumbing ---------------------------------------------

    def _nf(self, p: PureTerm) -> PureTerm:
        out = normalize(p, self.sig, self.fuel)
        self.steps += out.steps_used
        return out.term

    def conv_pure(self, p1: PureTerm, p2: PureTerm) -> bool:
        if p1 == p2:
            return True
        return self._nf(p1) == self._nf(p2)

    def conv_terms(self, t1: S.Term, t2: S.Term) -> bool:
        return self.conv_pure(erase(t1), erase(t2))

    # --- type-level normalization -----------------------------------------

    def type_whnf(self, ty: S.Type) -> S.Type:
        """Unfold definition heads and reduce type-level redexes."""
        stack: list[tuple[str, object]] = []
        while True:
            match ty:
                case S.AppT(f, a):
                    stack.append(("T", a))
                    ty = f
                case S.AppTm(f, a):
                    stack.append(("t", a))
                    ty = f
                case S.TRef(name):
                    decl = self.sig.lookup(name)
                    if decl is None or decl.level != "type":
                        raise CheckError("scope", f"{name} is not a type")
                    self.steps += 1
                    ty = decl.body
                case S.TLam(_, _, body) if stack:
                    self.steps += 1
                    ty = subst(body, 0, stack.pop()[1])
                case _:
                    break
        for tag, a in reversed(stack):
            ty = S.AppT(ty, a) if tag == "T" else S.AppTm(ty, a)
        return ty

    def type_nf(self, ty: S.Type) -> S.Type:
        """Normalize the type structure fully; embedded terms untouched."""
        ty = self.type_whnf(ty)
        match ty:
            case S.All(n, dom, body):
                d = self.kind_nf(dom) if S.is_kind(dom) else self.type_nf(dom)
                return S.All(n, d, self.type_nf(body))
            case S.Pi(n, dom, body):
                return S.Pi(n, self.type_nf(dom), self.type_nf(body))
            case S.TLam(n, dom, body):
                d = self.kind_nf(dom) if S.is_kind(dom) else self.type_nf(dom)
                return S.TLam(n, d, self.type_nf(body))
            case S.Iota(n, left, right):
                return S.Iota(n, self.type_nf(left), self.type_nf(right))
            case S.AppT(f, a):
                return S.AppT(self.type_nf(f), self.type_nf(a))
            case S.AppTm(f, a):
                return S.AppTm(self.type_nf(f), a)
            case _:
                return ty

    def kind_nf(self, k: S.Kind) -> S.Kind:
        match k:
            case S.Star():
                return k
            case S.KPi(n, dom, body):
                return S.KPi(n, self.type_nf(dom), self.kind_nf(body))
            case S.KPiK(n, dom, body):
                return S.KPiK(n, self.kind_nf(dom), self.kind_nf(body))
        raise TypeError(k)

    # --- conversion of types and kinds -------------------------------------

    def type_conv(self, t1: S.Type, t2: S.Type) -> bool:
        if t1 == t2:
            return True
        u1, u2 = self.type_whnf(t1), self.type_whnf(t2)
        match (u1, u2):
            case (S.TVar(i), S.TVar(j)):
                return i == j
            case (S.All(_, d1, b1), S.All(_, d2, b2)):
                if S.is_kind(d1) != S.is_kind(d2):
                    return False
                doms = self.kind_conv(d1, d2) if S.is_kind(d1) \
                    else self.type_conv(d1, d2)
                return doms and self.type_conv(b1, b2)
            case (S.Pi(_, d1, b1), S.Pi(_, d2, b2)):
                return self.type_conv(d1, d2) and self.type_conv(b1, b2)
            case (S.TLam(_, d1, b1), S.TLam(_, d2, b2)):
                if S.is_kind(d1) != S.is_kind(d2):
                    return False
                doms = self.kind_conv(d1, d2) if S.is_kind(d1) \
                    else self.type_conv(d1, d2)
                return doms and self.type_conv(b1, b2)
            case (S.Iota(_, l1, r1), S.Iota(_, l2, r2)):
                return self.type_conv(l1, l2) and self.type_conv(r1, r2)
            case (S.Eq(l1, r1), S.Eq(l2, r2)):
                return self.conv_terms(l1, l2) and self.conv_terms(r1, r2)
            case (S.AppT(f1, a1), S.AppT(f2, a2)):
                return self.type_conv(f1, f2) and self.type_conv(a1, a2)
            case (S.AppTm(f1, a1), S.AppTm(f2, a2)):
                return self.type_conv(f1, f2) and self.conv_terms(a1, a2)
            case _:
                return False

    def kind_conv(self, k1: S.Kind, k2: S.Kind) -> bool:
        match (k1, k2):
            case (S.Star(), S.Star()):
                return True
            case (S.KPi(_, d1, b1), S.KPi(_, d2, b2)):
                return self.type_conv(d1, d2) and self.kind_conv(b1, b2)
            case (S.KPiK(_, d1, b1), S.KPiK(_, d2, b2)):
                return self.kind_conv(d1, d2) and self.kind_conv(b1, b2)
            case _:
                return False

    # --- kinding ------------------------------------------------------------

    def classifier_of(self, ctx: Context, idx: int):
        if idx >= len(ctx):
            raise CheckError("scope", f"variable index {idx} out of context")
        entry = ctx[len(ctx) - 1 - idx]
        return shift(entry.classifier, idx + 1)

    def kind_wf(self, ctx: Context, k: S.Kind) -> None:
        match k:
            case S.Star():
                return
            case S.KPi(n, dom, body):
                self.ensure_star(ctx, dom)
                self.kind_wf(ctx + [CtxEntry(n, dom)], body)
            case S.KPiK(n, dom, body):
                self.kind_wf(ctx, dom)
                self.kind_wf(ctx + [CtxEntry(n, dom)], body)
            case _:
                raise TypeError(k)

    def ensure_star(self, ctx: Context, ty: S.Type) -> None:
        k = self.kind_check(ctx, ty)
        if not isinstance(k, S.Star):
            raise CheckError("kind", f"expected a ★-kinded type, got kind "
                                     f"{print_classifier(k)}")

    def kind_check(self, ctx: Context, ty: S.Type) -> S.Kind:
        match ty:
            case S.TVar(idx):
                cls = self.classifier_of(ctx, idx)
                if not S.is_kind(cls):
                    raise CheckError("kind", "term variable used as a type")
                return cls
            case S.TRef(name):
                decl = self.sig.lookup(name)
                if decl is None or decl.level != "type":
                    raise CheckError("scope", f"{name} is not a type")
                return decl.classifier
            case S.All(n, dom, body):
                if S.is_kind(dom):
                    self.kind_wf(ctx, dom)
                else:
                    self.ensure_star(ctx, dom)
                self.ensure_star(ctx + [CtxEntry(n, dom, erased=True)], body)
                return S.Star()
            case S.Pi(n, dom, body):
                self.ensure_star(ctx, dom)
                self.ensure_star(ctx + [CtxEntry(n, dom)], body)
                return S.Star()
            case S.Iota(n, left, right):
                self.ensure_star(ctx, left)
                self.ensure_star(ctx + [CtxEntry(n, left)], right)
                return S.Star()
            case S.TLam(n, dom, body):
                if S.is_kind(dom):
                    self.kind_wf(ctx, dom)
                    inner = self.kind_check(ctx + [CtxEntry(n, dom)], body)
                    return S.KPiK(n, dom, inner)
                self.ensure_star(ctx, dom)
                inner = self.kind_check(ctx + [CtxEntry(n, dom)], body)
                return S.KPi(n, dom, inner)
            case S.AppT(f, a):
                kf = self.kind_check(ctx, f)
                if not isinstance(kf, S.KPiK):
                    raise CheckError("kind", "type applied to a type argument "
                                             "but its kind is not Π over a kind")
                ka = self.kind_check(ctx, a)
                if not self.kind_conv(ka, kf.dom):
                    raise CheckError("kind", "type argument has the wrong kind")
                return subst(kf.body, 0, a)
            case S.AppTm(f, a):
                kf = self.kind_check(ctx, f)
                if not isinstance(kf, S.KPi):
                    raise CheckError("kind", "type applied to a term argument "
                                             "but its kind is not term-indexed")
                self.check(ctx, a, kf.dom)
                return subst(kf.body, 0, a)
            case S.Eq(_, _):
                # operands are scope-checked at resolution, never typed
                return S.Star()
        raise TypeError(ty)

    # --- terms ----------------------------------------------------------------

    def check(self, ctx: Context, t: S.Term, ty: S.Type) -> None:
        w = self.type_whnf(ty)
        match (t, w):
            case (S.Lam(n, ann, body), S.Pi(_, dom, cod)):
                if ann is not None and not self.type_conv(ann, dom):
                    raise CheckError(
                        "conversion",
                        f"λ binder annotation does not convert to the "
                        f"expected domain {print_classifier(dom)}")
                self.check(ctx + [CtxEntry(n, dom)], body, cod)
                return
            case (S.ILam(n, body), S.All(_, dom, cod)):
                if free_in_erasure(0, body):
                    raise CheckError(
                        "implicit-free",
                        f"implicit binder {n} occurs in the erasure of its "
                        f"body")
                self.check(ctx + [CtxEntry(n, dom, erased=True)], body, cod)
                return
            case (S.Pair(l, r), S.Iota(_, t1, t2)):
                self.check(ctx, l, t1)
                self.check(ctx, r, subst(t2, 0, l))
                if not self.conv_pure(erase(l), erase(r)):
                    raise CheckError(
                        "erasure-mismatch",
                        "intersection components have different erasures: "
                        f"{print_pure(self._nf(erase(l)))} vs "
                        f"{print_pure(self._nf(erase(r)))}")
                return
            case (S.Beta(_), S.Eq(l, r)):
                if not self.conv_terms(l, r):
                    raise CheckError(
                        "beta-nonconv",
                        "β requires convertible equands: "
                        f"{print_pure(self._nf(erase(l)))} vs "
                        f"{print_pure(self._nf(erase(r)))}")
                return
            case (S.Rho(_, _, _), _):
                self._check_rho(ctx, t, w)
                return
            case (S.Symm(q), S.Eq(l, r)):
                qt = self.type_whnf(self.infer(ctx, q))
                if not isinstance(qt, S.Eq):
                    raise CheckError("symmetry", "ς applied to a non-equality proof")
                if not (self.conv_terms(l, qt.rhs)
                        and self.conv_terms(r, qt.lhs)):
                    raise CheckError("conversion",
                                     "ς proof does not match the goal "
                                     "with sides swapped")
                return
            case (_, S.All(_, dom, cod)) if not isinstance(t, S.ILam):
                # non-dependent ∀ (the ➾ form) accepts the body directly
                inferred = None
                infer_error: Optional[CheckError] = None
                try:
                    inferred = self.infer(ctx, t)
                except CheckError as e:
                    infer_error = e
                if inferred is not None and self.type_conv(inferred, w):
                    return
                if not occurs_index(cod, 0):
                    self.check(ctx, t, shift(cod, -1))
                    return
                if inferred is not None:
                    self._conversion_failure(inferred, w)
                raise infer_error
        inferred = self.infer(ctx, t)
        if not self.type_conv(inferred, w):
            self._conversion_failure(inferred, w)

    def _conversion_failure(self, inferred: S.Type, expected: S.Type):
        raise CheckError(
            "conversion",
            "type mismatch:\n"
            f"  inferred: {print_classifier(self.type_nf(inferred))}\n"
            f"  expected: {print_classifier(self.type_nf(expected))}")

    def infer(self, ctx: Context, t: S.Term) -> S.Type:
        match t:
            case S.Var(idx):
                cls = self.classifier_of(ctx, idx)
                if not S.is_type(cls):
                    raise CheckError("kind", "type variable used as a term")
                return cls
            case S.Ref(name):
                decl = self.sig.lookup(name)
                if decl is None or decl.level != "term":
                    raise CheckError("scope", f"{name} is not a term")
                return decl.classifier
            case S.App(f, a):
                ft = self.type_whnf(self.infer(ctx, f))
                match ft:
                    case S.Pi(_, dom, cod):
                        self.check(ctx, a, dom)
                        return subst(cod, 0, a)
                    case S.All(_, _, _):
                        raise CheckError(
                            "application",
                            "implicit function applied explicitly; "
                            "use -arg or · T")
                    case _:
                        raise CheckError("application",
                                         "explicit application of a "
                                         "non-function")
            case S.EApp(f, a):
                ft = self.type_whnf(self.infer(ctx, f))
                match ft:
                    case S.All(_, dom, cod) if S.is_type(dom):
                        self.check(ctx, a, dom)
                        return subst(cod, 0, a)
                    case S.All(_, _, _):
                        raise CheckError("application",
                                         "this implicit product expects a "
                                         "type argument (· T)")
                    case S.Pi(_, _, _):
                        raise CheckError("application",
                                         "erased application to an explicit "
                                         "function")
                    case _:
                        raise CheckError("application",
                                         "erased application of a "
                                         "non-function")
            case S.TApp(f, ty_arg):
                ft = self.type_whnf(self.infer(ctx, f))
                match ft:
                    case S.All(_, dom, cod) if S.is_kind(dom):
                        ka = self.kind_check(ctx, ty_arg)
                        if not self.kind_conv(ka, dom):
                            raise CheckError("kind",
                                             "type argument has the wrong "
                                             "kind")
                        return subst(cod, 0, ty_arg)
                    case S.All(_, _, _):
                        raise CheckError("application",
                                         "this implicit product expects an "
                                         "erased term argument (-t)")
                    case S.Pi(_, _, _):
                        raise CheckError("application",
                                         "type application to an explicit "
                                         "function")
                    case _:
                        raise CheckError("application",
                                         "type application of a "
                                         "non-function")
            case S.Proj(sub, which):
                st = self.type_whnf(self.infer(ctx, sub))
                if not isinstance(st, S.Iota):
                    raise CheckError("projection",
                                     "projection from a non-intersection")
                if which == 1:
                    return st.left
                return subst(st.right, 0, S.Proj(sub, 1))
            case S.Lam(n, ann, body):
                if ann is None:
                    raise CheckError("cannot-infer",
                                     "unannotated λ binders are only "
                                     "permitted in checking mode")
                self.ensure_star(ctx, ann)
                body_ty = self.infer(ctx + [CtxEntry(n, ann)], body)
                return S.Pi(n, ann, body_ty)
            case S.Symm(q):
                qt = self.type_whnf(self.infer(ctx, q))
                if not isinstance(qt, S.Eq):
                    raise CheckError("symmetry", "ς applied to a non-equality proof")
                return S.Eq(qt.rhs, qt.lhs)
        raise CheckError("cannot-infer",
                         f"cannot synthesize a type for this "
                         f"{type(t).__name__} term")

    # --- the ρ rule -------------------------------------------------------

    def _check_rho(self, ctx: Context, t: S.Rho, w: S.Type) -> None:
        qt = self.type_whnf(self.infer(ctx, t.proof))
        if not isinstance(qt, S.Eq):
            raise CheckError("rho", "ρ proof is not an equality")
        goal = self.type_nf(w)
        if t.normalize_first:
            goal = self._norm_term_positions(goal)
        lhs_nf = self._nf(erase(qt.lhs))
        goal, count = self._rewrite_type(goal, erase(qt.lhs), lhs_nf,
                                         qt.rhs, 0)
        if count == 0:
            self.warnings.append("ρ rewrote no occurrences of the equation's "
                                 "left side")
        self.check(ctx, t.body, goal)

    def _norm_term_positions(self, ty: S.Type) -> S.Type:
        """βδ-normalize every embedded term of an already type-normal type."""
        match ty:
            case S.All(n, dom, body):
                d = dom if S.is_kind(dom) else self._norm_term_positions(dom)
                return S.All(n, d, self._norm_term_positions(body))
            case S.Pi(n, dom, body):
                return S.Pi(n, self._norm_term_positions(dom),
                            self._norm_term_positions(body))
            case S.TLam(n, dom, body):
                d = dom if S.is_kind(dom) else self._norm_term_positions(dom)
                return S.TLam(n, d, self._norm_term_positions(body))
            case S.Iota(n, left, right):
                return S.Iota(n, self._norm_term_positions(left),
                              self._norm_term_positions(right))
            case S.AppT(f, a):
                return S.AppT(self._norm_term_positions(f),
                              self._norm_term_positions(a))
            case S.AppTm(f, a):
                return S.AppTm(self._norm_term_positions(f),
                               embed(self._nf(erase(a))))
            case S.Eq(l, r):
                return S.Eq(embed(self._nf(erase(l))),
                            embed(self._nf(erase(r))))
            case _:
                return ty

    def _rewrite_type(self, ty: S.Type, lhs: PureTerm, lhs_nf: PureTerm,
                      rhs: S.Term, depth: int) -> tuple[S.Type, int]:
        match ty:
            case S.All(n, dom, body):
                d, c1 = (dom, 0) if S.is_kind(dom) else \
                    self._rewrite_type(dom, lhs, lhs_nf, rhs, depth)
                b, c2 = self._rewrite_type(body, lhs, lhs_nf, rhs, depth + 1)
                return S.All(n, d, b), c1 + c2
            case S.Pi(n, dom, body):
                d, c1 = self._rewrite_type(dom, lhs, lhs_nf, rhs, depth)
                b, c2 = self._rewrite_type(body, lhs, lhs_nf, rhs, depth + 1)
                return S.Pi(n, d, b), c1 + c2
            case S.TLam(n, dom, body):
                d, c1 = (dom, 0) if S.is_kind(dom) else \
                    self._rewrite_type(dom, lhs, lhs_nf, rhs, depth)
                b, c2 = self._rewrite_type(body, lhs, lhs_nf, rhs, depth + 1)
                return S.TLam(n, d, b), c1 + c2
            case S.Iota(n, left, right):
                l, c1 = self._rewrite_type(left, lhs, lhs_nf, rhs, depth)
                r, c2 = self._rewrite_type(right, lhs, lhs_nf, rhs, depth + 1)
                return S.Iota(n, l, r), c1 + c2
            case S.AppT(f, a):
                f2, c1 = self._rewrite_type(f, lhs, lhs_nf, rhs, depth)
                a2, c2 = self._rewrite_type(a, lhs, lhs_nf, rhs, depth)
                return S.AppT(f2, a2), c1 + c2
            case S.AppTm(f, a):
                f2, c1 = self._rewrite_type(f, lhs, lhs_nf, rhs, depth)
                a2, c2 = self._rewrite_term(a, lhs, lhs_nf, rhs, depth)
                return S.AppTm(f2, a2), c1 + c2
            case S.Eq(l, r):
                l2, c1 = self._rewrite_term(l, lhs, lhs_nf, rhs, depth)
                r2, c2 = self._rewrite_term(r, lhs, lhs_nf, rhs, depth)
                return S.Eq(l2, r2), c1 + c2
            case _:
                return ty, 0

    def _matches(self, t: S.Term, lhs: PureTerm, lhs_nf: PureTerm,
                 depth: int) -> bool:
        te = erase(t)
        if te == shift_pure(lhs, depth):
            return True
        return self._nf(te) == shift_pure(lhs_nf, depth)

    def _rewrite_term(self, t: S.Term, lhs: PureTerm, lhs_nf: PureTerm,
                      rhs: S.Term, depth: int) -> tuple[S.Term, int]:
        if self._matches(t, lhs, lhs_nf, depth):
            return shift(rhs, depth), 1
        match t:
            case S.Var(_) | S.Ref(_) | S.Beta(None):
                return t, 0
            case S.Lam(n, ann, body):
                a, c1 = (None, 0) if ann is None else \
                    self._rewrite_type(ann, lhs, lhs_nf, rhs, depth)
                b, c2 = self._rewrite_term(body, lhs, lhs_nf, rhs, depth + 1)
                return S.Lam(n, a, b), c1 + c2
            case S.ILam(n, body):
                b, c = self._rewrite_term(body, lhs, lhs_nf, rhs, depth + 1)
                return S.ILam(n, b), c
            case S.App(f, a):
                f2, c1 = self._rewrite_term(f, lhs, lhs_nf, rhs, depth)
                a2, c2 = self._rewrite_term(a, lhs, lhs_nf, rhs, depth)
                return S.App(f2, a2), c1 + c2
            case S.EApp(f, a):
                f2, c1 = self._rewrite_term(f, lhs, lhs_nf, rhs, depth)
                a2, c2 = self._rewrite_term(a, lhs, lhs_nf, rhs, depth)
                return S.EApp(f2, a2), c1 + c2
            case S.TApp(f, ty):
                f2, c1 = self._rewrite_term(f, lhs, lhs_nf, rhs, depth)
                t2, c2 = self._rewrite_type(ty, lhs, lhs_nf, rhs, depth)
                return S.TApp(f2, t2), c1 + c2
            case S.Pair(l, r):
                l2, c1 = self._rewrite_term(l, lhs, lhs_nf, rhs, depth)
                r2, c2 = self._rewrite_term(r, lhs, lhs_nf, rhs, depth)
                return S.Pair(l2, r2), c1 + c2
            case S.Proj(sub, which):
                s2, c = self._rewrite_term(sub, lhs, lhs_nf, rhs, depth)
                return S.Proj(s2, which), c
            case S.Beta(wit):
                w2, c = self._rewrite_term(wit, lhs, lhs_nf, rhs, depth)
                return S.Beta(w2), c
            case S.Rho(proof, body, plus):
                p2, c1 = self._rewrite_term(proof, lhs, lhs_nf, rhs, depth)
                b2, c2 = self._rewrite_term(body, lhs, lhs_nf, rhs, depth)
                return S.Rho(p2, b2, plus), c1 + c2
            case S.Symm(q):
                q2, c = self._rewrite_term(q, lhs, lhs_nf, rhs, depth)
                return S.Symm(q2), c
        raise TypeError(t)


# ---------------------------------------------------------------------------
# Whole-signature checking

def _check_decl(checker: Checker, decl: Decl) -> None:
    if decl.level == "type":
        checker.kind_wf([], decl.classifier)
        k = checker.kind_check([], decl.body)
        if not checker.kind_conv(k, decl.classifier):
            raise CheckError(
                "kind",
                f"body kinds to {print_classifier(k)}, not the ascribed "
                f"{print_classifier(decl.classifier)}")
    else:
        checker.ensure_star([], decl.classifier)
        checker.check([], decl.body, decl.classifier)


def _eval_assertion(sig: Signature, fuel: Fuel, assertion: S.Assertion,
                    statuses: dict) -> AssertionOutcome:
    from .normalize import conv, is_identity

    desc = assertion.describe()
    involved = [assertion.target] + ([assertion.other] if assertion.other
                                     else [])
    bad = [n for n in involved if statuses.get(n) != "ok"]
    if bad:
        return AssertionOutcome(desc, False,
                                f"declaration {bad[0]} did not check")
    target = sig.lookup(assertion.target)
    try:
        if assertion.kind == "identity":
            ok = is_identity(erase(target.body), sig, fuel)
            return AssertionOutcome(desc, ok,
                                    "" if ok else "erasure is not the "
                                                  "identity function")
        if assertion.kind == "not-identity":
            ident = is_identity(erase(target.body), sig, fuel)
            return AssertionOutcome(desc, not ident,
                                    "" if not ident else "erasure IS the "
                                                         "identity function")
        if assertion.kind == "erases-to":
            ok = conv(erase(target.body), erase(assertion.payload), sig, fuel)
            detail = "" if ok else \
                f"normal form is " \
                f"{print_pure(normalize(erase(target.body), sig, fuel).term)}"
            return AssertionOutcome(desc, ok, detail)
        if assertion.kind == "erase-equal":
            other = sig.lookup(assertion.other)
            ok = conv(erase(target.body), erase(other.body), sig, fuel)
            return AssertionOutcome(desc, ok,
                                    "" if ok else "erasures are not "
                                                  "convertible")
    except FuelExhausted as e:
        return AssertionOutcome(desc, False, str(e))
    raise ValueError(assertion.kind)


def check_signature(sig: Signature, fuel: Fuel = Fuel(),
                    ascii_only: bool = False) -> CheckReport:
    """Check declarations in order, then evaluate attached assertions.

    A failing declaration is still recorded in the signature (later
    declarations trust its ascription) and checking continues.
    """
    report = CheckReport()
    statuses: dict[str, str] = {}
    rows: dict[int, DeclReport] = {}
    for i, decl in enumerate(sig.decls):
        checker = Checker(sig, fuel)
        row = DeclReport(decl.name, decl.level, "ok",
                         print_classifier(decl.classifier, ascii_only))
        error: Optional[CheckError] = None
        try:
            _check_decl(checker, decl)
        except (CheckError, FuelExhausted, KernelError) as e:
            error = e
        row.steps_used = checker.steps
        row.warnings = checker.warnings
        if decl.expect_fail:
            if error is None:
                row.status = "assertion failure"
                row.assertions.append(AssertionOutcome(
                    f"fails {decl.name}", False,
                    "declaration checked but was expected to fail"))
            else:
                kind = getattr(error, "kind", "error")
                row.assertions.append(AssertionOutcome(
                    f"fails {decl.name}", True, f"failed as expected ({kind}: "
                                                f"{error})"))
        elif error is not None:
            row.status = "type error"
            row.error = str(error)
        else:
            statuses[decl.name] = "ok"
            if decl.level == "term":
                try:
                    nf = normalize(erase(decl.body), sig, fuel)
                    row.erasure_nf = print_pure(nf.term, ascii_only)
                    row.steps_used += nf.steps_used
                except FuelExhausted as e:
                    row.status = "type error"
                    row.error = str(e)
        rows[i] = row
        report.decls.append(row)
    for i, decl in enumerate(sig.decls):
        for assertion in decl.assertions:
            outcome = _eval_assertion(sig, fuel, assertion, statuses)
            rows[i].assertions.append(outcome)
            if not outcome.ok and rows[i].status == "ok":
                rows[i].status = "assertion failure"
    return report


# ---------------------------------------------------------------------------
# Post-hoc audit passes over checked bodies

def _walk_terms(node):
    if not hasattr(node, "__dataclass_fields__"):
        return
    if S.is_term(node):
        yield node
    for f in node.__dataclass_fields__:
        sub = getattr(node, f)
        if hasattr(sub, "__dataclass_fields__"):
            yield from _walk_terms(sub)


def audit_implicit_erasures(sig: Signature) -> list[str]:
    """Re-scan checked bodies: no implicit binder may survive erasure."""
    offenders = []
    for decl in sig.decls:
        if decl.level != "term" or decl.expect_fail:
            continue
        for node in _walk_terms(decl.body):
            if isinstance(node, S.ILam) and free_in_erasure(0, node.body):
                offenders.append(decl.name)
    return offenders


def audit_intersections(sig: Signature, fuel: Fuel = Fuel()) -> list[str]:
    """Re-check that every accepted pair has matching component erasures."""
    from .normalize import conv

    offenders = []
    for decl in sig.decls:
        if decl.level != "term" or decl.expect_fail:
            continue
        for node in _walk_terms(decl.body):
            if isinstance(node, S.Pair):
                if not conv(erase(node.left), erase(node.right), sig, fuel):
                    offenders.append(decl.name)
    return offenders
