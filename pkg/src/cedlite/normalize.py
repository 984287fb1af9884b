"""Untyped conversion on pure terms: βδ-normalization plus η-contraction.

Normal order with call-by-need δ: a definition reference is unfolded only
once it reaches head position, and each definition's own normal form is
memoized on the signature, so repeated unfolds cost one δ-step each.
Fuel bounds the β/δ steps of a single normalization call; running out is
an error, never silent truncation.
"""

from __future__ import annotations

from dataclasses import dataclass

from .erasure import PApp, PLam, PRef, PVar, PureTerm, erase
from .syntax import KernelError, Signature


@dataclass(frozen=True)
class Fuel:
    max_steps: int = 100_000

    def __post_init__(self) -> None:
        if self.max_steps <= 0:
            raise ValueError("fuel must be positive")


@dataclass
class NormalForm:
    term: PureTerm
    steps_used: int


class FuelExhausted(KernelError):
    def __init__(self, partial: PureTerm, steps: int):
        super().__init__(f"fuel exhausted after {steps} reduction steps")
        self.partial = partial
        self.steps = steps


class _Meter:
    def __init__(self, limit: int):
        self.limit = limit
        self.used = 0

    def tick(self, focus: PureTerm) -> None:
        self.used += 1
        if self.used > self.limit:
            raise FuelExhausted(focus, self.used - 1)


def shift_pure(t: PureTerm, by: int, cutoff: int = 0) -> PureTerm:
    match t:
        case PVar(idx):
            return PVar(idx + by) if idx >= cutoff else t
        case PLam(hint, body):
            return PLam(hint, shift_pure(body, by, cutoff + 1))
        case PApp(f, a):
            return PApp(shift_pure(f, by, cutoff), shift_pure(a, by, cutoff))
        case PRef(_):
            return t
    raise TypeError(t)


def subst_pure(t: PureTerm, j: int, val: PureTerm) -> PureTerm:
    match t:
        case PVar(idx):
            if idx == j:
                return val
            return PVar(idx - 1) if idx > j else t
        case PLam(hint, body):
            return PLam(hint, subst_pure(body, j + 1, shift_pure(val, 1)))
        case PApp(f, a):
            return PApp(subst_pure(f, j, val), subst_pure(a, j, val))
        case PRef(_):
            return t
    raise TypeError(t)


def _free_in(idx: int, t: PureTerm) -> bool:
    match t:
        case PVar(j):
            return j == idx
        case PLam(_, body):
            return _free_in(idx + 1, body)
        case PApp(f, a):
            return _free_in(idx, f) or _free_in(idx, a)
        case PRef(_):
            return False
    raise TypeError(t)


def _def_nf(name: str, sig: Signature, fuel: Fuel) -> PureTerm:
    cached = sig._def_nfs.get(name)
    if cached is not None:
        return cached
    decl = sig.lookup(name)
    if decl is None or decl.level != "term":
        raise KernelError(f"{name} is not an unfoldable term definition")
    body = sig._erasures.get(name)
    if body is None:
        body = erase(decl.body)
        sig._erasures[name] = body
    nf = _nf(body, sig, _Meter(fuel.max_steps))
    sig._def_nfs[name] = nf
    return nf


def _whnf(t: PureTerm, sig: Signature, meter: _Meter) -> PureTerm:
    stack: list[PureTerm] = []
    while True:
        match t:
            case PApp(f, a):
                stack.append(a)
                t = f
            case PLam(_, body) if stack:
                meter.tick(t)
                t = subst_pure(body, 0, stack.pop())
            case PRef(name):
                meter.tick(t)
                t = _def_nf(name, sig, Fuel(meter.limit))
            case _:
                break
    for a in reversed(stack):
        t = PApp(t, a)
    return t


def _nf(t: PureTerm, sig: Signature, meter: _Meter) -> PureTerm:
    t = _whnf(t, sig, meter)
    match t:
        case PLam(hint, body):
            return PLam(hint, _nf(body, sig, meter))
        case PApp(_, _):
            # head is neutral (a variable); normalize the arguments
            spine = []
            while isinstance(t, PApp):
                spine.append(t.arg)
                t = t.fn
            for a in reversed(spine):
                t = PApp(t, _nf(a, sig, meter))
            return t
        case _:
            return t


def _eta(t: PureTerm) -> PureTerm:
    """One bottom-up η pass; β-normal input stays β-normal."""
    match t:
        case PLam(hint, body):
            b = _eta(body)
            if isinstance(b, PApp) and b.arg == PVar(0) and not _free_in(0, b.fn):
                return shift_pure(b.fn, -1)
            return PLam(hint, b)
        case PApp(f, a):
            return PApp(_eta(f), _eta(a))
        case _:
            return t


def normalize(t: PureTerm, sig: Signature, fuel: Fuel = Fuel()) -> NormalForm:
    """Full βδ-normalization, then η-contraction to a fixpoint."""
    meter = _Meter(fuel.max_steps)
    out = _nf(t, sig, meter)
    while True:
        contracted = _eta(out)
        if contracted == out:
            break
        out = contracted
    return NormalForm(out, meter.used)


def conv(t1: PureTerm, t2: PureTerm, sig: Signature, fuel: Fuel = Fuel()) -> bool:
    """Definitional equality: α-equality of βδη-normal forms."""
    if t1 == t2:
        return True
    return normalize(t1, sig, fuel).term == normalize(t2, sig, fuel).term


IDENTITY = PLam("x", PVar(0))


def is_identity(t: PureTerm, sig: Signature, fuel: Fuel = Fuel()) -> bool:
    return conv(t, IDENTITY, sig, fuel)
