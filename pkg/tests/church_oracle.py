"""Brute-force reference evaluator for Church-encoded data.

Written independently of the kernel: terms are evaluated into Python
closures (call-by-value), so no part of the kernel's reduction machinery
is exercised here. Used as the ground truth for the operational tests.

Encoding conventions (zero/nil case first):
    nat  n      = lam z . lam s . s (s ... (s z))
    list [a,b]  = lam cn . lam cc . cc a (cc b cn)
"""

from __future__ import annotations

from cedlite.erasure import PApp, PLam, PRef, PVar, PureTerm


class Closure:
    def __init__(self, fn):
        self.fn = fn

    def __call__(self, arg):
        return self.fn(arg)


def evaluate(t: PureTerm, resolve=None, env=()):
    """Evaluate a closed pure term into Python closures.

    `resolve` maps a definition name to its pure-term body; `env` is the
    runtime environment indexed by de Bruijn distance.
    """
    if isinstance(t, PVar):
        return env[t.idx]
    if isinstance(t, PRef):
        if resolve is None:
            raise ValueError(f"unresolved reference {t.name}")
        return evaluate(resolve(t.name), resolve, ())
    if isinstance(t, PLam):
        return Closure(lambda v: evaluate(t.body, resolve, (v,) + env))
    if isinstance(t, PApp):
        return evaluate(t.fn, resolve, env)(evaluate(t.arg, resolve, env))
    raise TypeError(t)


# Builders for Church-encoded inputs, as pure terms.

def church_nat(n: int) -> PureTerm:
    body: PureTerm = PVar(1)
    for _ in range(n):
        body = PApp(PVar(0), body)
    return PLam("z", PLam("s", body))


def church_list(elems: list[PureTerm]) -> PureTerm:
    body: PureTerm = PVar(1)
    for e in reversed(elems):
        body = PApp(PApp(PVar(0), shift(e, 2)), body)
    return PLam("cn", PLam("cc", body))


def church_nat_list(ns: list[int]) -> PureTerm:
    return church_list([church_nat(n) for n in ns])


def church_nat_list_list(nss: list[list[int]]) -> PureTerm:
    return church_list([church_nat_list(ns) for ns in nss])


def shift(t: PureTerm, by: int, cutoff: int = 0) -> PureTerm:
    if isinstance(t, PVar):
        return PVar(t.idx + by) if t.idx >= cutoff else t
    if isinstance(t, PLam):
        return PLam(t.hint, shift(t.body, by, cutoff + 1))
    if isinstance(t, PApp):
        return PApp(shift(t.fn, by, cutoff), shift(t.arg, by, cutoff))
    return t


# Decoders: run the evaluated closure with Python-level constructors.

def decode_nat(value) -> int:
    return value(0)(Closure(lambda n: n + 1))


def decode_nat_list(value) -> list[int]:
    cons = Closure(lambda x: Closure(lambda rest: [decode_nat(x)] + rest))
    return value([])(cons)


def decode_nat_list_list(value) -> list[list[int]]:
    cons = Closure(lambda x: Closure(lambda rest: [decode_nat_list(x)] + rest))
    return value([])(cons)


# Python reference semantics the encodings must agree with.

def ref_add(m: int, n: int) -> int:
    return m + n


def ref_mult(m: int, n: int) -> int:
    return m * n


def ref_append(xs: list, ys: list) -> list:
    return xs + ys


def ref_concat(xss: list[list]) -> list:
    out: list = []
    for xs in xss:
        out = out + xs
    return out


def ref_length(xs: list) -> int:
    return len(xs)
