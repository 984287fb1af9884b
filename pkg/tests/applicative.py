"""Independent applicative-order normalizer, used only to cross-check
the kernel's normal-order machine. Deliberately shares no reduction
code with it: own shift, own substitution, arguments reduced first.
"""

from __future__ import annotations

from cedlite.erasure import PApp, PLam, PRef, PVar, PureTerm, erase


class OutOfBudget(Exception):
    pass


def _shift(t: PureTerm, by: int, cutoff: int = 0) -> PureTerm:
    if isinstance(t, PVar):
        return PVar(t.idx + by) if t.idx >= cutoff else t
    if isinstance(t, PLam):
        return PLam(t.hint, _shift(t.body, by, cutoff + 1))
    if isinstance(t, PApp):
        return PApp(_shift(t.fn, by, cutoff), _shift(t.arg, by, cutoff))
    return t


def _subst(t: PureTerm, j: int, v: PureTerm) -> PureTerm:
    if isinstance(t, PVar):
        if t.idx == j:
            return v
        return PVar(t.idx - 1) if t.idx > j else t
    if isinstance(t, PLam):
        return PLam(t.hint, _subst(t.body, j + 1, _shift(v, 1)))
    if isinstance(t, PApp):
        return PApp(_subst(t.fn, j, v), _subst(t.arg, j, v))
    return t


def _free(j: int, t: PureTerm) -> bool:
    if isinstance(t, PVar):
        return t.idx == j
    if isinstance(t, PLam):
        return _free(j + 1, t.body)
    if isinstance(t, PApp):
        return _free(j, t.fn) or _free(j, t.arg)
    return False


def applicative_normalize(t: PureTerm, sig, budget: int = 200_000) -> PureTerm:
    """Full beta-delta normalization, arguments first, then eta passes."""
    steps = [0]

    def spend():
        steps[0] += 1
        if steps[0] > budget:
            raise OutOfBudget

    def norm(t: PureTerm) -> PureTerm:
        if isinstance(t, PVar):
            return t
        if isinstance(t, PRef):
            spend()
            return norm(erase(sig.lookup(t.name).body))
        if isinstance(t, PLam):
            return PLam(t.hint, norm(t.body))
        if isinstance(t, PApp):
            fn = norm(t.fn)
            arg = norm(t.arg)
            if isinstance(fn, PLam):
                spend()
                return norm(_subst(fn.body, 0, arg))
            return PApp(fn, arg)
        raise TypeError(t)

    def eta(t: PureTerm) -> PureTerm:
        if isinstance(t, PLam):
            body = eta(t.body)
            if isinstance(body, PApp) and body.arg == PVar(0) \
                    and not _free(0, body.fn):
                return _shift(body.fn, -1)
            return PLam(t.hint, body)
        if isinstance(t, PApp):
            return PApp(eta(t.fn), eta(t.arg))
        return t

    out = norm(t)
    while True:
        nxt = eta(out)
        if nxt == out:
            return out
        out = nxt
