"""Seeded random generator for small pure lambda terms.

Generated terms are affine (every binder is used at most once), so each
beta step strictly shrinks them: normalization always terminates quickly
regardless of shape. Duplicating-but-terminating shapes are covered by
fixed Church-numeral cases in the tests that use this module.
"""

from __future__ import annotations

import random

from cedlite.erasure import PApp, PLam, PVar, PureTerm


def gen_pure(rng: random.Random, depth: int = 6,
             avail: tuple[int, ...] = ()) -> PureTerm:
    """`avail` holds the de Bruijn indices still unused at this point."""
    if depth <= 0:
        if avail and rng.random() < 0.8:
            return PVar(rng.choice(avail))
        return PLam("x", PVar(0))
    roll = rng.random()
    if roll < 0.25 and avail:
        return PVar(rng.choice(avail))
    if roll < 0.6:
        inner = tuple(i + 1 for i in avail) + (0,)
        return PLam(f"v{depth}", gen_pure(rng, depth - 1, inner))
    split = rng.random()
    left = tuple(i for i in avail if rng.random() < split)
    right = tuple(i for i in avail if i not in left)
    return PApp(gen_pure(rng, depth - 1, left),
                gen_pure(rng, depth - 1, right))


def church(n: int) -> PureTerm:
    body: PureTerm = PVar(0)
    for _ in range(n):
        body = PApp(PVar(1), body)
    return PLam("s", PLam("z", body))


DUPLICATING_CASES = [
    PApp(church(3), church(2)),              # exponentiation, 8 copies
    PApp(PApp(church(4), PLam("x", PVar(0))), church(2)),
    PLam("f", PApp(church(3), PApp(church(2), PVar(0)))),
]
