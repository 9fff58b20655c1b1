"""Exhaustive and random corpora of parameters built from quadratic characters."""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

from ggptheta.localfield import all_classes, square_class
from ggptheta.wdalg import (
    Family,
    Kind,
    TwistedChar,
    WDIrred,
    WDRep,
    character,
    classify_parameter,
    det,
    rep,
)

MAX_SL2 = 4
MAX_MULT = 2
# Probability that a drawn constituent is moved to the sign the kind needs.
RIGHT_SIGN_BIAS = 0.75


def self_dual_irreds(p: int, max_n: int) -> tuple[WDIrred, ...]:
    return tuple(character(p, d, 0, n) for n in range(1, max_n + 1) for d in all_classes(p))


def _multisets(pool: tuple[WDIrred, ...], budget: int, start: int = 0) -> Iterator[tuple[WDIrred, ...]]:
    yield ()
    for k in range(start, len(pool)):
        irr = pool[k]
        if irr.n <= budget:
            for rest in _multisets(pool, budget - irr.n, k):
                yield (irr,) + rest


@lru_cache(maxsize=None)
def _all_tempered(p: int, max_dim: int) -> tuple[WDRep, ...]:
    pool = self_dual_irreds(p, max_dim)
    return tuple(WDRep.from_irreds(p, ms) for ms in _multisets(pool, max_dim) if ms)


def exhaustive(p: int, kind: Kind, max_dim: int, min_dim: int = 1) -> list[WDRep]:
    """Every tempered parameter of the kind built from chi_d (x) nu_n with min_dim <= dim <= max_dim."""
    out = [a for a in _all_tempered(p, max_dim) if a.dim >= min_dim and classify_parameter(a, kind)]
    return sorted(out, key=lambda a: (a.dim, a.to_dsl()))


def _random_constituent(rng: random.Random, p: int, tempered: bool, sign: int) -> tuple[WDIrred, int]:
    d = rng.choice(all_classes(p))
    n = rng.randint(1, MAX_SL2)
    if rng.random() < RIGHT_SIGN_BIAS and (1 if n % 2 else -1) != sign:
        # Move to the neighbouring size of the requested sign.
        n += 1 if n < MAX_SL2 else -1
    mult = rng.randint(1, MAX_MULT)
    x = Fraction(0)
    if not tempered and rng.random() < 0.25:
        x = Fraction(rng.randint(1, 4), rng.choice((2, 4)))
    return WDIrred(TwistedChar(d, x), n), mult


def random_parameter(rng: random.Random, p: int, kind: Kind, max_dim: int, tempered: bool = True,
                     max_terms: int = 4) -> WDRep:
    """A random parameter of the kind with dim <= max_dim.

    Draws constituents, doubles those of the wrong sign, closes non-unitary
    ones under duality, then appends characters to fix determinant and parity.
    """
    sign = kind.parameter_sign
    while True:
        items: list[tuple[WDIrred, int]] = []
        for _ in range(rng.randint(1, max_terms)):
            irr, mult = _random_constituent(rng, p, tempered, sign)
            if irr.char.exponent:
                items.append((irr, mult))
                items.append((irr.dual(), mult))
            elif irr.sign != sign and mult % 2:
                items.append((irr, mult + 1))
            else:
                items.append((irr, mult))
        a = WDRep(p, tuple(items))
        a = _fix_det_and_parity(a, kind)
        if 0 < a.dim <= max_dim and classify_parameter(a, kind):
            return a


def _fix_det_and_parity(a: WDRep, kind: Kind) -> WDRep:
    p = a.p
    if kind.parameter_sign == -1:
        return a
    target = square_class(p, 1)
    if kind.family is Family.SO_EVEN:
        target = kind.disc if kind.disc is not None else det(a).d
    dd = det(a).d / target
    if not dd.is_trivial:
        a = a + rep(p, character(p, dd))
    if a.dim % 2 != kind.dimension_parity:
        a = a + rep(p, character(p))
    return a


def random_pair(rng: random.Random, p: int, kind_m: Kind, kind_n: Kind, max_dim_m: int,
                max_dim_n: int, tempered: bool = True) -> tuple[WDRep, WDRep]:
    return (random_parameter(rng, p, kind_m, max_dim_m, tempered),
            random_parameter(rng, p, kind_n, max_dim_n, tempered))
