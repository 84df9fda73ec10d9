"""Deterministic one-dimensional bracketing searches."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
INV_PHI_SQUARE = (3.0 - math.sqrt(5.0)) / 2.0

MAX_BISECTIONS = 200


def _sign(x: float) -> int:
    if x < 0:
        return -1
    if x > 0:
        return 1
    return 0


@dataclass(frozen=True)
class Bracket:
    lo: float
    hi: float
    f_lo: float
    f_hi: float

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.lo + self.hi)


def bisect_sign_change(
    f: Callable[[float], float], lo: float, hi: float, xtol: float = 1e-12
) -> Bracket:
    """Shrink ``[lo, hi]`` around a sign change of ``f``.

    Stops when the width is at most ``xtol``, when the midpoint can no longer
    be split in floating point, or when ``f`` vanishes exactly at a midpoint
    (then ``lo == hi``).
    """
    f_lo, f_hi = f(lo), f(hi)
    s_lo, s_hi = _sign(f_lo), _sign(f_hi)
    if s_lo == 0:
        return Bracket(lo, lo, f_lo, f_lo)
    if s_hi == 0:
        return Bracket(hi, hi, f_hi, f_hi)
    if s_lo == s_hi:
        raise ValueError(f"no sign change on [{lo!r}, {hi!r}]")

    for _ in range(MAX_BISECTIONS):
        if hi - lo <= xtol:
            break
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            break
        f_mid = f(mid)
        s_mid = _sign(f_mid)
        if s_mid == 0:
            return Bracket(mid, mid, f_mid, f_mid)
        if s_mid == s_lo:
            lo, f_lo = mid, f_mid
        else:
            hi, f_hi = mid, f_mid
    return Bracket(lo, hi, f_lo, f_hi)


def golden_section_max(
    f: Callable[[float], float], a: float, b: float, tol: float = 1e-4
) -> tuple[float, float]:
    """Maximize a unimodal ``f`` on ``[a, b]``; returns ``(x, f(x))``.

    The iteration count is fixed by ``tol`` and the interval width.
    """
    a, b = min(a, b), max(a, b)
    h = b - a
    if h <= tol:
        x = 0.5 * (a + b)
        return x, f(x)

    n = int(math.ceil(math.log(tol / h) / math.log(INV_PHI)))
    c = a + INV_PHI_SQUARE * h
    d = a + INV_PHI * h
    yc, yd = f(c), f(d)
    for _ in range(n - 1):
        if yc > yd:
            b, d, yd = d, c, yc
            h *= INV_PHI
            c = a + INV_PHI_SQUARE * h
            yc = f(c)
        else:
            a, c, yc = c, d, yd
            h *= INV_PHI
            d = a + INV_PHI * h
            yd = f(d)
    if yc > yd:
        return c, yc
    return d, yd
