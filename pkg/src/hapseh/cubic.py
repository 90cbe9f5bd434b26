"""Real roots of a cubic by the depressed-cubic transform.

``a x^3 + b x^2 + c x + d = 0`` is shifted to ``t^3 + p t + q = 0`` with
``x = t - b / (3a)``. The three-real-root case uses the trigonometric
form; the single-real-root case uses the hyperbolic forms, which avoid the
cancellation of the textbook two-cube-root sum. Each root gets a couple of
Newton steps on the original polynomial.
"""
from __future__ import annotations

import math


def cubic_value(a, b, c, d, x):
    return ((a * x + b) * x + c) * x + d


def _polish(a, b, c, d, x, steps=3):
    for _ in range(steps):
        f = cubic_value(a, b, c, d, x)
        fp = (3 * a * x + 2 * b) * x + c
        if fp == 0 or not math.isfinite(f):
            break
        nx = x - f / fp
        if abs(cubic_value(a, b, c, d, nx)) >= abs(f):
            break
        x = nx
    return x


def _quadratic(b, c, d):
    if b == 0:
        return [] if c == 0 else [-d / c]
    disc = c * c - 4 * b * d
    if disc < 0:
        return []
    sq = math.sqrt(disc)
    q = -0.5 * (c + math.copysign(sq, c))
    roots = [q / b]
    if q != 0:
        roots.append(d / q)
    return sorted(roots)


def real_roots(a: float, b: float, c: float, d: float) -> list[float]:
    """Sorted real roots (repeated roots listed once per distinct value)."""
    if a == 0:
        return _quadratic(b, c, d)
    shift = b / (3 * a)
    p = (3 * a * c - b * b) / (3 * a * a)
    q = (2 * b ** 3 - 9 * a * b * c + 27 * a * a * d) / (27 * a ** 3)

    if p == 0 or (p / 3) ** 3 == 0:
        # p negligible (or its cube underflows): pure cube root
        ts = [math.copysign(abs(q) ** (1 / 3), -q)]
    else:
        disc = (q / 2) ** 2 + (p / 3) ** 3
        if disc <= 0:
            # three real roots (p < 0 here)
            m = 2 * math.sqrt(-p / 3)
            arg = 3 * q / (p * m)
            theta = math.acos(max(-1.0, min(1.0, arg))) / 3
            ts = [m * math.cos(theta - 2 * math.pi * k / 3) for k in range(3)]
        elif p < 0:
            m = 2 * math.sqrt(-p / 3)
            arg = -3 * abs(q) / (p * m)
            ts = [-math.copysign(1.0, q) * m * math.cosh(math.acosh(arg) / 3)]
        else:
            m = 2 * math.sqrt(p / 3)
            arg = 3 * q / (p * m)
            ts = [-m * math.sinh(math.asinh(arg) / 3)]

    roots = sorted(_polish(a, b, c, d, t - shift) for t in ts)
    distinct = []
    for r in roots:
        if not distinct or not math.isclose(r, distinct[-1], rel_tol=1e-12, abs_tol=1e-12):
            distinct.append(r)
    return distinct
