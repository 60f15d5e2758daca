"""Independent oracles used across the test suite.

These deliberately avoid the implementation's code paths: schedule totals
are recomputed by walking emitted events, and t-distribution tails come
from adaptive Simpson quadrature over the density rather than from the
incomplete beta function.
"""

from __future__ import annotations

import math

from hapticbraille.timing import Schedule, TimingConfig


def replay_total_duration(schedule: Schedule, cfg: TimingConfig, trailing_gap: int) -> int:
    """Total duration recomputed from the raw event list.

    The last event's dot cycle ends dot_off after the vibration stops; the
    caller supplies the trailing gap (char_gap, or word gaps for trailing
    breaks) since events alone cannot carry it.
    """
    if not schedule.events:
        return 0
    last = max(schedule.events, key=lambda e: e.start)
    return last.start + last.duration + cfg.dot_off + trailing_gap


def t_density(x: float, df: int) -> float:
    log_norm = (
        math.lgamma((df + 1) / 2.0)
        - math.lgamma(df / 2.0)
        - 0.5 * math.log(df * math.pi)
    )
    return math.exp(log_norm - ((df + 1) / 2.0) * math.log1p(x * x / df))


def _adaptive_simpson(f, a: float, b: float, eps: float, whole: float, fa, fb, fm, depth: int) -> float:
    m = (a + b) / 2.0
    lm = (a + m) / 2.0
    rm = (m + b) / 2.0
    flm = f(lm)
    frm = f(rm)
    left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
    right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
    if depth <= 0 or abs(left + right - whole) <= 15.0 * eps:
        return left + right + (left + right - whole) / 15.0
    return _adaptive_simpson(f, a, m, eps / 2.0, left, fa, fm, flm, depth - 1) + _adaptive_simpson(
        f, m, b, eps / 2.0, right, fm, fb, frm, depth - 1
    )


def integrate(f, a: float, b: float, eps: float = 1e-12) -> float:
    fa, fb = f(a), f(b)
    m = (a + b) / 2.0
    fm = f(m)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    return _adaptive_simpson(f, a, b, eps, whole, fa, fb, fm, depth=48)


def t_sf_quadrature(t: float, df: int, eps: float = 1e-12) -> float:
    """Two-sided tail of the t distribution by adaptive quadrature.

    Integrates the density from |t| out to a point where the remaining mass
    is negligible at the requested accuracy.
    """
    t = abs(t)
    if t == 0.0:
        return 1.0
    # the tail beyond `upper` is bounded by upper * pdf(upper) / (df - 1)
    upper = t + 10.0
    while upper * t_density(upper, df) / max(df - 1, 1) > eps / 10.0:
        upper *= 2.0
    one_tail = integrate(lambda x: t_density(x, df), t, upper, eps=eps)
    return 2.0 * one_tail
