"""Reading-accuracy statistics: one-way ANOVA and post-hoc pairwise tests.

Works from raw per-subject accuracies or directly from per-treatment
summaries (mean, sample sd, n), which is all a published summary table
gives you:

    ss_treatment = sum n_i * (mean_i - grand_mean)^2
    ss_error     = sum (n_i - 1) * sd_i^2
    F            = (ss_treatment / (k-1)) / (ss_error / (N-k))

Pairwise comparisons against a reference treatment use the pooled ANOVA
error term; family-wise control is Bonferroni (p < alpha/m) and Holm's
step-down (rank the family's p-values ascending, reject while
p_(j) < alpha/(m - j + 1)). Holm never rejects less than Bonferroni.

Tail probabilities come from the regularized incomplete beta function,
evaluated by continued fraction to ~1e-14, so there is no dependency on an
external statistics library.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence


class DegenerateData(ValueError):
    """Within-group variance is zero everywhere; F is undefined."""


class UnknownReference(ValueError):
    """The requested reference treatment is not among the groups."""


class EmptyRatings(ValueError):
    """No usability ratings to average."""


# --- special functions -----------------------------------------------------

_BETA_EPS = 1e-15
_BETA_TINY = 1e-300
_BETA_MAX_ITER = 300


def _betacf(a: float, b: float, x: float) -> float:
    """Continued fraction for the incomplete beta (modified Lentz)."""
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _BETA_TINY:
        d = _BETA_TINY
    d = 1.0 / d
    h = d
    for m in range(1, _BETA_MAX_ITER + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _BETA_TINY:
            d = _BETA_TINY
        c = 1.0 + aa / c
        if abs(c) < _BETA_TINY:
            c = _BETA_TINY
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _BETA_TINY:
            d = _BETA_TINY
        c = 1.0 + aa / c
        if abs(c) < _BETA_TINY:
            c = _BETA_TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _BETA_EPS:
            return h
    raise ArithmeticError("incomplete beta continued fraction did not converge")


def _betainc_split(a: float, b: float, x: float, xc: float) -> float:
    """I_x(a, b) given both x and its complement.

    Callers that can form the complement without cancellation (tail
    probabilities can: x and xc share one denominator) keep full precision
    even when x is within an ulp of 1.
    """
    if x == 0.0:
        return 0.0
    if xc == 0.0:
        return 1.0
    ln_front = (
        math.lgamma(a + b)
        - math.lgamma(a)
        - math.lgamma(b)
        + a * math.log(x)
        + b * math.log(xc)
    )
    front = math.exp(ln_front)
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _betacf(a, b, x) / a
    return 1.0 - front * _betacf(b, a, xc) / b


def betainc(a: float, b: float, x: float) -> float:
    """Regularized incomplete beta I_x(a, b) for a, b > 0 and 0 <= x <= 1."""
    if a <= 0 or b <= 0:
        raise ValueError("shape parameters must be positive")
    if not 0.0 <= x <= 1.0:
        raise ValueError("x must be in [0, 1]")
    return _betainc_split(a, b, x, 1.0 - x)


def t_sf(t: float, df: float) -> float:
    """Two-sided tail probability of the t distribution.

    p(t) == p(-t), p(0) == 1, and p strictly decreases as |t| grows.
    """
    if df < 1:
        raise ValueError("degrees of freedom must be >= 1")
    if t == 0.0:
        return 1.0
    denominator = df + t * t
    return _betainc_split(df / 2.0, 0.5, df / denominator, t * t / denominator)


def f_sf(f: float, df1: float, df2: float) -> float:
    """Upper tail probability of the F distribution."""
    if df1 < 1 or df2 < 1:
        raise ValueError("degrees of freedom must be >= 1")
    if f <= 0.0:
        return 1.0
    denominator = df2 + df1 * f
    return _betainc_split(df2 / 2.0, df1 / 2.0, df2 / denominator, df1 * f / denominator)


# --- ANOVA ------------------------------------------------------------------


@dataclass(frozen=True)
class SampleSummary:
    """Per-treatment accuracy summary; treatment is the character gap in ms."""

    treatment: int
    mean: float
    sd: float
    n: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("each treatment needs n >= 2")
        if self.sd < 0:
            raise ValueError("standard deviation must be >= 0")
        if not 0.0 <= self.mean <= 100.0:
            raise ValueError("mean accuracy must be within 0..100%")


@dataclass(frozen=True)
class AnovaResult:
    ss_treatment: float
    ss_error: float
    ss_total: float
    df_treatment: int
    df_error: int
    ms_treatment: float
    ms_error: float
    f_stat: float
    p_value: float


def anova_from_summary(groups: Sequence[SampleSummary]) -> AnovaResult:
    """One-way ANOVA from per-group (mean, sd, n); groups may be unequal."""
    if len(groups) < 2:
        raise ValueError("ANOVA needs at least two groups")
    total_n = sum(g.n for g in groups)
    grand_mean = sum(g.n * g.mean for g in groups) / total_n
    ss_treatment = sum(g.n * (g.mean - grand_mean) ** 2 for g in groups)
    ss_error = sum((g.n - 1) * g.sd**2 for g in groups)
    df_treatment = len(groups) - 1
    df_error = total_n - len(groups)
    ms_treatment = ss_treatment / df_treatment
    ms_error = ss_error / df_error
    if ms_error == 0.0:
        raise DegenerateData("all within-group variances are zero; F is undefined")
    f_stat = ms_treatment / ms_error
    return AnovaResult(
        ss_treatment=ss_treatment,
        ss_error=ss_error,
        ss_total=ss_treatment + ss_error,
        df_treatment=df_treatment,
        df_error=df_error,
        ms_treatment=ms_treatment,
        ms_error=ms_error,
        f_stat=f_stat,
        p_value=f_sf(f_stat, df_treatment, df_error),
    )


def summarize(treatment: int, values: Sequence[float]) -> SampleSummary:
    if len(values) < 2:
        raise ValueError(f"treatment {treatment} needs at least two observations")
    n = len(values)
    mean = math.fsum(values) / n
    var = math.fsum((v - mean) ** 2 for v in values) / (n - 1)
    return SampleSummary(treatment=treatment, mean=mean, sd=math.sqrt(var), n=n)


def anova_from_raw(data: Mapping[int, Sequence[float]]) -> AnovaResult:
    """One-way ANOVA from per-treatment observation lists."""
    groups = [summarize(treatment, values) for treatment, values in data.items()]
    return anova_from_summary(groups)


# --- pairwise post-hoc tests -------------------------------------------------

FAMILY_ALL_PAIRS = "all-pairs"
FAMILY_SELECTED_PAIRS = "selected-pairs"


@dataclass(frozen=True)
class PairwiseResult:
    pair: tuple[int, int]  # (reference treatment, other treatment)
    t_stat: float
    raw_p: float
    bonferroni_significant: bool
    holm_significant: bool
    family_size: int

    @property
    def bonferroni(self) -> str:
        return "Significant" if self.bonferroni_significant else "Insignificant"

    @property
    def holm(self) -> str:
        return "Significant" if self.holm_significant else "Insignificant"


def _holm_rejections(p_values: Sequence[float], alpha: float) -> list[bool]:
    """Step-down rejection flags, aligned with the input order."""
    m = len(p_values)
    order = sorted(range(m), key=lambda i: p_values[i])
    rejected = [False] * m
    for rank, idx in enumerate(order, start=1):
        if p_values[idx] < alpha / (m - rank + 1):
            rejected[idx] = True
        else:
            break
    return rejected


def pairwise_vs_reference(
    groups: Sequence[SampleSummary],
    reference: int,
    alpha: float = 0.05,
    family: str = FAMILY_ALL_PAIRS,
) -> list[PairwiseResult]:
    """Post-hoc t tests of every treatment against the reference.

    t uses the pooled ANOVA error term:

        t = |mean_i - mean_ref| / sqrt(ms_error * (1/n_i + 1/n_ref))

    with two-sided p at df_error. The correction family is every pairwise
    comparison among the groups by default (all k*(k-1)/2 of them, even
    though only the reference column is reported); pass
    family="selected-pairs" to correct over the reported pairs only.
    """
    if family not in (FAMILY_ALL_PAIRS, FAMILY_SELECTED_PAIRS):
        raise ValueError(f"unknown family {family!r}")
    by_treatment = {g.treatment: g for g in groups}
    if reference not in by_treatment:
        raise UnknownReference(f"no treatment {reference} among the groups")
    anova = anova_from_summary(groups)

    def t_and_p(a: SampleSummary, b: SampleSummary) -> tuple[float, float]:
        se = math.sqrt(anova.ms_error * (1.0 / a.n + 1.0 / b.n))
        t = abs(a.mean - b.mean) / se
        return t, t_sf(t, anova.df_error)

    ref = by_treatment[reference]
    reported = [(g, *t_and_p(ref, g)) for g in groups if g.treatment != reference]

    if family == FAMILY_ALL_PAIRS:
        family_pairs = [
            (groups[i], groups[j])
            for i in range(len(groups))
            for j in range(i + 1, len(groups))
        ]
        family_ps = [t_and_p(a, b)[1] for a, b in family_pairs]
        holm_by_pair = dict(
            zip(
                [frozenset((a.treatment, b.treatment)) for a, b in family_pairs],
                _holm_rejections(family_ps, alpha),
            )
        )
        family_size = len(family_pairs)
        holm_flags = [
            holm_by_pair[frozenset((reference, g.treatment))] for g, _, _ in reported
        ]
    else:
        family_size = len(reported)
        holm_flags = _holm_rejections([p for _, _, p in reported], alpha)

    return [
        PairwiseResult(
            pair=(reference, g.treatment),
            t_stat=t,
            raw_p=p,
            bonferroni_significant=p < alpha / family_size,
            holm_significant=holm,
            family_size=family_size,
        )
        for (g, t, p), holm in zip(reported, holm_flags)
    ]


def pick_reference(groups: Sequence[SampleSummary]) -> int:
    """Treatment with the best mean accuracy; ties go to the steadier group."""
    best = max(groups, key=lambda g: (g.mean, -g.sd))
    return best.treatment


def usability_mean(ratings: Sequence[float]) -> float:
    """Arithmetic mean of 0..10 usability scores."""
    if not ratings:
        raise EmptyRatings("no ratings given")
    for r in ratings:
        if not 0.0 <= r <= 10.0:
            raise ValueError(f"rating {r} outside 0..10")
    return math.fsum(ratings) / len(ratings)


# --- plain-text report tables -------------------------------------------------


def summary_table(groups: Sequence[SampleSummary]) -> str:
    lines = ["gap_ms  mean_accuracy_pct  sd"]
    for g in groups:
        lines.append(f"{g.treatment:<7} {g.mean:<18.1f} {g.sd:.2f}")
    return "\n".join(lines)


def anova_table(result: AnovaResult) -> str:
    """SS/MS shown to 2 decimals, F to 4, tiny p as a bound."""
    p = f"{result.p_value:.4f}" if result.p_value >= 0.0001 else "<0.0001"
    lines = [
        "source     sum_sq     df  mean_sq   F        p",
        f"treatment  {result.ss_treatment:<10.2f} {result.df_treatment:<3} "
        f"{result.ms_treatment:<9.2f} {result.f_stat:<8.4f} {p}",
        f"error      {result.ss_error:<10.2f} {result.df_error:<3} "
        f"{result.ms_error:<9.2f} -        -",
        f"total      {result.ss_total:<10.2f} {result.df_treatment + result.df_error:<3} "
        f"-         -        -",
    ]
    return "\n".join(lines)


def pairwise_table(results: Sequence[PairwiseResult]) -> str:
    lines = ["pair             t      bonferroni     holm"]
    for r in results:
        pair = f"{r.pair[0]} vs {r.pair[1]}"
        lines.append(f"{pair:<16} {r.t_stat:<6.2f} {r.bonferroni:<14} {r.holm}")
    return "\n".join(lines)
