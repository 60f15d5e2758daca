import math

import pytest
from hypothesis import given, settings, strategies as st

from hapticbraille import datasets
from hapticbraille.stats import (
    FAMILY_SELECTED_PAIRS,
    DegenerateData,
    EmptyRatings,
    SampleSummary,
    UnknownReference,
    anova_from_raw,
    anova_from_summary,
    anova_table,
    betainc,
    f_sf,
    pairwise_table,
    pairwise_vs_reference,
    pick_reference,
    summarize,
    t_sf,
    usability_mean,
)

from oracles import t_sf_quadrature

# frozen from the bundled seven-gap reading study dataset
EXPECTED_SS_TREATMENT = 21168.37
EXPECTED_SS_ERROR = 14696.5
EXPECTED_F = 15.1239
EXPECTED_T_STATS = {2000: 0.00, 1200: 0.32, 1000: 0.32, 800: 3.07, 500: 5.40, 400: 6.40}


@pytest.fixture(scope="module")
def reading_groups():
    return datasets.load_summary()


@pytest.fixture(scope="module")
def reading_raw():
    return datasets.load_raw()


def two_point_group(mean, sd, n=10):
    """Raw values with the exact given mean and sample sd."""
    delta = sd * math.sqrt((n - 1) / n)
    half = n // 2
    return [mean - delta] * half + [mean + delta] * (n - half)


class TestSpecialFunctions:
    def test_betainc_bounds(self):
        assert betainc(2.0, 3.0, 0.0) == 0.0
        assert betainc(2.0, 3.0, 1.0) == 1.0

    def test_betainc_uniform_case(self):
        # I_x(1, 1) is the identity
        for x in (0.1, 0.5, 0.9):
            assert betainc(1.0, 1.0, x) == pytest.approx(x, abs=1e-14)

    def test_betainc_symmetry(self):
        for a, b, x in [(2.5, 4.0, 0.3), (31.5, 0.5, 0.8), (0.5, 0.5, 0.25)]:
            assert betainc(a, b, x) == pytest.approx(1.0 - betainc(b, a, 1.0 - x), abs=1e-12)

    def test_betainc_validation(self):
        with pytest.raises(ValueError):
            betainc(0.0, 1.0, 0.5)
        with pytest.raises(ValueError):
            betainc(1.0, 1.0, 1.5)

    @pytest.mark.parametrize("t", [0.0, 0.32, 3.07, 5.40, 6.40])
    def test_t_sf_matches_quadrature(self, t):
        assert t_sf(t, 63) == pytest.approx(t_sf_quadrature(t, 63), abs=1e-10)

    def test_t_sf_at_zero(self):
        for df in (1, 5, 63, 200):
            assert t_sf(0.0, df) == 1.0

    def test_t_quantile_anchor(self):
        # the two-sided 5% point at df=63 sits near 1.9983
        assert t_sf(1.9983, 63) == pytest.approx(0.05, abs=1e-4)

    @given(
        st.floats(min_value=-8.0, max_value=8.0, allow_nan=False),
        st.integers(min_value=1, max_value=200),
    )
    def test_t_sf_symmetric(self, t, df):
        assert t_sf(t, df) == pytest.approx(t_sf(-t, df), abs=1e-14)

    @given(
        st.floats(min_value=0.0, max_value=7.5, allow_nan=False),
        st.integers(min_value=1, max_value=200),
    )
    def test_t_sf_strictly_decreasing(self, t, df):
        assert t_sf(t + 0.25, df) < t_sf(t, df)

    def test_f_sf_anchor(self):
        # F(1, df) equals t(df) squared, so the tails must agree
        t = 2.3
        assert f_sf(t * t, 1, 40) == pytest.approx(t_sf(t, 40), abs=1e-12)


class TestAnova:
    def test_reading_study_reproduction(self, reading_groups):
        result = anova_from_summary(reading_groups)
        assert result.ss_treatment == pytest.approx(EXPECTED_SS_TREATMENT, abs=0.5)
        assert result.ss_error == pytest.approx(EXPECTED_SS_ERROR, abs=0.5)
        assert result.ms_treatment == pytest.approx(3528.06, abs=0.5)
        assert result.ms_error == pytest.approx(233.28, abs=0.05)
        assert result.f_stat == pytest.approx(EXPECTED_F, abs=0.005)
        assert (result.df_treatment, result.df_error) == (6, 63)
        assert result.p_value < 1e-4
        assert result.ss_total == pytest.approx(35864.87, abs=0.5)

    def test_identical_groups(self):
        groups = [
            SampleSummary(treatment=1, mean=50.0, sd=5.0, n=10),
            SampleSummary(treatment=2, mean=50.0, sd=5.0, n=10),
        ]
        result = anova_from_summary(groups)
        assert result.ss_treatment == 0.0
        assert result.f_stat == 0.0
        assert result.p_value == 1.0

    def test_two_groups_f_equals_t_squared(self):
        a = two_point_group(60.0, 8.0)
        b = two_point_group(52.0, 6.0)
        result = anova_from_raw({1: a, 2: b})
        # pooled two-sample t, computed independently
        na, nb = len(a), len(b)
        va = sum((x - 60.0) ** 2 for x in a) / (na - 1)
        vb = sum((x - 52.0) ** 2 for x in b) / (nb - 1)
        pooled = ((na - 1) * va + (nb - 1) * vb) / (na + nb - 2)
        t = (60.0 - 52.0) / math.sqrt(pooled * (1 / na + 1 / nb))
        assert result.f_stat == pytest.approx(t * t, rel=1e-12)

    def test_degenerate_all_constant(self):
        with pytest.raises(DegenerateData):
            anova_from_raw({1: [70.0] * 5, 2: [70.0] * 5})

    def test_single_treatment_duplicated(self):
        values = two_point_group(80.0, 4.0)
        result = anova_from_raw({1: list(values), 2: list(values), 3: list(values)})
        assert result.f_stat == 0.0

    def test_needs_two_groups(self):
        with pytest.raises(ValueError):
            anova_from_summary([SampleSummary(treatment=1, mean=50.0, sd=5.0, n=10)])

    def test_raw_matches_summary_on_dataset(self, reading_groups, reading_raw):
        from_raw = anova_from_raw(reading_raw)
        from_summary = anova_from_summary(reading_groups)
        assert from_raw.ss_treatment == pytest.approx(from_summary.ss_treatment, rel=1e-9)
        assert from_raw.ss_error == pytest.approx(from_summary.ss_error, rel=1e-9)
        assert from_raw.f_stat == pytest.approx(from_summary.f_stat, rel=1e-9)

    @given(
        st.lists(
            st.tuples(
                st.floats(min_value=5.0, max_value=95.0),
                st.floats(min_value=0.5, max_value=20.0),
            ),
            min_size=2,
            max_size=6,
        )
    )
    @settings(max_examples=100)
    def test_raw_equals_summary_property(self, spec):
        data = {i: two_point_group(mean, sd) for i, (mean, sd) in enumerate(spec)}
        groups = [summarize(i, values) for i, values in data.items()]
        from_raw = anova_from_raw(data)
        from_summary = anova_from_summary(groups)
        assert from_raw.f_stat == pytest.approx(from_summary.f_stat, rel=1e-9)
        assert from_raw.ss_total == pytest.approx(from_summary.ss_total, rel=1e-9)

    @given(
        st.floats(min_value=-20.0, max_value=20.0),
        st.floats(min_value=0.1, max_value=1.3),  # keep means inside 0..100%
    )
    @settings(max_examples=50)
    def test_f_invariant_under_shift_and_scale(self, shift, scale):
        base = {1: two_point_group(40.0, 6.0), 2: two_point_group(52.0, 8.0)}
        moved = {k: [(v + shift) * scale for v in vs] for k, vs in base.items()}
        assert anova_from_raw(moved).f_stat == pytest.approx(
            anova_from_raw(base).f_stat, rel=1e-9
        )
        assert anova_from_raw(moved).ss_total == pytest.approx(
            anova_from_raw(base).ss_total * scale * scale, rel=1e-9
        )


class TestPairwise:
    def test_reading_study_t_stats(self, reading_groups):
        results = pairwise_vs_reference(reading_groups, reference=1500)
        stats_by_gap = {r.pair[1]: r.t_stat for r in results}
        for gap, expected in EXPECTED_T_STATS.items():
            assert stats_by_gap[gap] == pytest.approx(expected, abs=0.01)

    def test_reading_study_verdicts(self, reading_groups):
        results = {r.pair[1]: r for r in pairwise_vs_reference(reading_groups, reference=1500)}
        assert all(r.family_size == 21 for r in results.values())
        assert [results[g].bonferroni for g in (2000, 1200, 1000, 800, 500, 400)] == [
            "Insignificant", "Insignificant", "Insignificant",
            "Insignificant", "Significant", "Significant",
        ]
        assert [results[g].holm for g in (2000, 1200, 1000, 800, 500, 400)] == [
            "Insignificant", "Insignificant", "Insignificant",
            "Significant", "Significant", "Significant",
        ]

    def test_selected_family_loosens_bonferroni(self, reading_groups):
        results = {
            r.pair[1]: r
            for r in pairwise_vs_reference(
                reading_groups, reference=1500, family=FAMILY_SELECTED_PAIRS
            )
        }
        assert results[800].family_size == 6
        # with only six comparisons corrected, the 800 ms pair flips
        assert results[800].bonferroni == "Significant"

    def test_reference_vs_itself_excluded(self, reading_groups):
        results = pairwise_vs_reference(reading_groups, reference=1500)
        assert all(r.pair[1] != 1500 for r in results)
        assert len(results) == 6

    def test_identical_pair_insignificant(self):
        groups = [
            SampleSummary(treatment=1, mean=50.0, sd=5.0, n=10),
            SampleSummary(treatment=2, mean=50.0, sd=5.0, n=10),
            SampleSummary(treatment=3, mean=60.0, sd=5.0, n=10),
        ]
        results = {r.pair[1]: r for r in pairwise_vs_reference(groups, reference=1)}
        assert results[2].t_stat == 0.0
        assert results[2].bonferroni == "Insignificant"
        assert results[2].holm == "Insignificant"

    def test_unknown_reference(self, reading_groups):
        with pytest.raises(UnknownReference):
            pairwise_vs_reference(reading_groups, reference=999)

    @given(
        st.lists(
            st.tuples(
                st.floats(min_value=5.0, max_value=95.0),
                st.floats(min_value=0.5, max_value=20.0),
            ),
            min_size=2,
            max_size=7,
        ),
        st.floats(min_value=0.005, max_value=0.2),
    )
    @settings(max_examples=100)
    def test_holm_dominates_bonferroni(self, spec, alpha):
        groups = [
            SampleSummary(treatment=i, mean=round(m, 3), sd=round(s, 3), n=10)
            for i, (m, s) in enumerate(spec)
        ]
        results = pairwise_vs_reference(groups, reference=0, alpha=alpha)
        for r in results:
            if r.bonferroni_significant:
                assert r.holm_significant

    def test_pick_reference_prefers_steady_winner(self, reading_groups):
        # two gaps tie on mean; the lower-sd one is the reference
        assert pick_reference(reading_groups) == 1500


class TestUsability:
    def test_reported_average(self):
        assert usability_mean([9, 8, 9, 9, 8, 9, 9, 8, 9, 9]) == pytest.approx(8.7)

    def test_single(self):
        assert usability_mean([5]) == 5.0

    def test_extremes(self):
        assert usability_mean([0, 10]) == 5.0

    def test_empty(self):
        with pytest.raises(EmptyRatings):
            usability_mean([])

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            usability_mean([11])


class TestTables:
    def test_anova_table_rounding(self, reading_groups):
        text = anova_table(anova_from_summary(reading_groups))
        assert "21168.37" in text
        assert "14696.50" in text
        assert "15.1239" in text
        assert "<0.0001" in text

    def test_pairwise_table_shape(self, reading_groups):
        text = pairwise_table(pairwise_vs_reference(reading_groups, reference=1500))
        lines = text.splitlines()
        assert len(lines) == 7
        assert "1500 vs 800" in text and "Significant" in text
