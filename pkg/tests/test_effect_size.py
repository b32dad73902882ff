"""Effect-size computation, classification, and confidence intervals."""

import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from replikit import (
    DegenerateSampleError,
    DomainError,
    EffectCategory,
    EffectSize,
    Interval,
    SampleSummary,
    category_label,
    classify,
    cohens_d,
    confidence_interval,
    hedges_correction,
    pooled_sd,
    standard_error_d,
)

arm_ns = st.integers(min_value=2, max_value=1000)
arm_means = st.floats(min_value=-1e3, max_value=1e3)
arm_sds = st.floats(min_value=0.01, max_value=1e3)

arm_summaries = st.builds(SampleSummary, n=arm_ns, mean=arm_means, sd=arm_sds)


# ---------------------------------------------------------------------------
# cohens_d
# ---------------------------------------------------------------------------

def test_d_zero_for_equal_means():
    a = SampleSummary(30, 100.0, 20.0)
    assert cohens_d(a, a).d == 0.0


def test_d_quarter_sd_shift():
    a = SampleSummary(30, 105.0, 20.0)
    b = SampleSummary(30, 100.0, 20.0)
    eff = cohens_d(a, b)
    assert eff.d == 0.25
    assert cohens_d(b, a).d == -0.25


def test_d_degenerate_pooled_sd():
    a = SampleSummary(5, 1.0, 0.0)
    b = SampleSummary(5, 2.0, 0.0)
    with pytest.raises(DegenerateSampleError):
        cohens_d(a, b)


def test_pooled_sd_weighted_by_df():
    a = SampleSummary(11, 0.0, 2.0)
    b = SampleSummary(5, 0.0, 4.0)
    # (10*4 + 4*16) / 14 = 104/14
    assert math.isclose(pooled_sd(a, b), math.sqrt(104.0 / 14.0), rel_tol=1e-12)


def test_hedges_correction_applied_when_asked():
    a = SampleSummary(10, 12.0, 3.0)
    b = SampleSummary(10, 10.0, 3.0)
    plain = cohens_d(a, b)
    corrected = cohens_d(a, b, hedges=True)
    j = hedges_correction(18)
    assert 0.0 < j < 1.0
    assert math.isclose(corrected.d, j * plain.d, rel_tol=1e-12)
    assert math.isclose(corrected.se, j * plain.se, rel_tol=1e-12)


def test_hedges_j_approximation():
    # J ~= 1 - 3/(4*df - 1); at df=18 that is 0.95775
    assert abs(hedges_correction(18) - (1.0 - 3.0 / 71.0)) < 1e-3


@given(a=arm_summaries, b=arm_summaries)
def test_d_antisymmetric(a, b):
    try:
        ab = cohens_d(a, b)
    except DegenerateSampleError:
        return
    ba = cohens_d(b, a)
    assert ab.d == -ba.d
    assert ab.se == ba.se


@given(
    n1=arm_ns, n2=arm_ns,
    m2=st.floats(min_value=-100.0, max_value=100.0),
    gap=st.floats(min_value=0.1, max_value=50.0),
    sd1=st.floats(min_value=0.1, max_value=50.0),
    sd2=st.floats(min_value=0.1, max_value=50.0),
    alpha=st.floats(min_value=0.01, max_value=100.0),
    beta=st.floats(min_value=-100.0, max_value=100.0),
)
def test_d_affine_invariant(n1, n2, m2, gap, sd1, sd2, alpha, beta):
    a = SampleSummary(n1, m2 + gap, sd1)
    b = SampleSummary(n2, m2, sd2)
    a2 = SampleSummary(n1, alpha * (m2 + gap) + beta, alpha * sd1)
    b2 = SampleSummary(n2, alpha * m2 + beta, alpha * sd2)
    assert math.isclose(cohens_d(a, b).d, cohens_d(a2, b2).d, rel_tol=1e-9)


# ---------------------------------------------------------------------------
# standard_error_d
# ---------------------------------------------------------------------------

def test_se_null_balanced():
    assert abs(standard_error_d(0.0, 30, 30) - math.sqrt(60.0 / 900.0)) < 1e-4


def test_se_large_effect_small_arms():
    # sqrt(12/36 + 1.43^2/24) = 0.647
    assert abs(standard_error_d(1.43, 6, 6) - 0.647) < 1e-3


def test_se_vanishes_with_n():
    assert standard_error_d(0.0, 10**7, 10**7) < 1e-3


@given(
    d=st.floats(min_value=-3.0, max_value=3.0),
    n1=st.integers(min_value=2, max_value=500),
    n2=st.integers(min_value=2, max_value=500),
)
def test_se_decreases_in_n_increases_in_magnitude(d, n1, n2):
    se = standard_error_d(d, n1, n2)
    assert standard_error_d(d, n1 + 1, n2) < se
    assert standard_error_d(d, n1, n2 + 1) < se
    if abs(d) >= 0.01:
        assert standard_error_d(1.5 * d, n1, n2) > se


# ---------------------------------------------------------------------------
# classify
# ---------------------------------------------------------------------------

@pytest.mark.parametrize(
    "d,expected",
    [
        (0.101, EffectCategory.NONE),
        (1.430, EffectCategory.LARGE_POS),
        (0.2, EffectCategory.NONE),
        (-0.2, EffectCategory.NONE),
        (0.5, EffectCategory.SMALL_POS),
        (0.8, EffectCategory.MED_POS),
        (-0.51, EffectCategory.MED_NEG),
        (-0.81, EffectCategory.LARGE_NEG),
        (0.0, EffectCategory.NONE),
    ],
)
def test_classify_boundaries(d, expected):
    assert classify(d) is expected


def test_classify_rejects_non_finite():
    with pytest.raises(DomainError):
        classify(float("nan"))
    with pytest.raises(DomainError):
        classify(float("inf"))


_MIRROR = {
    EffectCategory.LARGE_NEG: EffectCategory.LARGE_POS,
    EffectCategory.MED_NEG: EffectCategory.MED_POS,
    EffectCategory.SMALL_NEG: EffectCategory.SMALL_POS,
    EffectCategory.NONE: EffectCategory.NONE,
    EffectCategory.SMALL_POS: EffectCategory.SMALL_NEG,
    EffectCategory.MED_POS: EffectCategory.MED_NEG,
    EffectCategory.LARGE_POS: EffectCategory.LARGE_NEG,
}


@given(d=st.floats(min_value=-10.0, max_value=10.0))
def test_classify_mirror(d):
    assert classify(-d) is _MIRROR[classify(d)]


def test_category_labels_cover_enum():
    labels = {category_label(c) for c in EffectCategory}
    assert len(labels) == 7
    assert "None" in labels and "Large+" in labels and "Large-" in labels


# ---------------------------------------------------------------------------
# confidence_interval
# ---------------------------------------------------------------------------

def test_ci_example_large_effect():
    eff = EffectSize(d=1.43, se=0.647, n1=6, n2=6)
    ci = confidence_interval(eff, 0.95)
    assert abs(ci.lower - 0.162) < 0.005
    assert abs(ci.upper - 2.698) < 0.005


def test_ci_unit_se():
    eff = EffectSize(d=0.0, se=1.0, n1=30, n2=30)
    ci = confidence_interval(eff, 0.95)
    assert abs(ci.lower + 1.96) < 1e-3
    assert abs(ci.upper - 1.96) < 1e-3


def test_ci_collapses_as_level_vanishes():
    eff = EffectSize(d=0.7, se=0.5, n1=30, n2=30)
    ci = confidence_interval(eff, 1e-9)
    assert ci.width < 1e-8
    assert abs(ci.midpoint - 0.7) < 1e-9


@given(
    d=st.floats(min_value=-5.0, max_value=5.0),
    se=st.floats(min_value=0.001, max_value=10.0),
    level=st.floats(min_value=0.01, max_value=0.999),
)
def test_ci_symmetric_about_d(d, se, level):
    ci = confidence_interval(EffectSize(d=d, se=se, n1=10, n2=10), level)
    assert abs(ci.midpoint - d) <= 1e-12 * max(1.0, abs(d))


def test_interval_validation():
    with pytest.raises(DomainError):
        Interval(1.0, 0.0, 0.95)
    with pytest.raises(DomainError):
        Interval(0.0, 1.0, 1.0)
    i = Interval(-1.0, 1.0, 0.95)
    assert i.contains(1.0) and i.contains(-1.0) and not i.contains(1.0001)


def test_effect_size_validation():
    with pytest.raises(DomainError):
        EffectSize(d=0.0, se=0.0, n1=10, n2=10)
    with pytest.raises(DomainError):
        EffectSize(d=0.0, se=1.0, n1=1, n2=10)
    with pytest.raises(DomainError):
        EffectSize(d=float("nan"), se=1.0, n1=10, n2=10)
