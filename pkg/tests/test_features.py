"""CCA coefficient and feature extraction tests."""
import numpy as np
import pytest

from bciwheel.features import (
    FEATURE_DIM,
    FEATURE_LABELS,
    FeatureVector,
    cca_coefficient,
    extract_features,
    reference_basis,
)
from bciwheel.signals import DEFAULT_FS, OCCIPITAL, EegSegment
from bciwheel.synth import Intent, IntentKind, SubjectProfile, generate


def lstsq_oracle(x, f, fs):
    """Independent oracle: correlation of x with its least-squares fit on
    the zero-mean sin/cos design."""
    t = np.arange(len(x)) / fs
    a = np.stack([np.sin(2 * np.pi * f * t), np.cos(2 * np.pi * f * t)], axis=1)
    a = a - a.mean(axis=0)
    xc = x - x.mean()
    coef, *_ = np.linalg.lstsq(a, xc, rcond=None)
    fit = a @ coef
    denom = np.linalg.norm(fit) * np.linalg.norm(xc)
    if denom == 0:
        return 0.0
    return float(np.dot(fit, xc) / denom)


def test_feature_dim_and_labels():
    assert FEATURE_DIM == 18
    assert len(FEATURE_LABELS) == 18
    assert FEATURE_LABELS[0] == "O1_h1_13Hz"
    assert FEATURE_LABELS[-1] == "Oz_h3_15Hz"


def test_cca_in_span_is_one():
    t = np.arange(4000) / DEFAULT_FS
    x = 3.0 * np.sin(2 * np.pi * 13.0 * t + 0.7)
    assert cca_coefficient(x, 13.0) == pytest.approx(1.0, abs=1e-9)


def test_cca_orthogonal_is_zero():
    n = 4000
    q = reference_basis(13.0, n, DEFAULT_FS)
    rng = np.random.default_rng(0)
    x = rng.standard_normal(n)
    x = x - x.mean()
    x -= q @ (q.T @ x)  # project out the reference plane
    assert cca_coefficient(x, 13.0) == pytest.approx(0.0, abs=1e-9)


def test_cca_matches_lstsq_oracle():
    rng = np.random.default_rng(8)
    for _ in range(1000):
        n = int(rng.integers(100, 1200))
        f = float(rng.uniform(5.0, 45.0))
        x = rng.standard_normal(n)
        assert cca_coefficient(x, f, DEFAULT_FS) == pytest.approx(
            lstsq_oracle(x, f, DEFAULT_FS), abs=1e-9)


def test_cca_scale_invariant():
    rng = np.random.default_rng(4)
    x = rng.standard_normal(2000)
    r = cca_coefficient(x, 13.0)
    assert cca_coefficient(17.5 * x, 13.0) == pytest.approx(r, rel=1e-12)
    assert cca_coefficient(x + 100.0, 13.0) == pytest.approx(r, rel=1e-9)


def test_cca_degenerate_zero_signal():
    assert cca_coefficient(np.zeros(1000), 13.0) == 0.0


def test_feature_vector_validation():
    with pytest.raises(ValueError):
        FeatureVector(np.zeros(17))
    with pytest.raises(ValueError):
        FeatureVector(np.full(18, 1.5))
    fv = FeatureVector(np.linspace(0, 1, 18))
    back = FeatureVector.from_csv_row(fv.to_csv_row())
    np.testing.assert_array_equal(back.values, fv.values)


def _window(kind, seed=0, noise=0.5):
    p = SubjectProfile(id="t", ssvep_amp=(2.0, 1.0, 0.5), noise_amp=noise, seed=seed)
    seg = generate(p, [Intent(kind, 0.0, 4.0)], 4.0)
    return seg.restrict(OCCIPITAL)


def test_extract_features_separates_stimuli():
    left = extract_features(_window(IntentKind.LED_LEFT_13HZ)).values
    right = extract_features(_window(IntentKind.LED_RIGHT_15HZ)).values
    # electrode-major layout: even positions score 13 Hz, odd score 15 Hz
    assert left[0::2].mean() > left[1::2].mean() + 0.2
    assert right[1::2].mean() > right[0::2].mean() + 0.2


def test_extract_features_channel_order_irrelevant():
    seg = _window(IntentKind.LED_LEFT_13HZ)
    perm = EegSegment(
        (seg.channels[2], seg.channels[0], seg.channels[1]), seg.fs,
        np.stack([seg.channel(seg.channels[2]), seg.channel(seg.channels[0]),
                  seg.channel(seg.channels[1])]), seg.t0)
    a = extract_features(seg).values
    b = extract_features(perm).values
    np.testing.assert_allclose(a, b, atol=1e-12)


def test_extract_features_validation():
    seg = _window(IntentKind.NONE)
    with pytest.raises(ValueError):
        extract_features(seg.window(0.0, 2.0))
    with pytest.raises(ValueError):
        extract_features(seg.restrict(OCCIPITAL[:2]))
