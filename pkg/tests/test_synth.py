"""Synthetic EEG generator tests."""
import numpy as np
import pytest

from bciwheel.signals import ALL_CHANNELS, DEFAULT_FS, FRONTAL, OCCIPITAL, EegSegment
from bciwheel.synth import (
    Intent,
    IntentKind,
    StreamingSynth,
    SubjectProfile,
    blink_pulse,
    generate,
    load_profiles,
    pink_noise,
    raised_cosine,
    triple_blink_times,
)


def profile(**kw):
    base = dict(id="t", ssvep_amp=(2.0, 1.0, 0.5), noise_amp=1.0, seed=3)
    base.update(kw)
    return SubjectProfile(**base)


def test_profile_invariants():
    with pytest.raises(ValueError):
        profile(ssvep_amp=(1.0, -0.1, 0.0))
    with pytest.raises(ValueError):
        profile(noise_amp=0.0)
    with pytest.raises(ValueError):
        profile(blink_width=1.5)
    with pytest.raises(ValueError):
        profile(channel_gain={"O1": 1.0})


def test_load_profiles(tmp_path):
    (tmp_path / "p.yaml").write_text(
        "profiles:\n  a:\n    ssvep_amp: [1, 0.5, 0.25]\n    noise_amp: 2.0\n")
    out = load_profiles(tmp_path / "p.yaml")
    assert out["a"].id == "a"
    assert out["a"].ssvep_amp == (1.0, 0.5, 0.25)
    (tmp_path / "bad.yaml").write_text("no_profiles: {}\n")
    with pytest.raises(ValueError):
        load_profiles(tmp_path / "bad.yaml")


def test_repo_profile_config_loads():
    from pathlib import Path
    cfg = Path(__file__).resolve().parents[1] / "profiles" / "default.yaml"
    out = load_profiles(cfg)
    assert len(out) >= 3


def test_pink_noise_is_unit_rms_and_one_over_f():
    rng = np.random.default_rng(0)
    x = pink_noise(2 ** 16, rng)
    assert np.sqrt(np.mean(x ** 2)) == pytest.approx(1.0, rel=1e-9)
    spec = np.abs(np.fft.rfft(x)) ** 2
    lo = spec[10:100].mean()
    hi = spec[1000:10000].mean()
    assert lo / hi > 10.0  # power falls roughly as 1/f


def test_raised_cosine_closed_forms():
    fs = 1000.0
    t = np.arange(0, 2.0, 1 / fs)
    width = 0.3
    p = raised_cosine(t, 1.0, 100.0, width)
    assert p.max() == pytest.approx(100.0)  # peak equals amplitude
    # zero at the support edges and outside
    edge = np.argmin(np.abs(t - (1.0 + width / 2)))
    assert abs(p[edge]) < 1e-9
    assert np.all(p[t > 1.0 + width / 2 + 1e-9] == 0.0)
    assert np.all(p[t < 1.0 - width / 2 - 1e-9] == 0.0)
    # closed-form integral: amp * width / 2
    assert np.trapezoid(p, t) == pytest.approx(100.0 * width / 2, rel=1e-3)


def test_blink_pulse_support():
    p = profile(blink_amp=80.0, blink_width=0.4)
    w = blink_pulse(p, 1.0)
    assert w.max() == pytest.approx(80.0)
    assert len(w) == 401
    assert w[0] == pytest.approx(0.0, abs=1e-9)


def test_triple_blink_times_span():
    rng = np.random.default_rng(2)
    for _ in range(50):
        ts = triple_blink_times(0.0, rng)
        assert len(ts) == 3
        assert all(0.0 < t < 4.0 for t in ts)
        assert ts == sorted(ts)


def test_generate_deterministic():
    tl = [Intent(IntentKind.LED_LEFT_13HZ, 0.0, 4.0)]
    a = generate(profile(), tl, 4.0)
    b = generate(profile(), tl, 4.0)
    np.testing.assert_array_equal(a.data, b.data)
    c = generate(profile(seed=4), tl, 4.0)
    assert not np.array_equal(a.data, c.data)


def test_channel_routing():
    p = profile(noise_amp=1e-6)
    led = generate(p, [Intent(IntentKind.LED_LEFT_13HZ, 0.0, 4.0)], 4.0)
    for ch in FRONTAL:
        assert np.max(np.abs(led.channel(ch))) < 1e-3
    for ch in OCCIPITAL:
        assert np.max(np.abs(led.channel(ch))) > 1.0
    bl = generate(p, [Intent(IntentKind.BLINK_TRIPLE, 0.0, 4.0)], 4.0)
    for ch in OCCIPITAL:
        assert np.max(np.abs(bl.channel(ch))) < 1e-3
    for ch in FRONTAL:
        assert np.max(np.abs(bl.channel(ch))) > 50.0


@pytest.mark.parametrize("kind,f", [(IntentKind.LED_LEFT_13HZ, 13.0),
                                    (IntentKind.LED_RIGHT_15HZ, 15.0)])
def test_spectral_placement(kind, f):
    p = profile(noise_amp=1e-6)
    seg = generate(p, [Intent(kind, 0.0, 4.0)], 4.0)
    x = seg.channel("Oz")
    spec = np.abs(np.fft.rfft(x))
    freqs = np.fft.rfftfreq(len(x), 1 / seg.fs)
    for h, amp in zip((1, 2, 3), p.ssvep_amp):
        k = np.argmin(np.abs(freqs - h * f))
        # bin amplitude ~ amp * n/2 for an on-grid tone
        assert spec[k] == pytest.approx(amp * len(x) / 2, rel=0.01)
    # no energy at the other LED frequency
    other = 15.0 if f == 13.0 else 13.0
    k = np.argmin(np.abs(freqs - other))
    assert spec[k] < 0.05 * spec[np.argmin(np.abs(freqs - f))]


def test_blink_triple_pulse_count():
    p = profile(noise_amp=1e-6)
    seg = generate(p, [Intent(IntentKind.BLINK_TRIPLE, 0.0, 4.0)], 4.0)
    x = seg.channel("Fp1")
    # count connected regions above half the peak
    above = x > 50.0
    starts = np.sum(above[1:] & ~above[:-1]) + int(above[0])
    assert starts == 3


def test_timeline_validation():
    p = profile()
    with pytest.raises(ValueError):
        generate(p, [Intent(IntentKind.NONE, 0.0, 5.0)], 4.0)  # past the end
    with pytest.raises(ValueError):
        generate(p, [Intent(IntentKind.NONE, 0.0, 3.0),
                     Intent(IntentKind.LED_LEFT_13HZ, 2.0, 2.0)], 4.0)
    with pytest.raises(ValueError):
        generate(p, [Intent(IntentKind.BLINK_TRIPLE, 0.0, 2.0)], 4.0)  # short span
    with pytest.raises(ValueError):
        generate(p, [], 0.0)


def test_streaming_blocks_are_contiguous():
    p = profile(noise_amp=0.5)
    s = StreamingSynth(p)
    s.set_intent(IntentKind.LED_LEFT_13HZ)
    blocks = [s.next_block(1.0) for _ in range(4)]
    assert blocks[0].t0 == pytest.approx(0.0)
    assert blocks[1].t0 == pytest.approx(1.0)
    x = np.concatenate([b.channel("Oz") for b in blocks])
    # SSVEP phase continuity: the 13 Hz line stays sharp across the joins
    spec = np.abs(np.fft.rfft(x))
    freqs = np.fft.rfftfreq(len(x), 1 / DEFAULT_FS)
    k13 = np.argmin(np.abs(freqs - 13.0))
    neighbourhood = spec[k13 - 3:k13 + 4]
    assert spec[k13] == pytest.approx(neighbourhood.max())
    assert spec[k13] > 5 * np.median(spec[(freqs > 5) & (freqs < 40)])


def test_streaming_blink_one_shot():
    p = profile(noise_amp=1e-6)
    s = StreamingSynth(p)
    s.set_intent(IntentKind.BLINK_TRIPLE)
    first = s.next_block(4.0)
    later = s.next_block(4.0)
    assert np.max(np.abs(first.channel("Fp1"))) > 50.0
    assert np.max(np.abs(later.channel("Fp1"))) < 1.0  # auto-reverted


def test_segment_csv_roundtrip(tmp_path):
    seg = generate(profile(), [Intent(IntentKind.LED_LEFT_13HZ, 0.0, 1.0)], 1.0)
    path = tmp_path / "seg.csv"
    seg.to_csv(path)
    back = EegSegment.from_csv(path)
    assert back.channels == seg.channels
    np.testing.assert_allclose(back.data, seg.data, rtol=1e-12)
