"""Decoder runtime: debounce, blink preemption, refractory behaviour."""
import numpy as np
import pytest

from bciwheel.runtime import (
    CommandKind,
    CommandSource,
    DecoderRuntime,
    slide_windows,
)
from bciwheel.signals import ALL_CHANNELS, DEFAULT_FS, EegSegment
from bciwheel.synth import Intent, IntentKind, SubjectProfile, generate


class ScriptedModel:
    """Stands in for a TrainedModel: returns a scripted class per call."""

    def __init__(self, script):
        self.script = list(script)
        self.calls = 0

    def predict(self, features):
        label = self.script[min(self.calls, len(self.script) - 1)]
        self.calls += 1
        return label, np.array([0, 0, 0])


def window(kind=IntentKind.NONE, seed=0, blink=False):
    p = SubjectProfile(id="r", ssvep_amp=(1.0, 0.5, 0.25), noise_amp=1.0,
                       blink_amp=100.0, seed=seed)
    tl = [Intent(IntentKind.BLINK_TRIPLE if blink else kind, 0.0, 4.0)]
    return generate(p, tl, 4.0)


def run_script(script, windows=None):
    rt = DecoderRuntime(ScriptedModel(script))
    cmds = []
    for i in range(len(script)):
        seg = (windows or [window(seed=i)])[min(i, len(windows or [0]) - 1)] \
            if windows else window(seed=i)
        _, cmd = rt.step(seg)
        cmds.append(cmd)
        if cmd is not None:
            rt.action_completed()
    return cmds


def test_debounce_two_agreeing_windows_fire():
    cmds = run_script(["LEFT_13", "LEFT_13"])
    assert cmds[0] is None
    assert cmds[1] is not None and cmds[1].kind is CommandKind.LEFT
    assert cmds[1].source is CommandSource.SSVEP


def test_debounce_disagreement_resets():
    cmds = run_script(["LEFT_13", "RIGHT_15", "LEFT_13"])
    assert cmds == [None, None, None]


def test_baseline_clears_chain():
    cmds = run_script(["LEFT_13", "BASELINE", "LEFT_13", "LEFT_13"])
    assert cmds[:3] == [None, None, None]
    assert cmds[3].kind is CommandKind.LEFT


def test_refractory_blocks_until_action_completed():
    rt = DecoderRuntime(ScriptedModel(["LEFT_13"] * 6))
    fired = []
    for i in range(6):
        _, cmd = rt.step(window(seed=i))
        fired.append(cmd is not None)
        # never acknowledge: refractory must hold after the first fire
    assert fired[1] and not any(fired[2:])
    rt.action_completed()
    # agreement kept accumulating during the refractory, so one more
    # agreeing window may fire immediately after release
    _, cmd = rt.step(window(seed=10))
    assert cmd is not None and cmd.kind is CommandKind.LEFT


def test_blink_preempts_ssvep_and_toggles():
    rt = DecoderRuntime(ScriptedModel(["LEFT_13"] * 4))
    _, cmd = rt.step(window(blink=True, seed=1))
    assert cmd is not None and cmd.kind is CommandKind.GO
    assert cmd.source is CommandSource.BLINK
    rt.action_completed()
    _, cmd = rt.step(window(blink=True, seed=2))
    assert cmd.kind is CommandKind.STOP  # toggle


def test_step_requires_full_window():
    rt = DecoderRuntime(ScriptedModel(["BASELINE"]))
    seg = window().window(0.0, 2.0)
    with pytest.raises(ValueError):
        rt.step(seg)


def test_step_uses_trailing_window():
    """With a longer buffer, only the last 4 s are decoded."""
    rt = DecoderRuntime(ScriptedModel(["BASELINE"]))
    p = SubjectProfile(id="r", ssvep_amp=(0.1, 0.05, 0.02), noise_amp=1.0, seed=3)
    seg = generate(p, [Intent(IntentKind.BLINK_TRIPLE, 2.0, 6.0)], 8.0)
    decision, _ = rt.step(seg)
    assert decision.window_end == pytest.approx(8.0)


def test_slide_windows_counts():
    p = SubjectProfile(id="r", ssvep_amp=(1.0, 0.5, 0.2), noise_amp=1.0, seed=0)
    seg = generate(p, [Intent(IntentKind.NONE, 0.0, 15.0)], 15.0)
    wins = list(slide_windows(seg))
    assert len(wins) == 12  # 15 s at 4 s window, 1 s hop
    assert wins[0].t0 == pytest.approx(0.0)
    assert wins[-1].t0 == pytest.approx(11.0)
    for w in wins:
        assert w.n_samples == int(4.0 * DEFAULT_FS)
