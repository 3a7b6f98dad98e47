/** Pure cockpit state reducer: fold telemetry messages into render state. */

import type { TelemetryMsg } from "./types";

export const TRAIL_CAP = 600; // one minute of 10 Hz pose samples
export const COMMAND_LOG_CAP = 50;
export const EEG_SAMPLE_CAP = 1000; // 4 s at the 250 Hz decimated rate

export interface CommandEntry {
  ts_ms: number;
  kind: string;
  source: string;
  accepted: boolean;
}

export interface CockpitState {
  ts_ms: number;
  pose: { x: number; y: number; heading: number } | null;
  motion: string;
  forceLatched: boolean;
  trail: [number, number][];
  sensors: { front: number; left: number; right: number } | null;
  eegChannels: string[];
  eegFs: number;
  eeg: number[][]; // ring per channel, newest at the end
  lastDecision: {
    ts_ms: number;
    ssvep_class: string | null;
    votes: number[];
    blink_gesture: boolean;
  } | null;
  commandLog: CommandEntry[];
  alarmCount: number;
  lastAlarmTs: number | null;
}

export function initialState(): CockpitState {
  return {
    ts_ms: 0,
    pose: null,
    motion: "STOPPED",
    forceLatched: false,
    trail: [],
    sensors: null,
    eegChannels: [],
    eegFs: 0,
    eeg: [],
    lastDecision: null,
    commandLog: [],
    alarmCount: 0,
    lastAlarmTs: null,
  };
}

export function reduce(state: CockpitState, msg: TelemetryMsg): CockpitState {
  const ts_ms = Math.max(state.ts_ms, msg.ts_ms);
  switch (msg.type) {
    case "pose": {
      const trail = [...state.trail, [msg.x, msg.y] as [number, number]];
      if (trail.length > TRAIL_CAP) trail.splice(0, trail.length - TRAIL_CAP);
      return {
        ...state,
        ts_ms,
        pose: { x: msg.x, y: msg.y, heading: msg.heading },
        motion: msg.motion,
        forceLatched: msg.force_latched,
        trail,
      };
    }
    case "sensor":
      return {
        ...state,
        ts_ms,
        sensors: { front: msg.front, left: msg.left, right: msg.right },
      };
    case "eeg": {
      const sameLayout =
        state.eegChannels.length === msg.channels.length &&
        state.eegChannels.every((c, i) => c === msg.channels[i]);
      const eeg = msg.channels.map((_, i) => {
        const prev = sameLayout ? state.eeg[i] : [];
        const merged = [...prev, ...msg.samples[i]];
        return merged.length > EEG_SAMPLE_CAP
          ? merged.slice(merged.length - EEG_SAMPLE_CAP)
          : merged;
      });
      return { ...state, ts_ms, eegChannels: msg.channels, eegFs: msg.fs, eeg };
    }
    case "decision":
      return {
        ...state,
        ts_ms,
        lastDecision: {
          ts_ms: msg.ts_ms,
          ssvep_class: msg.ssvep_class,
          votes: msg.votes,
          blink_gesture: msg.blink_gesture,
        },
      };
    case "command": {
      const commandLog = [
        ...state.commandLog,
        { ts_ms: msg.ts_ms, kind: msg.kind, source: msg.source, accepted: msg.accepted },
      ];
      if (commandLog.length > COMMAND_LOG_CAP) {
        commandLog.splice(0, commandLog.length - COMMAND_LOG_CAP);
      }
      return { ...state, ts_ms, commandLog };
    }
    case "alarm":
      return {
        ...state,
        ts_ms,
        alarmCount: state.alarmCount + 1,
        lastAlarmTs: msg.ts_ms,
      };
  }
}
