/** Telemetry and REST message shapes of the gateway, with strict parsing. */

export interface PoseMsg {
  type: "pose";
  ts_ms: number;
  x: number;
  y: number;
  heading: number;
  motion: string;
  force_latched: boolean;
}

export interface SensorMsg {
  type: "sensor";
  ts_ms: number;
  front: number;
  left: number;
  right: number;
}

export interface EegMsg {
  type: "eeg";
  ts_ms: number;
  channels: string[];
  fs: number;
  samples: number[][]; // channels x samples, decimated
}

export interface DecisionMsg {
  type: "decision";
  ts_ms: number;
  ssvep_class: string | null;
  votes: number[];
  blink_gesture: boolean;
}

export interface CommandMsg {
  type: "command";
  ts_ms: number;
  kind: string;
  source: string;
  accepted: boolean;
}

export interface AlarmMsg {
  type: "alarm";
  ts_ms: number;
  t_sim: number;
}

export type TelemetryMsg =
  | PoseMsg
  | SensorMsg
  | EegMsg
  | DecisionMsg
  | CommandMsg
  | AlarmMsg;

export interface StateSnapshot {
  ts_ms: number;
  pose: { x: number; y: number; heading: number };
  motion: string;
  sensors: { front: number; left: number; right: number };
  force_latched: boolean;
}

export interface WorldGeometry {
  bounds: [number, number, number, number];
  obstacles: [number, number][][];
}

function num(v: unknown, field: string): number {
  if (typeof v !== "number" || !Number.isFinite(v)) {
    throw new Error(`telemetry field ${field} is not a finite number`);
  }
  return v;
}

/** Parse one raw websocket frame; throws on anything malformed. */
export function parseTelemetry(raw: string): TelemetryMsg {
  let obj: unknown;
  try {
    obj = JSON.parse(raw);
  } catch {
    throw new Error("telemetry frame is not valid JSON");
  }
  if (typeof obj !== "object" || obj === null) {
    throw new Error("telemetry frame is not an object");
  }
  const m = obj as Record<string, unknown>;
  const ts = num(m.ts_ms, "ts_ms");
  switch (m.type) {
    case "pose":
      return {
        type: "pose",
        ts_ms: ts,
        x: num(m.x, "x"),
        y: num(m.y, "y"),
        heading: num(m.heading, "heading"),
        motion: String(m.motion),
        force_latched: Boolean(m.force_latched),
      };
    case "sensor":
      return {
        type: "sensor",
        ts_ms: ts,
        front: num(m.front, "front"),
        left: num(m.left, "left"),
        right: num(m.right, "right"),
      };
    case "eeg": {
      if (!Array.isArray(m.channels) || !Array.isArray(m.samples)) {
        throw new Error("eeg frame missing channels/samples");
      }
      const channels = m.channels.map(String);
      const samples = m.samples as number[][];
      if (samples.length !== channels.length) {
        throw new Error("eeg frame channel/sample mismatch");
      }
      return { type: "eeg", ts_ms: ts, channels, fs: num(m.fs, "fs"), samples };
    }
    case "decision":
      return {
        type: "decision",
        ts_ms: ts,
        ssvep_class: m.ssvep_class === null ? null : String(m.ssvep_class),
        votes: Array.isArray(m.votes) ? m.votes.map((v) => num(v, "votes")) : [],
        blink_gesture: Boolean(m.blink_gesture),
      };
    case "command":
      return {
        type: "command",
        ts_ms: ts,
        kind: String(m.kind),
        source: String(m.source),
        accepted: Boolean(m.accepted),
      };
    case "alarm":
      return { type: "alarm", ts_ms: ts, t_sim: num(m.t_sim, "t_sim") };
    default:
      throw new Error(`unknown telemetry type ${String(m.type)}`);
  }
}
