import { describe, expect, it } from "vitest";
import { parseTelemetry } from "../src/types";

describe("parseTelemetry", () => {
  it("parses a pose frame", () => {
    const msg = parseTelemetry(
      JSON.stringify({
        type: "pose", ts_ms: 1500, x: 1.2, y: 3.4, heading: 0.5,
        motion: "FORWARD", force_latched: false,
      }),
    );
    expect(msg).toEqual({
      type: "pose", ts_ms: 1500, x: 1.2, y: 3.4, heading: 0.5,
      motion: "FORWARD", force_latched: false,
    });
  });

  it("parses sensor, command, decision and alarm frames", () => {
    expect(
      parseTelemetry(
        JSON.stringify({ type: "sensor", ts_ms: 1, front: 4, left: 2, right: 0.4 }),
      ),
    ).toMatchObject({ type: "sensor", right: 0.4 });
    expect(
      parseTelemetry(
        JSON.stringify({
          type: "command", ts_ms: 2, kind: "GO", source: "BLINK", accepted: true,
        }),
      ),
    ).toMatchObject({ type: "command", kind: "GO", accepted: true });
    expect(
      parseTelemetry(
        JSON.stringify({
          type: "decision", ts_ms: 3, ssvep_class: null, votes: [1, 2, 0],
          blink_gesture: false,
        }),
      ),
    ).toMatchObject({ type: "decision", ssvep_class: null, votes: [1, 2, 0] });
    expect(
      parseTelemetry(JSON.stringify({ type: "alarm", ts_ms: 4, t_sim: 3.25 })),
    ).toEqual({ type: "alarm", ts_ms: 4, t_sim: 3.25 });
  });

  it("parses an eeg frame and checks channel/sample consistency", () => {
    const msg = parseTelemetry(
      JSON.stringify({
        type: "eeg", ts_ms: 1000, channels: ["O1", "O2"], fs: 250,
        samples: [[1, 2, 3], [4, 5, 6]],
      }),
    );
    expect(msg.type).toBe("eeg");
    if (msg.type === "eeg") expect(msg.samples[1]).toEqual([4, 5, 6]);
    expect(() =>
      parseTelemetry(
        JSON.stringify({
          type: "eeg", ts_ms: 1, channels: ["O1"], fs: 250, samples: [[1], [2]],
        }),
      ),
    ).toThrow(/mismatch/);
  });

  it("rejects malformed frames", () => {
    expect(() => parseTelemetry("not json")).toThrow(/JSON/);
    expect(() => parseTelemetry('"just a string"')).toThrow(/not an object/);
    expect(() => parseTelemetry(JSON.stringify({ type: "nope", ts_ms: 1 }))).toThrow(
      /unknown telemetry type/,
    );
    expect(() =>
      parseTelemetry(JSON.stringify({ type: "pose", ts_ms: "soon", x: 0 })),
    ).toThrow(/ts_ms/);
    expect(() =>
      parseTelemetry(
        JSON.stringify({ type: "pose", ts_ms: 1, x: Infinity, y: 0, heading: 0 }),
      ),
    ).toThrow(/finite/); // JSON.stringify(Infinity) -> null, caught as non-number
    expect(() =>
      parseTelemetry(JSON.stringify({ type: "sensor", ts_ms: 1, front: 1, left: 2 })),
    ).toThrow(/right/);
  });
});
