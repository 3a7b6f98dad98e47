/** REST calls to the gateway. All world mutations go through these. */

import type { StateSnapshot, WorldGeometry } from "./types";

export type CommandKind = "GO" | "LEFT" | "RIGHT" | "STOP";
export type IntentTarget = "LED_LEFT" | "LED_RIGHT" | "BLINK3" | "NONE";

/** Monotone sequence numbers so the gateway can reject stale commands. */
export class SeqCounter {
  private seq: number;

  constructor(start = Date.now()) {
    this.seq = start;
  }

  next(): number {
    this.seq += 1;
    return this.seq;
  }
}

export async function postCommand(
  base: string,
  kind: CommandKind,
  seq: number,
): Promise<{ accepted: boolean; state: string }> {
  const r = await fetch(`${base}/command`, {
    method: "POST",
    headers: { "content-type": "application/json" },
    body: JSON.stringify({ cmd: kind, seq }),
  });
  if (!r.ok) throw new Error(`command rejected: ${r.status}`);
  return r.json();
}

export async function postIntent(base: string, target: IntentTarget): Promise<void> {
  const r = await fetch(`${base}/intent`, {
    method: "POST",
    headers: { "content-type": "application/json" },
    body: JSON.stringify({ target }),
  });
  if (!r.ok) throw new Error(`intent rejected: ${r.status}`);
}

export async function fetchState(base: string): Promise<StateSnapshot> {
  const r = await fetch(`${base}/state`);
  if (!r.ok) throw new Error(`state fetch failed: ${r.status}`);
  return r.json();
}

export async function fetchMap(base: string): Promise<WorldGeometry> {
  const r = await fetch(`${base}/map`);
  if (!r.ok) throw new Error(`map fetch failed: ${r.status}`);
  return r.json();
}
