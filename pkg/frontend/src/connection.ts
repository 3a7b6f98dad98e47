/** Reconnecting telemetry socket with a staleness watchdog.
 *
 * Status is "connected" while frames flow, "stale" once nothing has arrived
 * for STALE_AFTER_MS (the UI shows the disconnected banner), and
 * "disconnected" while the socket is down and a backoff retry is pending.
 */

import { parseTelemetry, type TelemetryMsg } from "./types";

export type ConnStatus = "connected" | "stale" | "disconnected";

export const STALE_AFTER_MS = 1500; // banner well within the 2 s requirement
const BACKOFF_BASE_MS = 250;
const BACKOFF_MAX_MS = 5000;

export function backoffDelay(attempt: number): number {
  return Math.min(BACKOFF_BASE_MS * 2 ** Math.max(0, attempt), BACKOFF_MAX_MS);
}

interface Hooks {
  onMessage: (msg: TelemetryMsg) => void;
  onStatus: (status: ConnStatus) => void;
}

export class TelemetryConnection {
  private ws: WebSocket | null = null;
  private attempt = 0;
  private watchdog: ReturnType<typeof setInterval> | null = null;
  private lastFrameAt = 0;
  private status: ConnStatus = "disconnected";
  private closed = false;

  constructor(private url: string, private hooks: Hooks) {}

  start(): void {
    this.closed = false;
    this.connect();
    this.watchdog = setInterval(() => {
      if (
        this.status === "connected" &&
        Date.now() - this.lastFrameAt > STALE_AFTER_MS
      ) {
        this.setStatus("stale");
      }
    }, 250);
  }

  stop(): void {
    this.closed = true;
    if (this.watchdog !== null) clearInterval(this.watchdog);
    this.ws?.close();
  }

  private setStatus(status: ConnStatus): void {
    if (status !== this.status) {
      this.status = status;
      this.hooks.onStatus(status);
    }
  }

  private connect(): void {
    const ws = new WebSocket(this.url);
    this.ws = ws;
    ws.onopen = () => {
      this.attempt = 0;
      this.lastFrameAt = Date.now();
      this.setStatus("connected");
    };
    ws.onmessage = (ev: MessageEvent) => {
      this.lastFrameAt = Date.now();
      this.setStatus("connected");
      try {
        this.hooks.onMessage(parseTelemetry(String(ev.data)));
      } catch (err) {
        console.warn("dropped malformed telemetry frame:", err);
      }
    };
    ws.onclose = () => {
      if (this.closed) return;
      this.setStatus("disconnected");
      const delay = backoffDelay(this.attempt);
      this.attempt += 1;
      setTimeout(() => {
        if (!this.closed) this.connect();
      }, delay);
    };
    ws.onerror = () => ws.close();
  }
}
