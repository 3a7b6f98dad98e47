/** Cockpit wiring: telemetry socket -> reducer -> canvases and panels.
 * All state comes from the gateway; nothing is simulated client-side. */

import {
  fetchMap,
  postCommand,
  postIntent,
  SeqCounter,
  type CommandKind,
  type IntentTarget,
} from "./api";
import { armAudio, beep } from "./audio";
import { TelemetryConnection, type ConnStatus } from "./connection";
import { drawEeg, drawMap } from "./render";
import { initialState, reduce, type CockpitState } from "./state";
import type { WorldGeometry } from "./types";

const base = window.location.origin.replace(/\/$/, "");
const wsUrl = base.replace(/^http/, "ws") + "/telemetry";

const mapCanvas = document.getElementById("map") as HTMLCanvasElement;
const eegCanvas = document.getElementById("eeg") as HTMLCanvasElement;
const statusEl = document.getElementById("status")!;
const decisionEl = document.getElementById("decision")!;
const cmdlogEl = document.getElementById("cmdlog")!;
const connBanner = document.getElementById("conn-banner")!;
const alarmBanner = document.getElementById("alarm-banner")!;

let state: CockpitState = initialState();
let world: WorldGeometry | null = null;
let seenAlarms = 0;
const seq = new SeqCounter();

function renderPanels(): void {
  const p = state.pose;
  statusEl.textContent = p
    ? `x=${p.x.toFixed(2)} y=${p.y.toFixed(2)} θ=${p.heading.toFixed(2)}  ` +
      `${state.motion}${state.forceLatched ? " [LATCHED]" : ""}`
    : "waiting for telemetry…";

  const d = state.lastDecision;
  decisionEl.textContent = d
    ? `t=${(d.ts_ms / 1000).toFixed(1)}s  class=${d.ssvep_class ?? "—"}\n` +
      `votes=[${d.votes.join(", ")}]  blink=${d.blink_gesture ? "YES" : "no"}`
    : "no decision yet";

  cmdlogEl.replaceChildren(
    ...state.commandLog
      .slice()
      .reverse()
      .map((c) => {
        const li = document.createElement("li");
        if (!c.accepted) li.className = "rejected";
        const src = document.createElement("span");
        src.className = c.source === "MANUAL" ? "src manual" : "src";
        src.textContent = ` [${c.source}]`;
        li.textContent = `${(c.ts_ms / 1000).toFixed(1)}s ${c.kind}` +
          (c.accepted ? "" : " (rejected)");
        li.appendChild(src);
        return li;
      }),
  );

  alarmBanner.classList.toggle("show", state.forceLatched);
  if (state.alarmCount > seenAlarms) {
    seenAlarms = state.alarmCount;
    beep();
  }
}

function renderAll(): void {
  drawMap(mapCanvas, world, state);
  drawEeg(eegCanvas, state);
  renderPanels();
}

const conn = new TelemetryConnection(wsUrl, {
  onMessage: (msg) => {
    state = reduce(state, msg);
  },
  onStatus: (status: ConnStatus) => {
    connBanner.classList.toggle("show", status !== "connected");
  },
});
conn.start();

requestAnimationFrame(function frame() {
  renderAll();
  requestAnimationFrame(frame);
});

fetchMap(base)
  .then((geo) => {
    world = geo;
  })
  .catch((err) => console.warn("map fetch failed:", err));

document.querySelectorAll<HTMLButtonElement>("[data-intent]").forEach((btn) => {
  btn.addEventListener("click", () => {
    armAudio();
    void postIntent(base, btn.dataset.intent as IntentTarget).catch((err) =>
      console.warn(err),
    );
  });
});

document.querySelectorAll<HTMLButtonElement>("[data-cmd]").forEach((btn) => {
  btn.addEventListener("click", () => {
    armAudio();
    void postCommand(base, btn.dataset.cmd as CommandKind, seq.next()).catch(
      (err) => console.warn(err),
    );
  });
});
