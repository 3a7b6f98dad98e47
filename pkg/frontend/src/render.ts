/** Canvas rendering: world map with trail and sensor cones, EEG strip chart. */

import type { CockpitState } from "./state";
import type { WorldGeometry } from "./types";

const SENSOR_MOUNTS = [0, Math.PI / 3, -Math.PI / 3]; // front, left, right
const SENSOR_CONE = (30 * Math.PI) / 180;
const SAFETY_M = 0.5;

export function drawMap(
  canvas: HTMLCanvasElement,
  world: WorldGeometry | null,
  state: CockpitState,
): void {
  const ctx = canvas.getContext("2d");
  if (!ctx) return;
  ctx.fillStyle = "#11151c";
  ctx.fillRect(0, 0, canvas.width, canvas.height);
  if (!world) return;

  const [x0, y0, x1, y1] = world.bounds;
  const pad = 12;
  const sx = (canvas.width - 2 * pad) / (x1 - x0);
  const sy = (canvas.height - 2 * pad) / (y1 - y0);
  const s = Math.min(sx, sy);
  // world y grows up; canvas y grows down
  const px = (wx: number) => pad + (wx - x0) * s;
  const py = (wy: number) => canvas.height - pad - (wy - y0) * s;

  ctx.strokeStyle = "#46515f";
  ctx.lineWidth = 2;
  ctx.strokeRect(px(x0), py(y1), (x1 - x0) * s, (y1 - y0) * s);

  ctx.fillStyle = "#333c49";
  for (const poly of world.obstacles) {
    ctx.beginPath();
    poly.forEach(([wx, wy], i) =>
      i === 0 ? ctx.moveTo(px(wx), py(wy)) : ctx.lineTo(px(wx), py(wy)),
    );
    ctx.closePath();
    ctx.fill();
  }

  if (state.trail.length > 1) {
    ctx.strokeStyle = "#3a7bd5";
    ctx.lineWidth = 1.5;
    ctx.beginPath();
    state.trail.forEach(([wx, wy], i) =>
      i === 0 ? ctx.moveTo(px(wx), py(wy)) : ctx.lineTo(px(wx), py(wy)),
    );
    ctx.stroke();
  }

  const pose = state.pose;
  if (!pose) return;

  if (state.sensors) {
    const vals = [state.sensors.front, state.sensors.left, state.sensors.right];
    SENSOR_MOUNTS.forEach((mount, i) => {
      const r = vals[i];
      const a = pose.heading + mount;
      ctx.fillStyle = r < SAFETY_M ? "rgba(220,60,60,0.35)" : "rgba(90,200,120,0.18)";
      ctx.beginPath();
      ctx.moveTo(px(pose.x), py(pose.y));
      // canvas angles mirror because of the y flip
      ctx.arc(px(pose.x), py(pose.y), r * s, -(a - SENSOR_CONE / 2), -(a + SENSOR_CONE / 2), true);
      ctx.closePath();
      ctx.fill();
    });
  }

  ctx.fillStyle = state.forceLatched ? "#e04343" : "#e8b931";
  ctx.beginPath();
  ctx.arc(px(pose.x), py(pose.y), 6, 0, 2 * Math.PI);
  ctx.fill();
  ctx.strokeStyle = "#f5f5f5";
  ctx.lineWidth = 2;
  ctx.beginPath();
  ctx.moveTo(px(pose.x), py(pose.y));
  ctx.lineTo(
    px(pose.x + 0.45 * Math.cos(pose.heading)),
    py(pose.y + 0.45 * Math.sin(pose.heading)),
  );
  ctx.stroke();
}

const CHANNEL_COLORS = ["#7ec8e3", "#8fd18f", "#e3c27e", "#d98fd1", "#e38f8f"];

export function drawEeg(canvas: HTMLCanvasElement, state: CockpitState): void {
  const ctx = canvas.getContext("2d");
  if (!ctx) return;
  ctx.fillStyle = "#11151c";
  ctx.fillRect(0, 0, canvas.width, canvas.height);
  const n = state.eegChannels.length;
  if (n === 0) return;
  const laneH = canvas.height / n;
  state.eeg.forEach((samples, ch) => {
    if (samples.length < 2) return;
    const mid = laneH * ch + laneH / 2;
    let peak = 1e-9;
    for (const v of samples) peak = Math.max(peak, Math.abs(v));
    const gain = (laneH * 0.42) / peak;
    ctx.strokeStyle = CHANNEL_COLORS[ch % CHANNEL_COLORS.length];
    ctx.lineWidth = 1;
    ctx.beginPath();
    samples.forEach((v, i) => {
      const x = (i / (samples.length - 1)) * canvas.width;
      const y = mid - v * gain;
      i === 0 ? ctx.moveTo(x, y) : ctx.lineTo(x, y);
    });
    ctx.stroke();
    ctx.fillStyle = "#9aa7b5";
    ctx.font = "11px monospace";
    ctx.fillText(state.eegChannels[ch], 4, laneH * ch + 12);
  });
}
