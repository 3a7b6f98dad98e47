/** Audible alarm cue via WebAudio; created lazily on first user gesture. */

let ctx: AudioContext | null = null;

export function armAudio(): void {
  if (ctx === null && typeof AudioContext !== "undefined") {
    ctx = new AudioContext();
  }
  void ctx?.resume();
}

export function beep(): void {
  if (!ctx || ctx.state !== "running") return;
  const osc = ctx.createOscillator();
  const gain = ctx.createGain();
  osc.frequency.value = 880;
  osc.type = "square";
  gain.gain.setValueAtTime(0.12, ctx.currentTime);
  gain.gain.exponentialRampToValueAtTime(1e-4, ctx.currentTime + 0.4);
  osc.connect(gain).connect(ctx.destination);
  osc.start();
  osc.stop(ctx.currentTime + 0.4);
}
