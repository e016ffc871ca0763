/** Sensor LED board arranged like the track plan, not a flat list.
 *
 * ON means the pair is aligned; OFF means misaligned. Positions mirror
 * the default H layout (18 m x 12 m plan view) in percent coordinates.
 */

import type { StatusFrame } from "./types.js";

const MONITORING = ["S1", "S2", "S3", "S4", "S5", "S6", "S7", "S8"] as const;

// [x, y] in meters on the default plan; converted to percent below.
const LED_POSITIONS: Record<string, [number, number]> = {
  S1: [0.0, 6.0],
  S2: [3.0, 2.25],
  S3: [3.0, 9.75],
  S4: [9.0, 4.5],
  S5: [9.0, 7.5],
  S6: [15.0, 2.25],
  S7: [15.0, 9.75],
  S8: [18.0, 6.0],
};

const PLAN_W = 18.0;
const PLAN_H = 12.0;

export class LedBoard {
  private leds = new Map<string, HTMLElement>();
  private messageEl: HTMLElement;
  private staleEl: HTMLElement;

  constructor(root: HTMLElement) {
    root.classList.add("led-board");
    const plan = document.createElement("div");
    plan.className = "track-plan";
    for (const cls of ["leg-left", "crossbar", "leg-right"]) {
      const part = document.createElement("div");
      part.className = `track-part ${cls}`;
      plan.appendChild(part);
    }
    for (const sid of MONITORING) {
      const [x, y] = LED_POSITIONS[sid];
      const led = document.createElement("div");
      led.className = "led on";
      led.id = `led-${sid}`;
      led.textContent = sid.slice(1);
      led.title = `sensor pair ${sid.slice(1)}`;
      led.style.left = `${(x / PLAN_W) * 100}%`;
      led.style.bottom = `${(y / PLAN_H) * 100}%`;
      plan.appendChild(led);
      this.leds.set(sid, led);
    }
    root.appendChild(plan);

    this.messageEl = document.createElement("div");
    this.messageEl.className = "sensor-message";
    this.messageEl.id = "sensor-message";
    root.appendChild(this.messageEl);

    this.staleEl = document.createElement("div");
    this.staleEl.className = "stale-badge hidden";
    this.staleEl.id = "stale-badge";
    this.staleEl.textContent = "FEED LOST – RECONNECTING";
    root.appendChild(this.staleEl);
  }

  update(frame: StatusFrame): void {
    for (const [sid, led] of this.leds) {
      const off = frame.misaligned.includes(sid);
      led.classList.toggle("on", !off);
      led.classList.toggle("off", off);
    }
    this.messageEl.textContent = frame.message;
  }

  setStale(stale: boolean): void {
    this.staleEl.classList.toggle("hidden", !stale);
  }
}
