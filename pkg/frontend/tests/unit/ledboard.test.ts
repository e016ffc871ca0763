import { beforeEach, describe, expect, it } from "vitest";

import { LedBoard } from "../../src/ledboard.js";
import { frame } from "./helpers.js";

describe("LedBoard", () => {
  let board: LedBoard;

  beforeEach(() => {
    document.body.innerHTML = '<div id="root"></div>';
    board = new LedBoard(document.getElementById("root")!);
  });

  it("renders eight LEDs, all on initially", () => {
    const leds = document.querySelectorAll(".led");
    expect(leds.length).toBe(8);
    expect(document.querySelectorAll(".led.on").length).toBe(8);
  });

  it("turns the misaligned sensor's LED off and names it", () => {
    board.update(frame({ misaligned: ["S5"], message: "Sensor pair 5 is OFF" }));
    expect(document.getElementById("led-S5")!.classList.contains("off")).toBe(true);
    expect(document.querySelectorAll(".led.on").length).toBe(7);
    expect(document.getElementById("sensor-message")!.textContent).toBe(
      "Sensor pair 5 is OFF",
    );
  });

  it("restores the LED when realigned", () => {
    board.update(frame({ misaligned: ["S5"], message: "Sensor pair 5 is OFF" }));
    board.update(frame());
    expect(document.getElementById("led-S5")!.classList.contains("on")).toBe(true);
    expect(document.getElementById("sensor-message")!.textContent).toBe("");
  });

  it("shows and hides the stale badge", () => {
    const badge = document.getElementById("stale-badge")!;
    expect(badge.classList.contains("hidden")).toBe(true);
    board.setStale(true);
    expect(badge.classList.contains("hidden")).toBe(false);
    expect(badge.textContent).toContain("RECONNECTING");
    board.setStale(false);
    expect(badge.classList.contains("hidden")).toBe(true);
  });
});
