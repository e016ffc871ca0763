import type { StatusFrame } from "../../src/types.js";

export function frame(overrides: Partial<StatusFrame> = {}): StatusFrame {
  return {
    t: 0,
    blocked: [],
    knocked: [],
    aligned: true,
    misaligned: [],
    message: "",
    alignment_banner: "SYSTEM ACTIVE – FILL IN CANDIDATE DETAILS",
    banner: "SYSTEM ACTIVE – FILL IN CANDIDATE DETAILS",
    gate_count: 0,
    session_id: "s0001",
    session_status: "active",
    ...overrides,
  };
}

/** Click the popup button with the given label, if the popup is open. */
export function clickPopup(label: string): void {
  const popup = document.getElementById("popup");
  if (!popup) throw new Error("popup host missing");
  const button = [...popup.querySelectorAll("button")].find(
    (b) => b.dataset.choice === label,
  );
  if (!button) throw new Error(`no popup button ${label}`);
  button.click();
}

export function popupLines(): string[] {
  const popup = document.getElementById("popup");
  if (!popup) return [];
  return [...popup.querySelectorAll(".popup-lines p")].map((p) => p.textContent ?? "");
}

export const settle = () => new Promise((resolve) => setTimeout(resolve, 0));
