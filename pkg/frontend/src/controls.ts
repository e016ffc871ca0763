/** Test controls: start/stop the drive, show the verdict, offer the card. */

import { ServiceClient } from "./api.js";
import { PopupHost } from "./popup.js";
import type { SessionPayload } from "./types.js";

export type CardSink = (text: string, filename: string) => void;

function browserDownload(text: string, filename: string): void {
  const blob = new Blob([text], { type: "text/plain" });
  const anchor = document.createElement("a");
  anchor.href = URL.createObjectURL(blob);
  anchor.download = filename;
  anchor.click();
  URL.revokeObjectURL(anchor.href);
}

export class TestControls {
  onConsoleReset: (() => void) | null = null;

  private startButton: HTMLButtonElement;
  private stopButton: HTMLButtonElement;
  private verdictEl: HTMLElement;
  private reasonEl: HTMLElement;
  private sessionId: string | null = null;
  private promptedFor = new Set<string>();

  constructor(
    root: HTMLElement,
    private client: ServiceClient,
    private popups: PopupHost,
    private cardSink: CardSink = browserDownload,
  ) {
    root.classList.add("test-controls");
    const row = document.createElement("div");
    row.className = "button-row";
    this.startButton = document.createElement("button");
    this.startButton.id = "btn-test-start";
    this.startButton.textContent = "START TEST";
    this.startButton.disabled = true;
    this.startButton.addEventListener("click", () => void this.startTest());
    this.stopButton = document.createElement("button");
    this.stopButton.id = "btn-test-stop";
    this.stopButton.textContent = "STOP";
    this.stopButton.disabled = true;
    this.stopButton.addEventListener("click", () => void this.stopTest());
    row.append(this.startButton, this.stopButton);
    root.appendChild(row);

    this.verdictEl = document.createElement("div");
    this.verdictEl.className = "verdict";
    this.verdictEl.id = "verdict";
    root.appendChild(this.verdictEl);

    this.reasonEl = document.createElement("div");
    this.reasonEl.className = "verdict-reason";
    this.reasonEl.id = "verdict-reason";
    root.appendChild(this.reasonEl);
  }

  attachSession(session: SessionPayload): void {
    this.sessionId = session.id;
    this.syncButtons(session.status);
  }

  /** Track the live session status from feed frames. */
  async observeStatus(sessionId: string | null, status: string | null): Promise<void> {
    if (sessionId) this.sessionId = sessionId;
    this.syncButtons(status);
    if (
      sessionId &&
      (status === "passed" || status === "failed") &&
      !this.promptedFor.has(sessionId)
    ) {
      this.promptedFor.add(sessionId);
      await this.showVerdict(sessionId);
    }
  }

  private syncButtons(status: string | null): void {
    this.startButton.disabled = status !== "registered";
    this.stopButton.disabled = status !== "running";
  }

  private async startTest(): Promise<void> {
    if (this.sessionId) await this.client.startTest(this.sessionId);
  }

  private async stopTest(): Promise<void> {
    if (this.sessionId) await this.client.stopTest(this.sessionId);
  }

  private async showVerdict(sessionId: string): Promise<void> {
    const session = await this.client.getSession(sessionId);
    this.verdictEl.textContent = session.verdict_banner ?? "";
    this.reasonEl.textContent = session.reason_banner ?? "";
    const choice = await this.popups.show({
      title: "Test report generation",
      lines: ["Generate the test result card?"],
      buttons: ["YES", "NO"],
    });
    if (choice === "YES") {
      const card = await this.client.getCard(sessionId);
      this.cardSink(card, `${sessionId}-result-card.txt`);
    }
    await this.client.resetConsole();
    this.verdictEl.textContent = "";
    this.reasonEl.textContent = "";
    this.sessionId = null;
    this.syncButtons(null);
    this.onConsoleReset?.();
  }
}
