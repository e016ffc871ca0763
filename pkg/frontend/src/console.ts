/** Console orchestration: banner, LED board, form, controls, live feed. */

import { ServiceClient } from "./api.js";
import { TestControls, type CardSink } from "./controls.js";
import { LiveFeed, type FeedOptions } from "./feed.js";
import { RegistrationForm } from "./form.js";
import { LedBoard } from "./ledboard.js";
import { PopupHost } from "./popup.js";
import type { StatusFrame } from "./types.js";

export interface ConsoleOptions {
  feed?: FeedOptions;
  cardSink?: CardSink;
}

export class OperatorConsole {
  readonly client: ServiceClient;
  readonly feed: LiveFeed;
  readonly board: LedBoard;
  readonly form: RegistrationForm;
  readonly controls: TestControls;
  readonly popups: PopupHost;

  private bannerEl: HTMLElement;
  private gateEl: HTMLElement;
  private pending: Promise<void> = Promise.resolve();

  constructor(root: HTMLElement, base: string, feedUrl: string, options: ConsoleOptions = {}) {
    this.client = new ServiceClient(base);
    this.popups = new PopupHost(root);

    const header = document.createElement("header");
    this.bannerEl = document.createElement("div");
    this.bannerEl.className = "banner";
    this.bannerEl.id = "banner";
    this.gateEl = document.createElement("div");
    this.gateEl.className = "gate-count";
    this.gateEl.id = "gate-count";
    header.append(this.bannerEl, this.gateEl);
    root.appendChild(header);

    const boardSection = document.createElement("section");
    boardSection.id = "board-section";
    root.appendChild(boardSection);
    this.board = new LedBoard(boardSection);

    const formSection = document.createElement("section");
    formSection.id = "form-section";
    root.appendChild(formSection);
    this.form = new RegistrationForm(formSection, this.client, this.popups);

    const controlsSection = document.createElement("section");
    controlsSection.id = "controls-section";
    root.appendChild(controlsSection);
    this.controls = new TestControls(
      controlsSection,
      this.client,
      this.popups,
      options.cardSink,
    );

    this.form.onRegistered = (session) => this.controls.attachSession(session);
    this.controls.onConsoleReset = () => this.form.clearAll();

    this.feed = new LiveFeed(feedUrl, options.feed);
    this.feed.onFrame = (frame) => this.queueFrame(frame);
    this.feed.onStale = (stale) => this.board.setStale(stale);
  }

  start(): void {
    this.feed.connect();
  }

  stop(): void {
    this.feed.close();
  }

  /** Frames apply strictly in order; verdict handling awaits pop-ups. */
  private queueFrame(frame: StatusFrame): void {
    this.pending = this.pending.then(() => this.applyFrame(frame));
  }

  async applyFrame(frame: StatusFrame): Promise<void> {
    this.bannerEl.textContent = frame.banner;
    this.gateEl.textContent = `gate count ${frame.gate_count}`;
    this.board.update(frame);
    await this.controls.observeStatus(frame.session_id, frame.session_status);
  }

  /** Settle all queued frame work (used by tests). */
  flush(): Promise<void> {
    return this.pending;
  }
}
