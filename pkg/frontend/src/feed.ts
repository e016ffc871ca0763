/** WebSocket push channel with staleness tracking and reconnect. */

import type { StatusFrame } from "./types.js";

export interface SocketLike {
  onopen: ((ev?: unknown) => void) | null;
  onmessage: ((ev: { data: unknown }) => void) | null;
  onclose: ((ev?: unknown) => void) | null;
  onerror: ((ev?: unknown) => void) | null;
  close(): void;
}

export type SocketFactory = (url: string) => SocketLike;

export interface FeedOptions {
  /** Milliseconds without a frame before the feed is flagged stale. */
  staleAfterMs?: number;
  reconnectDelayMs?: number;
  socketFactory?: SocketFactory;
}

export class LiveFeed {
  onFrame: ((frame: StatusFrame) => void) | null = null;
  onStale: ((stale: boolean) => void) | null = null;

  private socket: SocketLike | null = null;
  private staleTimer: ReturnType<typeof setTimeout> | null = null;
  private reconnectTimer: ReturnType<typeof setTimeout> | null = null;
  private stale = true;
  private closed = false;
  private readonly staleAfterMs: number;
  private readonly reconnectDelayMs: number;
  private readonly factory: SocketFactory;

  constructor(
    readonly url: string,
    options: FeedOptions = {},
  ) {
    this.staleAfterMs = options.staleAfterMs ?? 3000;
    this.reconnectDelayMs = options.reconnectDelayMs ?? 1000;
    this.factory =
      options.socketFactory ?? ((u) => new WebSocket(u) as unknown as SocketLike);
  }

  connect(): void {
    this.closed = false;
    const socket = this.factory(this.url);
    this.socket = socket;
    socket.onmessage = (ev) => {
      this.markFresh();
      this.onFrame?.(JSON.parse(String(ev.data)) as StatusFrame);
    };
    socket.onclose = () => this.handleLoss();
    socket.onerror = () => this.handleLoss();
  }

  close(): void {
    this.closed = true;
    if (this.staleTimer) clearTimeout(this.staleTimer);
    if (this.reconnectTimer) clearTimeout(this.reconnectTimer);
    this.socket?.close();
    this.socket = null;
  }

  get isStale(): boolean {
    return this.stale;
  }

  private markFresh(): void {
    if (this.stale) {
      this.stale = false;
      this.onStale?.(false);
    }
    if (this.staleTimer) clearTimeout(this.staleTimer);
    this.staleTimer = setTimeout(() => this.markStale(), this.staleAfterMs);
  }

  private markStale(): void {
    if (!this.stale) {
      this.stale = true;
      this.onStale?.(true);
    }
  }

  private handleLoss(): void {
    this.markStale();
    if (this.closed) return;
    if (this.reconnectTimer) clearTimeout(this.reconnectTimer);
    this.reconnectTimer = setTimeout(() => {
      if (!this.closed) this.connect();
    }, this.reconnectDelayMs);
  }
}
