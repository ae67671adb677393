/**
 * WebSocket transport with automatic reconnect and session resume.
 *
 * The game client tracks the session id from state frames, so after a
 * dropped connection it can reattach with a resume message and the
 * server replies with the current state. A socket factory is injected
 * to keep the class testable outside a browser.
 */

import type { ClientMessage, ServerMessage } from "./protocol.js";
import { parseServerMessage } from "./protocol.js";
import type { ConnectionStatus } from "./model.js";

export interface SocketLike {
  send(data: string): void;
  close(): void;
  onopen: (() => void) | null;
  onmessage: ((event: { data: string }) => void) | null;
  onclose: (() => void) | null;
}

export type SocketFactory = (url: string) => SocketLike;

export interface ClientCallbacks {
  onMessage(msg: ServerMessage): void;
  onStatus(status: ConnectionStatus): void;
}

const RETRY_BASE_MS = 500;
const RETRY_CAP_MS = 5000;

export class GameClient {
  sessionId: string | null = null;

  private socket: SocketLike | null = null;
  private retries = 0;
  private closed = false;

  constructor(
    private readonly url: string,
    private readonly callbacks: ClientCallbacks,
    private readonly factory: SocketFactory = (u) =>
      new WebSocket(u) as unknown as SocketLike,
  ) {}

  connect(): void {
    this.callbacks.onStatus(this.retries === 0 ? "connecting" : "reconnecting");
    const socket = this.factory(this.url);
    this.socket = socket;
    socket.onopen = () => {
      this.retries = 0;
      this.callbacks.onStatus("open");
      if (this.sessionId !== null) {
        this.send({ type: "resume", session: this.sessionId });
      }
    };
    socket.onmessage = (event) => {
      const msg = parseServerMessage(event.data);
      if (msg === null) return;
      if (msg.type === "state") this.sessionId = msg.session;
      this.callbacks.onMessage(msg);
    };
    socket.onclose = () => {
      if (this.closed) return;
      this.socket = null;
      this.callbacks.onStatus("reconnecting");
      const delay = Math.min(RETRY_CAP_MS, RETRY_BASE_MS * 2 ** this.retries);
      this.retries += 1;
      setTimeout(() => {
        if (!this.closed) this.connect();
      }, delay);
    };
  }

  send(msg: ClientMessage): void {
    if (this.socket === null) return;
    this.socket.send(JSON.stringify(msg));
  }

  close(): void {
    this.closed = true;
    this.socket?.close();
  }
}
