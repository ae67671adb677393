/**
 * Wire protocol types for the session service.
 *
 * One JSON object per WebSocket text frame. The server sends a full
 * state message after every mutation, so a client can always render
 * from the latest state alone.
 */

export type Role = "namer" | "claimer";

export type Phase = "awaiting-name" | "awaiting-claim" | "finished";

export interface RoundEntry {
  d: number;
  claimed: number[];
}

export interface StateMessage {
  type: "state";
  session: string;
  unclaimed: number[];
  history: RoundEntry[];
  phase: Phase;
  pending_d: number | null;
}

export interface NamedMessage {
  type: "named";
  d: number;
}

export interface ClaimedMessage {
  type: "claimed";
  points: number[];
}

export interface EndMessage {
  type: "end";
  rounds: number;
}

export interface ErrorMessage {
  type: "error";
  code: string;
  detail: string;
}

export type ServerMessage =
  | StateMessage
  | NamedMessage
  | ClaimedMessage
  | EndMessage
  | ErrorMessage;

export interface CreateMessage {
  type: "create";
  n: number;
  role: Role;
  engine?: string;
  seed?: number;
}

export interface NameMessage {
  type: "name";
  d: number;
}

export interface ClaimMessage {
  type: "claim";
  points: number[];
}

export interface ResumeMessage {
  type: "resume";
  session: string;
}

export type ClientMessage =
  | CreateMessage
  | NameMessage
  | ClaimMessage
  | ResumeMessage;

const SERVER_TYPES = new Set(["state", "named", "claimed", "end", "error"]);

/** Decode one server frame; null for anything that is not a known message. */
export function parseServerMessage(raw: string): ServerMessage | null {
  let value: unknown;
  try {
    value = JSON.parse(raw);
  } catch {
    return null;
  }
  if (typeof value !== "object" || value === null) return null;
  const type = (value as { type?: unknown }).type;
  if (typeof type !== "string" || !SERVER_TYPES.has(type)) return null;
  return value as ServerMessage;
}
