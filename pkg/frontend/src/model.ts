/**
 * Pure client-side model.
 *
 * The board never has local game logic: everything rendered is a
 * function of the last state message from the server. The reducer
 * keeps that message plus a few transient notices (last error, end
 * summary) that decorate the view without feeding back into it.
 */

import type {
  ErrorMessage,
  ServerMessage,
  StateMessage,
} from "./protocol.js";

export const PALETTE_SIZE = 12;

export type ConnectionStatus = "connecting" | "open" | "reconnecting";

export interface GameModel {
  /** Last state frame; the sole source of board truth. */
  state: StateMessage | null;
  /** Last error frame, cleared by the next successful mutation. */
  lastError: ErrorMessage | null;
  /** Round count from the end frame, when the game has finished. */
  endedRounds: number | null;
  connection: ConnectionStatus;
}

export const initialModel: GameModel = {
  state: null,
  lastError: null,
  endedRounds: null,
  connection: "connecting",
};

/** Fold one server frame into the model. Pure. */
export function applyServer(model: GameModel, msg: ServerMessage): GameModel {
  switch (msg.type) {
    case "state":
      return { ...model, state: msg, lastError: null };
    case "error":
      return { ...model, lastError: msg };
    case "end":
      return { ...model, endedRounds: msg.rounds };
    case "named":
    case "claimed":
      // Announcements only; the state frame that follows carries the
      // same information authoritatively.
      return model;
  }
}

export function setConnection(
  model: GameModel,
  connection: ConnectionStatus,
): GameModel {
  return { ...model, connection };
}

// ===========================================================================
// Board derivation
// ===========================================================================

export interface CellView {
  x: number;
  /** 0-based round the cell was claimed in, or null while unclaimed. */
  round: number | null;
  /** Palette slot for claimed cells, null otherwise. */
  colour: number | null;
}

/**
 * Board size implied by a state frame.
 *
 * Claimed rounds and the unclaimed set partition [n], so n is simply
 * the largest point mentioned anywhere.
 */
export function boardSize(state: StateMessage): number {
  let n = 0;
  for (const x of state.unclaimed) n = Math.max(n, x);
  for (const round of state.history) {
    for (const x of round.claimed) n = Math.max(n, x);
  }
  return n;
}

/** Cells 1..n with their claiming round, straight from one state frame. */
export function boardCells(state: StateMessage): CellView[] {
  const n = boardSize(state);
  const cells: CellView[] = [];
  for (let x = 1; x <= n; x++) cells.push({ x, round: null, colour: null });
  state.history.forEach((round, i) => {
    for (const x of round.claimed) {
      const cell = cells[x - 1];
      if (cell) {
        cell.round = i;
        cell.colour = i % PALETTE_SIZE;
      }
    }
  });
  return cells;
}

// ===========================================================================
// Claim selection (advisory input affordance only)
// ===========================================================================

/**
 * The already-selected partner that forbids adding x under distance d,
 * or null when x is addable. The server remains authoritative; this
 * only powers the client-side hint.
 */
export function blockedBy(
  selection: ReadonlySet<number>,
  d: number,
  x: number,
): number | null {
  if (selection.has(x - d)) return x - d;
  if (selection.has(x + d)) return x + d;
  return null;
}

export interface ToggleResult {
  selection: Set<number>;
  /** Set when the toggle was refused: the conflicting selected point. */
  blocked: number | null;
}

/** Toggle x in a claim selection, refusing d-conflicts with a hint. */
export function toggleSelection(
  selection: ReadonlySet<number>,
  d: number,
  x: number,
): ToggleResult {
  const next = new Set(selection);
  if (next.has(x)) {
    next.delete(x);
    return { selection: next, blocked: null };
  }
  const partner = blockedBy(selection, d, x);
  if (partner !== null) {
    return { selection: next, blocked: partner };
  }
  next.add(x);
  return { selection: next, blocked: null };
}
