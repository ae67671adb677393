/**
 * DOM layer: renders the model, forwards inputs to the game client.
 *
 * Rendering is a plain function of the model; every update rebuilds the
 * dynamic regions from the last state frame. Selection state for claim
 * input lives here because it is an input affordance, not game state,
 * and it must survive server rejections unchanged.
 */

import { GameClient } from "./client.js";
import type { GameModel } from "./model.js";
import {
  blockedBy,
  boardCells,
  boardSize,
  toggleSelection,
} from "./model.js";
import type { Role } from "./protocol.js";

export const MAX_BOARD = 512;

const ENGINE_SPECS = [
  "auto",
  "optimal",
  "composed",
  "greedy",
  "lazy",
  "blocks",
  "random",
  "repeat:d=1",
  "doubling",
];

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export class App {
  private model: GameModel;
  private role: Role = "namer";
  private selection = new Set<number>();
  private hint = "";
  private lastHistoryLen = -1;

  private readonly banner: HTMLElement;
  private readonly setup: HTMLElement;
  private readonly status: HTMLElement;
  private readonly board: HTMLElement;
  private readonly controls: HTMLElement;
  private readonly notice: HTMLElement;

  constructor(
    root: HTMLElement,
    initial: GameModel,
    private readonly client: GameClient,
  ) {
    this.model = initial;
    this.banner = el("div", "banner hidden");
    this.setup = el("div", "setup");
    this.status = el("div", "status");
    this.board = el("div", "board");
    this.controls = el("div", "controls");
    this.notice = el("div", "notice");
    root.replaceChildren(
      this.banner,
      this.setup,
      this.status,
      this.board,
      this.controls,
      this.notice,
    );
    this.renderSetup();
    this.update(initial);
  }

  /** Re-render everything from a fresh model. */
  update(model: GameModel): void {
    const previous = this.model;
    this.model = model;
    const historyLen = model.state?.history.length ?? 0;
    if (historyLen !== this.lastHistoryLen) {
      // A round was accepted (or a new game arrived): old selection is
      // stale. Rejections keep history length, so they keep selection.
      this.selection = new Set();
      this.hint = "";
      this.lastHistoryLen = historyLen;
    }
    if (model.state !== previous.state) this.hint = "";
    this.renderBanner();
    this.renderStatus();
    this.renderBoard();
    this.renderControls();
    this.renderNotice();
  }

  // =======================================================================
  // Setup form
  // =======================================================================

  private renderSetup(): void {
    const nInput = el("input") as HTMLInputElement;
    nInput.type = "number";
    nInput.min = "1";
    nInput.max = String(MAX_BOARD);
    nInput.value = "8";

    const roleSelect = el("select") as HTMLSelectElement;
    for (const role of ["namer", "claimer"]) {
      const option = el("option", undefined, role) as HTMLOptionElement;
      option.value = role;
      roleSelect.append(option);
    }

    const engineSelect = el("select") as HTMLSelectElement;
    for (const spec of ENGINE_SPECS) {
      const option = el("option", undefined, spec) as HTMLOptionElement;
      option.value = spec;
      engineSelect.append(option);
    }

    const button = el("button", undefined, "new game") as HTMLButtonElement;
    button.onclick = () => {
      const n = Math.floor(Number(nInput.value));
      if (!Number.isFinite(n) || n < 1 || n > MAX_BOARD) {
        this.hint = `n must be between 1 and ${MAX_BOARD}`;
        this.renderNotice();
        return;
      }
      this.role = roleSelect.value as Role;
      this.selection = new Set();
      this.client.send({
        type: "create",
        n,
        role: this.role,
        engine: engineSelect.value,
      });
    };

    this.setup.replaceChildren(
      el("label", undefined, "n "),
      nInput,
      el("label", undefined, " play as "),
      roleSelect,
      el("label", undefined, " engine "),
      engineSelect,
      button,
    );
  }

  // =======================================================================
  // Render regions
  // =======================================================================

  private renderBanner(): void {
    if (this.model.connection === "open") {
      this.banner.className = "banner hidden";
      this.banner.textContent = "";
    } else {
      this.banner.className = "banner";
      this.banner.textContent =
        this.model.connection === "connecting"
          ? "connecting..."
          : "connection lost, reconnecting...";
    }
  }

  private renderStatus(): void {
    const state = this.model.state;
    if (state === null) {
      this.status.textContent = "no game yet";
      return;
    }
    const parts = [`session ${state.session}`, `round ${state.history.length + 1}`];
    if (state.phase === "awaiting-name") {
      parts.push(this.role === "namer" ? "name a distance" : "engine to name");
    } else if (state.phase === "awaiting-claim") {
      parts.push(`d = ${state.pending_d}`);
      parts.push(this.role === "claimer" ? "select a claim" : "engine to claim");
    } else {
      parts.push("finished");
    }
    if (this.model.endedRounds !== null && state.phase === "finished") {
      parts.push(`${this.model.endedRounds} rounds`);
    }
    this.status.textContent = parts.join(" | ");
  }

  private renderBoard(): void {
    const state = this.model.state;
    if (state === null) {
      this.board.replaceChildren();
      return;
    }
    const selecting =
      state.phase === "awaiting-claim" &&
      this.role === "claimer" &&
      state.pending_d !== null;
    const d = state.pending_d ?? 0;
    const cells = boardCells(state);
    const rendered = cells.map((cell) => {
      const node = el("div", "cell", String(cell.x));
      if (cell.round !== null) {
        node.classList.add(`c${cell.colour}`);
        node.title = `round ${cell.round + 1}`;
      } else {
        node.classList.add("unclaimed");
        if (selecting) {
          node.classList.add("pickable");
          if (this.selection.has(cell.x)) node.classList.add("selected");
          const partner = blockedBy(this.selection, d, cell.x);
          if (partner !== null && !this.selection.has(cell.x)) {
            node.classList.add("blocked");
            node.title = `conflicts with ${partner} at distance ${d}`;
          }
          node.onclick = () => this.onCellClick(d, cell.x);
        }
      }
      return node;
    });
    this.board.replaceChildren(...rendered);
    this.board.style.setProperty(
      "--cols",
      String(Math.min(32, Math.max(8, Math.ceil(Math.sqrt(boardSize(state)))))),
    );
  }

  private renderControls(): void {
    const state = this.model.state;
    this.controls.replaceChildren();
    if (state === null || state.phase === "finished") return;

    if (state.phase === "awaiting-name" && this.role === "namer") {
      const dInput = el("input") as HTMLInputElement;
      dInput.type = "number";
      dInput.min = "1";
      dInput.value = "1";
      const button = el("button", undefined, "name") as HTMLButtonElement;
      button.onclick = () => {
        const d = Math.floor(Number(dInput.value));
        this.client.send({ type: "name", d });
      };
      this.controls.append(el("label", undefined, "distance "), dInput, button);
    }

    if (state.phase === "awaiting-claim" && this.role === "claimer") {
      const button = el(
        "button",
        undefined,
        `claim ${this.selection.size} point${this.selection.size === 1 ? "" : "s"}`,
      ) as HTMLButtonElement;
      button.onclick = () => this.submitClaim();
      this.controls.append(button);
    }
  }

  private renderNotice(): void {
    const error = this.model.lastError;
    if (error !== null) {
      this.notice.className = "notice error";
      this.notice.textContent = `${error.code}: ${error.detail}`;
    } else if (this.hint) {
      this.notice.className = "notice hint";
      this.notice.textContent = this.hint;
    } else {
      this.notice.className = "notice";
      this.notice.textContent = "";
    }
  }

  // =======================================================================
  // Inputs
  // =======================================================================

  private onCellClick(d: number, x: number): void {
    const result = toggleSelection(this.selection, d, x);
    this.selection = result.selection;
    this.hint =
      result.blocked === null
        ? ""
        : `${x} conflicts with selected ${result.blocked} at distance ${d}`;
    this.renderBoard();
    this.renderControls();
    this.renderNotice();
  }

  private submitClaim(): void {
    if (this.selection.size === 0) {
      const ok = window.confirm("Claim nothing this round (pass)?");
      if (!ok) return;
    }
    const points = [...this.selection].sort((a, b) => a - b);
    this.client.send({ type: "claim", points });
  }
}
