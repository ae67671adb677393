/** Entry point: wire the socket client, reducer, and DOM together. */

import { GameClient } from "./client.js";
import { applyServer, initialModel, setConnection } from "./model.js";
import type { GameModel } from "./model.js";
import { App } from "./ui.js";

function socketUrl(): string {
  const scheme = location.protocol === "https:" ? "wss" : "ws";
  const host = location.host || "127.0.0.1:8000";
  return `${scheme}://${host}/ws`;
}

function start(): void {
  const root = document.getElementById("app");
  if (root === null) throw new Error("missing #app container");

  let model: GameModel = initialModel;
  let app: App | null = null;

  const client = new GameClient(socketUrl(), {
    onMessage(msg) {
      model = applyServer(model, msg);
      app?.update(model);
    },
    onStatus(status) {
      model = setConnection(model, status);
      app?.update(model);
    },
  });

  app = new App(root, model, client);
  client.connect();
}

start();
