// Browser entry point: input form, chat pane, state panel. All logic lives
// in controller/model/render; this file only owns DOM identity and timing.

import { makeClient } from "./api.js";
import { applyWorld, markStale, newSession, type Session } from "./model.js";
import { runSentence } from "./controller.js";
import { renderStatePanel, renderTurn } from "./render.js";

const POLL_MS = 5000;

function apiBase(): string {
  // Same origin by default; ?api=http://host:port when the page is served
  // from somewhere other than the quantkitchen service.
  return new URLSearchParams(window.location.search).get("api") ?? "";
}

function init(): void {
  const client = makeClient(apiBase());
  const turnsPane = document.getElementById("turns") as HTMLElement;
  const statePane = document.getElementById("state") as HTMLElement;
  const form = document.getElementById("sentence-form") as HTMLFormElement;
  const input = document.getElementById("sentence-input") as HTMLInputElement;
  const send = document.getElementById("send-button") as HTMLButtonElement;

  let session: Session = newSession();

  function paint(): void {
    turnsPane.replaceChildren(...session.turns.map(renderTurn));
    turnsPane.scrollTop = turnsPane.scrollHeight;
    statePane.replaceChildren(renderStatePanel(session.world, session.stale));
    send.disabled = session.pending;
    input.disabled = session.pending;
  }

  form.addEventListener("submit", (event) => {
    event.preventDefault();
    const text = input.value.trim();
    // One command in flight at a time; the disabled button enforces it.
    if (text === "" || session.pending) return;
    input.value = "";
    session = { ...session, pending: true };
    paint();
    void runSentence(client, session, text).then((next) => {
      session = next;
      paint();
    });
  });

  // Reads `session` only after the fetch resolves, so a turn appended while
  // the request was in flight is never overwritten.
  async function poll(): Promise<void> {
    try {
      const objects = await client.state();
      session = applyWorld(session, objects);
    } catch {
      session = markStale(session);
    }
    paint();
  }

  void poll();
  window.setInterval(() => void poll(), POLL_MS);
}

document.addEventListener("DOMContentLoaded", init);
