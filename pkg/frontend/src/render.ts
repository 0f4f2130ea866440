// DOM builders. Pure functions from model values to elements; main.ts swaps
// them into the page. Uses the global document so tests can supply one.

import type { ExecutionReport, WorldObject } from "./api.js";
import { activeFlags, groupByLocation, type Outcome, type Turn } from "./model.js";

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

function badge(label: string, kind: "pass" | "fail" | "invalid" | "status"): HTMLElement {
  return el("span", `badge badge-${kind}`, label);
}

function renderReport(report: ExecutionReport): HTMLElement {
  const box = el("div", "report");
  const head = el("div", "report-status");
  head.append(badge(report.status, "status"));
  box.append(head);

  if (report.constraints.length > 0) {
    const list = el("ul", "constraints");
    for (const check of report.constraints) {
      const item = el("li");
      item.append(badge(check.holds ? "pass" : "fail", check.holds ? "pass" : "fail"));
      item.append(el("code", "constraint-text", check.text));
      list.append(item);
    }
    box.append(list);
  }

  if (report.selected.length > 0) {
    box.append(el("div", "selected", `selected: ${report.selected.join(", ")}`));
  }

  if (report.actions.length > 0) {
    const list = el("ul", "actions");
    for (const act of report.actions) {
      list.append(el("li", "action", `${act.action}(${act.args.join(", ")}): ${act.outcome}`));
    }
    box.append(list);
  }

  for (const reason of report.reasons) {
    box.append(el("div", "reason", reason));
  }
  return box;
}

function renderOutcome(outcome: Outcome): HTMLElement {
  switch (outcome.kind) {
    case "answer":
      return el("div", "answer", `answer: ${outcome.answer}`);
    case "report":
      return renderReport(outcome.report);
    case "invalid": {
      const box = el("div", "invalid-notice");
      box.append(badge("invalid", "invalid"));
      box.append(el("span", undefined, " not a recognized query or command"));
      return box;
    }
    case "error":
      return el("div", "turn-error", `error: ${outcome.message}`);
  }
}

export function renderTurn(turn: Turn): HTMLElement {
  const card = el("article", "turn");
  card.append(el("div", "sentence", turn.sentence));
  if (turn.irText !== null) {
    const pre = el("pre", "ir", turn.irText);
    card.append(pre);
  }
  card.append(renderOutcome(turn.outcome));
  return card;
}

// The panel is a straight projection of the last GET /state payload: one row
// per object, grouped under its location, nothing invented client-side.
export function renderStatePanel(world: WorldObject[] | null, stale: boolean): HTMLElement {
  const panel = el("section", "state-panel");
  if (stale) {
    panel.append(el("div", "stale-banner", "state refresh failed; showing last known state"));
  }
  if (world === null) {
    panel.append(el("div", "state-empty", "no state loaded yet"));
    return panel;
  }
  for (const group of groupByLocation(world)) {
    const section = el("div", "location-group");
    section.append(el("h3", "location", group.location));
    const list = el("ul", "location-objects");
    for (const obj of group.objects) {
      const flags = activeFlags(obj);
      const suffix = flags.length > 0 ? ` [${flags.join(", ")}]` : "";
      const item = el("li", "world-object", `${obj.name} (${obj.type})${suffix}`);
      item.dataset.name = obj.name;
      list.append(item);
    }
    section.append(list);
    panel.append(section);
  }
  return panel;
}
