// End-to-end: spawn the real quantkitchen service, drive the same controller
// and render code the browser uses, and check what the console would show.

import { spawn, type ChildProcessByStdio } from "node:child_process";
import type { Readable } from "node:stream";
import { afterAll, beforeAll, describe, expect, it } from "vitest";
import { Window } from "happy-dom";

import { makeClient, type WorldObject } from "../src/api.js";
import { refreshState, runSentence } from "../src/controller.js";
import { applyWorld, newSession, prettyIr, type Session } from "../src/model.js";
import { renderStatePanel, renderTurn } from "../src/render.js";

const PORT = 8200 + (process.pid % 700);
const BASE = `http://127.0.0.1:${PORT}`;

let server: ChildProcessByStdio<null, Readable, Readable>;
let serverLog = "";
const client = makeClient(BASE);

// render.ts resolves the global document; give the node process a real DOM.
const dom = new Window();
globalThis.document = dom.document as unknown as Document;

async function waitReady(timeoutMs: number): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  let lastErr: unknown;
  while (Date.now() < deadline) {
    if (server.exitCode !== null) {
      throw new Error(`service exited with ${server.exitCode}:\n${serverLog}`);
    }
    try {
      const res = await fetch(`${BASE}/state`);
      if (res.ok) return;
    } catch (err) {
      lastErr = err;
    }
    await new Promise((resolve) => setTimeout(resolve, 250));
  }
  throw new Error(`service not reachable: ${String(lastErr)}\n${serverLog}`);
}

async function freshState(): Promise<WorldObject[]> {
  const res = await fetch(`${BASE}/state`);
  expect(res.status).toBe(200);
  return ((await res.json()) as { objects: WorldObject[] }).objects;
}

beforeAll(async () => {
  server = spawn("quantkitchen", ["serve", "--port", String(PORT)], {
    stdio: ["ignore", "pipe", "pipe"],
  });
  server.stdout.on("data", (chunk: Buffer) => (serverLog += chunk.toString()));
  server.stderr.on("data", (chunk: Buffer) => (serverLog += chunk.toString()));
  await waitReady(45_000);
}, 60_000);

afterAll(() => {
  server.kill("SIGTERM");
});

describe("console round trip against the live service", () => {
  it(
    "fetching all green peppers shows the IR, one action per pepper, and a CounterTop panel equal to /state",
    async () => {
      const before = await freshState();
      const peppers = before.filter((o) => o.type === "greenPepper").map((o) => o.name);
      expect(peppers.length).toBeGreaterThan(0);

      let session: Session = applyWorld(newSession(), before);
      session = await runSentence(client, session, "Fetch all green peppers");
      const turn = session.turns[0]!;

      // IR inspector content: byte-identical to a fresh /interpret response.
      expect(turn.irText).not.toBeNull();
      const raw = await fetch(`${BASE}/interpret`, {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify({ text: "Fetch all green peppers" }),
      }).then((res) => res.text());
      expect(JSON.stringify(JSON.parse(turn.irText!))).toBe(raw);
      expect(prettyIr(JSON.parse(raw))).toBe(turn.irText);

      // One fetch action per pepper, all ok.
      expect(turn.outcome.kind).toBe("report");
      if (turn.outcome.kind !== "report") return;
      const report = turn.outcome.report;
      expect(report.status).toBe("executed");
      const fetched = report.actions.filter((a) => a.action === "fetch").map((a) => a.args[1]);
      expect(fetched.sort()).toEqual([...peppers].sort());
      expect(report.actions.every((a) => a.outcome === "ok")).toBe(true);

      // The refreshed panel model equals GET /state, and every pepper moved.
      const after = await freshState();
      expect(session.world).toEqual(after);
      for (const obj of after) {
        if (obj.type === "greenPepper") expect(obj.at).toBe("CounterTop");
      }

      // Rendered panel: peppers listed under the CounterTop heading, and the
      // panel shows exactly the objects the service reported.
      const panel = renderStatePanel(session.world, session.stale);
      const groups = [...panel.querySelectorAll(".location-group")];
      const counterTop = groups.find((g) => g.querySelector("h3")?.textContent === "CounterTop")!;
      const onCounter = [...counterTop.querySelectorAll(".world-object")].map(
        (li) => (li as HTMLElement).dataset.name,
      );
      for (const pepper of peppers) expect(onCounter).toContain(pepper);
      const shown = [...panel.querySelectorAll(".world-object")].map(
        (li) => (li as HTMLElement).dataset.name,
      );
      expect(shown.sort()).toEqual(after.map((o) => o.name).sort());

      // Rendered card: the IR text and the per-pepper action lines.
      const card = renderTurn(turn);
      expect(card.querySelector("pre.ir")?.textContent).toBe(turn.irText);
      const actionLines = [...card.querySelectorAll(".action")].map((li) => li.textContent ?? "");
      for (const pepper of peppers) {
        expect(actionLines.some((line) => line.includes(pepper))).toBe(true);
      }
    },
    30_000,
  );

  it(
    "a counted cut command renders both constraints and per-onion actions",
    async () => {
      let session = await refreshState(client, newSession());
      session = await runSentence(client, session, "Cut 5 onions using a knife");
      const turn = session.turns[0]!;

      expect(turn.outcome.kind).toBe("report");
      if (turn.outcome.kind !== "report") return;
      const report = turn.outcome.report;
      expect(report.status).toBe("executed");
      expect(report.constraints).toHaveLength(2);
      expect(report.constraints.every((c) => c.holds)).toBe(true);
      expect(report.selected).toHaveLength(5);
      expect(report.actions.filter((a) => a.action === "cut")).toHaveLength(5);

      const card = renderTurn(turn);
      const badges = [...card.querySelectorAll(".constraints .badge")].map((b) => b.className);
      expect(badges).toEqual(["badge badge-pass", "badge badge-pass"]);

      // The refreshed world marks exactly the selected onions as cut.
      const cutNames = (session.world ?? [])
        .filter((o) => o.attributes["cut"])
        .map((o) => o.name);
      for (const name of report.selected) expect(cutNames).toContain(name);
    },
    30_000,
  );

  it(
    "queries answer inline and nonsense gets the invalid badge",
    async () => {
      let session = await runSentence(client, newSession(), "How many tomatoes are there?");
      expect(session.turns[0]!.outcome).toEqual({ kind: "answer", answer: 6 });

      session = await runSentence(client, session, "I like swimming");
      expect(session.turns[1]!.outcome).toEqual({ kind: "invalid" });
      const card = renderTurn(session.turns[1]!);
      expect(card.querySelector(".badge-invalid")).not.toBeNull();
      expect(session.turns).toHaveLength(2);
    },
    30_000,
  );

  it(
    "a dead service raises the stale banner and keeps the last known state",
    async () => {
      const seeded = await refreshState(client, newSession());
      expect(seeded.world).not.toBeNull();

      server.kill("SIGTERM");
      await new Promise((resolve) => server.once("exit", resolve));

      const session = await refreshState(client, seeded);
      expect(session.stale).toBe(true);
      expect(session.world).toEqual(seeded.world);

      const panel = renderStatePanel(session.world, session.stale);
      expect(panel.querySelector(".stale-banner")).not.toBeNull();
      expect(panel.querySelectorAll(".world-object").length).toBe(session.world!.length);
    },
    30_000,
  );
});
