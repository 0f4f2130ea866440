// Turn orchestration: one sentence in, one rendered turn out, state panel
// refreshed after any executed command. Shared by main.ts and the tests so
// the browser wiring and the test harness drive identical logic.

import { ApiError, type Client } from "./api.js";
import {
  applyWorld,
  beginTurn,
  completeTurn,
  markStale,
  prettyIr,
  type Session,
  type Turn,
} from "./model.js";

export async function refreshState(client: Client, session: Session): Promise<Session> {
  try {
    return applyWorld(session, await client.state());
  } catch {
    return markStale(session);
  }
}

function describeFailure(err: unknown): string {
  if (err instanceof ApiError) {
    const body = err.body;
    if (body && typeof body === "object" && "error" in body) {
      return String((body as { error: unknown }).error);
    }
    return err.message;
  }
  return err instanceof Error ? err.message : String(err);
}

// The sentence is interpreted first so the card can show the IR even when
// evaluation fails; /query and /command re-derive the same IR server-side.
export async function runSentence(client: Client, session: Session, text: string): Promise<Session> {
  let next = beginTurn(session);
  let turn: Turn;
  let irText: string | null = null;
  try {
    const ir = await client.interpret(text);
    irText = prettyIr(ir);
    if (ir.type === "query") {
      const { answer } = await client.query(text);
      turn = { sentence: text, irText, outcome: { kind: "answer", answer } };
    } else if (ir.type === "command") {
      const { report } = await client.command(text);
      turn = { sentence: text, irText, outcome: { kind: "report", report } };
      if (report.status === "executed") {
        next = await refreshState(client, next);
      }
    } else {
      turn = { sentence: text, irText, outcome: { kind: "invalid" } };
    }
  } catch (err) {
    // Shown inline; the session and its history survive any failure. The IR
    // stays on the card when interpretation succeeded and evaluation did not.
    turn = { sentence: text, irText, outcome: { kind: "error", message: describeFailure(err) } };
  }
  return completeTurn(next, turn);
}
