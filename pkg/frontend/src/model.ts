// Session model for the console. All functions are pure: the DOM layer and
// the controller never mutate a Session in place, they replace it.
//
// The world field holds the objects array from the last successful GET /state
// verbatim. Nothing else in the client stores world facts, so the panel can
// only ever show what the service reported.

import type { ExecutionReport, SentenceIr, WorldObject } from "./api.js";

export type Outcome =
  | { kind: "answer"; answer: boolean | number }
  | { kind: "report"; report: ExecutionReport }
  | { kind: "invalid" }
  | { kind: "error"; message: string };

export interface Turn {
  sentence: string;
  // Pretty-printed wire IR, or null when the request failed before interpretation.
  irText: string | null;
  outcome: Outcome;
}

export interface Session {
  turns: Turn[];
  pending: boolean;
  world: WorldObject[] | null;
  stale: boolean;
}

export function newSession(): Session {
  return { turns: [], pending: false, world: null, stale: false };
}

// Canonical display form of an IR. The inspector shows exactly this string,
// so "displayed IR" and "what /interpret returned" differ only by whitespace
// that JSON.parse discards; prettyIr(parse(displayed)) is a fixpoint.
export function prettyIr(ir: SentenceIr): string {
  return JSON.stringify(ir, null, 2);
}

export function beginTurn(session: Session): Session {
  return { ...session, pending: true };
}

export function completeTurn(session: Session, turn: Turn): Session {
  return { ...session, turns: [...session.turns, turn], pending: false };
}

export function applyWorld(session: Session, objects: WorldObject[]): Session {
  return { ...session, world: objects, stale: false };
}

// Keep the last known world on a failed refresh; only the banner changes.
export function markStale(session: Session): Session {
  return { ...session, stale: true };
}

export interface LocationGroup {
  location: string;
  objects: WorldObject[];
}

// Locations sorted alphabetically, objects in service order within a group.
export function groupByLocation(objects: WorldObject[]): LocationGroup[] {
  const byLocation = new Map<string, WorldObject[]>();
  for (const obj of objects) {
    const group = byLocation.get(obj.at);
    if (group) {
      group.push(obj);
    } else {
      byLocation.set(obj.at, [obj]);
    }
  }
  return [...byLocation.keys()].sort().map((location) => ({
    location,
    objects: byLocation.get(location)!,
  }));
}

// Attribute flags that are set, e.g. ["cut", "baked"]. Order follows the
// service's attribute record.
export function activeFlags(obj: WorldObject): string[] {
  return Object.entries(obj.attributes)
    .filter(([, value]) => value)
    .map(([flag]) => flag);
}
