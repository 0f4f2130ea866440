// Typed client for the quantkitchen HTTP service. Every function talks to
// exactly one endpoint; nothing here caches or interprets world state.

export interface SentenceIr {
  type: "query" | "command" | "invalid";
  expressions?: string[] | string[][];
  commands?: string[];
}

export interface ConstraintCheck {
  text: string;
  holds: boolean;
}

export interface ActionRecord {
  action: string;
  args: string[];
  outcome: string;
}

export interface ExecutionReport {
  status: "executed" | "rejected" | "error";
  constraints: ConstraintCheck[];
  selected: string[];
  actions: ActionRecord[];
  reasons: string[];
}

export interface WorldObject {
  name: string;
  type: string;
  at: string;
  attributes: Record<string, boolean>;
}

export interface QueryResult {
  answer: boolean | number;
  ir: SentenceIr;
}

export interface CommandResult {
  report: ExecutionReport;
  ir: SentenceIr;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly body: unknown,
  ) {
    super(`service responded ${status}`);
    this.name = "ApiError";
  }
}

export interface Client {
  interpret(text: string): Promise<SentenceIr>;
  query(text: string): Promise<QueryResult>;
  command(text: string): Promise<CommandResult>;
  state(): Promise<WorldObject[]>;
}

async function postText<T>(url: string, text: string): Promise<T> {
  const res = await fetch(url, {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify({ text }),
  });
  const body = await res.json();
  if (!res.ok) {
    throw new ApiError(res.status, body);
  }
  return body as T;
}

export function makeClient(baseUrl: string): Client {
  const base = baseUrl.replace(/\/$/, "");
  return {
    interpret(text: string): Promise<SentenceIr> {
      return postText<SentenceIr>(`${base}/interpret`, text);
    },
    query(text: string): Promise<QueryResult> {
      return postText<QueryResult>(`${base}/query`, text);
    },
    command(text: string): Promise<CommandResult> {
      return postText<CommandResult>(`${base}/command`, text);
    },
    async state(): Promise<WorldObject[]> {
      const res = await fetch(`${base}/state`);
      const body = await res.json();
      if (!res.ok) {
        throw new ApiError(res.status, body);
      }
      return (body as { objects: WorldObject[] }).objects;
    },
  };
}
