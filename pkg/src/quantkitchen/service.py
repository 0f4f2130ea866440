"""Pipeline wiring plus the REPL and HTTP front ends.

One Pipeline owns the lexicon, knowledge document, and simulator; the REPL
and every HTTP endpoint call the same three methods (interpret, answer_query,
execute) so there is no divergent logic between surfaces. Queries rebuild the
interpretation from freshly exported sensors on every call, so answers always
reflect the last executed command.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from typing import Any, Optional, Union

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .errors import QuantKitchenError
from .executor import run_command
from .kitchen import Simulator, World, load_scenario, to_sensors
from .logic import ACTIONS, CountQuery, SentenceIR, predicates
from .nlu import Lexicon, load_lexicon, translate
from .reasoner import build_interpretation, eval_query
from .textio import KnowledgeDoc, parse_knowledge, serialize_ir

Answer = Union[bool, int]


def _package_text(name: str) -> str:
    return (resources.files("quantkitchen.data") / name).read_text()


def load_pipeline(
    world_path: Optional[str] = None,
    kb_path: Optional[str] = None,
    lexicon_path: Optional[str] = None,
) -> "Pipeline":
    """Assemble a Pipeline from files, falling back to the packaged defaults."""
    kb_text = open(kb_path).read() if kb_path else _package_text("background_knowledge.in")
    kb = parse_knowledge(kb_text)
    known = set().union(*(predicates(r) for r in kb.all_rules())) - set(ACTIONS)
    lex_text = open(lexicon_path).read() if lexicon_path else _package_text("lexicon.txt")
    lex = load_lexicon(lex_text, known)
    world_text = open(world_path).read() if world_path else _package_text("kitchen.scenario")
    world = load_scenario(world_text, kb)
    return Pipeline(kb, lex, Simulator(world))


@dataclass
class Pipeline:
    kb: KnowledgeDoc
    lexicon: Lexicon
    sim: Simulator
    history: list[dict[str, Any]] = field(default_factory=list)

    def interpret(self, text: str) -> SentenceIR:
        return translate(text, self.lexicon)

    def answer_query(self, ir: SentenceIR) -> Answer:
        """Evaluate a query IR against the current world.

        A count question answers with the integer; anything else answers with
        the conjunction of its expressions (two for `between`).
        """
        if ir.kind != "query":
            raise ValueError("not a query")
        interp = build_interpretation(to_sensors(self.sim.world), self.kb)
        results = [eval_query(interp, e) for e in ir.expressions]
        if len(results) == 1 and isinstance(ir.expressions[0], CountQuery):
            return results[0]
        return all(bool(r) for r in results)

    def execute(self, ir: SentenceIR) -> dict[str, Any]:
        if ir.kind != "command":
            raise ValueError("not a command")
        return run_command(ir, self.sim, self.kb)

    def state(self) -> list[dict[str, Any]]:
        _, body = self.sim.handle_http("GET", "/abe-sim-command/state")
        return body["objects"]

    def handle_sentence(self, text: str) -> dict[str, Any]:
        """Full pipeline for one sentence; shared by REPL and HTTP."""
        ir = self.interpret(text)
        entry: dict[str, Any] = {"text": text, "ir": json.loads(serialize_ir(ir))}
        if ir.kind == "query":
            try:
                entry["answer"] = self.answer_query(ir)
            except QuantKitchenError as e:
                entry["error"] = str(e)
        elif ir.kind == "command":
            entry["report"] = self.execute(ir)
        self.history.append(entry)
        return entry


# ---------------------------------------------------------------------------
# REPL


_REPL_HELP = """Type an English sentence (query or command). Meta-commands:
  /state          show every object with its location and attributes
  /ir <sentence>  translate only, print the logical form
  /quit           exit"""


def repl(pipeline: Pipeline) -> None:
    print("quantkitchen ready." + "\n" + _REPL_HELP)
    while True:
        try:
            line = input("> ").strip()
        except (EOFError, KeyboardInterrupt):
            print()
            return
        if not line:
            continue
        if line == "/quit":
            return
        if line == "/state":
            for record in pipeline.state():
                flags = [k for k, v in record["attributes"].items() if v]
                suffix = f" [{', '.join(flags)}]" if flags else ""
                print(f"  {record['name']} ({record['type']}) at {record['at']}{suffix}")
            continue
        if line.startswith("/ir "):
            print(serialize_ir(pipeline.interpret(line[4:].strip())))
            continue
        if line.startswith("/"):
            print(_REPL_HELP)
            continue
        try:
            entry = pipeline.handle_sentence(line)
        except QuantKitchenError as e:  # never kill the session
            print(f"error: {e}")
            continue
        print(serialize_ir(pipeline.interpret(line)))
        if "answer" in entry:
            print(f"answer: {entry['answer']}")
        elif "report" in entry:
            report = entry["report"]
            print(f"status: {report['status']}")
            for c in report["constraints"]:
                print(f"  constraint {c['text']}: {c['holds']}")
            for a in report["actions"]:
                print(f"  {a['action']}({', '.join(a['args'])}): {a['outcome']}")
            for r in report["reasons"]:
                print(f"  reason: {r}")
        else:
            print("cannot interpret that sentence")


# ---------------------------------------------------------------------------
# HTTP service


def create_app(pipeline: Pipeline) -> FastAPI:
    app = FastAPI(title="quantkitchen", version="0.1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    app.state.pipeline = pipeline

    async def _text_of(request: Request) -> Union[str, JSONResponse]:
        try:
            body = await request.json()
        except Exception:
            return JSONResponse({"error": "body must be JSON"}, status_code=400)
        if not isinstance(body, dict) or not isinstance(body.get("text"), str):
            return JSONResponse({"error": 'body must be {"text": "<sentence>"}'}, status_code=400)
        return body["text"]

    @app.post("/interpret")
    async def interpret(request: Request):
        text = await _text_of(request)
        if isinstance(text, JSONResponse):
            return text
        ir = pipeline.interpret(text)
        return JSONResponse(json.loads(serialize_ir(ir)))

    @app.post("/query")
    async def query(request: Request):
        text = await _text_of(request)
        if isinstance(text, JSONResponse):
            return text
        ir = pipeline.interpret(text)
        if ir.kind != "query":
            return JSONResponse(json.loads(serialize_ir(ir)), status_code=422)
        entry = pipeline.handle_sentence(text)
        if "error" in entry:
            return JSONResponse({"error": entry["error"]}, status_code=422)
        return JSONResponse({"answer": entry["answer"], "ir": entry["ir"]})

    @app.post("/command")
    async def command(request: Request):
        text = await _text_of(request)
        if isinstance(text, JSONResponse):
            return text
        ir = pipeline.interpret(text)
        if ir.kind != "command":
            return JSONResponse(json.loads(serialize_ir(ir)), status_code=422)
        entry = pipeline.handle_sentence(text)
        return JSONResponse({"report": entry["report"], "ir": entry["ir"]})

    @app.get("/state")
    async def state():
        return JSONResponse({"objects": pipeline.state()})

    @app.get("/history")
    async def history():
        return JSONResponse({"history": pipeline.history})

    @app.post("/abe-sim-command")
    async def sim_command(request: Request):
        try:
            body = await request.json()
        except Exception:
            return JSONResponse({"status": "error", "reason": "body must be JSON"}, status_code=400)
        code, resp = pipeline.sim.handle_http("POST", "/abe-sim-command", body)
        return JSONResponse(resp, status_code=code)

    @app.get("/abe-sim-command/state")
    async def sim_state():
        code, resp = pipeline.sim.handle_http("GET", "/abe-sim-command/state")
        return JSONResponse(resp, status_code=code)

    return app


def serve(pipeline: Pipeline, host: str = "127.0.0.1", port: int = 8008) -> None:
    import uvicorn

    uvicorn.run(create_app(pipeline), host=host, port=port, log_level="warning")
