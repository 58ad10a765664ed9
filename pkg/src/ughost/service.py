"""Session-oriented HTTP API for playing the assignment protocol.

A session pairs an instance (state graph, constraints, admissible maps)
with a growing move prefix.  Seats are controlled by a human or by the
engine; engine replies are computed synchronously with the exact solver
(desk-scale instances solve in well under a second with a warmed memo
table).  Sessions persist in a single JSON file written atomically after
every mutation, so a restarted server resumes cleanly.

Solver-value fields (seat projections, what-if evaluations) leak the oracle
to whoever sees them, so they are only included when the client passes
``?reveal=true``.
"""

from __future__ import annotations

import json
import os
import secrets
import threading
from pathlib import Path
from typing import Any

from fastapi import FastAPI, HTTPException, Query, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from ughost import core
from ughost.districts import (
    DistrictLanguage,
    NoAdmissibleMap,
    ParseError,
    ValidationError,
    enumerate_maps,
    make_language,
    parse_instance,
    seats,
)

BUNDLED_INSTANCES = ("six_county", "decomino", "nh_counties")


class ApiError(HTTPException):
    def __init__(self, status: int, code: str, message: str, detail: Any = None):
        super().__init__(status_code=status,
                         detail={"code": code, "message": message, "detail": detail})


class CreateSession(BaseModel):
    instance: str | None = None
    instance_text: str | None = None
    first_party: str = Field(default="A", pattern="^[AB]$")
    controllers: dict[str, str] = Field(default={"first": "human", "second": "engine"})


class MoveBody(BaseModel):
    atom: int
    district: int


class SessionStore:
    """All sessions in one JSON file, rewritten atomically per mutation."""

    def __init__(self, path: Path):
        self.path = path
        self.sessions: dict[str, dict] = {}
        if path.exists():
            self.sessions = json.loads(path.read_text(encoding="utf-8"))

    def save(self) -> None:
        self.path.parent.mkdir(parents=True, exist_ok=True)
        tmp = self.path.with_suffix(".tmp")
        tmp.write_text(json.dumps(self.sessions, indent=1), encoding="utf-8")
        os.replace(tmp, self.path)


class EngineCache:
    """Per-session language and memo table, rebuilt lazily after restarts."""

    def __init__(self):
        self._cache: dict[str, tuple[DistrictLanguage, dict]] = {}

    def language(self, session_id: str, record: dict) -> tuple[DistrictLanguage, dict]:
        hit = self._cache.get(session_id)
        if hit is None:
            graph, constraints = parse_instance(record["instance_text"])
            maps = enumerate_maps(graph, constraints)
            lang = make_language(maps, graph.atoms, constraints.k,
                                 first_party=record["first_party"])
            hit = (lang, {})
            self._cache[session_id] = hit
        return hit


def _prefix(record: dict) -> tuple:
    return tuple((atom, district) for atom, district in record["prefix"])


def _controller_of_mover(record: dict, prefix: tuple) -> str:
    side = "first" if len(prefix) % 2 == 0 else "second"
    return record["controllers"][side]


def _party_of_mover(record: dict, prefix: tuple) -> str:
    first = record["first_party"]
    return first if len(prefix) % 2 == 0 else ("B" if first == "A" else "A")


def create_app(instances_dir: Path | None = None,
               data_dir: Path = Path(".ghost-sessions")) -> FastAPI:
    app = FastAPI(title="ughost play service")
    store = SessionStore(Path(data_dir) / "sessions.json")
    engines = EngineCache()
    locks: dict[str, threading.Lock] = {}
    locks_guard = threading.Lock()
    app.state.session_locks = locks

    def session_lock(session_id: str) -> threading.Lock:
        with locks_guard:
            return locks.setdefault(session_id, threading.Lock())

    def instance_text(name: str) -> str:
        if instances_dir is not None:
            candidate = Path(instances_dir) / f"{name}.state"
            if candidate.exists():
                return candidate.read_text(encoding="utf-8")
        if name in BUNDLED_INSTANCES:
            from importlib import resources

            return resources.files("ughost.data").joinpath(f"{name}.state").read_text("utf-8")
        raise ApiError(400, "unknown_instance", f"no instance named {name!r}")

    def get_record(session_id: str) -> dict:
        record = store.sessions.get(session_id)
        if record is None:
            raise ApiError(404, "unknown_session", f"no session {session_id!r}")
        return record

    def advance_engine(record: dict, session_id: str) -> list:
        """Apply engine moves until a human's turn or the end of the game."""
        lang, memo = engines.language(session_id, record)
        prefix = _prefix(record)
        applied = []
        while not lang.is_terminal(prefix) and _controller_of_mover(record, prefix) == "engine":
            move = core.best_move(prefix, lang, memo)
            prefix = prefix + (move,)
            applied.append(move)
        record["prefix"] = [list(move) for move in prefix]
        if lang.is_terminal(prefix):
            record["status"] = "finished"
        return applied

    def session_view(record: dict, session_id: str, reveal: bool) -> dict:
        lang, memo = engines.language(session_id, record)
        prefix = _prefix(record)
        n = lang.n
        board = {str(a): None for a in range(n)}
        for atom, district in prefix:
            board[str(atom)] = district
        finished = lang.is_terminal(prefix)
        view = {
            "id": session_id,
            "status": "finished" if finished else "in_progress",
            "first_party": record["first_party"],
            "controllers": record["controllers"],
            "prefix": [list(move) for move in prefix],
            "board": board,
            "atom_count": n,
            "district_count": lang.k,
            "atoms": [
                {"id": a.id, "name": a.name, "x": a.x, "y": a.y,
                 "votes_a": a.votes_a, "votes_b": a.votes_b}
                for a in lang.atoms
            ],
        }
        if finished:
            parts = lang.final_parts(prefix)
            count = seats(parts, lang.atoms)
            view["result"] = {
                "seats": {"A": count.seats_a, "B": count.seats_b, "ties": count.ties},
                "parts": [sorted(part) for part in parts],
            }
        else:
            view["mover_party"] = _party_of_mover(record, prefix)
            view["mover_controller"] = _controller_of_mover(record, prefix)
            view["legal_moves"] = [list(move) for move in lang.legal_moves(prefix)]
            if reveal:
                value = core.solve(prefix, lang, memo)
                view["projection"] = {
                    "u1": value.u1,
                    "u2": value.u2,
                    "principal_move": list(value.principal_move),
                }
        return view

    @app.exception_handler(ApiError)
    async def api_error_handler(request: Request, exc: ApiError):
        return JSONResponse(status_code=exc.status_code, content=exc.detail)

    @app.get("/instances")
    def list_instances():
        names = set(BUNDLED_INSTANCES)
        if instances_dir is not None and Path(instances_dir).is_dir():
            names |= {p.stem for p in Path(instances_dir).glob("*.state")}
        return {"instances": sorted(names)}

    @app.post("/sessions", status_code=201)
    def create_session(body: CreateSession, reveal: bool = Query(default=False)):
        if (body.instance is None) == (body.instance_text is None):
            raise ApiError(400, "bad_instance", "give exactly one of instance, instance_text")
        text = body.instance_text if body.instance_text is not None else instance_text(body.instance)
        for side in ("first", "second"):
            if body.controllers.get(side) not in ("human", "engine"):
                raise ApiError(400, "bad_controllers",
                               f"controllers.{side} must be 'human' or 'engine'")
        try:
            graph, constraints = parse_instance(text)
            enumerate_maps(graph, constraints)
        except (ParseError, ValidationError, NoAdmissibleMap) as exc:
            raise ApiError(400, "bad_instance", str(exc))
        session_id = secrets.token_hex(8)
        record = {
            "instance_text": text,
            "first_party": body.first_party,
            "controllers": {"first": body.controllers["first"],
                            "second": body.controllers["second"]},
            "prefix": [],
            "status": "in_progress",
        }
        store.sessions[session_id] = record
        advance_engine(record, session_id)
        store.save()
        return session_view(record, session_id, reveal)

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str, reveal: bool = Query(default=False)):
        return session_view(get_record(session_id), session_id, reveal)

    @app.post("/sessions/{session_id}/moves")
    def post_move(session_id: str, body: MoveBody, reveal: bool = Query(default=False)):
        record = get_record(session_id)
        lock = session_lock(session_id)
        if not lock.acquire(blocking=False):
            raise ApiError(409, "concurrent_mutation",
                           "another move is in flight for this session")
        try:
            lang, memo = engines.language(session_id, record)
            prefix = _prefix(record)
            if lang.is_terminal(prefix):
                raise ApiError(409, "finished", "session is already finished")
            if _controller_of_mover(record, prefix) != "human":
                raise ApiError(409, "not_your_turn", "the engine moves next")
            move = (body.atom, body.district)
            if not (0 <= body.atom < lang.n) or not (0 <= body.district < lang.k):
                raise ApiError(422, "illegal_move", "unknown atom or district",
                               {"atom": body.atom, "district": body.district})
            assigned = {a for a, _ in prefix}
            if body.atom in assigned:
                raise ApiError(422, "illegal_move", "atom taken",
                               {"atom": body.atom})
            if move not in lang.legal_moves(prefix):
                raise ApiError(422, "illegal_move", "no admissible completion",
                               {"atom": body.atom, "district": body.district})
            record["prefix"] = [list(m) for m in prefix + (move,)]
            if lang.is_terminal(_prefix(record)):
                record["status"] = "finished"
            engine_moves = advance_engine(record, session_id)
            store.save()
            view = session_view(record, session_id, reveal)
            view["applied"] = [list(move)] + [list(m) for m in engine_moves]
            return view
        finally:
            lock.release()

    @app.post("/sessions/{session_id}/whatif")
    def whatif(session_id: str, body: MoveBody, reveal: bool = Query(default=False)):
        record = get_record(session_id)
        if not reveal:
            raise ApiError(403, "reveal_required",
                           "what-if evaluation exposes solver values; pass reveal=true")
        lang, memo = engines.language(session_id, record)
        prefix = _prefix(record)
        if lang.is_terminal(prefix):
            raise ApiError(409, "finished", "session is already finished")
        move = (body.atom, body.district)
        if move not in lang.legal_moves(prefix):
            raise ApiError(422, "illegal_move", "illegal hypothetical",
                           {"atom": body.atom, "district": body.district})
        value = core.solve(prefix + (move,), lang, memo)
        return {
            "u1": value.u1,
            "u2": value.u2,
            "principal_move": list(value.principal_move) if value.principal_move else None,
        }

    return app
