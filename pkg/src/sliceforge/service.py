"""Local chart service: one session, serial mutations, streamed events.

The session state is the list of asserted rules.  Every mutation recomputes
the full run from E2, so batch and interactive use agree bit for bit, and
undo restores the previous chart byte for byte.
"""

import asyncio
import json
from typing import List, Optional, Tuple

from fastapi import FastAPI, Request, Response, WebSocket, WebSocketDisconnect

from .e2page import DEFAULT_WINDOW, Window, build_e2
from .ssengine import DifferentialRule, PageState, rules_to_script

SCHEMA = "sliceforge/1"


class Session:
    def __init__(self, window: Window = DEFAULT_WINDOW):
        self.window = window
        self.rules: List[DifferentialRule] = []
        self.history: List[Tuple[List[DifferentialRule], str]] = []
        self.state: Optional[PageState] = None
        self.chart: str = ""
        self.page_cache = {}
        self.recompute()

    def recompute(self) -> None:
        table = build_e2(self.window, localized=True)
        state = PageState(table, self.rules)
        state.run()
        self.state = state
        self.chart = state.chart_json()

    def _key(self, rule: DifferentialRule):
        return (rule.page, rule.source, rule.target, rule.scope)

    def has_rule(self, rule: DifferentialRule) -> bool:
        return any(self._key(r) == self._key(rule) for r in self.rules)

    def apply(self, rule: DifferentialRule):
        """Returns (status, payload).  Status 'applied', 'duplicate', or
        'contradiction'; contradictions leave the session untouched."""
        if self.has_rule(rule):
            return "duplicate", {"chart_unchanged": True}
        before_rules = list(self.rules)
        before_chart = self.chart
        before_log = {
            (d.page, d.source_name, d.target_name) for d in self.state.log
        }
        self.rules.append(rule)
        self.recompute()
        if self.state.contradictions:
            report = list(self.state.contradictions)
            self.rules = before_rules
            self.recompute()
            return "contradiction", {"contradictions": report}
        self.history.append((before_rules, before_chart))
        self.page_cache.clear()
        delta = [
            {
                "page": d.page,
                "from": list(d.source_spot),
                "to": list(d.target_spot),
                "source": d.source_name,
                "target": d.target_name,
            }
            for d in self.state.log
            if (d.page, d.source_name, d.target_name) not in before_log
        ]
        return "applied", {"delta": delta}

    def undo(self):
        if not self.history:
            return False
        self.rules, chart = self.history.pop()
        self.recompute()
        self.chart = chart
        self.page_cache.clear()
        return True

    def page_chart(self, r: int) -> str:
        key = (tuple(self._key(x) for x in self.rules), r)
        if key not in self.page_cache:
            table = build_e2(self.window, localized=True)
            state = PageState(table, self.rules)
            state.run(max_page=r)
            self.page_cache[key] = state.chart_json()
        return self.page_cache[key]


def create_app(window: Window = DEFAULT_WINDOW) -> FastAPI:
    app = FastAPI(title="sliceforge")
    session = Session(window)
    lock = asyncio.Lock()
    listeners: List[asyncio.Queue] = []

    app.state.session = session

    async def broadcast(event: dict) -> None:
        for q in list(listeners):
            await q.put(event)

    @app.get("/page/{r}")
    async def get_page(r: int) -> Response:
        if r < 2 or r % 2 == 0:
            return Response(
                json.dumps({"schema": SCHEMA, "error": "odd page >= 3 required"}),
                status_code=400,
                media_type="application/json",
            )
        async with lock:
            chart = session.page_chart(r)
        return Response(chart, media_type="application/json")

    @app.get("/chart")
    async def get_chart() -> Response:
        return Response(session.chart, media_type="application/json")

    @app.post("/assert")
    async def post_assert(request: Request) -> Response:
        body = await request.json()
        page = body.get("page")
        if not isinstance(page, int) or page < 3 or page % 2 == 0:
            return Response(
                json.dumps({"schema": SCHEMA, "error": "odd page >= 3 required"}),
                status_code=400,
                media_type="application/json",
            )
        rule = DifferentialRule(
            page,
            body.get("source", ""),
            body.get("target", ""),
            body.get("ref", "interactive"),
            body.get("scope", "C4"),
        )
        async with lock:
            status, payload = session.apply(rule)
        if status == "contradiction":
            return Response(
                json.dumps({"schema": SCHEMA, "status": status, **payload}),
                status_code=409,
                media_type="application/json",
            )
        if status == "applied":
            await broadcast(
                {"schema": SCHEMA, "event": "recompute", "page": session.state.page}
            )
        return Response(
            json.dumps({"schema": SCHEMA, "status": status, **payload}),
            media_type="application/json",
        )

    @app.post("/undo")
    async def post_undo() -> Response:
        async with lock:
            ok = session.undo()
        if ok:
            await broadcast(
                {"schema": SCHEMA, "event": "recompute", "page": session.state.page}
            )
        return Response(
            json.dumps({"schema": SCHEMA, "status": "undone" if ok else "empty"}),
            media_type="application/json",
        )

    @app.get("/class/{stem}/{filtration}")
    async def get_class(stem: int, filtration: int) -> Response:
        spot = (stem, filtration)
        state = session.state
        mackey = state.mackey(spot)
        detail = {
            "schema": SCHEMA,
            "stem": stem,
            "filtration": filtration,
            "mackey": mackey.to_json(),
            "names": state.class_names(spot),
            "c2_names": state.class_names(spot, 2),
        }
        return Response(json.dumps(detail), media_type="application/json")

    @app.get("/rules")
    async def get_rules() -> Response:
        return Response(
            rules_to_script(session.rules), media_type="application/json"
        )

    @app.websocket("/events")
    async def events(ws: WebSocket) -> None:
        await ws.accept()
        q: asyncio.Queue = asyncio.Queue()
        listeners.append(q)
        try:
            while True:
                event = await q.get()
                await ws.send_json(event)
        except WebSocketDisconnect:
            pass
        finally:
            listeners.remove(q)

    return app
