/** Browser glue: wire the client, store, and renderer to the DOM. */

import { ChartClient, parseEvent } from "./client.js";
import { parseDraft } from "./grammar.js";
import { renderSvg } from "./render.js";
import { INITIAL, reduce, view, type Action, type AppState } from "./store.js";

export function mount(root: HTMLElement, base = ""): void {
  const client = new ChartClient(base);
  let state: AppState = INITIAL;

  const chartHost = document.createElement("div");
  const input = document.createElement("input");
  input.placeholder = "d3: uL -> Tr[t1 aS2^3]  (enter to assert, ctrl-z to undo)";
  input.style.width = "40em";
  const report = document.createElement("pre");
  root.append(input, report, chartHost);

  const dispatch = (action: Action): void => {
    state = reduce(state, action);
    chartHost.innerHTML = renderSvg(view(state));
    for (const el of chartHost.querySelectorAll("circle, rect, path, g")) {
      el.addEventListener("click", () => {
        const title = el.querySelector("title")?.textContent ?? "";
        const m = /^\((-?\d+),(-?\d+)\)/.exec(title);
        if (!m) return;
        void client.classDetail(Number(m[1]), Number(m[2])).then((detail) => {
          report.textContent = JSON.stringify(detail, null, 1);
        });
      });
    }
  };

  const refresh = (): void => {
    void client
      .chart()
      .then((snapshot) => dispatch({ type: "snapshot", snapshot }))
      .catch((err: unknown) => dispatch({ type: "schema-error", message: String(err) }));
  };

  input.addEventListener("keydown", (ev) => {
    if (ev.key === "z" && ev.ctrlKey) {
      void client.undo().then(refresh);
      return;
    }
    if (ev.key !== "Enter") return;
    const parsed = parseDraft(input.value);
    if (!parsed.ok) {
      dispatch({ type: "draft-error", message: parsed.error });
      return;
    }
    dispatch({ type: "draft-ok" });
    void client.assert(parsed.draft).then((outcome) => {
      if (outcome.kind === "contradiction") {
        report.textContent = outcome.body.contradictions.join("\n");
      } else {
        report.textContent = JSON.stringify(outcome.body, null, 1);
        input.value = "";
      }
      refresh();
    });
  });

  const ws = new WebSocket(
    (base.replace(/^http/, "ws") || `ws://${location.host}`) + "/events",
  );
  ws.addEventListener("message", (ev) => {
    const event = parseEvent(String(ev.data));
    if (event.event === "recompute") refresh();
  });

  refresh();
}
