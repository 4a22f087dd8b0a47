/** Session board: the annotation queue, one open session, and the plane.
 *
 * The server is authoritative for session state. Every action posts a
 * feedback event and the board re-renders from the response verbatim —
 * nothing about a session is ever computed or mutated locally, so the
 * rendered state always equals a fresh GET of the session.
 */

import { ApiClient, ApiError } from "./api.js";
import { fmtCoord, groupColor } from "./format.js";
import { ScatterPlane } from "./scatter.js";
import { buildSessionView } from "./view.js";
import {
  TERMINAL_STATES,
  type CorpusSummaryJson,
  type DocumentJson,
  type FeedbackEvent,
  type ScatterPointJson,
  type SessionJson,
  type SessionView,
} from "./types.js";

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className = "",
  text = "",
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) {
    node.className = className;
  }
  if (text) {
    node.textContent = text;
  }
  return node;
}

interface ShownError {
  status: number;
  code: string;
  message: string;
}

export class SessionBoard {
  readonly root: HTMLElement;
  readonly api: ApiClient;
  readonly plane: ScatterPlane;

  summary: CorpusSummaryJson | null = null;
  queue: DocumentJson[] = [];
  points: ScatterPointJson[] = [];
  /** Last session payload received from the server, verbatim. */
  session: SessionJson | null = null;
  selected: number | null = null;
  pendingAdjust: { val: number; ar: number } | null = null;
  pendingManual: { val: number; ar: number } | null = null;
  manualSaved = false;
  error: ShownError | null = null;

  constructor(root: HTMLElement, api: ApiClient) {
    this.root = root;
    this.api = api;
    this.plane = new ScatterPlane();
    this.plane.onCandidateSelect = (index) => this.select(index);
    this.plane.onCandidateDrop = (index, val, ar) => {
      this.selected = index;
      this.pendingAdjust = { val, ar };
      this.render();
    };
    this.plane.onCandidateHover = (index) => this.highlightSupport(index);
  }

  get sessionTerminal(): boolean {
    return this.session !== null && TERMINAL_STATES.has(this.session.state);
  }

  /** The view model the board last rendered from (null without a session). */
  get view(): SessionView | null {
    if (!this.session) {
      return null;
    }
    return buildSessionView(this.session, this.points, this.selected);
  }

  async load(): Promise<void> {
    await this.refreshCorpus();
    this.render();
  }

  async refreshCorpus(): Promise<void> {
    this.summary = await this.api.corpusSummary();
    const page = await this.api.documents({ annotated: false, limit: 500 });
    this.queue = page.documents;
    this.points = (await this.api.scatter()).points;
  }

  async open(docId: string): Promise<void> {
    try {
      this.session = await this.api.openSession(docId);
      this.selected = this.session.candidates.length > 0 ? 0 : null;
      this.pendingAdjust = null;
      this.pendingManual = null;
      this.manualSaved = false;
      this.error = null;
    } catch (exc) {
      this.showError(exc);
    }
    this.render();
  }

  select(index: number): void {
    if (!this.session || index < 0 || index >= this.session.candidates.length) {
      return;
    }
    this.selected = index;
    this.pendingAdjust = null;
    this.render();
  }

  async accept(): Promise<void> {
    if (this.selected === null) {
      return;
    }
    await this.act({ action: "accept", index: this.selected });
  }

  async reject(): Promise<void> {
    if (this.selected === null) {
      return;
    }
    await this.act({ action: "reject", index: this.selected });
  }

  async abandon(): Promise<void> {
    await this.act({ action: "abandon" });
  }

  async confirmAdjust(): Promise<void> {
    if (!this.pendingAdjust) {
      return;
    }
    const { val, ar } = this.pendingAdjust;
    await this.act({ action: "adjust", val, ar });
  }

  /** Post one feedback event and re-render from the server's response. */
  async act(event: FeedbackEvent): Promise<void> {
    if (!this.session) {
      return;
    }
    try {
      this.session = await this.api.feedback(this.session.session_id, event);
      this.error = null;
      this.pendingAdjust = null;
      if (this.selected !== null) {
        const count = this.session.candidates.length;
        this.selected = count > 0 ? Math.min(this.selected, count - 1) : null;
      }
      if (this.session.state === "committed") {
        await this.refreshCorpus();
      }
    } catch (exc) {
      this.showError(exc);
    }
    this.render();
  }

  /** Manual placement for sessions that ended in manual_required. */
  placeManual(val: number, ar: number): void {
    this.pendingManual = { val, ar };
    this.render();
  }

  async confirmManual(): Promise<void> {
    if (!this.session || !this.pendingManual) {
      return;
    }
    const { val, ar } = this.pendingManual;
    try {
      await this.api.annotate(this.session.target.id, val, ar);
      this.manualSaved = true;
      this.pendingManual = null;
      this.error = null;
      await this.refreshCorpus();
    } catch (exc) {
      this.showError(exc);
    }
    this.render();
  }

  /** Re-fetch the open session and the corpus after a stale-action 409. */
  async reload(): Promise<void> {
    if (this.session) {
      this.session = await this.api.getSession(this.session.session_id);
    }
    await this.refreshCorpus();
    this.error = null;
    this.render();
  }

  closeSession(): void {
    this.session = null;
    this.selected = null;
    this.pendingAdjust = null;
    this.pendingManual = null;
    this.manualSaved = false;
    this.render();
  }

  private showError(exc: unknown): void {
    if (exc instanceof ApiError) {
      this.error = { status: exc.status, code: exc.code, message: exc.message };
    } else {
      this.error = { status: 0, code: "NETWORK", message: String(exc) };
    }
  }

  private highlightSupport(index: number | null): void {
    if (index === null || !this.session) {
      this.plane.setSupportHighlight(new Set());
      return;
    }
    const candidate = this.session.candidates[index];
    this.plane.setSupportHighlight(new Set(candidate ? candidate.support : []));
  }

  render(): void {
    const view = this.view;
    const board = el("section", "board");
    board.appendChild(this.renderSummary());
    if (this.error) {
      board.appendChild(this.renderError(this.error));
    }
    const body = el("div", "board-body");
    body.appendChild(this.renderQueue());
    const planePanel = el("div", "plane-panel");
    planePanel.appendChild(this.plane.svg);
    body.appendChild(planePanel);
    if (this.session && view) {
      body.appendChild(this.renderSession(this.session, view));
    }
    board.appendChild(body);
    this.root.replaceChildren(board);
    this.renderPlane(view);
  }

  private renderSummary(): HTMLElement {
    const header = el("header", "corpus-summary");
    if (this.summary) {
      header.dataset["revision"] = String(this.summary.revision);
      header.textContent =
        `documents: ${this.summary.documents} · ` +
        `annotated: ${this.summary.annotated} · ` +
        `unannotated: ${this.summary.unannotated}`;
    } else {
      header.textContent = "loading corpus…";
    }
    return header;
  }

  private renderError(error: ShownError): HTMLElement {
    const banner = el("div", "error-banner");
    banner.appendChild(
      el("span", "error-text", `[${error.code}] ${error.message}`),
    );
    if (error.status === 409 && this.session) {
      const reload = el("button", "reload-btn", "reload session");
      reload.addEventListener("click", () => void this.reload());
      banner.appendChild(reload);
    }
    return banner;
  }

  private renderQueue(): HTMLElement {
    const panel = el("aside", "queue-panel");
    panel.appendChild(el("h2", "", "annotation queue"));
    const list = el("ul", "queue");
    const openBlocked = this.session !== null && !this.sessionTerminal;
    for (const doc of this.queue) {
      const item = el("li", "queue-item");
      item.dataset["doc"] = doc.id;
      item.appendChild(el("span", "doc-id", doc.id));
      item.appendChild(el("span", "doc-tags", doc.tags.join(", ")));
      const link = el("a", "doc-uri", doc.uri);
      link.href = doc.uri;
      item.appendChild(link);
      const openBtn = el("button", "open-btn", "open");
      openBtn.disabled = openBlocked;
      openBtn.addEventListener("click", () => void this.open(doc.id));
      item.appendChild(openBtn);
      list.appendChild(item);
    }
    if (this.queue.length === 0) {
      panel.appendChild(el("p", "queue-empty", "no unannotated documents"));
    }
    panel.appendChild(list);
    return panel;
  }

  private renderSession(session: SessionJson, view: SessionView): HTMLElement {
    const terminal = this.sessionTerminal;
    const panel = el("section", "session-panel");
    panel.dataset["session"] = session.session_id;
    panel.dataset["state"] = session.state;
    panel.dataset["seq"] = String(session.seq);

    panel.appendChild(
      el("h2", "", `session ${session.session_id} — ${session.state}`),
    );
    panel.appendChild(
      el(
        "p",
        "target-tags",
        `target ${session.target.id}: ${view.targetTags.join(", ")}`,
      ),
    );
    if (session.used_fallback) {
      panel.appendChild(
        el("p", "fallback-note", "no neighbors in range — nearest documents used"),
      );
    }

    panel.appendChild(this.renderCandidates(view, terminal));
    panel.appendChild(this.renderActions(terminal));
    if (session.state === "manual_required") {
      panel.appendChild(this.renderManualPanel());
    }
    panel.appendChild(this.renderHistory(session));
    return panel;
  }

  private renderCandidates(view: SessionView, terminal: boolean): HTMLElement {
    const table = el("table", "candidates");
    const head = el("thead");
    const headRow = el("tr");
    for (const label of ["rank", "val", "ar", "likelihood", "support"]) {
      headRow.appendChild(el("th", "", label));
    }
    head.appendChild(headRow);
    table.appendChild(head);
    const body = el("tbody");
    view.candidates.forEach((candidate, index) => {
      const row = el("tr", "candidate");
      if (index === view.selected) {
        row.classList.add("selected");
      }
      row.dataset["index"] = String(index);
      row.dataset["val"] = String(candidate.val);
      row.dataset["ar"] = String(candidate.ar);
      row.appendChild(el("td", "c-rank", String(index + 1)));
      row.appendChild(el("td", "c-val", fmtCoord(candidate.val)));
      row.appendChild(el("td", "c-ar", fmtCoord(candidate.ar)));
      row.appendChild(el("td", "c-likelihood", candidate.likelihoodLabel));
      row.appendChild(el("td", "c-support", String(candidate.supportSize)));
      if (!terminal) {
        row.addEventListener("click", () => this.select(index));
      }
      row.addEventListener("mouseenter", () => this.highlightSupport(index));
      row.addEventListener("mouseleave", () => this.highlightSupport(null));
      body.appendChild(row);
    });
    table.appendChild(body);
    return table;
  }

  private renderActions(terminal: boolean): HTMLElement {
    const actions = el("div", "actions");
    const accept = el("button", "accept-btn", "accept");
    accept.disabled = terminal || this.selected === null;
    accept.addEventListener("click", () => void this.accept());
    actions.appendChild(accept);

    const reject = el("button", "reject-btn", "reject");
    reject.disabled = terminal || this.selected === null;
    reject.addEventListener("click", () => void this.reject());
    actions.appendChild(reject);

    const abandon = el("button", "abandon-btn", "abandon");
    abandon.disabled = terminal;
    abandon.addEventListener("click", () => void this.abandon());
    actions.appendChild(abandon);

    if (this.pendingAdjust && !terminal) {
      const { val, ar } = this.pendingAdjust;
      const confirm = el(
        "button",
        "adjust-confirm",
        `adjust to (${fmtCoord(val)}, ${fmtCoord(ar)})`,
      );
      confirm.addEventListener("click", () => void this.confirmAdjust());
      actions.appendChild(confirm);
    }
    if (terminal) {
      const close = el("button", "close-btn", "close");
      close.addEventListener("click", () => this.closeSession());
      actions.appendChild(close);
    }
    return actions;
  }

  private renderManualPanel(): HTMLElement {
    const panel = el("div", "manual-panel");
    panel.appendChild(el("h3", "", "manual entry required"));
    if (this.manualSaved) {
      panel.appendChild(el("p", "manual-saved", "manual annotation saved"));
      return panel;
    }
    panel.appendChild(
      el(
        "p",
        "manual-hint",
        "no candidate was accepted — click the plane to place the emotion",
      ),
    );
    if (this.pendingManual) {
      const { val, ar } = this.pendingManual;
      panel.appendChild(
        el(
          "p",
          "manual-pending",
          `placing at (${fmtCoord(val)}, ${fmtCoord(ar)})`,
        ),
      );
    }
    const confirm = el("button", "manual-confirm", "save manual annotation");
    confirm.disabled = this.pendingManual === null;
    confirm.addEventListener("click", () => void this.confirmManual());
    panel.appendChild(confirm);
    return panel;
  }

  private renderHistory(session: SessionJson): HTMLElement {
    const list = el("ol", "history");
    for (const entry of session.history) {
      const parts = [entry.action];
      if (entry.index !== null) {
        parts.push(`#${entry.index}`);
      }
      if (entry.val !== null && entry.ar !== null) {
        parts.push(`(${fmtCoord(entry.val)}, ${fmtCoord(entry.ar)})`);
      }
      list.appendChild(el("li", "history-entry", parts.join(" ")));
    }
    return list;
  }

  private renderPlane(view: SessionView | null): void {
    const manualPlacement =
      this.session !== null &&
      this.session.state === "manual_required" &&
      !this.manualSaved;
    this.plane.onPlaneClick = manualPlacement
      ? (val, ar) => this.placeManual(val, ar)
      : null;

    const proposed = this.session?.state === "proposed";
    const colored = view
      ? view.points
      : this.points.map((p) => ({ ...p, color: groupColor(p.group, []) }));
    this.plane.render({
      points: colored.map((p) => ({
        id: p.doc_id,
        val: p.val,
        ar: p.ar,
        color: p.color,
        provenance: p.provenance,
      })),
      candidates:
        view && proposed
          ? view.candidates.map((c, index) => ({
              index,
              val: c.val,
              ar: c.ar,
              likelihood: c.likelihood,
              selected: index === view.selected,
              draggable: index === view.selected,
            }))
          : [],
      pending: this.pendingAdjust ?? this.pendingManual,
    });
  }
}
