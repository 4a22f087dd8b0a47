/** Thin fetch client for the corpus service; one method per endpoint. */

import type {
  ApiErrorBody,
  CorpusSummaryJson,
  CouplingJson,
  DocumentJson,
  DocumentPageJson,
  EstimationOverrides,
  FeedbackEvent,
  GroupJson,
  ScatterPointJson,
  SessionJson,
} from "./types.js";

/** A non-2xx response, carrying the service's error envelope. */
export class ApiError extends Error {
  readonly status: number;
  readonly code: string;
  readonly detail?: string;

  constructor(status: number, body: ApiErrorBody) {
    super(body.message);
    this.name = "ApiError";
    this.status = status;
    this.code = body.code;
    this.detail = body.detail;
  }
}

export class ApiClient {
  /** Base URL without trailing slash; "" targets the page's own origin. */
  readonly base: string;

  constructor(base = "") {
    this.base = base.replace(/\/+$/, "");
  }

  private async request<T>(
    method: string,
    path: string,
    body?: unknown,
  ): Promise<T> {
    const init: RequestInit = { method };
    if (body !== undefined) {
      init.headers = { "content-type": "application/json" };
      init.body = JSON.stringify(body);
    }
    const res = await fetch(this.base + path, init);
    if (!res.ok) {
      let envelope: ApiErrorBody;
      try {
        envelope = (await res.json()) as ApiErrorBody;
      } catch {
        envelope = { code: `HTTP_${res.status}`, message: res.statusText };
      }
      throw new ApiError(res.status, envelope);
    }
    return (await res.json()) as T;
  }

  corpusSummary(): Promise<CorpusSummaryJson> {
    return this.request("GET", "/corpus");
  }

  documents(opts: {
    annotated?: boolean;
    offset?: number;
    limit?: number;
  } = {}): Promise<DocumentPageJson> {
    const params = new URLSearchParams();
    if (opts.annotated !== undefined) {
      params.set("annotated", String(opts.annotated));
    }
    if (opts.offset !== undefined) {
      params.set("offset", String(opts.offset));
    }
    if (opts.limit !== undefined) {
      params.set("limit", String(opts.limit));
    }
    const query = params.toString();
    return this.request("GET", "/documents" + (query ? `?${query}` : ""));
  }

  addDocument(doc: {
    id: string;
    uri: string;
    tags: string[];
  }): Promise<{ document: DocumentJson; revision: number }> {
    return this.request("POST", "/documents", doc);
  }

  annotate(
    docId: string,
    val: number,
    ar: number,
  ): Promise<{ document: DocumentJson; revision: number }> {
    return this.request(
      "POST",
      `/documents/${encodeURIComponent(docId)}/annotation`,
      { val, ar },
    );
  }

  openSession(
    docId: string,
    overrides: EstimationOverrides = {},
  ): Promise<SessionJson> {
    return this.request("POST", "/sessions", { doc_id: docId, ...overrides });
  }

  getSession(sessionId: string): Promise<SessionJson> {
    return this.request("GET", `/sessions/${encodeURIComponent(sessionId)}`);
  }

  feedback(sessionId: string, event: FeedbackEvent): Promise<SessionJson> {
    return this.request(
      "POST",
      `/sessions/${encodeURIComponent(sessionId)}/feedback`,
      event,
    );
  }

  scatter(spec?: string): Promise<{ points: ScatterPointJson[] }> {
    const query = spec ? `?spec=${encodeURIComponent(spec)}` : "";
    return this.request("GET", "/scatter" + query);
  }

  groups(spec: string, c?: number): Promise<{ groups: GroupJson[] }> {
    const params = new URLSearchParams({ spec });
    if (c !== undefined) {
      params.set("c", String(c));
    }
    return this.request("GET", `/analysis/groups?${params.toString()}`);
  }

  coupling(epsSem?: number, epsEmo?: number): Promise<CouplingJson> {
    const params = new URLSearchParams();
    if (epsSem !== undefined) {
      params.set("eps_sem", String(epsSem));
    }
    if (epsEmo !== undefined) {
      params.set("eps_emo", String(epsEmo));
    }
    const query = params.toString();
    return this.request("GET", "/analysis/coupling" + (query ? `?${query}` : ""));
  }
}
