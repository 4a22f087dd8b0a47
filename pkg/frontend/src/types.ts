/** JSON shapes exchanged with the HTTP service, mirrored field for field. */

export interface RatingJson {
  val_mean: number;
  val_sd: number;
  ar_mean: number;
  ar_sd: number;
  dom_mean?: number;
  dom_sd?: number;
}

export interface DocumentJson {
  id: string;
  uri: string;
  tags: string[];
  rating: RatingJson | null;
  provenance: string;
  annotated: boolean;
}

export interface DocumentPageJson {
  total: number;
  offset: number;
  limit: number;
  documents: DocumentJson[];
}

export interface CorpusSummaryJson {
  documents: number;
  annotated: number;
  unannotated: number;
  taxonomy: string;
  defaults: { eps_sem: number; eps_emo: number };
  revision: number;
}

export interface CandidateJson {
  emotion: { val: number; ar: number };
  likelihood: number;
  support: string[];
  mean_semantic_distance: number;
  sd_val: number;
  sd_ar: number;
}

export type SessionStateName =
  | "proposed"
  | "committed"
  | "manual_required"
  | "abandoned";

export const TERMINAL_STATES: ReadonlySet<SessionStateName> = new Set([
  "committed",
  "manual_required",
  "abandoned",
]);

export interface HistoryEntryJson {
  seq: number;
  action: string;
  index: number | null;
  val: number | null;
  ar: number | null;
}

export interface SessionJson {
  session_id: string;
  state: SessionStateName;
  seq: number;
  used_fallback: boolean;
  target: DocumentJson;
  candidates: CandidateJson[];
  history: HistoryEntryJson[];
}

export interface EstimationOverrides {
  eps_sem?: number;
  eps_emo?: number;
  k_fallback?: number;
  min_support?: number;
}

export interface FeedbackEvent {
  action: "accept" | "reject" | "adjust" | "abandon" | string;
  index?: number | null;
  val?: number | null;
  ar?: number | null;
}

export interface ScatterPointJson {
  doc_id: string;
  group: string;
  val: number;
  ar: number;
  provenance: string;
  tags: string[];
  uri: string;
}

export interface GroupOutlierJson {
  doc_id: string;
  distance: number;
  score: number;
}

export interface GroupJson {
  name: string;
  member_count: number;
  member_ids: string[];
  centroid: { val: number; ar: number } | null;
  sd_val: number | null;
  sd_ar: number | null;
  empty: boolean;
  outliers: GroupOutlierJson[];
}

export interface CouplingJson {
  thresholds: { eps_sem: number; eps_emo: number };
  clusters: string[][];
}

export interface ApiErrorBody {
  code: string;
  message: string;
  detail?: string;
}

/** Everything one session screen displays, assembled only from server responses. */
export interface SessionView {
  sessionId: string;
  targetTags: string[];
  /** Mirrors the API candidate order exactly; never re-sorted client side. */
  candidates: CandidateView[];
  /** Corpus scatter points, each already assigned its group color. */
  points: ScatterPointView[];
  /** Index into `candidates`, or null when nothing is selected. */
  selected: number | null;
}

export interface CandidateView {
  val: number;
  ar: number;
  likelihood: number;
  /** Likelihood rendered to exactly three decimals. */
  likelihoodLabel: string;
  supportSize: number;
  support: string[];
}

export interface ScatterPointView extends ScatterPointJson {
  color: string;
}
