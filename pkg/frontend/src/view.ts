/** Pure assembly of the session screen's view model from server payloads. */

import { fmtLikelihood, groupColor } from "./format.js";
import type {
  ScatterPointJson,
  SessionJson,
  SessionView,
} from "./types.js";

/**
 * Build the view model for one session screen. Candidate order is taken
 * from the server payload untouched; likelihood labels are fixed to three
 * decimals; scatter points get their group color assigned here.
 */
export function buildSessionView(
  session: SessionJson,
  points: readonly ScatterPointJson[],
  selected: number | null,
  groupOrder: readonly string[] = [],
): SessionView {
  return {
    sessionId: session.session_id,
    targetTags: [...session.target.tags],
    candidates: session.candidates.map((c) => ({
      val: c.emotion.val,
      ar: c.emotion.ar,
      likelihood: c.likelihood,
      likelihoodLabel: fmtLikelihood(c.likelihood),
      supportSize: c.support.length,
      support: [...c.support],
    })),
    points: points.map((p) => ({ ...p, color: groupColor(p.group, groupOrder) })),
    selected,
  };
}
