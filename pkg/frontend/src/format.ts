/** Display formatting shared by the board and the analysis view. */

/** Likelihoods are always shown to exactly three decimals. */
export function fmtLikelihood(x: number): string {
  return x.toFixed(3);
}

/** Coordinates shown with up to two decimals, trailing zeros trimmed. */
export function fmtCoord(x: number): string {
  return String(Math.round(x * 100) / 100);
}

export const UNGROUPED_COLOR = "#9aa0a6";

const GROUP_PALETTE = [
  "#4363d8",
  "#e6194b",
  "#3cb44b",
  "#f58231",
  "#911eb4",
  "#0b7f8e",
  "#9a6324",
  "#808000",
  "#800060",
  "#2f4f4f",
];

/**
 * Color for a group name given the server-provided group order. The empty
 * name (documents outside every group) always maps to the neutral grey.
 */
export function groupColor(name: string, order: readonly string[]): string {
  if (name === "") {
    return UNGROUPED_COLOR;
  }
  const index = order.indexOf(name);
  if (index < 0) {
    return UNGROUPED_COLOR;
  }
  return GROUP_PALETTE[index % GROUP_PALETTE.length]!;
}
