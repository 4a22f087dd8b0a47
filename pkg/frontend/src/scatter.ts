/** SVG valence–arousal plane with axes pinned to the rating scale [1, 9].
 *
 * The plane renders corpus points (marker shape keyed by provenance),
 * candidate markers sized by likelihood, group centroids as crosses, and
 * outlier rings. It reports point clicks, plane clicks (for click-to-place
 * emotion entry), and candidate drags (for drag-to-adjust); every render
 * call rebuilds the scene from scratch so the display always reflects
 * exactly the state it was handed.
 */

const SVG_NS = "http://www.w3.org/2000/svg";

export const DOMAIN_MIN = 1;
export const DOMAIN_MAX = 9;

const VIEW_WIDTH = 560;
const VIEW_HEIGHT = 460;
const MARGIN = 40;
const INNER_WIDTH = VIEW_WIDTH - 2 * MARGIN;
const INNER_HEIGHT = VIEW_HEIGHT - 2 * MARGIN;

const POINT_RADIUS = 4;
const RING_RADIUS = 9;
const CANDIDATE_BASE_RADIUS = 5;
const CANDIDATE_RADIUS_SPAN = 9;

export interface PlanePoint {
  id: string;
  val: number;
  ar: number;
  color: string;
  provenance: string;
  ringed?: boolean;
}

export interface PlaneCandidate {
  index: number;
  val: number;
  ar: number;
  likelihood: number;
  selected: boolean;
  draggable: boolean;
}

export interface PlaneCentroid {
  group: string;
  val: number;
  ar: number;
  color: string;
}

export interface PlaneContent {
  points: PlanePoint[];
  candidates?: PlaneCandidate[];
  centroids?: PlaneCentroid[];
  pending?: { val: number; ar: number } | null;
}

export function candidateRadius(likelihood: number): number {
  return CANDIDATE_BASE_RADIUS + CANDIDATE_RADIUS_SPAN * likelihood;
}

function svgEl<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string | number> = {},
): SVGElementTagNameMap[K] {
  const el = document.createElementNS(SVG_NS, tag);
  for (const [name, value] of Object.entries(attrs)) {
    el.setAttribute(name, String(value));
  }
  return el;
}

export class ScatterPlane {
  readonly svg: SVGSVGElement;
  onPointClick: ((id: string) => void) | null = null;
  onPlaneClick: ((val: number, ar: number) => void) | null = null;
  onCandidateSelect: ((index: number) => void) | null = null;
  onCandidateDrop: ((index: number, val: number, ar: number) => void) | null =
    null;
  onCandidateHover: ((index: number | null) => void) | null = null;

  private readonly scene: SVGGElement;
  private dragging: number | null = null;
  private suppressClick = false;

  constructor() {
    this.svg = svgEl("svg", {
      class: "scatter-plane",
      viewBox: `0 0 ${VIEW_WIDTH} ${VIEW_HEIGHT}`,
      role: "img",
    });
    this.svg.appendChild(this.axes());
    this.scene = svgEl("g", { class: "scene" });
    this.svg.appendChild(this.scene);

    this.svg.addEventListener("mousemove", (event) => this.dragMove(event));
    this.svg.addEventListener("mouseup", (event) => this.dragEnd(event));
    this.svg.addEventListener("mouseleave", () => {
      this.dragging = null;
    });
    this.svg.addEventListener("click", (event) => {
      if (this.suppressClick) {
        this.suppressClick = false;
        return;
      }
      if (this.onPlaneClick) {
        const { val, ar } = this.fromClient(event.clientX, event.clientY);
        this.onPlaneClick(val, ar);
      }
    });
  }

  toX(val: number): number {
    return MARGIN + ((val - DOMAIN_MIN) / (DOMAIN_MAX - DOMAIN_MIN)) * INNER_WIDTH;
  }

  toY(ar: number): number {
    return MARGIN + ((DOMAIN_MAX - ar) / (DOMAIN_MAX - DOMAIN_MIN)) * INNER_HEIGHT;
  }

  /** Client pixel position -> (val, ar), clamped to the scale and rounded
   * to two decimals (the precision offered for manual placement). */
  fromClient(clientX: number, clientY: number): { val: number; ar: number } {
    const rect = this.svg.getBoundingClientRect();
    const sx = rect.width > 0 ? VIEW_WIDTH / rect.width : 1;
    const sy = rect.height > 0 ? VIEW_HEIGHT / rect.height : 1;
    const x = (clientX - rect.left) * sx;
    const y = (clientY - rect.top) * sy;
    const span = DOMAIN_MAX - DOMAIN_MIN;
    const val = DOMAIN_MIN + ((x - MARGIN) / INNER_WIDTH) * span;
    const ar = DOMAIN_MAX - ((y - MARGIN) / INNER_HEIGHT) * span;
    return { val: this.snap(val), ar: this.snap(ar) };
  }

  private snap(value: number): number {
    const clamped = Math.min(DOMAIN_MAX, Math.max(DOMAIN_MIN, value));
    return Math.round(clamped * 100) / 100;
  }

  render(content: PlaneContent): void {
    this.scene.replaceChildren();
    for (const centroid of content.centroids ?? []) {
      this.scene.appendChild(this.centroidCross(centroid));
    }
    for (const point of content.points) {
      this.scene.appendChild(this.pointMarker(point));
      if (point.ringed) {
        this.scene.appendChild(
          svgEl("circle", {
            class: "outlier-ring",
            "data-doc": point.id,
            cx: this.toX(point.val),
            cy: this.toY(point.ar),
            r: RING_RADIUS,
            fill: "none",
          }),
        );
      }
    }
    for (const candidate of content.candidates ?? []) {
      this.scene.appendChild(this.candidateMarker(candidate));
    }
    if (content.pending) {
      this.scene.appendChild(
        this.pendingMarker(content.pending.val, content.pending.ar),
      );
    }
  }

  /** Toggle the support highlight without rebuilding the scene. */
  setSupportHighlight(ids: ReadonlySet<string>): void {
    for (const node of this.scene.querySelectorAll(".pt")) {
      const id = node.getAttribute("data-doc") ?? "";
      node.classList.toggle("support-highlight", ids.has(id));
    }
  }

  private axes(): SVGGElement {
    const group = svgEl("g", { class: "axes" });
    group.appendChild(
      svgEl("rect", {
        class: "frame",
        x: MARGIN,
        y: MARGIN,
        width: INNER_WIDTH,
        height: INNER_HEIGHT,
        fill: "none",
      }),
    );
    for (let v = DOMAIN_MIN; v <= DOMAIN_MAX; v++) {
      const x = this.toX(v);
      group.appendChild(
        svgEl("line", {
          class: "tick tick-x",
          x1: x,
          y1: MARGIN + INNER_HEIGHT,
          x2: x,
          y2: MARGIN + INNER_HEIGHT + 5,
        }),
      );
      const xLabel = svgEl("text", {
        class: "tick-label",
        x,
        y: MARGIN + INNER_HEIGHT + 18,
        "text-anchor": "middle",
      });
      xLabel.textContent = String(v);
      group.appendChild(xLabel);

      const y = this.toY(v);
      group.appendChild(
        svgEl("line", {
          class: "tick tick-y",
          x1: MARGIN - 5,
          y1: y,
          x2: MARGIN,
          y2: y,
        }),
      );
      const yLabel = svgEl("text", {
        class: "tick-label",
        x: MARGIN - 10,
        y: y + 4,
        "text-anchor": "end",
      });
      yLabel.textContent = String(v);
      group.appendChild(yLabel);
    }
    const xCaption = svgEl("text", {
      class: "axis-caption",
      x: MARGIN + INNER_WIDTH / 2,
      y: VIEW_HEIGHT - 4,
      "text-anchor": "middle",
    });
    xCaption.textContent = "valence";
    group.appendChild(xCaption);
    const yCaption = svgEl("text", {
      class: "axis-caption",
      x: 12,
      y: MARGIN + INNER_HEIGHT / 2,
      "text-anchor": "middle",
      transform: `rotate(-90 12 ${MARGIN + INNER_HEIGHT / 2})`,
    });
    yCaption.textContent = "arousal";
    group.appendChild(yCaption);
    return group;
  }

  private pointMarker(point: PlanePoint): SVGElement {
    const cx = this.toX(point.val);
    const cy = this.toY(point.ar);
    const cls = `pt provenance-${point.provenance}`;
    let marker: SVGElement;
    if (point.provenance === "estimated") {
      // estimated ratings get a diamond so they stand out from direct ones
      const r = POINT_RADIUS + 1.5;
      marker = svgEl("path", {
        class: cls,
        "data-doc": point.id,
        d: `M ${cx} ${cy - r} L ${cx + r} ${cy} L ${cx} ${cy + r} L ${cx - r} ${cy} Z`,
        fill: point.color,
      });
    } else {
      marker = svgEl("circle", {
        class: cls,
        "data-doc": point.id,
        cx,
        cy,
        r: POINT_RADIUS,
        fill: point.color,
      });
    }
    marker.addEventListener("click", (event) => {
      event.stopPropagation();
      this.onPointClick?.(point.id);
    });
    return marker;
  }

  private candidateMarker(candidate: PlaneCandidate): SVGElement {
    const marker = svgEl("circle", {
      class:
        "candidate-marker" + (candidate.selected ? " selected" : ""),
      "data-index": candidate.index,
      cx: this.toX(candidate.val),
      cy: this.toY(candidate.ar),
      r: candidateRadius(candidate.likelihood),
    });
    marker.addEventListener("click", (event) => {
      event.stopPropagation();
      this.onCandidateSelect?.(candidate.index);
    });
    marker.addEventListener("mouseenter", () => {
      this.onCandidateHover?.(candidate.index);
    });
    marker.addEventListener("mouseleave", () => {
      this.onCandidateHover?.(null);
    });
    if (candidate.draggable) {
      marker.classList.add("draggable");
      marker.addEventListener("mousedown", (event) => {
        event.preventDefault();
        this.dragging = candidate.index;
      });
    }
    return marker;
  }

  private centroidCross(centroid: PlaneCentroid): SVGElement {
    const cx = this.toX(centroid.val);
    const cy = this.toY(centroid.ar);
    const r = 7;
    return svgEl("path", {
      class: "centroid-cross",
      "data-group": centroid.group,
      d: `M ${cx - r} ${cy} L ${cx + r} ${cy} M ${cx} ${cy - r} L ${cx} ${cy + r}`,
      stroke: centroid.color,
      fill: "none",
    });
  }

  private pendingMarker(val: number, ar: number): SVGElement {
    const cx = this.toX(val);
    const cy = this.toY(ar);
    const r = 6;
    return svgEl("path", {
      class: "pending-marker",
      d:
        `M ${cx - r} ${cy - r} L ${cx + r} ${cy + r} ` +
        `M ${cx - r} ${cy + r} L ${cx + r} ${cy - r}`,
      fill: "none",
    });
  }

  private dragMove(event: MouseEvent): void {
    if (this.dragging === null) {
      return;
    }
    const { val, ar } = this.fromClient(event.clientX, event.clientY);
    const marker = this.scene.querySelector(
      `.candidate-marker[data-index="${this.dragging}"]`,
    );
    if (marker) {
      marker.setAttribute("cx", String(this.toX(val)));
      marker.setAttribute("cy", String(this.toY(ar)));
    }
  }

  private dragEnd(event: MouseEvent): void {
    if (this.dragging === null) {
      return;
    }
    const index = this.dragging;
    this.dragging = null;
    this.suppressClick = true;
    const { val, ar } = this.fromClient(event.clientX, event.clientY);
    this.onCandidateDrop?.(index, val, ar);
  }
}
