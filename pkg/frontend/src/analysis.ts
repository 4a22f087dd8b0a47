/** Analysis view: the corpus scatter with group colors, centroid crosses,
 * and outlier rings, plus a detail panel for the clicked point. */

import { ApiClient, ApiError } from "./api.js";
import { fmtCoord, groupColor } from "./format.js";
import { ScatterPlane } from "./scatter.js";
import type { GroupJson, ScatterPointJson } from "./types.js";

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

export class AnalysisView {
  readonly root: HTMLElement;
  readonly api: ApiClient;
  readonly plane: ScatterPlane;

  spec = "";
  outlierFactor = 2.0;
  points: ScatterPointJson[] = [];
  groups: GroupJson[] = [];
  detail: ScatterPointJson | null = null;
  error: { code: string; message: string } | null = null;

  constructor(root: HTMLElement, api: ApiClient) {
    this.root = root;
    this.api = api;
    this.plane = new ScatterPlane();
    this.plane.onPointClick = (id) => this.showDetail(id);
  }

  async load(spec = this.spec, outlierFactor = this.outlierFactor): Promise<void> {
    this.spec = spec.trim();
    this.outlierFactor = outlierFactor;
    try {
      this.points = (await this.api.scatter(this.spec || undefined)).points;
      this.groups = this.spec
        ? (await this.api.groups(this.spec, this.outlierFactor)).groups
        : [];
      this.error = null;
      this.detail = null;
    } catch (exc) {
      this.error =
        exc instanceof ApiError
          ? { code: exc.code, message: exc.message }
          : { code: "NETWORK", message: String(exc) };
    }
    this.render();
  }

  showDetail(docId: string): void {
    this.detail = this.points.find((p) => p.doc_id === docId) ?? null;
    this.render();
  }

  private outlierIds(): Set<string> {
    const ids = new Set<string>();
    for (const group of this.groups) {
      for (const outlier of group.outliers) {
        ids.add(outlier.doc_id);
      }
    }
    return ids;
  }

  render(): void {
    const section = el("section", "analysis");
    section.appendChild(this.renderControls());
    if (this.error) {
      const banner = el("div", "error-banner");
      banner.appendChild(
        el("span", "error-text", `[${this.error.code}] ${this.error.message}`),
      );
      section.appendChild(banner);
    }
    const body = el("div", "analysis-body");
    const planePanel = el("div", "plane-panel");
    planePanel.appendChild(this.plane.svg);
    body.appendChild(planePanel);
    const side = el("div", "analysis-side");
    side.appendChild(this.renderLegend());
    side.appendChild(this.renderDetail());
    body.appendChild(side);
    section.appendChild(body);
    this.root.replaceChildren(section);
    this.renderPlane();
  }

  private renderControls(): HTMLElement {
    const form = el("form", "analysis-controls");
    const specInput = el("input", "spec-input");
    specInput.type = "text";
    specInput.placeholder = "groups, e.g. reptiles:snake;lizard,pets:dog";
    specInput.value = this.spec;
    form.appendChild(specInput);

    const cInput = el("input", "c-input");
    cInput.type = "number";
    cInput.step = "0.1";
    cInput.value = String(this.outlierFactor);
    form.appendChild(cInput);

    const render = el("button", "render-btn", "render");
    render.type = "submit";
    form.appendChild(render);
    form.addEventListener("submit", (event) => {
      event.preventDefault();
      void this.load(specInput.value, Number(cInput.value) || 0);
    });
    return form;
  }

  private renderLegend(): HTMLElement {
    const legend = el("ul", "legend");
    const order = this.groups.map((g) => g.name);
    for (const group of this.groups) {
      const item = el("li", "legend-entry");
      item.dataset["group"] = group.name;
      const swatch = el("span", "swatch");
      swatch.style.background = groupColor(group.name, order);
      item.appendChild(swatch);
      const centroid = group.centroid
        ? ` · centroid (${fmtCoord(group.centroid.val)}, ${fmtCoord(group.centroid.ar)})`
        : " · empty";
      item.appendChild(
        el(
          "span",
          "legend-text",
          `${group.name}: ${group.member_count} documents${centroid}` +
            (group.outliers.length > 0
              ? ` · ${group.outliers.length} outliers`
              : ""),
        ),
      );
      legend.appendChild(item);
    }
    return legend;
  }

  private renderDetail(): HTMLElement {
    const panel = el("div", "detail");
    if (!this.detail) {
      panel.appendChild(el("p", "detail-hint", "click a point for details"));
      return panel;
    }
    const p = this.detail;
    panel.appendChild(el("h3", "detail-id", p.doc_id));
    panel.appendChild(el("p", "detail-tags", `tags: ${p.tags.join(", ")}`));
    panel.appendChild(
      el(
        "p",
        "detail-rating",
        `rating: val ${fmtCoord(p.val)}, ar ${fmtCoord(p.ar)}`,
      ),
    );
    panel.appendChild(el("p", "detail-provenance", `provenance: ${p.provenance}`));
    const link = el("a", "detail-uri", p.uri);
    link.href = p.uri;
    panel.appendChild(link);
    return panel;
  }

  private renderPlane(): void {
    const order = this.groups.map((g) => g.name);
    const ringed = this.outlierIds();
    this.plane.render({
      points: this.points.map((p) => ({
        id: p.doc_id,
        val: p.val,
        ar: p.ar,
        color: groupColor(p.group, order),
        provenance: p.provenance,
        ringed: ringed.has(p.doc_id),
      })),
      centroids: this.groups
        .filter((g) => g.centroid !== null)
        .map((g) => ({
          group: g.name,
          val: g.centroid!.val,
          ar: g.centroid!.ar,
          color: groupColor(g.name, order),
        })),
    });
  }
}
