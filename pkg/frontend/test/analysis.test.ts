/** Analysis view against the real service: group coloring, centroid
 * crosses, outlier rings on a corpus with two planted low-valence
 * documents inside a high-valence food group, and the empty-corpus case. */

import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { AnalysisView } from "../src/analysis.js";
import { ApiClient } from "../src/api.js";
import { UNGROUPED_COLOR } from "../src/format.js";
import { click, stubPlaneRect } from "./dom.js";
import { startServer, type ManifestRow, type TestServer } from "./server.js";

const FOOD_TAGS = ["fruit", "bread", "cake", "meat", "soup"];
const FOOD_SPEC = "food:" + FOOD_TAGS.join(";");

function plantedRows(): ManifestRow[] {
  const rows: ManifestRow[] = [];
  for (let i = 0; i < 5; i++) {
    rows.push({ id: `food-${i}`, tags: [FOOD_TAGS[i % 5]!], val: 6.5, ar: 3.5 });
  }
  for (let i = 5; i < 10; i++) {
    rows.push({ id: `food-${i}`, tags: [FOOD_TAGS[i % 5]!], val: 7.5, ar: 3.5 });
  }
  rows.push({ id: "bad-1", tags: ["meat"], val: 2.0, ar: 7.5 });
  rows.push({ id: "bad-2", tags: ["soup"], val: 2.2, ar: 7.8 });
  rows.push({ id: "elsewhere", tags: ["beach"], val: 8.0, ar: 3.0 });
  return rows;
}

function freshView(api: ApiClient): AnalysisView {
  const root = document.createElement("div");
  document.body.replaceChildren(root);
  const view = new AnalysisView(root, api);
  stubPlaneRect(view.plane.svg);
  return view;
}

describe("analysis view on the planted-outlier corpus", () => {
  let srv: TestServer;
  let api: ApiClient;

  beforeAll(async () => {
    srv = await startServer(plantedRows());
    api = new ApiClient(srv.base);
  });

  afterAll(async () => {
    await srv.stop();
  });

  it("renders ungrouped points in the neutral color without a spec", async () => {
    const view = freshView(api);
    await view.load("");
    expect(view.error).toBeNull();
    const points = view.plane.svg.querySelectorAll(".pt");
    expect(points).toHaveLength(13);
    for (const pt of points) {
      expect(pt.getAttribute("fill")).toBe(UNGROUPED_COLOR);
    }
    expect(view.plane.svg.querySelectorAll(".outlier-ring")).toHaveLength(0);
    expect(view.plane.svg.querySelectorAll(".centroid-cross")).toHaveLength(0);
  });

  it("rings exactly the outliers the service flags", async () => {
    const view = freshView(api);
    await view.load(FOOD_SPEC, 2.0);
    expect(view.error).toBeNull();

    const fresh = await api.groups(FOOD_SPEC, 2.0);
    const flagged = fresh.groups
      .flatMap((g) => g.outliers)
      .map((o) => o.doc_id)
      .sort();
    expect(flagged).toEqual(["bad-1", "bad-2"]);

    const ringed = Array.from(
      view.plane.svg.querySelectorAll(".outlier-ring"),
      (n) => n.getAttribute("data-doc"),
    ).sort();
    expect(ringed).toEqual(flagged);
  });

  it("colors group members and crosses the centroid", async () => {
    const view = freshView(api);
    await view.load(FOOD_SPEC, 2.0);

    const member = view.plane.svg.querySelector('.pt[data-doc="food-0"]')!;
    const outside = view.plane.svg.querySelector('.pt[data-doc="elsewhere"]')!;
    expect(member.getAttribute("fill")).not.toBe(UNGROUPED_COLOR);
    expect(outside.getAttribute("fill")).toBe(UNGROUPED_COLOR);

    const crosses = view.plane.svg.querySelectorAll(".centroid-cross");
    expect(crosses).toHaveLength(1);
    expect(crosses[0]!.getAttribute("data-group")).toBe("food");
    expect(crosses[0]!.getAttribute("stroke")).toBe(
      member.getAttribute("fill"),
    );

    const legend = view.root.querySelector(
      '.legend-entry[data-group="food"]',
    )!;
    expect(legend.textContent).toContain("food: 12 documents");
    expect(legend.textContent).toContain("2 outliers");
  });

  it("raising the factor unflags the planted documents", async () => {
    const view = freshView(api);
    await view.load(FOOD_SPEC, 50.0);
    expect(view.plane.svg.querySelectorAll(".outlier-ring")).toHaveLength(0);
  });

  it("clicking a point shows id, tags, rating, and provenance", async () => {
    const view = freshView(api);
    await view.load(FOOD_SPEC, 2.0);
    click(view.plane.svg.querySelector('.pt[data-doc="bad-1"]')!);
    const detail = view.root.querySelector(".detail")!;
    expect(detail.querySelector(".detail-id")!.textContent).toBe("bad-1");
    expect(detail.querySelector(".detail-tags")!.textContent).toContain("meat");
    expect(detail.querySelector(".detail-rating")!.textContent).toContain("2");
    expect(detail.querySelector(".detail-rating")!.textContent).toContain("7.5");
    expect(
      detail.querySelector(".detail-provenance")!.textContent,
    ).toContain("manifest");
    expect(
      detail.querySelector<HTMLAnchorElement>(".detail-uri")!.getAttribute("href"),
    ).toBe("stimuli/bad-1.jpg");
  });

  it("draws estimated-provenance points with the distinct marker", async () => {
    await api.addDocument({
      id: "est-1",
      uri: "stimuli/est-1.jpg",
      tags: ["fruit"],
    });
    const session = await api.openSession("est-1", { eps_sem: 4.0 });
    expect(session.candidates.length).toBeGreaterThan(0);
    await api.feedback(session.session_id, { action: "accept", index: 0 });

    const view = freshView(api);
    await view.load("");
    const pt = view.plane.svg.querySelector('.pt[data-doc="est-1"]')!;
    expect(pt.tagName).toBe("path");
    expect(pt.classList.contains("provenance-estimated")).toBe(true);
    const plain = view.plane.svg.querySelector('.pt[data-doc="food-0"]')!;
    expect(plain.tagName).toBe("circle");
  });

  it("surfaces malformed group specs inline", async () => {
    const view = freshView(api);
    await view.load(":broken");
    expect(view.error).not.toBeNull();
    expect(view.error!.code).toBe("FORMAT");
    const banner = view.root.querySelector(".error-banner")!;
    expect(banner.textContent).toContain("[FORMAT]");
  });

  it("re-renders from the form controls", async () => {
    const view = freshView(api);
    await view.load("");
    const spec = view.root.querySelector<HTMLInputElement>(".spec-input")!;
    const factor = view.root.querySelector<HTMLInputElement>(".c-input")!;
    spec.value = FOOD_SPEC;
    factor.value = "2";
    view.root
      .querySelector("form.analysis-controls")!
      .dispatchEvent(new Event("submit", { bubbles: true, cancelable: true }));
    const deadline = Date.now() + 5000;
    while (view.groups.length === 0 && Date.now() < deadline) {
      await new Promise((resolve) => setTimeout(resolve, 25));
    }
    expect(view.spec).toBe(FOOD_SPEC);
    expect(view.groups.map((g) => g.name)).toEqual(["food"]);
    expect(view.plane.svg.querySelectorAll(".outlier-ring")).toHaveLength(2);
  });
});

describe("analysis view on an empty corpus", () => {
  let srv: TestServer;
  let api: ApiClient;

  beforeAll(async () => {
    srv = await startServer([]);
    api = new ApiClient(srv.base);
  });

  afterAll(async () => {
    await srv.stop();
  });

  it("renders empty axes without error", async () => {
    const view = freshView(api);
    await view.load("");
    expect(view.error).toBeNull();
    expect(view.plane.svg.querySelectorAll(".pt")).toHaveLength(0);
    expect(view.plane.svg.querySelectorAll(".tick")).toHaveLength(18);
    expect(view.root.querySelector(".error-banner")).toBeNull();
  });

  it("keeps empty groups legible", async () => {
    const view = freshView(api);
    await view.load("food:fruit", 2.0);
    expect(view.error).toBeNull();
    const legend = view.root.querySelector('.legend-entry[data-group="food"]')!;
    expect(legend.textContent).toContain("food: 0 documents");
    expect(legend.textContent).toContain("empty");
    expect(view.plane.svg.querySelectorAll(".centroid-cross")).toHaveLength(0);
  });
});
