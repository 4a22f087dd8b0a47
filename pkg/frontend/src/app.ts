/** Entry point: hash routing between the session board and analysis view.
 *
 * The API base defaults to the page's own origin (the bundle can be served
 * by the corpus service itself); `?api=http://host:port` points elsewhere.
 */

import { AnalysisView } from "./analysis.js";
import { ApiClient } from "./api.js";
import { SessionBoard } from "./board.js";

function apiBase(): string {
  const param = new URLSearchParams(window.location.search).get("api");
  return param ?? "";
}

export function mount(root: HTMLElement): void {
  const api = new ApiClient(apiBase());
  const nav = document.createElement("nav");
  nav.className = "top-nav";
  const boardLink = document.createElement("a");
  boardLink.href = "#/board";
  boardLink.textContent = "session board";
  const analysisLink = document.createElement("a");
  analysisLink.href = "#/analysis";
  analysisLink.textContent = "analysis";
  nav.append(boardLink, analysisLink);

  const main = document.createElement("main");
  main.className = "view";
  root.replaceChildren(nav, main);

  const board = new SessionBoard(document.createElement("div"), api);
  const analysis = new AnalysisView(document.createElement("div"), api);

  const route = (): void => {
    if (window.location.hash.startsWith("#/analysis")) {
      main.replaceChildren(analysis.root);
      void analysis.load();
    } else {
      main.replaceChildren(board.root);
      void board.load();
    }
  };
  window.addEventListener("hashchange", route);
  route();
}

const rootEl = document.getElementById("app");
if (rootEl) {
  mount(rootEl);
}
