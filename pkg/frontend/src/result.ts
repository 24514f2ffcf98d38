import { escapeHtml, percentOneDecimal } from "./format";
import type { ClassifyResponse, ServiceConfig } from "./types";

export interface ResultViewModel {
  verdict: "infected" | "uninfected";
  prediction: string;
  confidenceText: string;
  guidance: string;
  showCenters: boolean;
}

/** Verdict and everything shown on the result screen come straight from the
 * service response; nothing is recomputed client-side. */
export function resultViewModel(res: ClassifyResponse, cfg: ServiceConfig): ResultViewModel {
  const infected = res.prediction === cfg.positive_class;
  return {
    verdict: infected ? "infected" : "uninfected",
    prediction: res.prediction,
    confidenceText: percentOneDecimal(res.confidence),
    guidance: infected ? cfg.guidance.infected : cfg.guidance.uninfected,
    showCenters: infected,
  };
}

export function renderResult(vm: ResultViewModel): string {
  const tone = vm.verdict === "infected" ? "alert" : "calm";
  const centers = vm.showCenters
    ? `<p><a href="#/centers" class="button" id="show-centers">Show nearest health centers</a></p>`
    : "";
  return `
    <section class="result ${tone}" aria-live="polite">
      <h2>${vm.verdict === "infected" ? "Possible Monkeypox detected" : "No Monkeypox detected"}</h2>
      <p class="confidence">Model confidence: <strong>${vm.confidenceText}</strong>
        (${escapeHtml(vm.prediction)})</p>
      <p class="guidance">${escapeHtml(vm.guidance)}</p>
      ${centers}
      <p><a href="#/examine">Examine another image</a></p>
    </section>`;
}
