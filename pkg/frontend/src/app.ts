// Explorer wiring: one slider per perspective, debounced live
// recompute through the service, rule selection, and the sweep view.
// The client never computes similarity itself; every rendered edge
// comes from the most recently accepted /api/graph payload.

import {
    ApiClient, DatasetSummary, GraphPayload, RuleSpec,
} from "./api.js";
import {
    renderEdgeList, renderGraph, renderSweep,
} from "./render.js";
import {
    RequestSequencer, debounce, formatWeight, normalizeWeights,
} from "./state.js";

export class App {
    readonly sequencer = new RequestSequencer();
    lastGraph: GraphPayload | null = null;

    private summary: DatasetSummary | null = null;
    private stableEdges = new Set<string>();
    private sliders: HTMLInputElement[] = [];
    private inFlight = false;
    private dirty = false;
    private readonly requestRecompute: () => void;

    constructor(
        private readonly root: HTMLElement,
        private readonly api: ApiClient,
        debounceMs = 100,
    ) {
        this.requestRecompute = debounce(() => {
            void this.recompute();
        }, debounceMs);
        this.buildSkeleton();
    }

    async init(): Promise<void> {
        try {
            this.summary = await this.api.dataset();
            const current = await this.api.weights();
            this.buildControls(this.summary, current.weights);
            this.clearError();
        } catch (err) {
            this.showError(`failed to load dataset: ${(err as Error).message}`);
            this.controlsFieldset.disabled = true;
            return;
        }
        await this.recompute();
    }

    // -- DOM construction --------------------------------------------------

    private buildSkeleton(): void {
        this.root.innerHTML = `
          <div class="banner hidden" id="banner" role="alert"></div>
          <header>
            <h1>similarity explorer</h1>
            <span id="dataset-name"></span>
          </header>
          <main>
            <fieldset id="controls">
              <div id="sliders"></div>
              <div class="rule-row">
                <label>rule
                  <select id="rule-kind">
                    <option value="maximal">maximal</option>
                    <option value="knn">knn</option>
                    <option value="threshold">threshold</option>
                  </select>
                </label>
                <input id="rule-param" type="number" class="hidden" value="2">
              </div>
              <div class="sweep-row">
                <label>grid step
                  <input id="sweep-delta" type="text" value="0.25" size="6">
                </label>
                <button id="sweep-run" type="button">sweep weight space</button>
              </div>
            </fieldset>
            <section>
              <svg id="graph" xmlns="http://www.w3.org/2000/svg"></svg>
              <ul id="edges"></ul>
            </section>
            <section id="sweep"></section>
          </main>`;
        this.el("rule-kind").addEventListener("change", () => {
            const kind = (this.el("rule-kind") as HTMLSelectElement).value;
            const param = this.el("rule-param") as HTMLInputElement;
            param.classList.toggle("hidden", kind === "maximal");
            if (kind === "knn") {
                param.step = "1";
                param.min = "1";
                param.value = "2";
            } else if (kind === "threshold") {
                param.step = "0.05";
                param.min = "0";
                param.value = "0.25";
            }
            this.requestRecompute();
        });
        this.el("rule-param").addEventListener("input", () => {
            this.requestRecompute();
        });
        this.el("sweep-run").addEventListener("click", () => {
            void this.runSweep();
        });
    }

    private buildControls(summary: DatasetSummary, weights: number[]): void {
        const slidersHost = this.el("sliders");
        slidersHost.replaceChildren();
        this.sliders = [];
        this.el("dataset-name").textContent =
            `${summary.name} (${summary.artifacts.length} artifacts)`;
        summary.perspectives.forEach((perspective, index) => {
            const row = document.createElement("label");
            row.className = "slider-row";
            const title = document.createElement("span");
            title.textContent =
                `${perspective.name || perspective.id} (${perspective.size})`;
            const slider = document.createElement("input");
            slider.type = "range";
            slider.min = "0";
            slider.max = "1";
            slider.step = "0.01";
            slider.value = String(weights[index] ?? 0);
            slider.dataset.perspective = perspective.id;
            slider.addEventListener("input", () => this.onSliderInput());
            const norm = document.createElement("output");
            norm.className = "norm-weight";
            row.append(title, slider, norm);
            slidersHost.appendChild(row);
            this.sliders.push(slider);
        });
        this.updateNormalizedLabels();
    }

    // -- interaction --------------------------------------------------------

    onSliderInput(): void {
        this.updateNormalizedLabels();
        this.requestRecompute();
    }

    sliderValues(): number[] {
        return this.sliders.map((s) => Number(s.value));
    }

    normalizedWeights(): number[] {
        return normalizeWeights(this.sliderValues());
    }

    currentRule(): RuleSpec {
        const kind = (this.el("rule-kind") as HTMLSelectElement).value;
        const param = (this.el("rule-param") as HTMLInputElement).value;
        if (kind === "knn") return { kind, n: Number(param) || 1 };
        if (kind === "threshold") return { kind, t: Number(param) || 0 };
        return { kind: "maximal" };
    }

    private updateNormalizedLabels(): void {
        const normalized = this.normalizedWeights();
        this.root.querySelectorAll<HTMLOutputElement>(".norm-weight")
            .forEach((out, index) => {
                out.textContent = formatWeight(normalized[index]);
            });
    }

    // At most one round trip in flight; a change arriving meanwhile is
    // coalesced into one follow-up run, so the service always ends at
    // the final slider state and only the latest response renders.
    async recompute(): Promise<void> {
        if (this.inFlight) {
            this.dirty = true;
            return;
        }
        this.inFlight = true;
        try {
            do {
                this.dirty = false;
                const ticket = this.sequencer.next();
                const weights = this.normalizedWeights();
                const rule = this.currentRule();
                try {
                    await this.api.putWeights(weights);
                    const graph = await this.api.graph(rule);
                    // superseded by a newer ticket or by slider input
                    // that arrived while this round trip was in flight
                    if (!this.sequencer.isCurrent(ticket) || this.dirty) {
                        continue;
                    }
                    if (this.summary &&
                        graph.snapshot_version !== this.summary.snapshot_version) {
                        this.showError("dataset changed on the server; " +
                            "reload the page");
                        continue;
                    }
                    this.acceptGraph(graph);
                } catch (err) {
                    if (this.sequencer.isCurrent(ticket)) {
                        // keep the last good graph on screen
                        this.showError(
                            `recompute failed: ${(err as Error).message}`);
                    }
                }
            } while (this.dirty);
        } finally {
            this.inFlight = false;
        }
    }

    private acceptGraph(graph: GraphPayload): void {
        this.clearError();
        this.lastGraph = graph;
        renderGraph(this.svg, graph, this.stableEdges);
        renderEdgeList(this.el("edges"), graph);
    }

    async runSweep(): Promise<void> {
        const delta = Number((this.el("sweep-delta") as HTMLInputElement).value);
        try {
            const report = await this.api.sweep(delta, this.currentRule());
            this.stableEdges = renderSweep(this.el("sweep"), report);
            if (this.lastGraph) {
                renderGraph(this.svg, this.lastGraph, this.stableEdges);
            }
            this.clearError();
        } catch (err) {
            this.showError(`sweep failed: ${(err as Error).message}`);
        }
    }

    // -- small helpers -------------------------------------------------------

    renderedEdgePairs(): [string, string][] {
        return [...this.el("edges").querySelectorAll("li")].map((item) => [
            item.dataset.a ?? "", item.dataset.b ?? "",
        ]);
    }

    private get controlsFieldset(): HTMLFieldSetElement {
        return this.el("controls") as HTMLFieldSetElement;
    }

    private get svg(): SVGSVGElement {
        return this.el("graph") as unknown as SVGSVGElement;
    }

    private el(id: string): HTMLElement {
        const found = this.root.querySelector<HTMLElement>(`#${id}`);
        if (!found) throw new Error(`missing element #${id}`);
        return found;
    }

    private showError(message: string): void {
        const banner = this.el("banner");
        banner.textContent = message;
        banner.classList.remove("hidden");
    }

    private clearError(): void {
        const banner = this.el("banner");
        banner.textContent = "";
        banner.classList.add("hidden");
    }
}
