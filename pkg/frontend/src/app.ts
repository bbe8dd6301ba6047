// Designer workbench: requirements -> ranked materials -> layup/charts.
// All numbers on screen come from service responses; this module only
// wires forms, state, and charts together.

import { ApiClient, ApiError, LatestWins } from "./api";
import { renderLineChart, type ChartSeries } from "./charts";
import {
  classBadgeModel,
  clmeSeries,
  ctmeSeries,
  matchTableModel,
  reportTableModel,
  sweepSeriesModel,
} from "./render";
import { ScenarioStore, defaultScenario } from "./state";
import type { FiberRecordDto, LaminateSpecDto, RequirementPayload } from "./types";
import { FIBER_SLOTS, LINGUISTIC_GRADES, POLYMER_SLOTS } from "./types";

const SWEEP_THETAS = [0, 15, 30, 45, 60, 75, 90];

// Seven-plane example layup; matches the service's bundled preset.
export const EXAMPLE_LAYUP: LaminateSpecDto = {
  plane_volume_cm3: 250,
  fiber: { length: 25, diameter: 0.635, modulus_gpa: 120 },
  matrix: { modulus_gpa: 100 },
  planes: [
    { vf: 0.33, theta_deg: 0 },
    { vf: 0.44, theta_deg: 15 },
    { vf: 0.55, theta_deg: 30 },
    { vf: 0.66, theta_deg: 45 },
    { vf: 0.77, theta_deg: 60 },
    { vf: 0.88, theta_deg: 75 },
    { vf: 0.99, theta_deg: 90 },
  ],
};

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) node.setAttribute(key, value);
  if (text !== undefined) node.textContent = text;
  return node;
}

export class WorkbenchApp {
  private store: ScenarioStore;
  private readonly analyzeGuard = new LatestWins();
  private fiberCatalog: FiberRecordDto[] = [];
  private matrixShear = new Map<string, number>();

  constructor(
    private readonly root: HTMLElement,
    private readonly client: ApiClient,
  ) {
    this.store = new ScenarioStore(defaultScenario("untitled", EXAMPLE_LAYUP));
  }

  async init(): Promise<void> {
    this.root.innerHTML = "";
    this.root.append(
      this.buildRequirementPanel(),
      this.buildFiberPanel(),
      this.buildLayupPanel(),
    );
    try {
      const [polymers, fibers] = await Promise.all([
        this.client.polymers(),
        this.client.fibers(),
      ]);
      this.fiberCatalog = fibers;
      for (const p of polymers) {
        this.matrixShear.set(p.name, Number(p["shear_strength_mpa"]));
      }
      this.setStatus(`connected: ${polymers.length} polymers, ${fibers.length} fibers`);
    } catch (err) {
      this.setStatus(`service unreachable: ${(err as Error).message}`, true);
    }
    this.renderLayup();
  }

  private setStatus(message: string, isError = false): void {
    const bar = this.root.querySelector("#status-bar");
    if (bar) {
      bar.textContent = message;
      bar.className = isError ? "status error" : "status";
    }
  }

  // ----- requirements panel ------------------------------------------------

  private buildRequirementPanel(): HTMLElement {
    const panel = el("section", { class: "panel", id: "requirements-panel" });
    panel.append(el("h2", {}, "1. Matrix requirements"));
    panel.append(el("div", { class: "status", id: "status-bar" }, "connecting..."));
    const form = el("form", { id: "requirement-form" });
    for (const slot of POLYMER_SLOTS) {
      const row = el("label", { class: "field", "data-slot": slot.name });
      row.append(el("span", {}, slot.label));
      if (slot.kind === "numeric") {
        row.append(el("input", {
          type: "number", step: "any", min: "0", name: slot.name, required: "",
        }));
      } else {
        const select = el("select", { name: slot.name, required: "" });
        select.append(el("option", { value: "" }, "-- grade --"));
        for (const grade of LINGUISTIC_GRADES) {
          select.append(el("option", { value: grade }, grade));
        }
        row.append(select);
      }
      row.append(el("small", { class: "field-error" }));
      form.append(row);
    }
    const submit = el("button", { type: "submit", id: "match-button", disabled: "" },
                      "Rank matrices");
    form.append(submit);
    const allFilled = () => POLYMER_SLOTS.every((slot) => {
      const field = form.elements.namedItem(slot.name) as
        HTMLInputElement | HTMLSelectElement | null;
      return field !== null && field.value !== "";
    });
    form.addEventListener("input", () => {
      submit.disabled = !allFilled();
    });
    form.addEventListener("submit", (event) => {
      event.preventDefault();
      void this.onRankMatrices(form);
    });
    panel.append(form);
    panel.append(el("div", { id: "match-table" }));
    return panel;
  }

  private readRequirement(form: HTMLFormElement): RequirementPayload {
    const values: Record<string, number | string> = {};
    for (const slot of POLYMER_SLOTS) {
      const field = form.elements.namedItem(slot.name) as HTMLInputElement | HTMLSelectElement;
      values[slot.name] = slot.kind === "numeric" ? Number(field.value) : field.value;
    }
    return { schema: "polymer", values };
  }

  private clearFieldErrors(form: HTMLFormElement): void {
    form.querySelectorAll(".field-error").forEach((node) => {
      node.textContent = "";
    });
  }

  private showFieldError(form: HTMLFormElement, slot: string | null, message: string): void {
    const row = slot ? form.querySelector(`[data-slot="${slot}"] .field-error`) : null;
    if (row) {
      row.textContent = message;
    } else {
      this.setStatus(message, true);
    }
  }

  private async onRankMatrices(form: HTMLFormElement): Promise<void> {
    this.clearFieldErrors(form);
    try {
      const response = await this.client.selectMatrix(this.readRequirement(form));
      this.renderMatchTable(response.results);
    } catch (err) {
      if (err instanceof ApiError) {
        this.showFieldError(form, err.detail, err.message);
      } else {
        this.setStatus((err as Error).message, true);
      }
    }
  }

  private renderMatchTable(results: { rank: number; name: string; strength: number }[]): void {
    const host = this.root.querySelector("#match-table")!;
    host.innerHTML = "";
    const table = el("table");
    const head = el("tr");
    ["rank", "material", "strength"].forEach((h) => head.append(el("th", {}, h)));
    table.append(head);
    for (const row of matchTableModel(results)) {
      const tr = el("tr", { class: "match-row", "data-name": row.name });
      tr.append(el("td", {}, row.rank));
      tr.append(el("td", {}, row.name));
      tr.append(el("td", { class: "num" }, row.strength));
      tr.addEventListener("click", () => {
        this.store.setSelectedMatrix(row.name);
        this.root.querySelectorAll(".match-row").forEach((r) => r.classList.remove("selected"));
        tr.classList.add("selected");
        this.setStatus(`matrix selected: ${row.name}`);
      });
      table.append(tr);
    }
    host.append(table);
  }

  // ----- fiber panel -------------------------------------------------------

  private buildFiberPanel(): HTMLElement {
    const panel = el("section", { class: "panel", id: "fiber-panel" });
    panel.append(el("h2", {}, "2. Reinforcement fiber"));
    const form = el("form", { id: "fiber-form" });
    for (const slot of FIBER_SLOTS) {
      const row = el("label", { class: "field", "data-slot": slot.name });
      row.append(el("span", {}, slot.label));
      row.append(el("input", {
        type: "number", step: "any", min: "0", name: slot.name, required: "",
      }));
      row.append(el("small", { class: "field-error" }));
      form.append(row);
    }
    const tauRow = el("label", { class: "field", "data-slot": "tau_c" });
    tauRow.append(el("span", {}, "Bond strength override tau_c (MPa, optional)"));
    tauRow.append(el("input", { type: "number", step: "any", min: "0", name: "tau_c" }));
    tauRow.append(el("small", { class: "field-error" }));
    form.append(tauRow);
    const button = el("button", { type: "submit", id: "fiber-button" },
                      "Classify and rank fibers");
    form.append(button);
    form.addEventListener("submit", (event) => {
      event.preventDefault();
      void this.onFiberSearch(form);
    });
    panel.append(form);
    panel.append(el("div", { id: "class-badge" }));
    panel.append(el("div", { id: "fiber-table" }));
    return panel;
  }

  private async onFiberSearch(form: HTMLFormElement): Promise<void> {
    this.clearFieldErrors(form);
    const values: Record<string, number> = {};
    for (const slot of FIBER_SLOTS) {
      const field = form.elements.namedItem(slot.name) as HTMLInputElement;
      values[slot.name] = Number(field.value);
    }
    const tauField = form.elements.namedItem("tau_c") as HTMLInputElement;
    const override = tauField.value === "" ? undefined : Number(tauField.value);
    const matrix = this.store.current.selectedMatrix ?? undefined;
    if (override === undefined && matrix === undefined) {
      this.showFieldError(form, "tau_c",
        "pick a matrix first or enter a bond-strength override");
      return;
    }
    const tauForClassify = override ?? this.matrixShear.get(matrix!);
    try {
      if (tauForClassify !== undefined) {
        const badge = await this.client.classifyFiber({
          sigma_f: values["tensile_strength_mpa"],
          d: values["diameter_mm"],
          l: values["length_mm"],
          tau_c: tauForClassify,
        });
        this.renderClassBadge(badge);
      }
      const selection = await this.client.selectFiber(
        { schema: "fiber", values },
        { matrix, tau_c_override: override },
      );
      this.renderFiberTable(selection.results);
    } catch (err) {
      if (err instanceof ApiError && err.code === "empty_class") {
        this.renderEmptyClass(err);
      } else if (err instanceof ApiError) {
        this.showFieldError(form, err.detail, err.message);
      } else {
        this.setStatus((err as Error).message, true);
      }
    }
  }

  private renderClassBadge(response: { l_c: number; class: string }): void {
    const host = this.root.querySelector("#class-badge")!;
    const model = classBadgeModel(response);
    host.innerHTML = "";
    host.append(el("span", { class: `badge badge-${model.label.toLowerCase()}` },
                   model.label));
    host.append(el("span", { class: "num" }, ` l_c = ${model.criticalLength} mm`));
  }

  private renderEmptyClass(err: ApiError): void {
    const host = this.root.querySelector("#fiber-table")!;
    host.innerHTML = "";
    host.append(el("p", { class: "empty-state" },
      `No catalog fiber falls in the predicted ${err.detail ?? ""} class (${err.code}).`));
  }

  private renderFiberTable(results: { rank: number; name: string; strength: number }[]): void {
    const host = this.root.querySelector("#fiber-table")!;
    host.innerHTML = "";
    const table = el("table");
    const head = el("tr");
    ["rank", "fiber", "strength"].forEach((h) => head.append(el("th", {}, h)));
    table.append(head);
    for (const row of matchTableModel(results)) {
      const tr = el("tr", { class: "fiber-row", "data-name": row.name });
      tr.append(el("td", {}, row.rank));
      tr.append(el("td", {}, row.name));
      tr.append(el("td", { class: "num" }, row.strength));
      tr.addEventListener("click", () => {
        const record = this.fiberCatalog.find((f) => f.name === row.name);
        if (record) {
          this.store.setSelectedFiber(record);
          this.setStatus(`fiber selected: ${record.name} (written into layup)`);
          this.renderLayup();
          void this.recompute();
        }
      });
      table.append(tr);
    }
    host.append(table);
  }

  // ----- layup panel -------------------------------------------------------

  private buildLayupPanel(): HTMLElement {
    const panel = el("section", { class: "panel wide", id: "layup-panel" });
    const header = el("div", { class: "panel-header" });
    header.append(el("h2", {}, "3. Layup and stiffness"));
    const stale = el("span", { id: "stale-badge", class: "badge badge-stale hidden" },
                     "stale");
    header.append(stale);
    const undoButton = el("button", { type: "button", id: "undo-button" }, "Undo");
    undoButton.addEventListener("click", () => {
      if (this.store.undo()) {
        this.renderLayup();
        this.renderReport();
        this.setStatus("undid last edit");
      }
    });
    header.append(undoButton);
    const preset = el("button", { type: "button", id: "preset-button" },
                      "Load example layup");
    preset.addEventListener("click", () => {
      this.store = new ScenarioStore(defaultScenario("example", EXAMPLE_LAYUP));
      this.renderLayup();
      void this.recompute();
    });
    header.append(preset);
    const exportButton = el("button", { type: "button", id: "export-button" }, "Export");
    exportButton.addEventListener("click", () => this.exportScenario());
    header.append(exportButton);
    const importInput = el("input", { type: "file", id: "import-input", accept: ".json" });
    importInput.addEventListener("change", () => void this.importScenario(importInput));
    header.append(importInput);
    panel.append(header);
    panel.append(el("div", { id: "plane-editor" }));
    panel.append(el("div", { id: "report-table" }));
    const charts = el("div", { class: "charts" });
    charts.append(el("div", { id: "plane-chart" }));
    charts.append(el("div", { id: "sweep-chart" }));
    panel.append(charts);
    return panel;
  }

  private renderLayup(): void {
    const host = this.root.querySelector("#plane-editor");
    if (!host) return;
    host.innerHTML = "";
    const scenario = this.store.current;
    const table = el("table");
    const head = el("tr");
    ["plane", "volume fraction", "orientation (deg)", ""].forEach((h) =>
      head.append(el("th", {}, h)));
    table.append(head);
    scenario.laminate.planes.forEach((plane, index) => {
      const tr = el("tr");
      tr.append(el("td", {}, String(index + 1)));
      for (const field of ["vf", "theta_deg"] as const) {
        const td = el("td");
        const input = el("input", {
          type: "number", step: "any", value: String(plane[field]),
          "data-plane": String(index), "data-field": field,
        });
        input.addEventListener("change", () => {
          const error = this.store.setPlaneField(index, field, Number(input.value));
          if (error) {
            input.classList.add("invalid");
            input.title = error.message;
            return; // invalid: flagged at the field, no request sent
          }
          input.classList.remove("invalid");
          input.title = "";
          this.renderStale();
          void this.recompute();
        });
        td.append(input);
        tr.append(td);
      }
      const actions = el("td");
      const remove = el("button", { type: "button" }, "x");
      remove.addEventListener("click", () => {
        if (!this.store.removePlane(index)) {
          this.renderLayup();
          this.renderStale();
          void this.recompute();
        }
      });
      actions.append(remove);
      tr.append(actions);
      table.append(tr);
    });
    const add = el("button", { type: "button", id: "add-plane" }, "Add plane");
    add.addEventListener("click", () => {
      const last = scenario.laminate.planes[scenario.laminate.planes.length - 1];
      this.store.addPlane({ ...last });
      this.renderLayup();
      this.renderStale();
      void this.recompute();
    });
    host.append(table, add);
    const phase = el("p", { class: "phase-info" },
      `fiber: l=${scenario.laminate.fiber.length} mm, d=${scenario.laminate.fiber.diameter} mm, ` +
      `E=${scenario.laminate.fiber.modulus_gpa} GPa | matrix: E=${scenario.laminate.matrix.modulus_gpa} GPa | ` +
      `plane volume ${scenario.laminate.plane_volume_cm3} cm3`);
    host.append(phase);
    this.renderStale();
  }

  private renderStale(): void {
    const badge = this.root.querySelector("#stale-badge");
    if (badge) badge.classList.toggle("hidden", !this.store.stale);
  }

  async recompute(): Promise<void> {
    const spec = this.store.current.laminate;
    const report = await this.analyzeGuard.run((signal) =>
      this.client.analyze(spec, signal));
    if (report === null) return; // superseded by a newer edit
    this.store.applyReport(report);
    this.renderReport();
    try {
      const sweep = await this.client.sweep(spec, SWEEP_THETAS);
      this.renderSweepChart(sweep.rows);
    } catch (err) {
      this.setStatus((err as Error).message, true);
    }
  }

  private renderReport(): void {
    const scenario = this.store.current;
    this.renderStale();
    const tableHost = this.root.querySelector("#report-table");
    const chartHost = this.root.querySelector("#plane-chart");
    if (!tableHost || !chartHost) return;
    tableHost.innerHTML = "";
    chartHost.innerHTML = "";
    const report = scenario.lastReport;
    if (!report) return;

    const model = reportTableModel(report);
    const table = el("table", { class: "report" });
    const head = el("tr");
    model.header.forEach((h) => head.append(el("th", {}, h)));
    table.append(head);
    for (const row of [...model.rows, model.sumRow, model.meanRow]) {
      const tr = el("tr");
      row.forEach((cell, i) =>
        tr.append(el("td", { class: i >= 2 ? "num" : "" }, cell)));
      table.append(tr);
    }
    tableHost.append(table);

    const ghost = this.store.ghostSeries;
    const series: ChartSeries[] = [
      { label: "clme", values: clmeSeries(report), color: "#1f6feb" },
      { label: "ctme", values: ctmeSeries(report), color: "#d29922" },
    ];
    if (ghost) {
      series.push({ label: "clme (previous)", values: ghost.clme,
                    color: "#9cb7e8", dashed: true });
      series.push({ label: "ctme (previous)", values: ghost.ctme,
                    color: "#e4cf9c", dashed: true });
    }
    chartHost.innerHTML = renderLineChart(series, {
      title: "per-plane stiffness (GPa*cm3 scale)",
      xLabels: report.rows.map((r) => String(r.plane)),
    });
  }

  private renderSweepChart(rows: { theta_deg: number; mean_clme: number; mean_ctme: number }[]): void {
    const host = this.root.querySelector("#sweep-chart");
    if (!host) return;
    const model = sweepSeriesModel(rows);
    host.innerHTML = renderLineChart(
      [
        { label: "mean clme", values: model.meanClme, color: "#1f6feb" },
        { label: "mean ctme", values: model.meanCtme, color: "#d29922" },
      ],
      {
        title: "mean stiffness vs orientation",
        xLabels: model.thetas.map((t) => String(t)),
      },
    );
  }

  private exportScenario(): void {
    const blob = new Blob([this.store.exportJson()], { type: "application/json" });
    const url = URL.createObjectURL(blob);
    const link = el("a", { href: url, download: "scenario.json" });
    link.click();
    URL.revokeObjectURL(url);
  }

  private async importScenario(input: HTMLInputElement): Promise<void> {
    const file = input.files?.[0];
    if (!file) return;
    try {
      this.store = ScenarioStore.importJson(await file.text());
      this.renderLayup();
      this.renderReport();
      this.setStatus(`imported scenario from ${file.name}`);
    } catch (err) {
      this.setStatus((err as Error).message, true);
    }
  }
}

declare global {
  interface Window {
    workbench?: WorkbenchApp;
  }
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  const params = new URLSearchParams(window.location.search);
  const base = params.get("api") ?? "http://127.0.0.1:8760";
  const app = new WorkbenchApp(document.getElementById("app")!, new ApiClient(base));
  window.workbench = app;
  void app.init();
}
