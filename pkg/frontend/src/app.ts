/** DOM wiring for the compass builder. State transitions live in
 * editor.ts; rendering and validation live on the server. Preview
 * requests are serialized and superseded ones dropped. */

import { ApiClient, ApiError } from "./api.js";
import {
  EditorState,
  EntryForm,
  Transition,
  addEntry,
  cycleMark,
  deleteEntry,
  emptyForm,
  emptyState,
  entriesFromImportedJson,
  formFromEntry,
  importEntries,
  markExported,
  markPreviewFresh,
  toDocumentJson,
  updateEntry,
} from "./editor.js";
import { downloadText, downloadBlob, filenameStem, svgToPngBlob } from "./export.js";
import {
  CompassEntry,
  INNER_DIMENSIONS,
  INNER_DISPLAY_NAMES,
  MAX_ENTRIES,
  OUTER_DISPLAY_NAMES,
  OUTER_MEASURES,
  PALETTE_FILLS,
  TooltipRegistry,
} from "./types.js";

const MARK_GLYPHS = { none: "–", supervised: "●", unsupervised: "○" } as const;

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

export class App {
  private state: EditorState = emptyState();
  private form: EntryForm = emptyForm();
  private tooltips: TooltipRegistry | null = null;
  private previewToken = 0;
  private lastPreviewSvg = "";

  constructor(private readonly api: ApiClient) {}

  async start(): Promise<void> {
    this.buildControls();
    this.bindButtons();
    try {
      this.tooltips = await this.api.tooltips();
      this.applyTooltips();
      this.setStatus("ready", "");
    } catch (error) {
      this.setStatus("offline", "serve API unreachable; start `cleva serve` and reload");
    }
    window.addEventListener("beforeunload", (event) => {
      if (this.state.dirty) {
        event.preventDefault();
        event.returnValue = "";
      }
    });
    this.renderAll();
  }

  // -- construction --------------------------------------------------------

  private buildControls(): void {
    const innerBox = el<HTMLDivElement>("inner-controls");
    for (const dimension of INNER_DIMENSIONS) {
      const row = document.createElement("div");
      row.className = "control-row";
      const name = document.createElement("span");
      name.textContent = INNER_DISPLAY_NAMES[dimension];
      name.className = "control-name";
      name.dataset.tooltipKey = `inner.${dimension}`;
      const button = document.createElement("button");
      button.type = "button";
      button.className = "tri-state";
      button.dataset.dimension = dimension;
      button.addEventListener("click", () => {
        this.form.inner[dimension] = cycleMark(this.form.inner[dimension]);
        this.renderForm();
      });
      row.append(name, button);
      innerBox.appendChild(row);
    }

    const outerBox = el<HTMLDivElement>("outer-controls");
    for (const measure of OUTER_MEASURES) {
      const row = document.createElement("label");
      row.className = "control-row";
      const checkbox = document.createElement("input");
      checkbox.type = "checkbox";
      checkbox.dataset.measure = measure;
      checkbox.addEventListener("change", () => {
        this.form.outer[measure] = checkbox.checked;
      });
      const name = document.createElement("span");
      name.textContent = OUTER_DISPLAY_NAMES[measure];
      name.className = "control-name";
      name.dataset.tooltipKey = `outer.${measure}`;
      row.append(checkbox, name);
      outerBox.appendChild(row);
    }
  }

  private applyTooltips(): void {
    if (!this.tooltips) return;
    for (const node of document.querySelectorAll<HTMLElement>("[data-tooltip-key]")) {
      const key = node.dataset.tooltipKey ?? "";
      const [level, name] = key.split(".");
      const text =
        level === "inner"
          ? this.tooltips.inner[name as keyof TooltipRegistry["inner"]]
          : this.tooltips.outer[name as keyof TooltipRegistry["outer"]];
      if (text) node.title = text;
    }
  }

  private bindButtons(): void {
    el<HTMLInputElement>("label-field").addEventListener("input", (event) => {
      this.form.label = (event.target as HTMLInputElement).value;
    });
    el("add-entry").addEventListener("click", () => this.applyTransition(addEntry(this.state, this.snapshotForm())));
    el("update-entry").addEventListener("click", () => {
      if (this.state.selected === null) {
        this.setStatus("error", "select an entry to update");
        return;
      }
      this.applyTransition(updateEntry(this.state, this.state.selected, this.snapshotForm()));
    });
    el("delete-entry").addEventListener("click", () => {
      if (this.state.selected === null) {
        this.setStatus("error", "select an entry to delete");
        return;
      }
      this.applyTransition(deleteEntry(this.state, this.state.selected));
    });
    el("reload-preview").addEventListener("click", () => void this.refreshPreview());
    el("export-svg").addEventListener("click", () => void this.exportImage("svg"));
    el("export-png").addEventListener("click", () => void this.exportImage("png"));
    el("export-tex").addEventListener("click", () => void this.exportTex());
    el("export-entry").addEventListener("click", () => this.exportEntry());
    el<HTMLInputElement>("import-file").addEventListener("change", (event) => {
      void this.importFiles((event.target as HTMLInputElement).files);
    });
    el("download-methods").addEventListener("click", () => void this.showMethods());
  }

  // -- state plumbing ------------------------------------------------------

  private snapshotForm(): EntryForm {
    return { label: this.form.label, inner: { ...this.form.inner }, outer: { ...this.form.outer } };
  }

  private applyTransition(transition: Transition): void {
    this.state = transition.state;
    if (!transition.ok) {
      this.setStatus("error", transition.message);
      this.showFieldErrors(transition.fieldErrors ?? []);
    } else {
      this.setStatus("ok", "");
      this.showFieldErrors([]);
      void this.refreshPreview();
    }
    this.renderAll();
  }

  private showFieldErrors(errors: { path: string; message: string }[]): void {
    const labelError = el<HTMLSpanElement>("label-error");
    const labelProblem = errors.find((e) => e.path === "label");
    labelError.textContent = labelProblem ? labelProblem.message : "";
  }

  private setStatus(kind: string, message: string): void {
    const status = el<HTMLSpanElement>("status");
    status.dataset.kind = kind;
    status.textContent = message || kind;
  }

  // -- preview -------------------------------------------------------------

  async refreshPreview(): Promise<void> {
    const token = ++this.previewToken;
    const body = toDocumentJson(this.state);
    try {
      const report = await this.api.validate(body);
      if (token !== this.previewToken) return;
      if (!report.valid) {
        this.state = { ...this.state, lastValidation: report };
        this.setStatus("error", report.violations.map((v) => `${v.path}: ${v.message}`).join("; "));
        this.renderAll();
        return;
      }
      const svg = await this.api.render(body);
      if (token !== this.previewToken) return;
      this.lastPreviewSvg = svg;
      this.state = markPreviewFresh(this.state, report);
      el<HTMLDivElement>("preview").innerHTML = svg;
      this.renderAll();
    } catch (error) {
      if (token !== this.previewToken) return;
      const message = error instanceof ApiError ? `${error.code}: ${error.message}` : String(error);
      this.setStatus("error", message);
    }
  }

  // -- import/export -------------------------------------------------------

  private async exportImage(kind: "svg" | "png"): Promise<void> {
    if (this.state.previewStale || !this.lastPreviewSvg) {
      await this.refreshPreview();
    }
    if (!this.lastPreviewSvg) return;
    const stem = filenameStem(this.state.document);
    if (kind === "svg") {
      // exact server bytes: download what the preview shows
      downloadText(`${stem}.svg`, this.lastPreviewSvg, "image/svg+xml");
    } else {
      const blob = await svgToPngBlob(this.lastPreviewSvg);
      downloadBlob(`${stem}.png`, blob);
    }
    this.state = markExported(this.state);
  }

  private async exportTex(): Promise<void> {
    try {
      const tex = await this.api.exportTex(toDocumentJson(this.state));
      downloadText(`${filenameStem(this.state.document)}.tex`, tex, "text/plain");
      this.state = markExported(this.state);
    } catch (error) {
      this.setStatus("error", String(error));
    }
  }

  private exportEntry(): void {
    if (this.state.selected === null) {
      this.setStatus("error", "select an entry to export");
      return;
    }
    const entry = this.state.document.entries[this.state.selected];
    const payload = { version: this.state.document.version, ...entry };
    downloadText(
      `${filenameStem({ version: "1", entries: [entry] })}.json`,
      JSON.stringify(payload, null, 2) + "\n",
      "application/json",
    );
    this.state = markExported(this.state);
  }

  private async importFiles(files: FileList | null): Promise<void> {
    if (!files || files.length === 0) return;
    const incoming: CompassEntry[] = [];
    for (const file of Array.from(files)) {
      try {
        incoming.push(...entriesFromImportedJson(await file.text()));
      } catch (error) {
        this.setStatus("error", `${file.name}: ${String(error)}`);
        return;
      }
    }
    const outcome = importEntries(this.state, incoming);
    this.state = outcome.state;
    if (outcome.message) this.setStatus("error", outcome.message);
    else this.setStatus("ok", `${outcome.added} entries imported`);
    void this.refreshPreview();
    this.renderAll();
  }

  private async showMethods(): Promise<void> {
    const listBox = el<HTMLDivElement>("methods-list");
    listBox.innerHTML = "";
    try {
      const methods = await this.api.methods();
      for (const method of methods) {
        const button = document.createElement("button");
        button.type = "button";
        button.className = "method-option";
        button.textContent = `${method.label} [${method.source}]`;
        button.addEventListener("click", () => {
          const { version: _v, ...entry } = method.entry;
          const outcome = importEntries(this.state, [entry as CompassEntry]);
          this.state = outcome.state;
          if (outcome.message) this.setStatus("error", outcome.message);
          void this.refreshPreview();
          this.renderAll();
        });
        listBox.appendChild(button);
      }
    } catch (error) {
      this.setStatus("offline", "methods repository unreachable; showing nothing");
    }
  }

  // -- rendering -----------------------------------------------------------

  private renderForm(): void {
    el<HTMLInputElement>("label-field").value = this.form.label;
    for (const button of document.querySelectorAll<HTMLButtonElement>("button.tri-state")) {
      const dimension = button.dataset.dimension as keyof EntryForm["inner"];
      const mark = this.form.inner[dimension];
      button.dataset.mark = mark;
      button.textContent = `${MARK_GLYPHS[mark]} ${mark}`;
    }
    for (const checkbox of document.querySelectorAll<HTMLInputElement>("input[data-measure]")) {
      const measure = checkbox.dataset.measure as keyof EntryForm["outer"];
      checkbox.checked = this.form.outer[measure];
    }
  }

  private renderEntryList(): void {
    const list = el<HTMLUListElement>("entry-list");
    list.innerHTML = "";
    this.state.document.entries.forEach((entry, index) => {
      const item = document.createElement("li");
      const swatch = document.createElement("span");
      swatch.className = "swatch";
      swatch.style.backgroundColor = PALETTE_FILLS[entry.color_slot] ?? "#000";
      const name = document.createElement("span");
      name.textContent = entry.label;
      item.append(swatch, name);
      if (index === this.state.selected) item.className = "selected";
      item.addEventListener("click", () => {
        this.state = { ...this.state, selected: index };
        this.form = formFromEntry(entry);
        this.renderAll();
      });
      list.appendChild(item);
    });
    el<HTMLSpanElement>("entry-count").textContent =
      `${this.state.document.entries.length}/${MAX_ENTRIES}`;
  }

  private renderAll(): void {
    this.renderForm();
    this.renderEntryList();
    el<HTMLDivElement>("stale-flag").hidden = !this.state.previewStale;
    this.applyTooltips();
  }
}

export function boot(): void {
  const base = (window as { CLEVA_API_BASE?: string }).CLEVA_API_BASE ?? "http://127.0.0.1:8766";
  const app = new App(new ApiClient(base));
  void app.start();
}
