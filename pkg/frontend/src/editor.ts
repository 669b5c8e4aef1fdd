/** Pure editor-state transitions. The UI layer only dispatches these and
 * re-renders; it never constructs documents by hand, so everything it
 * emits satisfies the schema the server enforces. */

import {
  CompassDocument,
  CompassEntry,
  FORMAT_VERSION,
  INNER_DIMENSIONS,
  InnerDimension,
  MAX_ENTRIES,
  OUTER_MEASURES,
  OuterMeasure,
  SupervisionMark,
  ValidationReport,
} from "./types.js";

/** Form model behind the entry editor: all 26 controls plus the label. */
export interface EntryForm {
  label: string;
  inner: Record<InnerDimension, SupervisionMark>;
  outer: Record<OuterMeasure, boolean>;
}

export interface EditorState {
  document: CompassDocument;
  /** Index of the entry loaded into the form, or null for a fresh form. */
  selected: number | null;
  /** Unsaved changes since the last export/import. */
  dirty: boolean;
  /** True when the preview no longer matches the document. */
  previewStale: boolean;
  lastValidation: ValidationReport | null;
}

export function emptyForm(): EntryForm {
  const inner = {} as Record<InnerDimension, SupervisionMark>;
  for (const dimension of INNER_DIMENSIONS) inner[dimension] = "none";
  const outer = {} as Record<OuterMeasure, boolean>;
  for (const measure of OUTER_MEASURES) outer[measure] = false;
  return { label: "", inner, outer };
}

export function emptyState(): EditorState {
  return {
    document: { version: FORMAT_VERSION, entries: [] },
    selected: null,
    dirty: false,
    previewStale: false,
    lastValidation: null,
  };
}

/** Tri-state control order: none -> supervised -> unsupervised -> none. */
export function cycleMark(mark: SupervisionMark): SupervisionMark {
  if (mark === "none") return "supervised";
  if (mark === "supervised") return "unsupervised";
  return "none";
}

export function lowestFreeSlot(doc: CompassDocument): number | null {
  const used = new Set(doc.entries.map((entry) => entry.color_slot));
  for (let slot = 0; slot < MAX_ENTRIES; slot += 1) {
    if (!used.has(slot)) return slot;
  }
  return null;
}

/** Structural form checks, mirrored after the server's field paths. */
export function formErrors(form: EntryForm): { path: string; message: string }[] {
  const errors: { path: string; message: string }[] = [];
  if (!form.label.trim()) {
    errors.push({ path: "label", message: "label must be non-empty" });
  } else if (form.label.length > 200) {
    errors.push({ path: "label", message: "label exceeds 200 characters" });
  }
  for (const dimension of INNER_DIMENSIONS) {
    const value = form.inner[dimension];
    if (value !== "none" && value !== "supervised" && value !== "unsupervised") {
      errors.push({ path: `inner.${dimension}`, message: "control not set" });
    }
  }
  for (const measure of OUTER_MEASURES) {
    if (typeof form.outer[measure] !== "boolean") {
      errors.push({ path: `outer.${measure}`, message: "control not set" });
    }
  }
  return errors;
}

function entryFromForm(form: EntryForm, slot: number): CompassEntry {
  return {
    label: form.label,
    color_slot: slot,
    inner: { ...form.inner },
    outer: { ...form.outer },
  };
}

export function formFromEntry(entry: CompassEntry): EntryForm {
  return { label: entry.label, inner: { ...entry.inner }, outer: { ...entry.outer } };
}

export type Transition =
  | { ok: true; state: EditorState }
  | { ok: false; state: EditorState; message: string; fieldErrors?: { path: string; message: string }[] };

export function addEntry(state: EditorState, form: EntryForm): Transition {
  const errors = formErrors(form);
  if (errors.length > 0) {
    return { ok: false, state, message: "form incomplete", fieldErrors: errors };
  }
  if (state.document.entries.length >= MAX_ENTRIES) {
    return {
      ok: false,
      state,
      message:
        `A compass holds at most ${MAX_ENTRIES} methods (six discrete colors); ` +
        "remove one first or compare compasses side by side.",
    };
  }
  const slot = lowestFreeSlot(state.document);
  if (slot === null) {
    return { ok: false, state, message: "no free color slot" };
  }
  const entries = [...state.document.entries, entryFromForm(form, slot)];
  return {
    ok: true,
    state: {
      ...state,
      document: { ...state.document, entries },
      selected: entries.length - 1,
      dirty: true,
      previewStale: true,
    },
  };
}

export function updateEntry(state: EditorState, index: number, form: EntryForm): Transition {
  if (index < 0 || index >= state.document.entries.length) {
    return { ok: false, state, message: `no entry at index ${index}` };
  }
  const errors = formErrors(form);
  if (errors.length > 0) {
    return { ok: false, state, message: "form incomplete", fieldErrors: errors };
  }
  const slot = state.document.entries[index].color_slot;
  const entries = state.document.entries.slice();
  entries[index] = entryFromForm(form, slot);
  return {
    ok: true,
    state: {
      ...state,
      document: { ...state.document, entries },
      selected: index,
      dirty: true,
      previewStale: true,
    },
  };
}

export function deleteEntry(state: EditorState, index: number): Transition {
  if (index < 0 || index >= state.document.entries.length) {
    return { ok: false, state, message: `no entry at index ${index}` };
  }
  const entries = state.document.entries.filter((_, i) => i !== index);
  return {
    ok: true,
    state: {
      ...state,
      document: { ...state.document, entries },
      selected: null,
      dirty: true,
      previewStale: true,
    },
  };
}

export interface ImportOutcome {
  state: EditorState;
  added: number;
  rejected: number;
  message: string | null;
}

/** Merge imported entries up to the six-entry cap, re-slotting each to the
 * lowest free color slot. */
export function importEntries(state: EditorState, incoming: CompassEntry[]): ImportOutcome {
  let current = state.document.entries.slice();
  let added = 0;
  for (const entry of incoming) {
    if (current.length >= MAX_ENTRIES) break;
    const slot = lowestFreeSlot({ version: FORMAT_VERSION, entries: current });
    if (slot === null) break;
    current = [...current, { ...entry, color_slot: slot }];
    added += 1;
  }
  const rejected = incoming.length - added;
  const message =
    rejected > 0
      ? `${added} imported, ${rejected} rejected: a compass holds at most ${MAX_ENTRIES} methods`
      : null;
  if (added === 0) {
    return { state, added, rejected, message };
  }
  return {
    state: {
      ...state,
      document: { ...state.document, entries: current },
      dirty: true,
      previewStale: true,
    },
    added,
    rejected,
    message,
  };
}

export function markPreviewFresh(state: EditorState, report: ValidationReport | null): EditorState {
  return { ...state, previewStale: false, lastValidation: report };
}

export function markExported(state: EditorState): EditorState {
  return { ...state, dirty: false };
}

/** Serialize the working document in wire order. */
export function toDocumentJson(state: EditorState): string {
  const doc = {
    version: state.document.version,
    entries: state.document.entries.map((entry) => ({
      label: entry.label,
      color_slot: entry.color_slot,
      inner: Object.fromEntries(INNER_DIMENSIONS.map((d) => [d, entry.inner[d]])),
      outer: Object.fromEntries(OUTER_MEASURES.map((m) => [m, entry.outer[m]])),
      ...(entry.provenance ? { provenance: entry.provenance } : {}),
    })),
  };
  return JSON.stringify(doc, null, 2) + "\n";
}

/** Parse an imported file: either a full document or a single entry. */
export function entriesFromImportedJson(text: string): CompassEntry[] {
  const parsed = JSON.parse(text) as Record<string, unknown>;
  if (Array.isArray((parsed as { entries?: unknown }).entries)) {
    return (parsed as unknown as CompassDocument).entries;
  }
  if ("label" in parsed && "inner" in parsed) {
    const { version: _version, ...entry } = parsed as unknown as CompassEntry & {
      version?: string;
    };
    return [entry as CompassEntry];
  }
  throw new Error("file is neither a compass document nor a single entry");
}
