/** Wire types shared with the serve API (descriptor format version 1). */

export const INNER_DIMENSIONS = [
  "task_agnostic",
  "task_order_discovery",
  "active_data_query",
  "multiple_modalities",
  "open_world",
  "online",
  "federated",
  "multiple_models",
  "uncertainty",
  "generative",
  "episodic_memory",
] as const;

export const OUTER_MEASURES = [
  "data_per_task",
  "task_order",
  "per_task_metrics",
  "optimization_steps",
  "generated_data",
  "stored_data",
  "parameters",
  "memory",
  "compute_time",
  "mac_operations",
  "communication",
  "forgetting",
  "forward_transfer",
  "backward_transfer",
  "openness",
] as const;

export type InnerDimension = (typeof INNER_DIMENSIONS)[number];
export type OuterMeasure = (typeof OUTER_MEASURES)[number];
export type SupervisionMark = "none" | "supervised" | "unsupervised";

export const MAX_ENTRIES = 6;
export const FORMAT_VERSION = "1";

export interface CompassEntry {
  label: string;
  color_slot: number;
  inner: Record<InnerDimension, SupervisionMark>;
  outer: Record<OuterMeasure, boolean>;
  provenance?: Record<string, string>;
}

export interface CompassDocument {
  version: string;
  entries: CompassEntry[];
}

export interface Violation {
  path: string;
  message: string;
}

export interface ValidationReport {
  valid: boolean;
  violations: Violation[];
}

export interface MethodListing {
  id: string;
  label: string;
  source: "bundled" | "cached";
  entry: CompassEntry & { version: string };
}

export interface TooltipRegistry {
  inner: Record<InnerDimension, string>;
  outer: Record<OuterMeasure, string>;
}

export const INNER_DISPLAY_NAMES: Record<InnerDimension, string> = {
  task_agnostic: "Task agnostic",
  task_order_discovery: "Task order discovery",
  active_data_query: "Active data query",
  multiple_modalities: "Multiple modalities",
  open_world: "Open world",
  online: "Online",
  federated: "Federated",
  multiple_models: "Multiple models",
  uncertainty: "Uncertainty",
  generative: "Generative",
  episodic_memory: "Episodic memory",
};

export const OUTER_DISPLAY_NAMES: Record<OuterMeasure, string> = {
  data_per_task: "Data per task",
  task_order: "Task order",
  per_task_metrics: "Per task metrics",
  optimization_steps: "Optimization steps",
  generated_data: "Generated data",
  stored_data: "Stored data",
  parameters: "Parameters",
  memory: "Memory",
  compute_time: "Compute time",
  mac_operations: "MAC operations",
  communication: "Communication",
  forgetting: "Forgetting",
  forward_transfer: "Forward transfer",
  backward_transfer: "Backward transfer",
  openness: "Openness",
};

/** The six palette fills, by color slot (kept in step with the server). */
export const PALETTE_FILLS = [
  "#0000B3",
  "#FF00FF",
  "#008000",
  "#FF9933",
  "#00CCCC",
  "#800080",
] as const;
