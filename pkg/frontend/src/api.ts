/** Typed client for the serve API. All rendering and validation happen
 * server-side; the UI displays responses unmodified. */

import {
  MethodListing,
  TooltipRegistry,
  ValidationReport,
} from "./types.js";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(
    message: string,
    public readonly code: string,
    public readonly path: string,
    public readonly status: number,
  ) {
    super(message);
  }
}

async function raiseForStatus(response: Response): Promise<void> {
  if (response.ok) return;
  let code = "error";
  let message = `HTTP ${response.status}`;
  let path = "";
  try {
    const body = (await response.json()) as { code?: string; message?: string; path?: string };
    code = body.code ?? code;
    message = body.message ?? message;
    path = body.path ?? "";
  } catch {
    // non-JSON error body; keep the defaults
  }
  throw new ApiError(message, code, path, response.status);
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchImpl: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private async post(path: string, body: string): Promise<Response> {
    const response = await this.fetchImpl(this.baseUrl + path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body,
    });
    await raiseForStatus(response);
    return response;
  }

  private async get(path: string): Promise<Response> {
    const response = await this.fetchImpl(this.baseUrl + path);
    await raiseForStatus(response);
    return response;
  }

  async validate(documentJson: string): Promise<ValidationReport> {
    const response = await this.post("/api/validate", documentJson);
    return (await response.json()) as ValidationReport;
  }

  /** Server-rendered SVG, byte-for-byte what export will download. */
  async render(documentJson: string): Promise<string> {
    const response = await this.post("/api/render", documentJson);
    return await response.text();
  }

  async exportTex(documentJson: string): Promise<string> {
    const response = await this.post("/api/export-tex", documentJson);
    return await response.text();
  }

  async tooltips(): Promise<TooltipRegistry> {
    const response = await this.get("/api/tooltips");
    return (await response.json()) as TooltipRegistry;
  }

  async methods(): Promise<MethodListing[]> {
    const response = await this.get("/api/methods");
    const payload = (await response.json()) as { methods: MethodListing[] };
    return payload.methods;
  }

  async metrics(logJson: string): Promise<{ metrics: Record<string, number>; warnings: string[] }> {
    const response = await this.post("/api/metrics", logJson);
    return (await response.json()) as { metrics: Record<string, number>; warnings: string[] };
  }
}
