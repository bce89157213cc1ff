// Thin client for the workspace service. Every number the UI displays
// comes back from these calls; the client only moves documents around.

import {
  ClassificationReport,
  FitResponse,
  ProjectDocument,
  ProjectMeta,
  RankingRequest,
  Row,
  ThresholdPoint,
  ValidationReport,
  WeightPreview,
} from "./types";

let baseUrl = "";

export function setBaseUrl(url: string) {
  baseUrl = url.replace(/\/+$/, "");
}

export class ApiError extends Error {
  status: number;
  body: any;

  constructor(status: number, body: any) {
    super(body && body.detail ? String(body.detail) : `request failed with status ${status}`);
    this.status = status;
    this.body = body;
  }

  // the server's validation report, when the body carries one
  get report(): ValidationReport | null {
    if (this.body && Array.isArray(this.body.issues)) return this.body as ValidationReport;
    return null;
  }
}

async function request<T>(method: string, path: string, body?: unknown): Promise<T> {
  const init: RequestInit = { method };
  if (body !== undefined) {
    init.body = JSON.stringify(body);
    init.headers = { "content-type": "application/json" };
  }
  const res = await fetch(baseUrl + path, init);
  const text = await res.text();
  const json = text ? JSON.parse(text) : null;
  if (!res.ok) throw new ApiError(res.status, json);
  return json as T;
}

export function listProjects(): Promise<ProjectMeta[]> {
  return request("GET", "/projects");
}

export function createProject(name: string, dummyCategoryName?: string): Promise<ProjectMeta> {
  return request("POST", "/projects", { name, dummy_category_name: dummyCategoryName });
}

export function getProject(id: string): Promise<ProjectDocument> {
  return request("GET", `/projects/${id}`);
}

export function deleteProject(id: string): Promise<null> {
  return request("DELETE", `/projects/${id}`);
}

export function duplicateProject(id: string): Promise<ProjectMeta> {
  return request("POST", `/projects/${id}/duplicate`);
}

export function putModule(id: string, module: string, rows: Row[], version: number): Promise<ProjectMeta> {
  return request("PUT", `/projects/${id}/modules/${module}?version=${version}`, rows);
}

export function execute(id: string, epsilon = 0): Promise<ClassificationReport> {
  return request("POST", `/projects/${id}/execute`, epsilon ? { epsilon } : {});
}

// The import body is the raw zip archive, not JSON, so it bypasses request().
export async function importProject(archive: Uint8Array | Blob, name?: string): Promise<ProjectMeta> {
  const suffix = name ? `?name=${encodeURIComponent(name)}` : "";
  const res = await fetch(`${baseUrl}/projects/import${suffix}`, {
    method: "POST",
    body: archive as BodyInit,
    headers: { "content-type": "application/zip" },
  });
  const text = await res.text();
  const json = text ? JSON.parse(text) : null;
  if (!res.ok) throw new ApiError(res.status, json);
  return json as ProjectMeta;
}

export function exportUrl(id: string): string {
  return `${baseUrl}/projects/${id}/export`;
}

export function srfWeights(ranking: RankingRequest): Promise<WeightPreview> {
  return request("POST", "/compute/srf-weights", ranking);
}

export function fitThresholds(points: ThresholdPoint[]): Promise<FitResponse> {
  return request("POST", "/compute/fit-thresholds", { points });
}
