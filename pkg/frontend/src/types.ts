// JSON shapes exchanged with the classification service. These mirror
// the documents the server produces; nothing here is computed locally.

export type Row = Record<string, string | number>;

export interface Issue {
  code: string;
  message: string;
  context: Record<string, unknown>;
}

export interface ValidationReport {
  ok: boolean;
  issues: Issue[];
}

export interface ProjectMeta {
  id: string;
  name: string;
  version: number;
  created_at: string;
  updated_at: string;
  dummy_category_name: string;
  executed_version?: number;
}

export interface ProjectDocument extends ProjectMeta {
  modules: Record<string, Row[]>;
  last_results?: ClassificationReport;
}

export interface CriterionTrace {
  delta: number;
  f: number;
  s: number;
  d: number;
}

export interface ComparisonTrace {
  action: string;
  reference: string;
  criteria: Record<string, CriterionTrace>;
  similarity: number;
  normalizer: number;
  dissimilarity: number;
  likeness: number;
}

export interface CategoryOutcome {
  category: string;
  likeness: number;
  best_reference: string;
  accepted: boolean;
  traces: ComparisonTrace[];
}

export interface ActionAssignment {
  action: string;
  accepted: string[];
  dummy: boolean;
  outcomes: CategoryOutcome[];
}

export interface ClassificationReport {
  categories: string[];
  dummy_category_name: string;
  assignments: ActionAssignment[];
}

export interface RankingRequest {
  subsets: string[][];
  blanks: number[];
  z: number;
}

export interface WeightPreview {
  order: string[];
  weights: Record<string, string>;
  exact: Record<string, string>;
}

export interface ThresholdPoint {
  threshold: string;
  level: number;
  difference: number;
}

export interface ThresholdFit {
  kind: "constant" | "affine";
  value?: string;
  slope?: string;
  intercept?: string;
}

export interface FitResponse {
  thresholds: Record<string, ThresholdFit>;
}
