// Read-only views over a classification report: the membership matrix,
// the per-candidate drill-down, and staleness against the project
// version token.

import {
  ActionAssignment,
  CategoryOutcome,
  ClassificationReport,
  ComparisonTrace,
  ProjectMeta,
} from "./types";

export interface MatrixColumn {
  name: string;
  dummy: boolean;
}

export interface MatrixRow {
  action: string;
  marks: boolean[];
  dummy: boolean;
}

export function matrixColumns(report: ClassificationReport): MatrixColumn[] {
  const columns = report.categories.map((name) => ({ name, dummy: false }));
  return [...columns, { name: report.dummy_category_name, dummy: true }];
}

export function matrixRows(report: ClassificationReport): MatrixRow[] {
  const columns = matrixColumns(report);
  return report.assignments.map((assignment) => ({
    action: assignment.action,
    dummy: assignment.dummy,
    marks: columns.map((column) =>
      column.dummy ? assignment.dummy : assignment.accepted.includes(column.name),
    ),
  }));
}

export function assignmentFor(report: ClassificationReport, action: string): ActionAssignment | undefined {
  return report.assignments.find((assignment) => assignment.action === action);
}

export function outcomeFor(
  report: ClassificationReport,
  action: string,
  category: string,
): CategoryOutcome | undefined {
  const assignment = assignmentFor(report, action);
  return assignment?.outcomes.find((outcome) => outcome.category === category);
}

// the comparison that produced the category's likeness degree
export function bestTrace(outcome: CategoryOutcome): ComparisonTrace | undefined {
  return outcome.traces.find((trace) => trace.reference === outcome.best_reference);
}

export interface CriterionBar {
  criterion: string;
  s: number;
  d: number;
}

export function criterionBars(trace: ComparisonTrace): CriterionBar[] {
  return Object.entries(trace.criteria).map(([criterion, parts]) => ({
    criterion,
    s: parts.s,
    d: parts.d,
  }));
}

// Results are stale once the model moved past the version they were
// computed from.
export function resultsAreStale(meta: ProjectMeta): boolean {
  return meta.executed_version !== undefined && meta.executed_version !== meta.version;
}
