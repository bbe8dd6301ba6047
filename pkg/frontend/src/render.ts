// Pure view-model builders. Every numeric string shown in a results
// panel is produced here by String()-ing a service response field, so
// the interception test can trace each displayed number back to the
// wire payload.

import type {
  ClassifyResponse,
  RankedResult,
  ReportDto,
  SweepRowDto,
} from "./types";

export interface MatchRow {
  rank: string;
  name: string;
  strength: string;
}

export function matchTableModel(results: RankedResult[]): MatchRow[] {
  return results.map((r) => ({
    rank: String(r.rank),
    name: r.name,
    strength: String(r.strength),
  }));
}

export interface ClassBadgeModel {
  label: string;
  criticalLength: string;
}

export function classBadgeModel(response: ClassifyResponse): ClassBadgeModel {
  return {
    label: response.class,
    criticalLength: String(response.l_c),
  };
}

export interface ReportTableModel {
  header: string[];
  rows: string[][];
  sumRow: string[];
  meanRow: string[];
}

const REPORT_COLUMNS = [
  "vf", "vsf", "fiber_count", "vf_phase", "vm_phase", "clme", "ctme",
] as const;

export function reportTableModel(report: ReportDto): ReportTableModel {
  return {
    header: ["plane", "theta_deg", ...REPORT_COLUMNS],
    rows: report.rows.map((row) => [
      String(row.plane),
      String(row.theta_deg),
      ...REPORT_COLUMNS.map((c) => String(row[c])),
    ]),
    sumRow: ["SUM", "", ...REPORT_COLUMNS.map((c) => String(report.sums[c]))],
    meanRow: ["MEAN", "", ...REPORT_COLUMNS.map((c) => String(report.means[c]))],
  };
}

/** Per-plane series, verbatim from the response rows. */
export function clmeSeries(report: ReportDto): number[] {
  return report.rows.map((r) => r.clme);
}

export function ctmeSeries(report: ReportDto): number[] {
  return report.rows.map((r) => r.ctme);
}

export interface SweepSeriesModel {
  thetas: number[];
  meanClme: number[];
  meanCtme: number[];
}

export function sweepSeriesModel(rows: SweepRowDto[]): SweepSeriesModel {
  return {
    thetas: rows.map((r) => r.theta_deg),
    meanClme: rows.map((r) => r.mean_clme),
    meanCtme: rows.map((r) => r.mean_ctme),
  };
}

/** Flatten every number in a JSON payload, for traceability checks. */
export function collectNumbers(payload: unknown, into: Set<number> = new Set()): Set<number> {
  if (typeof payload === "number") {
    into.add(payload);
  } else if (Array.isArray(payload)) {
    for (const item of payload) collectNumbers(item, into);
  } else if (payload !== null && typeof payload === "object") {
    for (const value of Object.values(payload as Record<string, unknown>)) {
      collectNumbers(value, into);
    }
  }
  return into;
}
