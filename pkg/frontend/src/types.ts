// Wire shapes of the frpkit HTTP service. Field names match the JSON
// payloads exactly; the UI never re-derives any numeric field.

export type SchemaName = "polymer" | "fiber";

export type LinguisticGrade =
  | "NIL" | "Poor" | "Fair" | "Good" | "VeryGood" | "Excellent";

export const LINGUISTIC_GRADES: LinguisticGrade[] = [
  "NIL", "Poor", "Fair", "Good", "VeryGood", "Excellent",
];

export type RequirementValues = Record<string, number | string>;

export interface RequirementPayload {
  schema: SchemaName;
  values: RequirementValues;
}

export interface RankedResult {
  rank: number;
  name: string;
  strength: number;
}

export interface RankedResponse {
  results: RankedResult[];
}

export interface FiberSelectionResponse extends RankedResponse {
  class: string;
}

export interface ClassifyResponse {
  l_c: number;
  class: string;
}

export interface PlaneDto {
  vf: number;
  theta_deg: number;
}

export interface LaminateSpecDto {
  plane_volume_cm3: number;
  fiber: { length: number; diameter: number; modulus_gpa: number };
  matrix: { modulus_gpa: number };
  planes: PlaneDto[];
}

export interface ReportRowDto {
  plane: number;
  theta_deg: number;
  vf: number;
  vsf: number;
  fiber_count: number;
  vf_phase: number;
  vm_phase: number;
  clme: number;
  ctme: number;
}

export interface ReportTotalsDto {
  vf: number;
  vsf: number;
  fiber_count: number;
  vf_phase: number;
  vm_phase: number;
  clme: number;
  ctme: number;
}

export interface ReportDto {
  rows: ReportRowDto[];
  sums: ReportTotalsDto;
  means: ReportTotalsDto;
  mean_clme: number;
  mean_ctme: number;
}

export interface SweepRowDto {
  theta_deg: number;
  mean_clme: number;
  mean_ctme: number;
}

export interface SweepResponse {
  rows: SweepRowDto[];
}

export interface HealthResponse {
  status: string;
  db_counts: { polymers: number; fibers: number };
  version: string;
}

export interface PolymerRecordDto {
  name: string;
  [slot: string]: number | string;
}

export interface FiberRecordDto {
  name: string;
  diameter_mm: number;
  volume_fraction: number;
  length_mm: number;
  tensile_strength_mpa: number;
  modulus_gpa: number;
}

export interface ApiErrorBody {
  code: string;
  message: string;
  detail: string | null;
}

// Polymer requirement slots in the service's fixed schema order.
export const POLYMER_SLOTS: Array<{ name: string; kind: "numeric" | "linguistic"; label: string }> = [
  { name: "tensile_strength_mpa", kind: "numeric", label: "Tensile strength (MPa)" },
  { name: "yield_strength_mpa", kind: "numeric", label: "Yield strength (MPa)" },
  { name: "elongation_pct", kind: "numeric", label: "Elongation (%)" },
  { name: "shear_strength_mpa", kind: "numeric", label: "Shear strength (MPa)" },
  { name: "impact_strength", kind: "linguistic", label: "Impact strength" },
  { name: "modulus_gpa", kind: "numeric", label: "Modulus of elasticity (GPa)" },
  { name: "creep_strength", kind: "linguistic", label: "Creep strength" },
  { name: "fatigue_strength", kind: "linguistic", label: "Fatigue strength" },
  { name: "density_g_cm3", kind: "numeric", label: "Density (g/cm3)" },
  { name: "melting_point_c", kind: "numeric", label: "Melting point (C)" },
  { name: "conductivity_heat", kind: "linguistic", label: "Heat conductivity" },
  { name: "conductivity_electricity", kind: "linguistic", label: "Electrical conductivity" },
  { name: "thermal_expansion", kind: "linguistic", label: "Thermal expansion" },
  { name: "water_absorption", kind: "linguistic", label: "Water absorption" },
  { name: "electrical_insulation", kind: "linguistic", label: "Electrical insulation" },
  { name: "chemical_resistance", kind: "linguistic", label: "Chemical resistance" },
  { name: "sheet_material", kind: "linguistic", label: "Sheet material" },
];

export const FIBER_SLOTS: Array<{ name: string; label: string }> = [
  { name: "diameter_mm", label: "Diameter (mm)" },
  { name: "volume_fraction", label: "Volume fraction" },
  { name: "length_mm", label: "Length (mm)" },
  { name: "tensile_strength_mpa", label: "Tensile strength (MPa)" },
  { name: "modulus_gpa", label: "Modulus of elasticity (GPa)" },
];
