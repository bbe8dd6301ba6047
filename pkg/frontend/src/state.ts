// Scenario state for the designer workbench: the requirement form, the
// selected materials, the editable layup, and the last stiffness report.
// Every mutating edit snapshots the full state for undo and marks the
// report stale until the next successful recompute. The store holds
// service responses verbatim; it never derives numbers of its own.

import type {
  LaminateSpecDto,
  PlaneDto,
  ReportDto,
  RequirementValues,
  SchemaName,
} from "./types";

export interface Scenario {
  name: string;
  schema: SchemaName;
  requirementValues: RequirementValues;
  selectedMatrix: string | null;
  selectedFiber: string | null;
  laminate: LaminateSpecDto;
  lastReport: ReportDto | null;
}

export interface GhostSeries {
  clme: number[];
  ctme: number[];
}

export interface FieldError {
  field: string;
  message: string;
}

interface Snapshot {
  scenario: Scenario;
  stale: boolean;
  ghost: GhostSeries | null;
}

const SCENARIO_FORMAT = "frpkit-scenario-v1";

function deepCopy<T>(value: T): T {
  return JSON.parse(JSON.stringify(value)) as T;
}

export function validatePlaneField(field: "vf" | "theta_deg", value: number): FieldError | null {
  if (!Number.isFinite(value)) {
    return { field, message: "must be a number" };
  }
  if (field === "vf" && (value < 0 || value > 1)) {
    return { field, message: "volume fraction must be in [0, 1]" };
  }
  if (field === "theta_deg" && (value < 0 || value > 90)) {
    return { field, message: "orientation must be in [0, 90] degrees" };
  }
  return null;
}

export function defaultScenario(name: string, laminate: LaminateSpecDto): Scenario {
  if (laminate.planes.length === 0) {
    throw new Error("a scenario layup needs at least one plane");
  }
  return {
    name,
    schema: "polymer",
    requirementValues: {},
    selectedMatrix: null,
    selectedFiber: null,
    laminate: deepCopy(laminate),
    lastReport: null,
  };
}

export class ScenarioStore {
  private scenario: Scenario;
  private staleFlag = false;
  private ghost: GhostSeries | null = null;
  private history: Snapshot[] = [];

  constructor(scenario: Scenario) {
    if (scenario.laminate.planes.length === 0) {
      throw new Error("a scenario layup needs at least one plane");
    }
    this.scenario = deepCopy(scenario);
  }

  get current(): Scenario {
    return deepCopy(this.scenario);
  }

  get stale(): boolean {
    return this.staleFlag;
  }

  get ghostSeries(): GhostSeries | null {
    return this.ghost ? deepCopy(this.ghost) : null;
  }

  get canUndo(): boolean {
    return this.history.length > 0;
  }

  private pushHistory(): void {
    this.history.push({
      scenario: deepCopy(this.scenario),
      stale: this.staleFlag,
      ghost: this.ghost ? deepCopy(this.ghost) : null,
    });
  }

  private markEdited(): void {
    if (this.scenario.lastReport !== null) {
      this.staleFlag = true;
    }
  }

  /** Edit one plane field; invalid values leave the state untouched. */
  setPlaneField(index: number, field: "vf" | "theta_deg", value: number): FieldError | null {
    if (index < 0 || index >= this.scenario.laminate.planes.length) {
      return { field, message: `no plane ${index}` };
    }
    const error = validatePlaneField(field, value);
    if (error) return error;
    this.pushHistory();
    this.scenario.laminate.planes[index][field] = value;
    this.markEdited();
    return null;
  }

  addPlane(plane: PlaneDto): FieldError | null {
    const vfError = validatePlaneField("vf", plane.vf);
    if (vfError) return vfError;
    const thetaError = validatePlaneField("theta_deg", plane.theta_deg);
    if (thetaError) return thetaError;
    this.pushHistory();
    this.scenario.laminate.planes.push({ ...plane });
    this.markEdited();
    return null;
  }

  removePlane(index: number): FieldError | null {
    if (this.scenario.laminate.planes.length <= 1) {
      return { field: "planes", message: "a layup needs at least one plane" };
    }
    if (index < 0 || index >= this.scenario.laminate.planes.length) {
      return { field: "planes", message: `no plane ${index}` };
    }
    this.pushHistory();
    this.scenario.laminate.planes.splice(index, 1);
    this.markEdited();
    return null;
  }

  setRequirementValue(slot: string, value: number | string): void {
    this.pushHistory();
    this.scenario.requirementValues[slot] = value;
  }

  setSelectedMatrix(name: string): void {
    this.pushHistory();
    this.scenario.selectedMatrix = name;
  }

  /** Picking a fiber writes its modulus, length, and diameter into the layup. */
  setSelectedFiber(fiber: { name: string; modulus_gpa: number; length_mm: number; diameter_mm: number }): void {
    this.pushHistory();
    this.scenario.selectedFiber = fiber.name;
    this.scenario.laminate.fiber = {
      length: fiber.length_mm,
      diameter: fiber.diameter_mm,
      modulus_gpa: fiber.modulus_gpa,
    };
    this.markEdited();
  }

  /** Store a fresh report; the previous one becomes the ghost series. */
  applyReport(report: ReportDto): void {
    const previous = this.scenario.lastReport;
    if (previous !== null) {
      this.ghost = {
        clme: previous.rows.map((r) => r.clme),
        ctme: previous.rows.map((r) => r.ctme),
      };
    }
    this.scenario.lastReport = deepCopy(report);
    this.staleFlag = false;
  }

  undo(): boolean {
    const snapshot = this.history.pop();
    if (!snapshot) return false;
    this.scenario = snapshot.scenario;
    this.staleFlag = snapshot.stale;
    this.ghost = snapshot.ghost;
    return true;
  }

  exportJson(): string {
    return JSON.stringify(
      { format: SCENARIO_FORMAT, scenario: this.scenario },
      null,
      2,
    );
  }

  static importJson(text: string): ScenarioStore {
    let doc: unknown;
    try {
      doc = JSON.parse(text);
    } catch {
      throw new Error("scenario file is not valid JSON");
    }
    const payload = doc as { format?: string; scenario?: Scenario };
    if (payload.format !== SCENARIO_FORMAT || !payload.scenario) {
      throw new Error(`expected a ${SCENARIO_FORMAT} document`);
    }
    return new ScenarioStore(payload.scenario);
  }
}
