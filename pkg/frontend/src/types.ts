// Wire types of the kolam service. The client never computes symmetry,
// loops or feasibility itself; every displayed value comes from these
// payloads.

export type VariantName = "1r" | "2r";
export type TileKindName = "circle" | "drop" | "eye" | "door" | "fan" | "diamond";

export const TILE_KINDS: TileKindName[] = ["circle", "drop", "eye", "door", "fan", "diamond"];

export interface TemplateRef {
  variant: VariantName;
  k: number;
  l: number;
}

export interface KolamFile {
  version: 1;
  template: TemplateRef;
  crossings: string;
}

export interface CellPayload {
  id: string;
  grid: string;
  i: number;
  j: number;
  center: [number, number];
  corners: [number, number][];
}

export interface EdgePayload {
  id: string;
  index: number;
  cells: [string, string];
  dirs: [string, string];
  midpoint: [number, number];
}

export interface MirrorGuide {
  op: string;
  label: string;
  line: [[number, number], [number, number]];
}

export interface TemplatePayload {
  variant: VariantName;
  k: number;
  l: number;
  cells: CellPayload[];
  edges: EdgePayload[];
  bounds: [number, number, number, number];
  center: [number, number];
  side: number;
  group: string;
  mirrors: MirrorGuide[];
}

export interface ClassifyResponse {
  group: string;
  diagonal: string | null;
  order: number;
}

export interface TraceResponse {
  loop_count: number;
  loops: string[][];
  multiset: Record<TileKindName, number>;
}

export interface FeasibilityFailure {
  id: string;
  message: string;
}

export interface FeasibilityResponse {
  verdict: "pass" | "fail";
  failures: FeasibilityFailure[];
  tiles_total: number;
  loose_ends: number;
  pairs: number | null;
  shared_edges: number | null;
  upper_bound_holds: boolean | null;
}

export interface PlacementEntry {
  cell: string;
  kind: TileKindName;
  rotation: number;
}

export interface PlacementPayload {
  template: TemplateRef;
  placements: PlacementEntry[];
}

export interface ValidateResponse {
  unmatched: [string, string][];
  conflicts: string[];
  boundary_violations: [string, string][];
  complete_valid: boolean;
  multiset: Record<TileKindName, number>;
}

export interface EnumerateItem {
  index: number;
  crossings: string;
  stabilizer: string;
}

export interface EnumeratePage {
  group: string;
  es: number;
  total: string;
  offset: number;
  items: EnumerateItem[];
}

export interface CountResponse {
  group: string;
  es: number | null;
  count: string;
  no_kolam: boolean;
}

export interface MirrorConstraintsResponse {
  cells: Record<string, { kind: TileKindName; rotation: number }[]>;
}

export type Multiset = Record<TileKindName, number>;

export function emptyMultiset(): Multiset {
  return { circle: 0, drop: 0, eye: 0, door: 0, fan: 0, diamond: 0 };
}

export function multisetTotal(m: Multiset): number {
  return TILE_KINDS.reduce((acc, kind) => acc + (m[kind] ?? 0), 0);
}
