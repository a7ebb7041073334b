/**
 * Schemas for the solver's published artifact formats, plus loaders that
 * fail with column-level diagnostics instead of rendering garbage.
 *
 * The renderers are pure consumers: nothing here recomputes physics, and a
 * file that does not match the published layout is an error, not a warning.
 */
import { readFileSync } from 'fs';
import Papa from 'papaparse';
import { z } from 'zod';

const ISO_UTC = /^\d{4}-\d{2}-\d{2}T\d{2}:\d{2}:\d{2}Z$/;
const isoString = z.string().regex(ISO_UTC, 'expected ISO-8601 UTC like 2025-12-24T17:15:00Z');

export const ConvergenceRow = z.object({
  iteration: z.number().int().nonnegative(),
  best_objective_J: z.number().positive(),
  best_distance_m: z.number().positive(),
  daylight_count: z.number().int().nonnegative(),
  epsilon: z.number().min(0).max(1),
  v_default_mps: z.number().positive(),
});
export type ConvergenceRow = z.infer<typeof ConvergenceRow>;

export const GanttRow = z.object({
  stop_index: z.number().int().positive(),
  city: z.string().min(1),
  window_start_utc: isoString,
  window_end_utc: isoString,
  arrival_utc: isoString,
});
export type GanttRow = z.infer<typeof GanttRow>;

// GeoJSON positions are [lon, lat]
const Position = z.tuple([z.number().min(-180).max(180), z.number().min(-90).max(90)]);

export const LegFeature = z.object({
  type: z.literal('Feature'),
  geometry: z.object({
    type: z.literal('LineString'),
    coordinates: z.array(Position).min(2),
  }),
  properties: z.object({
    leg_index: z.number().int().positive(),
    depart_utc: isoString,
    arrive_utc: isoString,
    speed_kmh: z.number().positive(),
    work_J: z.number().nonnegative(),
    daylight: z.boolean(),
  }),
});
export type LegFeature = z.infer<typeof LegFeature>;

export const CityFeature = z.object({
  type: z.literal('Feature'),
  geometry: z.object({
    type: z.literal('Point'),
    coordinates: Position,
  }),
  properties: z.object({
    name: z.string().min(1),
    population: z.number().nonnegative(),
    dusk_utc: isoString.nullable(),
    dawn_utc: isoString.nullable(),
  }),
});
export type CityFeature = z.infer<typeof CityFeature>;

export const RouteCollection = z.object({
  type: z.literal('FeatureCollection'),
  features: z.array(z.union([LegFeature, CityFeature])).min(1),
});
export type RouteCollection = z.infer<typeof RouteCollection>;

export class SchemaError extends Error {}

/** Minutes since the Unix epoch; only differences matter for plotting. */
export function minutesFromIso(iso: string): number {
  return Date.parse(iso) / 60000;
}

function describeIssues(error: z.ZodError): string {
  return error.issues
    .map((issue) => `${issue.path.join('.') || '(root)'}: ${issue.message}`)
    .join('; ');
}

function parseCsv(
  path: string,
  expectedColumns: string[],
  numericColumns: string[],
): Record<string, unknown>[] {
  const text = readFileSync(path, 'utf8');
  const result = Papa.parse<Record<string, unknown>>(text, {
    header: true,
    // type only the numeric columns: papaparse would otherwise turn the
    // ISO timestamps into Date objects
    dynamicTyping: (field) => numericColumns.includes(String(field)),
    skipEmptyLines: true,
  });
  if (result.errors.length > 0) {
    const first = result.errors[0];
    throw new SchemaError(`${path}: ${first.message} (row ${first.row})`);
  }
  const fields = result.meta.fields ?? [];
  const missing = expectedColumns.filter((c) => !fields.includes(c));
  if (missing.length > 0) {
    throw new SchemaError(`${path}: missing column(s) ${missing.join(', ')}; header is [${fields.join(', ')}]`);
  }
  return result.data;
}

export function loadConvergence(path: string): ConvergenceRow[] {
  const columns = Object.keys(ConvergenceRow.shape);
  const raw = parseCsv(path, columns, columns);
  const rows = raw.map((row, i) => {
    const checked = ConvergenceRow.safeParse(row);
    if (!checked.success) {
      throw new SchemaError(`${path}: row ${i + 2}: ${describeIssues(checked.error)}`);
    }
    return checked.data;
  });
  if (rows.length === 0) throw new SchemaError(`${path}: no data rows`);
  return rows;
}

export function loadGantt(path: string): GanttRow[] {
  const raw = parseCsv(path, Object.keys(GanttRow.shape), ['stop_index']);
  const rows = raw.map((row, i) => {
    const checked = GanttRow.safeParse(row);
    if (!checked.success) {
      throw new SchemaError(`${path}: row ${i + 2}: ${describeIssues(checked.error)}`);
    }
    return checked.data;
  });
  if (rows.length === 0) throw new SchemaError(`${path}: no data rows`);
  // one row per visited stop, numbered contiguously from 1
  const seen = new Set(rows.map((r) => r.stop_index));
  for (let k = 1; k <= rows.length; k++) {
    if (!seen.has(k)) {
      throw new SchemaError(`${path}: ${rows.length} rows but stop_index ${k} is missing`);
    }
  }
  return [...rows].sort((a, b) => a.stop_index - b.stop_index);
}

export function loadRoute(path: string): { legs: LegFeature[]; cities: CityFeature[] } {
  let json: unknown;
  try {
    json = JSON.parse(readFileSync(path, 'utf8'));
  } catch (err) {
    throw new SchemaError(`${path}: not valid JSON: ${(err as Error).message}`);
  }
  const checked = RouteCollection.safeParse(json);
  if (!checked.success) {
    throw new SchemaError(`${path}: ${describeIssues(checked.error)}`);
  }
  const legs: LegFeature[] = [];
  const cities: CityFeature[] = [];
  for (const feature of checked.data.features) {
    if (feature.geometry.type === 'LineString') legs.push(feature as LegFeature);
    else cities.push(feature as CityFeature);
  }
  if (legs.length === 0) throw new SchemaError(`${path}: no leg LineStrings in collection`);
  if (cities.length === 0) throw new SchemaError(`${path}: no city Points in collection`);
  legs.sort((a, b) => a.properties.leg_index - b.properties.leg_index);
  return { legs, cities };
}
