import { mkdtempSync, writeFileSync, readFileSync } from 'fs';
import { tmpdir } from 'os';
import { join } from 'path';
import { fileURLToPath } from 'url';
import { describe, expect, it } from 'vitest';
import { loadConvergence, loadGantt, loadRoute, SchemaError } from '../src/schemas.js';

const FIXTURES = fileURLToPath(new URL('./fixtures', import.meta.url));

function scratch(name: string, content: string): string {
  const dir = mkdtempSync(join(tmpdir(), 'plots-'));
  const path = join(dir, name);
  writeFileSync(path, content);
  return path;
}

describe('loadConvergence', () => {
  it('loads the fixture with one row per iteration', () => {
    const rows = loadConvergence(join(FIXTURES, 'convergence.csv'));
    expect(rows.length).toBe(300);
    expect(rows[0].iteration).toBe(0);
    expect(rows.at(-1)!.best_objective_J).toBeGreaterThan(0);
  });

  it('names missing columns', () => {
    const path = scratch('c.csv', 'iteration,epsilon\n0,0.4\n');
    expect(() => loadConvergence(path)).toThrow(/missing column.*best_objective_J/);
  });

  it('points at the offending row and column for bad cells', () => {
    const path = scratch(
      'c.csv',
      'iteration,best_objective_J,best_distance_m,daylight_count,epsilon,v_default_mps\n' +
        '0,not-a-number,1000.0,0,0.4,2125.0\n',
    );
    expect(() => loadConvergence(path)).toThrow(/row 2.*best_objective_J/);
  });

  it('rejects an empty file', () => {
    const path = scratch(
      'c.csv',
      'iteration,best_objective_J,best_distance_m,daylight_count,epsilon,v_default_mps\n',
    );
    expect(() => loadConvergence(path)).toThrow(SchemaError);
  });
});

describe('loadGantt', () => {
  it('loads and sorts the fixture by stop index', () => {
    const rows = loadGantt(join(FIXTURES, 'gantt.csv'));
    expect(rows.length).toBe(12);
    expect(rows.map((r) => r.stop_index)).toEqual([...Array(12)].map((_, i) => i + 1));
  });

  it('rejects a gap in the stop numbering', () => {
    const header = 'stop_index,city,window_start_utc,window_end_utc,arrival_utc\n';
    const row = (k: number) =>
      `${k},City${k},2025-12-24T17:00:00Z,2025-12-25T06:00:00Z,2025-12-24T18:0${k}:00Z\n`;
    const path = scratch('g.csv', header + row(1) + row(3));
    expect(() => loadGantt(path)).toThrow(/stop_index 2 is missing/);
  });

  it('rejects timestamps that are not ISO UTC', () => {
    const header = 'stop_index,city,window_start_utc,window_end_utc,arrival_utc\n';
    const path = scratch('g.csv', header + '1,X,17:00,2025-12-25T06:00:00Z,2025-12-24T18:00:00Z\n');
    expect(() => loadGantt(path)).toThrow(/window_start_utc/);
  });
});

describe('loadRoute', () => {
  it('splits the fixture into ordered legs and cities', () => {
    const { legs, cities } = loadRoute(join(FIXTURES, 'route.geojson'));
    expect(cities.length).toBe(13); // 12 destinations + depot
    expect(legs.length).toBeGreaterThanOrEqual(13);
    const order = legs.map((l) => l.properties.leg_index);
    expect([...order].sort((a, b) => a - b)).toEqual(order);
    const depot = cities.filter((c) => c.properties.dusk_utc === null);
    expect(depot.length).toBe(1);
  });

  it('rejects an empty FeatureCollection', () => {
    const path = scratch('r.geojson', JSON.stringify({ type: 'FeatureCollection', features: [] }));
    expect(() => loadRoute(path)).toThrow(SchemaError);
  });

  it('rejects a collection with no legs', () => {
    const fixture = JSON.parse(readFileSync(join(FIXTURES, 'route.geojson'), 'utf8'));
    const cityOnly = {
      type: 'FeatureCollection',
      features: fixture.features.filter((f: any) => f.geometry.type === 'Point'),
    };
    const path = scratch('r.geojson', JSON.stringify(cityOnly));
    expect(() => loadRoute(path)).toThrow(/no leg LineStrings/);
  });

  it('rejects out-of-range coordinates', () => {
    const path = scratch(
      'r.geojson',
      JSON.stringify({
        type: 'FeatureCollection',
        features: [
          {
            type: 'Feature',
            geometry: { type: 'Point', coordinates: [200, 10] },
            properties: { name: 'X', population: 1, dusk_utc: null, dawn_utc: null },
          },
        ],
      }),
    );
    expect(() => loadRoute(path)).toThrow(SchemaError);
  });
});
