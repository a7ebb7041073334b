/**
 * Equirectangular route view: a 30° graticule world frame, the tour's legs
 * drawn in visit order, and labelled city points. Legs flagged as daylight
 * arrivals are highlighted. LineStrings are rendered one polyline each, so
 * legs split at the antimeridian never produce a spurious horizontal line.
 */
import type { CityFeature, LegFeature } from './schemas.js';
import { esc, polylinePoints, svgDocument, tag } from './svg.js';

const W = 960;
const H = 520;
const MARGIN = 24;

const LEG = '#1f5fbf';
const DAYLIGHT_LEG = '#d62728';
const GRID = '#d8d8d8';

function project(lon: number, lat: number): [number, number] {
  const x = MARGIN + ((lon + 180) / 360) * (W - 2 * MARGIN);
  const y = MARGIN + ((90 - lat) / 180) * (H - 2 * MARGIN);
  return [x, y];
}

export function renderMap(legs: LegFeature[], cities: CityFeature[]): string {
  const body: string[] = [];

  // graticule every 30 degrees; equator and prime meridian darker
  for (let lon = -180; lon <= 180; lon += 30) {
    const [x0, y0] = project(lon, 90);
    const [, y1] = project(lon, -90);
    body.push(tag('line', {
      x1: x0, y1: y0, x2: x0, y2: y1,
      stroke: lon === 0 ? '#aaa' : GRID, 'stroke-width': lon === 0 ? 1 : 0.6,
    }));
  }
  for (let lat = -90; lat <= 90; lat += 30) {
    const [x0, y0] = project(-180, lat);
    const [x1] = project(180, lat);
    body.push(tag('line', {
      x1: x0, y1: y0, x2: x1, y2: y0,
      stroke: lat === 0 ? '#aaa' : GRID, 'stroke-width': lat === 0 ? 1 : 0.6,
    }));
  }
  body.push(tag('rect', {
    x: MARGIN, y: MARGIN, width: W - 2 * MARGIN, height: H - 2 * MARGIN,
    fill: 'none', stroke: '#444', 'stroke-width': 1,
  }));

  // legs in visit order, one polyline per (possibly split) LineString
  for (const leg of legs) {
    body.push(tag('polyline', {
      points: polylinePoints(leg.geometry.coordinates.map(([lon, lat]) => project(lon, lat))),
      fill: 'none',
      stroke: leg.properties.daylight ? DAYLIGHT_LEG : LEG,
      'stroke-width': leg.properties.daylight ? 1.8 : 1.2,
      class: leg.properties.daylight ? 'leg daylight' : 'leg',
    }));
  }

  for (const city of cities) {
    const [lon, lat] = city.geometry.coordinates;
    const [x, y] = project(lon, lat);
    const isDepot = city.properties.dusk_utc === null;
    body.push(tag('circle', {
      cx: x, cy: y, r: isDepot ? 4 : 2.5,
      fill: isDepot ? '#222' : '#111', stroke: 'white', 'stroke-width': 0.6,
      class: 'city',
    }));
    body.push(tag('text', {
      x: x + 4, y: y - 3, 'font-size': 8, fill: '#333',
    }, esc(city.properties.name)));
  }

  const daylightCount = legs.filter((l) => l.properties.daylight).length;
  body.push(tag('text', { x: MARGIN, y: H - 8, 'font-size': 11 },
    esc(`${legs.length} leg segments, ${cities.length} cities, ${daylightCount} daylight-flagged`)));

  return svgDocument(W, H, body);
}
