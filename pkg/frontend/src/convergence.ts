/**
 * Dual-axis convergence figure: best objective (log-scale, left axis) and
 * best tour distance (linear, right axis) against iteration. Data is drawn
 * as-is — no smoothing or resampling.
 */
import type { ConvergenceRow } from './schemas.js';
import { esc, fmt, linearScale, logScale, polylinePoints, svgDocument, tag } from './svg.js';

const W = 900;
const H = 480;
const MARGIN = { left: 90, right: 90, top: 40, bottom: 55 };

const ENERGY = '#c0392b';
const DISTANCE = '#2e6da4';

export function renderConvergence(rows: ConvergenceRow[]): string {
  const iterations = rows.map((r) => r.iteration);
  const objectives = rows.map((r) => r.best_objective_J);
  const distancesKm = rows.map((r) => r.best_distance_m / 1000);

  const x = linearScale(Math.min(...iterations), Math.max(...iterations), MARGIN.left, W - MARGIN.right);
  const yEnergy = logScale(Math.min(...objectives), Math.max(...objectives), H - MARGIN.bottom, MARGIN.top);
  const yDistance = linearScale(Math.min(...distancesKm), Math.max(...distancesKm), H - MARGIN.bottom, MARGIN.top);

  const body: string[] = [];

  // frame and gridlines off the energy decades
  body.push(tag('rect', {
    x: MARGIN.left, y: MARGIN.top,
    width: W - MARGIN.left - MARGIN.right, height: H - MARGIN.top - MARGIN.bottom,
    fill: 'none', stroke: '#444', 'stroke-width': 1,
  }));
  for (const t of yEnergy.ticks()) {
    const y = yEnergy(t);
    body.push(tag('line', { x1: MARGIN.left, y1: y, x2: W - MARGIN.right, y2: y, stroke: '#ddd', 'stroke-width': 0.6 }));
    body.push(tag('text', { x: MARGIN.left - 6, y: y + 3, 'text-anchor': 'end', 'font-size': 10, fill: ENERGY }, esc(fmt(t))));
  }
  for (const t of x.ticks()) {
    const px = x(t);
    body.push(tag('line', { x1: px, y1: H - MARGIN.bottom, x2: px, y2: H - MARGIN.bottom + 4, stroke: '#444' }));
    body.push(tag('text', { x: px, y: H - MARGIN.bottom + 16, 'text-anchor': 'middle', 'font-size': 10 }, esc(fmt(t))));
  }
  for (const t of yDistance.ticks()) {
    const y = yDistance(t);
    body.push(tag('text', { x: W - MARGIN.right + 6, y: y + 3, 'text-anchor': 'start', 'font-size': 10, fill: DISTANCE }, esc(fmt(t))));
  }

  body.push(tag('polyline', {
    points: polylinePoints(rows.map((r, i) => [x(r.iteration), yEnergy(objectives[i])] as [number, number])),
    fill: 'none', stroke: ENERGY, 'stroke-width': 1.6, class: 'energy',
  }));
  body.push(tag('polyline', {
    points: polylinePoints(rows.map((r, i) => [x(r.iteration), yDistance(distancesKm[i])] as [number, number])),
    fill: 'none', stroke: DISTANCE, 'stroke-width': 1.4, 'stroke-dasharray': '6 3', class: 'distance',
  }));

  body.push(tag('text', { x: W / 2, y: H - 14, 'text-anchor': 'middle', 'font-size': 12 }, 'iteration'));
  body.push(tag('text', {
    x: 18, y: H / 2, 'font-size': 12, fill: ENERGY,
    transform: `rotate(-90 18 ${H / 2})`, 'text-anchor': 'middle',
  }, 'best objective (J, log)'));
  body.push(tag('text', {
    x: W - 14, y: H / 2, 'font-size': 12, fill: DISTANCE,
    transform: `rotate(90 ${W - 14} ${H / 2})`, 'text-anchor': 'middle',
  }, 'best distance (km)'));

  const last = rows[rows.length - 1];
  body.push(tag('text', { x: MARGIN.left, y: MARGIN.top - 10, 'font-size': 12 },
    esc(`convergence over ${last.iteration + 1} iterations, final ${fmt(last.best_objective_J)} J / ${fmt(last.best_distance_m / 1000)} km`)));

  return svgDocument(W, H, body);
}
