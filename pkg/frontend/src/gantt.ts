/**
 * Darkness-window Gantt: one grey bar per stop spanning its window, the
 * arrival polyline overlaid. A night-feasible tour reads as a near-diagonal
 * staircase of arrivals inside their bars; an arrival outside its bar is
 * drawn in an alert colour.
 */
import { minutesFromIso, type GanttRow } from './schemas.js';
import { esc, linearScale, svgDocument, tag, polylinePoints } from './svg.js';

const W = 900;
const ROW_H = 18;
const MARGIN = { left: 130, right: 30, top: 46, bottom: 40 };

const BAR = '#cccccc';
const ARRIVAL = '#1a7a2e';
const ALERT = '#d62728';

export function renderGantt(rows: GanttRow[]): string {
  const height = MARGIN.top + rows.length * ROW_H + MARGIN.bottom;
  const starts = rows.map((r) => minutesFromIso(r.window_start_utc));
  const ends = rows.map((r) => minutesFromIso(r.window_end_utc));
  const arrivals = rows.map((r) => minutesFromIso(r.arrival_utc));

  const t0 = Math.min(...starts, ...arrivals);
  const t1 = Math.max(...ends, ...arrivals);
  const x = linearScale(t0, t1, MARGIN.left, W - MARGIN.right);

  const body: string[] = [];
  body.push(tag('rect', {
    x: MARGIN.left, y: MARGIN.top - 8,
    width: W - MARGIN.left - MARGIN.right, height: rows.length * ROW_H + 8,
    fill: 'none', stroke: '#444', 'stroke-width': 1,
  }));

  // x axis ticks as HH:MM UTC
  for (const t of x.ticks()) {
    const px = x(t);
    const label = new Date(t * 60000).toISOString().slice(11, 16);
    body.push(tag('line', {
      x1: px, y1: MARGIN.top - 8, x2: px, y2: MARGIN.top + rows.length * ROW_H,
      stroke: '#e4e4e4', 'stroke-width': 0.6,
    }));
    body.push(tag('text', {
      x: px, y: MARGIN.top + rows.length * ROW_H + 14,
      'text-anchor': 'middle', 'font-size': 9,
    }, esc(label)));
  }

  const points: Array<[number, number]> = [];
  rows.forEach((row, i) => {
    const yTop = MARGIN.top + i * ROW_H;
    const yMid = yTop + ROW_H / 2;
    body.push(tag('rect', {
      x: x(starts[i]), y: yTop + 2,
      width: Math.max(x(ends[i]) - x(starts[i]), 0.5), height: ROW_H - 5,
      fill: BAR, class: 'window',
    }));
    body.push(tag('text', {
      x: MARGIN.left - 6, y: yMid + 3, 'text-anchor': 'end', 'font-size': 9,
    }, esc(`${row.stop_index}. ${row.city}`)));

    const inWindow = arrivals[i] >= starts[i] && arrivals[i] <= ends[i];
    points.push([x(arrivals[i]), yMid]);
    body.push(tag('circle', {
      cx: x(arrivals[i]), cy: yMid, r: 2.6,
      fill: inWindow ? ARRIVAL : ALERT,
      class: inWindow ? 'arrival' : 'arrival late',
    }));
  });

  body.push(tag('polyline', {
    points: polylinePoints(points),
    fill: 'none', stroke: ARRIVAL, 'stroke-width': 1, 'stroke-dasharray': '3 2',
  }));

  const outside = rows.filter((_, i) => arrivals[i] < starts[i] || arrivals[i] > ends[i]).length;
  body.push(tag('text', { x: MARGIN.left, y: 18, 'font-size': 12 },
    esc(`arrivals vs darkness windows — ${rows.length} stops, ${outside} outside their window (UTC axis)`)));

  return svgDocument(W, height, body);
}
