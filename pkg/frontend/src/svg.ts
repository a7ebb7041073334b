/**
 * Just enough SVG to draw the three figure kinds as strings — no DOM, no
 * canvas, deterministic output for identical input.
 */

export interface Scale {
  (value: number): number;
  ticks(): number[];
}

/** Linear mapping from [d0, d1] to [r0, r1] with 1/2/5-stepped ticks. */
export function linearScale(d0: number, d1: number, r0: number, r1: number): Scale {
  if (d1 === d0) d1 = d0 + 1; // degenerate domain: keep the map total
  const scale = ((value: number) => r0 + ((value - d0) / (d1 - d0)) * (r1 - r0)) as Scale;
  scale.ticks = () => {
    const span = Math.abs(d1 - d0);
    const step = niceStep(span / 5);
    const start = Math.ceil(Math.min(d0, d1) / step) * step;
    const out: number[] = [];
    for (let v = start; v <= Math.max(d0, d1) + step * 1e-9; v += step) out.push(v);
    return out;
  };
  return scale;
}

/** Log10 mapping; ticks at decades. Domain must be positive. */
export function logScale(d0: number, d1: number, r0: number, r1: number): Scale {
  if (d0 <= 0 || d1 <= 0) throw new Error('log scale needs a positive domain');
  if (d1 === d0) d1 = d0 * 10;
  const l0 = Math.log10(d0);
  const l1 = Math.log10(d1);
  const scale = ((value: number) => r0 + ((Math.log10(value) - l0) / (l1 - l0)) * (r1 - r0)) as Scale;
  scale.ticks = () => {
    const out: number[] = [];
    for (let e = Math.ceil(Math.min(l0, l1)); e <= Math.floor(Math.max(l0, l1)); e++) {
      out.push(10 ** e);
    }
    return out.length >= 2 ? out : [d0, d1];
  };
  return scale;
}

function niceStep(rough: number): number {
  const power = 10 ** Math.floor(Math.log10(rough));
  const unit = rough / power;
  if (unit <= 1) return power;
  if (unit <= 2) return 2 * power;
  if (unit <= 5) return 5 * power;
  return 10 * power;
}

export function esc(text: string): string {
  return text
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;');
}

/** One element as a string; children joined, attributes skipped when undefined. */
export function tag(
  name: string,
  attrs: Record<string, string | number | undefined>,
  ...children: string[]
): string {
  const parts = Object.entries(attrs)
    .filter(([, v]) => v !== undefined)
    .map(([k, v]) => `${k}="${typeof v === 'number' ? round2(v) : v}"`);
  const open = `<${name}${parts.length ? ' ' + parts.join(' ') : ''}`;
  return children.length ? `${open}>${children.join('')}</${name}>` : `${open}/>`;
}

export function polylinePoints(points: Array<[number, number]>): string {
  return points.map(([x, y]) => `${round2(x)},${round2(y)}`).join(' ');
}

function round2(v: number): number {
  return Math.round(v * 100) / 100;
}

export function svgDocument(width: number, height: number, body: string[]): string {
  return [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" viewBox="0 0 ${width} ${height}" font-family="sans-serif">`,
    tag('rect', { x: 0, y: 0, width, height, fill: 'white' }),
    ...body,
    '</svg>',
    '',
  ].join('\n');
}

/** Compact number labels: 1.2e+13, 8500, 0.25. */
export function fmt(value: number): string {
  const magnitude = Math.abs(value);
  if (magnitude >= 1e5 || (magnitude > 0 && magnitude < 1e-3)) {
    return value.toExponential(1).replace('e+', 'e');
  }
  return `${Math.round(value * 1000) / 1000}`;
}
