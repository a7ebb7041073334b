/** Render an arrivals-vs-windows CSV to an SVG Gantt. Usage: plot_gantt <gantt.csv> <out.svg> */
import { writeFileSync } from 'fs';
import { renderGantt } from './gantt.js';
import { loadGantt } from './schemas.js';

const [input, output] = process.argv.slice(2);
if (!input || !output) {
  console.error('usage: plot_gantt <gantt.csv> <out.svg>');
  process.exit(2);
}
try {
  const rows = loadGantt(input);
  writeFileSync(output, renderGantt(rows));
  console.log(`wrote ${output} (${rows.length} stops)`);
} catch (err) {
  console.error(`error: ${(err as Error).message}`);
  process.exit(1);
}
