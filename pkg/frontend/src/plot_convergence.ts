/** Render a solver convergence CSV to SVG. Usage: plot_convergence <convergence.csv> <out.svg> */
import { writeFileSync } from 'fs';
import { renderConvergence } from './convergence.js';
import { loadConvergence } from './schemas.js';

const [input, output] = process.argv.slice(2);
if (!input || !output) {
  console.error('usage: plot_convergence <convergence.csv> <out.svg>');
  process.exit(2);
}
try {
  const rows = loadConvergence(input);
  writeFileSync(output, renderConvergence(rows));
  console.log(`wrote ${output} (${rows.length} iterations)`);
} catch (err) {
  console.error(`error: ${(err as Error).message}`);
  process.exit(1);
}
