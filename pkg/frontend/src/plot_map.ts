/** Render a route GeoJSON to an SVG world map. Usage: plot_map <route.geojson> <out.svg> */
import { writeFileSync } from 'fs';
import { renderMap } from './map.js';
import { loadRoute } from './schemas.js';

const [input, output] = process.argv.slice(2);
if (!input || !output) {
  console.error('usage: plot_map <route.geojson> <out.svg>');
  process.exit(2);
}
try {
  const { legs, cities } = loadRoute(input);
  writeFileSync(output, renderMap(legs, cities));
  console.log(`wrote ${output} (${legs.length} leg segments, ${cities.length} cities)`);
} catch (err) {
  console.error(`error: ${(err as Error).message}`);
  process.exit(1);
}
