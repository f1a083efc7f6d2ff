/**
 * Fixture generator: computes every golden value by two independent
 * routes, then writes ../fixtures/<module>.json (with --write) or prints
 * a summary (dry run).
 */

import { mkdirSync, writeFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import { allModules } from "./routes.js";

const here = dirname(fileURLToPath(import.meta.url));
export const FIXTURE_DIR = join(here, "..", "..", "..", "fixtures");

export function renderModule(payload: ReturnType<typeof allModules>[number]): string {
  return JSON.stringify(payload, null, 1) + "\n";
}

export function main(argv: string[]): number {
  const write = argv.includes("--write");
  const modules = allModules();
  if (write) mkdirSync(FIXTURE_DIR, { recursive: true });
  for (const payload of modules) {
    if (write) {
      const path = join(FIXTURE_DIR, `${payload.module}.json`);
      writeFileSync(path, renderModule(payload), "utf-8");
      console.log(`wrote ${path} (${payload.entries.length} entries)`);
    } else {
      for (const item of payload.entries) {
        console.log(`${payload.module}/${item.name} = ${item.value[0]}`);
      }
    }
  }
  return 0;
}

if (process.argv[1] === fileURLToPath(import.meta.url)) {
  process.exit(main(process.argv.slice(2)));
}
