/**
 * figures <kind> --in <csv...> --out <file.svg> [--component <i>]
 *
 * kinds: states, cost, error, transition
 *   states/transition take the two episode CSVs written by the compare
 *   command; cost/error take its summary.csv.
 *
 * Exit codes: 0 ok, 1 bad arguments or CSV contract violation.
 */

import { writeFileSync } from "node:fs";
import { parseArgs } from "node:util";
import { CsvContractError, readTable } from "./csv.js";
import { FIGURE_KINDS, FigureKind, renderFigure } from "./figures.js";

export function run(argv: string[]): number {
  let parsed;
  try {
    parsed = parseArgs({
      args: argv,
      allowPositionals: true,
      options: {
        in: { type: "string", multiple: true },
        out: { type: "string" },
        component: { type: "string", default: "1" },
      },
    });
  } catch (err) {
    console.error((err as Error).message);
    return 1;
  }

  const kind = parsed.positionals[0] as FigureKind | undefined;
  const inputs = parsed.values.in ?? [];
  const out = parsed.values.out;
  if (!kind || !FIGURE_KINDS.includes(kind)) {
    console.error(`usage: figures <${FIGURE_KINDS.join("|")}> --in <csv...> --out <file.svg>`);
    return 1;
  }
  if (inputs.length === 0 || !out) {
    console.error("both --in and --out are required");
    return 1;
  }

  try {
    const tables = inputs.map(readTable);
    const svg = renderFigure(kind, tables, Number(parsed.values.component));
    writeFileSync(out, svg + "\n");
  } catch (err) {
    if (err instanceof CsvContractError || err instanceof Error) {
      console.error(err.message);
      return 1;
    }
    throw err;
  }
  console.log(`wrote ${out}`);
  return 0;
}

const invokedDirectly =
  process.argv[1] !== undefined && import.meta.url.endsWith(process.argv[1].split("/").pop()!);
if (invokedDirectly) {
  process.exit(run(process.argv.slice(2)));
}
