#!/usr/bin/env node
import { pathToFileURL } from "node:url";
import { parseArgs } from "node:util";
import { CsvFormatError } from "./csv.js";
import { FigureId } from "./figures.js";
import { renderFigure } from "./plot.js";

export function main(argv: string[]): number {
  let values;
  try {
    ({ values } = parseArgs({
      args: argv,
      options: {
        fig: { type: "string" },
        in: { type: "string" },
        out: { type: "string" },
        ymin: { type: "string" },
        ymax: { type: "string" },
      },
    }));
  } catch (err) {
    console.error(`plot: ${(err as Error).message}`);
    return 1;
  }
  const fig = Number(values.fig);
  if (![1, 2, 3, 4].includes(fig)) {
    console.error(`plot: --fig must be 1, 2, 3 or 4 (got ${values.fig ?? "nothing"})`);
    return 1;
  }
  if (!values.in || !values.out) {
    console.error("plot: --in and --out are required");
    return 1;
  }
  const axis =
    values.ymin !== undefined && values.ymax !== undefined
      ? { ymin: Number(values.ymin), ymax: Number(values.ymax) }
      : undefined;
  try {
    const result = renderFigure({
      figure: fig as FigureId,
      input: values.in,
      output: values.out,
      axis,
    });
    console.log(
      `figure ${fig}: ${result.sidecar.points} points -> ${result.svgPath}, ${result.pngPath}, ${result.sidecarPath}`,
    );
    return 0;
  } catch (err) {
    if (err instanceof CsvFormatError) {
      console.error(`plot: CSV parse error: ${err.message}`);
    } else {
      console.error(`plot: ${(err as Error).message}`);
    }
    return 1;
  }
}

if (process.argv[1] && import.meta.url === pathToFileURL(process.argv[1]).href) {
  process.exit(main(process.argv.slice(2)));
}
