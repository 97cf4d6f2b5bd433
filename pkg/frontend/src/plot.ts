import { readFileSync, writeFileSync } from "node:fs";
import path from "node:path";
import { parseSweepCsv } from "./csv.js";
import { FigureSpec, figurePoints, Sidecar, sidecarOf } from "./figures.js";
import { dataFrame, renderPng, renderSvg } from "./render.js";

export interface PlotResult {
  svgPath: string;
  pngPath: string;
  sidecarPath: string;
  sidecar: Sidecar;
}

function sibling(output: string, ext: string): string {
  const parsed = path.parse(output);
  return path.join(parsed.dir, parsed.name + ext);
}

/** Render one figure: SVG at the requested path, PNG and sidecar JSON beside it. */
export function renderFigure(spec: FigureSpec): PlotResult {
  const rows = parseSweepCsv(readFileSync(spec.input, "utf8"));
  const points = figurePoints(rows, spec.figure);
  const sidecar = sidecarOf(points);
  const frame = dataFrame(points, spec.axis);
  const svgPath = spec.output;
  const pngPath = sibling(spec.output, ".png");
  const sidecarPath = sibling(spec.output, ".json");
  writeFileSync(svgPath, renderSvg(points, spec.figure, frame));
  writeFileSync(pngPath, renderPng(points, frame));
  writeFileSync(sidecarPath, JSON.stringify(sidecar, null, 2) + "\n");
  return { svgPath, pngPath, sidecarPath, sidecar };
}
