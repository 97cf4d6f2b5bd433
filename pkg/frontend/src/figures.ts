import { SweepRow } from "./csv.js";

export type FigureId = 1 | 2 | 3 | 4;

/** What to render: which figure, from which CSV, to which image path. */
export interface FigureSpec {
  figure: FigureId;
  input: string;
  output: string;
  /** Optional fixed y-axis range; the data range is used when absent. */
  axis?: { ymin: number; ymax: number };
}

export interface Point {
  x: number;
  y: number;
}

export interface Sidecar {
  points: number;
  ymin: number | null;
  ymax: number | null;
}

export const FIGURE_TITLES: Record<FigureId, string> = {
  1: "G(p) / (sqrt(p) log p)",
  2: "G(p) / I(p)",
  3: "G(p) / I(p), maxima at a common trace only",
  4: "t / sqrt(p) for t in T_max(p)",
};

/** Extract the scatter points of one figure from parsed sweep rows. */
export function figurePoints(rows: SweepRow[], figure: FigureId): Point[] {
  switch (figure) {
    case 1:
      return rows.map((r) => ({ x: r.p, y: r.scaled }));
    case 2:
      return rows.map((r) => ({ x: r.p, y: r.ratioNum / r.ratioDen }));
    case 3:
      return rows.filter((r) => r.sameT).map((r) => ({ x: r.p, y: r.ratioNum / r.ratioDen }));
    case 4:
      return rows.flatMap((r) => r.tMax.map((t) => ({ x: r.p, y: t / Math.sqrt(r.p) })));
  }
}

export function sidecarOf(points: Point[]): Sidecar {
  if (points.length === 0) return { points: 0, ymin: null, ymax: null };
  let ymin = points[0].y;
  let ymax = points[0].y;
  for (const pt of points) {
    if (pt.y < ymin) ymin = pt.y;
    if (pt.y > ymax) ymax = pt.y;
  }
  return { points: points.length, ymin, ymax };
}
