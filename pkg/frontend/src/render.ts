import { PNG } from "pngjs";
import { FigureId, FIGURE_TITLES, Point } from "./figures.js";

export const WIDTH = 960;
export const HEIGHT = 600;
const MARGIN = { top: 40, right: 20, bottom: 45, left: 65 };
const MARKER = 1.6;
const COLOR = { r: 31, g: 119, b: 180 }; // matplotlib C0 blue

export interface Frame {
  xmin: number;
  xmax: number;
  ymin: number;
  ymax: number;
}

export function dataFrame(points: Point[], axis?: { ymin: number; ymax: number }): Frame {
  let xmin = 0;
  let xmax = 1;
  let ymin = 0;
  let ymax = 1;
  if (points.length > 0) {
    xmin = Math.min(...points.map((p) => p.x));
    xmax = Math.max(...points.map((p) => p.x));
    ymin = Math.min(...points.map((p) => p.y));
    ymax = Math.max(...points.map((p) => p.y));
    if (xmin === xmax) [xmin, xmax] = [xmin - 1, xmax + 1];
    if (ymin === ymax) [ymin, ymax] = [ymin - 1, ymax + 1];
  }
  if (axis) {
    ymin = axis.ymin;
    ymax = axis.ymax;
  }
  return { xmin, xmax, ymin, ymax };
}

function projector(frame: Frame) {
  const iw = WIDTH - MARGIN.left - MARGIN.right;
  const ih = HEIGHT - MARGIN.top - MARGIN.bottom;
  return (pt: Point) => ({
    px: MARGIN.left + ((pt.x - frame.xmin) / (frame.xmax - frame.xmin)) * iw,
    py: MARGIN.top + ih - ((pt.y - frame.ymin) / (frame.ymax - frame.ymin)) * ih,
  });
}

const fmt = (v: number) => (Math.abs(v) >= 1000 ? v.toFixed(0) : v.toPrecision(4));

export function renderSvg(points: Point[], figure: FigureId, frame: Frame): string {
  const proj = projector(frame);
  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" viewBox="0 0 ${WIDTH} ${HEIGHT}">`,
  );
  parts.push(`<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>`);
  const x0 = MARGIN.left;
  const x1 = WIDTH - MARGIN.right;
  const y0 = MARGIN.top;
  const y1 = HEIGHT - MARGIN.bottom;
  parts.push(`<line x1="${x0}" y1="${y1}" x2="${x1}" y2="${y1}" stroke="black"/>`);
  parts.push(`<line x1="${x0}" y1="${y0}" x2="${x0}" y2="${y1}" stroke="black"/>`);
  parts.push(
    `<text x="${(x0 + x1) / 2}" y="24" text-anchor="middle" font-family="sans-serif" font-size="15">${FIGURE_TITLES[figure]}</text>`,
  );
  parts.push(
    `<text x="${x0}" y="${y1 + 30}" font-family="sans-serif" font-size="12">${fmt(frame.xmin)}</text>`,
    `<text x="${x1}" y="${y1 + 30}" text-anchor="end" font-family="sans-serif" font-size="12">${fmt(frame.xmax)}</text>`,
    `<text x="${x0 - 8}" y="${y1}" text-anchor="end" font-family="sans-serif" font-size="12">${fmt(frame.ymin)}</text>`,
    `<text x="${x0 - 8}" y="${y0 + 4}" text-anchor="end" font-family="sans-serif" font-size="12">${fmt(frame.ymax)}</text>`,
  );
  const rgb = `rgb(${COLOR.r},${COLOR.g},${COLOR.b})`;
  for (const pt of points) {
    const { px, py } = proj(pt);
    parts.push(
      `<circle cx="${px.toFixed(2)}" cy="${py.toFixed(2)}" r="${MARKER}" fill="${rgb}" fill-opacity="0.55"/>`,
    );
  }
  parts.push("</svg>");
  return parts.join("\n") + "\n";
}

export function renderPng(points: Point[], frame: Frame): Buffer {
  const png = new PNG({ width: WIDTH, height: HEIGHT });
  png.data.fill(255);
  const proj = projector(frame);
  const r = Math.ceil(MARKER);
  for (const pt of points) {
    const { px, py } = proj(pt);
    const cx = Math.round(px);
    const cy = Math.round(py);
    for (let dy = -r; dy <= r; dy++) {
      for (let dx = -r; dx <= r; dx++) {
        if (dx * dx + dy * dy > MARKER * MARKER + 1) continue;
        const x = cx + dx;
        const y = cy + dy;
        if (x < 0 || x >= WIDTH || y < 0 || y >= HEIGHT) continue;
        const i = (y * WIDTH + x) * 4;
        png.data[i] = COLOR.r;
        png.data[i + 1] = COLOR.g;
        png.data[i + 2] = COLOR.b;
        png.data[i + 3] = 255;
      }
    }
  }
  // frame border in black
  const x0 = MARGIN.left;
  const x1 = WIDTH - MARGIN.right;
  const y1 = HEIGHT - MARGIN.bottom;
  for (let x = x0; x <= x1; x++) {
    const i = (y1 * WIDTH + x) * 4;
    png.data[i] = png.data[i + 1] = png.data[i + 2] = 0;
  }
  for (let y = MARGIN.top; y <= y1; y++) {
    const i = (y * WIDTH + x0) * 4;
    png.data[i] = png.data[i + 1] = png.data[i + 2] = 0;
  }
  return PNG.sync.write(png);
}
