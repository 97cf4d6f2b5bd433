import { mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import path from "node:path";
import { describe, expect, it } from "vitest";
import { main } from "../src/cli.js";
import { renderFigure } from "../src/plot.js";
import { EMPTY_CSV, SMALL_CSV } from "./fixtures.js";

function tmpCsv(content: string): { dir: string; csv: string } {
  const dir = mkdtempSync(path.join(tmpdir(), "plots-"));
  const csv = path.join(dir, "sweep.csv");
  writeFileSync(csv, content);
  return { dir, csv };
}

describe("renderFigure", () => {
  it("writes SVG, PNG and sidecar", () => {
    const { dir, csv } = tmpCsv(SMALL_CSV);
    const out = path.join(dir, "fig2.svg");
    const res = renderFigure({ figure: 2, input: csv, output: out });
    const svg = readFileSync(out, "utf8");
    expect(svg.startsWith("<svg")).toBe(true);
    expect(svg.match(/<circle/g)).toHaveLength(4);
    const png = readFileSync(res.pngPath);
    expect([...png.subarray(0, 8)]).toEqual([0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a]);
    const sidecar = JSON.parse(readFileSync(res.sidecarPath, "utf8"));
    expect(sidecar).toEqual({ points: 4, ymin: 2 / 3, ymax: 1 });
  });

  it("renders the empty plot with a zero-point sidecar", () => {
    const { dir, csv } = tmpCsv(EMPTY_CSV);
    const res = renderFigure({ figure: 1, input: csv, output: path.join(dir, "fig1.svg") });
    expect(res.sidecar).toEqual({ points: 0, ymin: null, ymax: null });
    expect(readFileSync(res.svgPath, "utf8")).toContain("</svg>");
  });

  it("fixed axis ranges override the data range", () => {
    const { dir, csv } = tmpCsv(SMALL_CSV);
    const res = renderFigure({
      figure: 2,
      input: csv,
      output: path.join(dir, "fig2.svg"),
      axis: { ymin: 0, ymax: 1 },
    });
    // sidecar still reports the data range, not the axis range
    expect(res.sidecar.ymin).toBeCloseTo(2 / 3, 12);
  });
});

describe("cli", () => {
  it("runs end to end", () => {
    const { dir, csv } = tmpCsv(SMALL_CSV);
    const code = main(["--fig", "3", "--in", csv, "--out", path.join(dir, "fig3.svg")]);
    expect(code).toBe(0);
    const sidecar = JSON.parse(readFileSync(path.join(dir, "fig3.json"), "utf8"));
    expect(sidecar.points).toBe(3);
  });

  it("rejects a bad figure id", () => {
    expect(main(["--fig", "9", "--in", "x.csv", "--out", "y.svg"])).toBe(1);
  });

  it("fails cleanly on malformed CSV", () => {
    const { dir, csv } = tmpCsv("p,G\n1,2\n");
    expect(main(["--fig", "1", "--in", csv, "--out", path.join(dir, "f.svg")])).toBe(1);
  });
});
