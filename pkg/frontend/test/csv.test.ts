import { describe, expect, it } from "vitest";
import { CsvFormatError, parseSweepCsv } from "../src/csv.js";
import { EMPTY_CSV, HEADER, SMALL_CSV } from "./fixtures.js";

describe("parseSweepCsv", () => {
  it("parses rows and skips comment lines", () => {
    const rows = parseSweepCsv(SMALL_CSV);
    expect(rows).toHaveLength(4);
    expect(rows[0]).toEqual({
      p: 5,
      G: 2,
      I: 2,
      ratioNum: 1,
      ratioDen: 1,
      tMax: [0],
      sameT: true,
      mAtMax: [1],
      scaled: 0.555634,
    });
    expect(rows[1].tMax).toEqual([-2, 1, 2]);
    expect(rows[2].sameT).toBe(false);
    expect(rows[2].mAtMax).toEqual([1, 2]);
  });

  it("accepts an empty data section", () => {
    expect(parseSweepCsv(EMPTY_CSV)).toEqual([]);
  });

  it("names a missing column", () => {
    const bad = SMALL_CSV.replace(HEADER, "p,G,I,ratio_num,ratio_den,t_max,same_t,m_at_max");
    expect(() => parseSweepCsv(bad)).toThrowError(CsvFormatError);
    expect(() => parseSweepCsv(bad)).toThrowError(/missing column "scaled"/);
  });

  it("names an unexpected column", () => {
    const bad = SMALL_CSV.replace(HEADER, HEADER + ",bogus");
    expect(() => parseSweepCsv(bad)).toThrowError(/unexpected column "bogus"/);
  });

  it("rejects non-numeric fields", () => {
    const bad = [HEADER, "x,2,2,1,1,0,1,1,0.5"].join("\n");
    expect(() => parseSweepCsv(bad)).toThrowError(/column "p"/);
  });

  it("rejects same_t outside 0/1", () => {
    const bad = [HEADER, "5,2,2,1,1,0,2,1,0.5"].join("\n");
    expect(() => parseSweepCsv(bad)).toThrowError(/same_t/);
  });
});
