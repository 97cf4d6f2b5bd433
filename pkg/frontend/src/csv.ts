import Papa from "papaparse";

/** One row of the sweep CSV produced by `curvecensus sweep`. */
export interface SweepRow {
  p: number;
  G: number;
  I: number;
  ratioNum: number;
  ratioDen: number;
  tMax: number[];
  sameT: boolean;
  mAtMax: number[];
  scaled: number;
}

export const REQUIRED_COLUMNS = [
  "p",
  "G",
  "I",
  "ratio_num",
  "ratio_den",
  "t_max",
  "same_t",
  "m_at_max",
  "scaled",
] as const;

export class CsvFormatError extends Error {}

function intList(raw: string): number[] {
  if (raw === "") return [];
  return raw.split(";").map((s) => {
    const v = Number(s);
    if (!Number.isInteger(v)) throw new CsvFormatError(`bad integer list entry "${s}"`);
    return v;
  });
}

function num(raw: string, column: string, line: number): number {
  const v = Number(raw);
  if (raw === "" || Number.isNaN(v)) {
    throw new CsvFormatError(`non-numeric value "${raw}" in column "${column}" (data row ${line})`);
  }
  return v;
}

/** Parse a sweep CSV. Lines starting with "#" are comments; the header row
 * must carry exactly the expected columns. */
export function parseSweepCsv(text: string): SweepRow[] {
  const parsed = Papa.parse<Record<string, string>>(text, {
    header: true,
    comments: "#",
    skipEmptyLines: true,
  });
  const fields = parsed.meta.fields ?? [];
  for (const col of REQUIRED_COLUMNS) {
    if (!fields.includes(col)) throw new CsvFormatError(`missing column "${col}"`);
  }
  for (const col of fields) {
    if (!(REQUIRED_COLUMNS as readonly string[]).includes(col)) {
      throw new CsvFormatError(`unexpected column "${col}"`);
    }
  }
  return parsed.data.map((rec, i) => {
    const row: SweepRow = {
      p: num(rec.p, "p", i + 1),
      G: num(rec.G, "G", i + 1),
      I: num(rec.I, "I", i + 1),
      ratioNum: num(rec.ratio_num, "ratio_num", i + 1),
      ratioDen: num(rec.ratio_den, "ratio_den", i + 1),
      tMax: intList(rec.t_max),
      sameT: rec.same_t === "1",
      mAtMax: intList(rec.m_at_max),
      scaled: num(rec.scaled, "scaled", i + 1),
    };
    if (rec.same_t !== "0" && rec.same_t !== "1") {
      throw new CsvFormatError(`column "same_t" must be 0 or 1, got "${rec.same_t}"`);
    }
    return row;
  });
}
