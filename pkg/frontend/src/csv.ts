// CSV artifact reader for the ring-simulator outputs.
//
// The simulator writes a '#'-prefixed metadata block, then a header row,
// then numeric data rows. Rendering must never guess at a malformed file,
// so every structural assumption is checked here and violations raise
// CsvError. The original data-row strings are kept verbatim: the dump of
// plotted values has to be byte-identical to the input columns, and any
// reformatting of the numbers would break that.

export class CsvError extends Error {}

export interface Artifact {
  meta: string[];
  header: string[];
  // parsed values, rows[i][j] is column j of data row i
  rows: number[][];
  // raw comma-split cells per data row, byte-identical to the file
  cells: string[][];
}

export function parseArtifact(text: string): Artifact {
  const lines = text.split("\n");
  // a trailing newline yields one empty final element; drop it
  if (lines.length > 0 && lines[lines.length - 1] === "") lines.pop();

  const meta: string[] = [];
  let i = 0;
  while (i < lines.length && lines[i].startsWith("#")) {
    meta.push(lines[i]);
    i += 1;
  }
  if (i >= lines.length) throw new CsvError("missing header row");

  const header = lines[i].split(",");
  if (header.some((name) => name.trim() === "")) {
    throw new CsvError(`blank column name in header: ${lines[i]}`);
  }
  i += 1;

  const rows: number[][] = [];
  const cells: string[][] = [];
  for (; i < lines.length; i += 1) {
    const line = lines[i];
    if (line === "") throw new CsvError(`blank data line at row ${rows.length}`);
    const parts = line.split(",");
    if (parts.length !== header.length) {
      throw new CsvError(
        `row ${rows.length} has ${parts.length} fields, header has ${header.length}`,
      );
    }
    const values = parts.map((p) => Number(p));
    const bad = values.findIndex((v, j) => parts[j].trim() === "" || !Number.isFinite(v));
    if (bad >= 0) {
      throw new CsvError(`non-numeric value '${parts[bad]}' in row ${rows.length}`);
    }
    rows.push(values);
    cells.push(parts);
  }

  if (rows.length === 0) {
    throw new CsvError("no data rows: nothing to plot");
  }

  return { meta, header, rows, cells };
}

// Checks that the header is exactly `expected`; used by the fixed-schema
// figure kinds where every column is known in advance.
export function requireHeader(art: Artifact, expected: string[]): void {
  if (
    art.header.length !== expected.length ||
    expected.some((name, j) => art.header[j] !== name)
  ) {
    throw new CsvError(
      `header mismatch: expected '${expected.join(",")}', got '${art.header.join(",")}'`,
    );
  }
}

// Re-emits the given columns of the data block, cells verbatim, header
// included. This is the payload behind --dump-plotted.
export function emitColumns(art: Artifact, cols: number[]): string {
  const out: string[] = [cols.map((j) => art.header[j]).join(",")];
  for (const row of art.cells) {
    out.push(cols.map((j) => row[j]).join(","));
  }
  return out.join("\n") + "\n";
}
