// Command line wrapper:
//
//   render --kind levels|flow-surface|scalar-curve --in <csv> --out <png>
//          [--dump-plotted <path>]
//
// Exit codes: 0 ok, 2 bad usage or malformed input data, 4 file I/O
// failure. Validation runs before the output file is opened, so a
// malformed input never leaves a partial image behind.

import * as fs from "fs";
import { parseArgs } from "util";

import { CsvError, parseArtifact } from "./csv";
import { encodePng } from "./png";
import { FigureKind, FigureSpec, renderArtifact } from "./render";

const USAGE =
  "usage: render --kind levels|flow-surface|scalar-curve --in <csv> --out <png> [--dump-plotted <path>]";

const KINDS: FigureKind[] = ["levels", "flow-surface", "scalar-curve"];

function parseSpec(argv: string[]): FigureSpec {
  const { values } = parseArgs({
    args: argv,
    options: {
      kind: { type: "string" },
      in: { type: "string" },
      out: { type: "string" },
      "dump-plotted": { type: "string" },
    },
    allowPositionals: false,
  });

  const missing = ["kind", "in", "out"].filter((k) => values[k as "kind"] === undefined);
  if (missing.length > 0) {
    throw new CsvError(`missing required option(s): ${missing.map((m) => `--${m}`).join(", ")}`);
  }
  const kind = values.kind as string;
  if (!KINDS.includes(kind as FigureKind)) {
    throw new CsvError(`unknown kind '${kind}', expected one of: ${KINDS.join(", ")}`);
  }
  return {
    kind: kind as FigureKind,
    input: values.in as string,
    output: values.out as string,
    dumpPlotted: values["dump-plotted"],
  };
}

export function runFigure(spec: FigureSpec): void {
  const text = fs.readFileSync(spec.input, "utf8");
  const art = parseArtifact(text);
  const result = renderArtifact(spec.kind, art);
  fs.writeFileSync(spec.output, encodePng(result.width, result.height, result.pixels));
  if (spec.dumpPlotted !== undefined) {
    fs.writeFileSync(spec.dumpPlotted, result.plotted, "utf8");
  }
}

export function main(argv: string[]): number {
  if (argv.length === 0 || argv[0] !== "render") {
    process.stderr.write(USAGE + "\n");
    return 2;
  }

  let spec: FigureSpec;
  try {
    spec = parseSpec(argv.slice(1));
  } catch (err) {
    process.stderr.write(`error: usage: ${(err as Error).message}\n${USAGE}\n`);
    return 2;
  }

  try {
    runFigure(spec);
  } catch (err) {
    if (err instanceof CsvError) {
      process.stderr.write(`error: data: ${err.message}\n`);
      return 2;
    }
    if (err instanceof Error && "code" in err) {
      process.stderr.write(`error: io: ${err.message}\n`);
      return 4;
    }
    throw err;
  }
  return 0;
}
