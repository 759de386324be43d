// Rasterizers for the three figure kinds the simulator emits:
//
//   levels       energy levels vs twist phase (phase in 2pi/3 units on x)
//   flow-surface probability over the two counter-flow occupations
//   scalar-curve cat fidelity vs J/U on a log x axis
//
// All kinds draw into the same fixed canvas so downstream tooling can rely
// on the image dimensions. Each renderer also reports exactly which input
// columns it drew, as verbatim strings, so the plotted numbers can be
// compared byte-for-byte against the source file.

import { Artifact, CsvError, emitColumns, requireHeader } from "./csv";

export type FigureKind = "levels" | "flow-surface" | "scalar-curve";

export interface FigureSpec {
  input: string;
  kind: FigureKind;
  output: string;
  dumpPlotted?: string;
}

export interface RenderResult {
  width: number;
  height: number;
  pixels: Uint8Array;
  // header + data rows actually drawn, cells verbatim from the input
  plotted: string;
  // flow-surface only: cells whose probability exceeds MARK_THRESHOLD
  markedCells: Array<[number, number]>;
}

export const CANVAS_WIDTH = 800;
export const CANVAS_HEIGHT = 600;
export const MARK_THRESHOLD = 0.2;

// plot area inside the canvas, pixel coords
const FRAME = { x0: 70, y0: 24, x1: CANVAS_WIDTH - 25, y1: CANVAS_HEIGHT - 53 };

const TRACE_COLORS: Array<[number, number, number]> = [
  [31, 119, 180],
  [214, 39, 40],
  [44, 160, 44],
  [255, 127, 14],
  [148, 103, 189],
  [140, 86, 75],
];

function blankCanvas(): Uint8Array {
  const px = new Uint8Array(CANVAS_WIDTH * CANVAS_HEIGHT * 4);
  px.fill(255);
  return px;
}

function setPixel(px: Uint8Array, x: number, y: number, rgb: [number, number, number]): void {
  if (x < 0 || y < 0 || x >= CANVAS_WIDTH || y >= CANVAS_HEIGHT) return;
  const o = (y * CANVAS_WIDTH + x) * 4;
  px[o] = rgb[0];
  px[o + 1] = rgb[1];
  px[o + 2] = rgb[2];
  px[o + 3] = 255;
}

function fillRect(
  px: Uint8Array,
  x0: number,
  y0: number,
  x1: number,
  y1: number,
  rgb: [number, number, number],
): void {
  for (let y = y0; y <= y1; y += 1) {
    for (let x = x0; x <= x1; x += 1) setPixel(px, x, y, rgb);
  }
}

function drawLine(
  px: Uint8Array,
  x0: number,
  y0: number,
  x1: number,
  y1: number,
  rgb: [number, number, number],
): void {
  // integer Bresenham; inputs are already rounded pixel coords
  const dx = Math.abs(x1 - x0);
  const dy = -Math.abs(y1 - y0);
  const sx = x0 < x1 ? 1 : -1;
  const sy = y0 < y1 ? 1 : -1;
  let err = dx + dy;
  let x = x0;
  let y = y0;
  for (;;) {
    setPixel(px, x, y, rgb);
    if (x === x1 && y === y1) break;
    const e2 = 2 * err;
    if (e2 >= dy) {
      err += dy;
      x += sx;
    }
    if (e2 <= dx) {
      err += dx;
      y += sy;
    }
  }
}

function drawFrame(px: Uint8Array): void {
  const edge: [number, number, number] = [40, 40, 40];
  for (let x = FRAME.x0; x <= FRAME.x1; x += 1) {
    setPixel(px, x, FRAME.y0, edge);
    setPixel(px, x, FRAME.y1, edge);
  }
  for (let y = FRAME.y0; y <= FRAME.y1; y += 1) {
    setPixel(px, FRAME.x0, y, edge);
    setPixel(px, FRAME.x1, y, edge);
  }
}

interface Scale {
  lo: number;
  hi: number;
}

function padded(values: number[]): Scale {
  let lo = Math.min(...values);
  let hi = Math.max(...values);
  if (lo === hi) {
    lo -= 1;
    hi += 1;
  }
  const pad = 0.04 * (hi - lo);
  return { lo: lo - pad, hi: hi + pad };
}

function toX(s: Scale, v: number): number {
  return Math.round(FRAME.x0 + ((v - s.lo) / (s.hi - s.lo)) * (FRAME.x1 - FRAME.x0));
}

function toY(s: Scale, v: number): number {
  // pixel y grows downward
  return Math.round(FRAME.y1 - ((v - s.lo) / (s.hi - s.lo)) * (FRAME.y1 - FRAME.y0));
}

function polyline(
  px: Uint8Array,
  xs: number[],
  ys: number[],
  sx: Scale,
  sy: Scale,
  rgb: [number, number, number],
): void {
  for (let i = 1; i < xs.length; i += 1) {
    drawLine(px, toX(sx, xs[i - 1]), toY(sy, ys[i - 1]), toX(sx, xs[i]), toY(sy, ys[i]), rgb);
  }
  if (xs.length === 1) setPixel(px, toX(sx, xs[0]), toY(sy, ys[0]), rgb);
}

function renderLevels(art: Artifact): RenderResult {
  const h = art.header;
  if (h.length < 3 || h[0] !== "phi_rad" || h[1] !== "phi_in_2pi_over_3") {
    throw new CsvError(
      `header mismatch: expected 'phi_rad,phi_in_2pi_over_3,E0,...', got '${h.join(",")}'`,
    );
  }
  for (let j = 2; j < h.length; j += 1) {
    if (h[j] !== `E${j - 2}`) {
      throw new CsvError(`header mismatch: expected column ${j} to be 'E${j - 2}', got '${h[j]}'`);
    }
  }

  const px = blankCanvas();
  const xs = art.rows.map((r) => r[1]);
  const all: number[] = [];
  for (const r of art.rows) for (let j = 2; j < h.length; j += 1) all.push(r[j]);
  const sx = padded(xs);
  const sy = padded(all);

  drawFrame(px);
  for (let j = 2; j < h.length; j += 1) {
    const ys = art.rows.map((r) => r[j]);
    polyline(px, xs, ys, sx, sy, TRACE_COLORS[(j - 2) % TRACE_COLORS.length]);
  }

  const cols = [1];
  for (let j = 2; j < h.length; j += 1) cols.push(j);
  return {
    width: CANVAS_WIDTH,
    height: CANVAS_HEIGHT,
    pixels: px,
    plotted: emitColumns(art, cols),
    markedCells: [],
  };
}

function heat(t: number): [number, number, number] {
  // dark blue at zero probability up to warm yellow at the maximum
  const lo = [18, 18, 86];
  const hi = [252, 222, 64];
  return [
    Math.round(lo[0] + t * (hi[0] - lo[0])),
    Math.round(lo[1] + t * (hi[1] - lo[1])),
    Math.round(lo[2] + t * (hi[2] - lo[2])),
  ];
}

function renderFlowSurface(art: Artifact): RenderResult {
  requireHeader(art, ["n_beta", "n_gamma", "probability"]);

  let maxB = 0;
  let maxG = 0;
  let maxP = 0;
  for (let i = 0; i < art.rows.length; i += 1) {
    const [b, g, p] = art.rows[i];
    if (!Number.isInteger(b) || b < 0 || !Number.isInteger(g) || g < 0) {
      throw new CsvError(`occupations must be non-negative integers, row ${i} has (${b},${g})`);
    }
    if (p < 0) throw new CsvError(`negative probability ${p} in row ${i}`);
    if (b > maxB) maxB = b;
    if (g > maxG) maxG = g;
    if (p > maxP) maxP = p;
  }

  const px = blankCanvas();
  const cellW = (FRAME.x1 - FRAME.x0) / (maxB + 1);
  const cellH = (FRAME.y1 - FRAME.y0) / (maxG + 1);

  const marked: Array<[number, number]> = [];
  for (let i = 0; i < art.rows.length; i += 1) {
    const [b, g, p] = art.rows[i];
    const x0 = Math.round(FRAME.x0 + b * cellW);
    const x1 = Math.round(FRAME.x0 + (b + 1) * cellW) - 1;
    // occupation on the y axis grows upward
    const y1 = Math.round(FRAME.y1 - g * cellH);
    const y0 = Math.round(FRAME.y1 - (g + 1) * cellH) + 1;
    fillRect(px, x0, y0, x1, y1, heat(maxP > 0 ? p / maxP : 0));
    if (p > MARK_THRESHOLD) marked.push([b, g]);
  }

  // outline the highlighted cells last so the marks sit on top
  const mark: [number, number, number] = [230, 20, 20];
  for (const [b, g] of marked) {
    const x0 = Math.round(FRAME.x0 + b * cellW);
    const x1 = Math.round(FRAME.x0 + (b + 1) * cellW) - 1;
    const y1 = Math.round(FRAME.y1 - g * cellH);
    const y0 = Math.round(FRAME.y1 - (g + 1) * cellH) + 1;
    for (let t = 0; t < 2; t += 1) {
      drawLine(px, x0 + t, y0 + t, x1 - t, y0 + t, mark);
      drawLine(px, x0 + t, y1 - t, x1 - t, y1 - t, mark);
      drawLine(px, x0 + t, y0 + t, x0 + t, y1 - t, mark);
      drawLine(px, x1 - t, y0 + t, x1 - t, y1 - t, mark);
    }
  }
  drawFrame(px);

  marked.sort((u, v) => (u[0] - v[0] !== 0 ? u[0] - v[0] : u[1] - v[1]));
  return {
    width: CANVAS_WIDTH,
    height: CANVAS_HEIGHT,
    pixels: px,
    plotted: emitColumns(art, [0, 1, 2]),
    markedCells: marked,
  };
}

function renderScalarCurve(art: Artifact): RenderResult {
  requireHeader(art, ["j_over_u", "cat_fidelity", "theta_opt", "gap"]);

  for (let i = 0; i < art.rows.length; i += 1) {
    if (art.rows[i][0] <= 0) {
      throw new CsvError(`log axis needs positive j_over_u, row ${i} has ${art.rows[i][0]}`);
    }
  }

  const px = blankCanvas();
  const xs = art.rows.map((r) => Math.log10(r[0]));
  const ys = art.rows.map((r) => r[1]);
  const sx = padded(xs);
  const sy = padded(ys);

  drawFrame(px);
  polyline(px, xs, ys, sx, sy, TRACE_COLORS[0]);
  for (let i = 0; i < xs.length; i += 1) {
    const cx = toX(sx, xs[i]);
    const cy = toY(sy, ys[i]);
    fillRect(px, cx - 1, cy - 1, cx + 1, cy + 1, TRACE_COLORS[0]);
  }

  return {
    width: CANVAS_WIDTH,
    height: CANVAS_HEIGHT,
    pixels: px,
    plotted: emitColumns(art, [0, 1]),
    markedCells: [],
  };
}

export function renderArtifact(kind: FigureKind, art: Artifact): RenderResult {
  switch (kind) {
    case "levels":
      return renderLevels(art);
    case "flow-surface":
      return renderFlowSurface(art);
    case "scalar-curve":
      return renderScalarCurve(art);
    default:
      throw new CsvError(`unknown figure kind '${kind as string}'`);
  }
}
