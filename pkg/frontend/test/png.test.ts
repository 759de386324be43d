import * as zlib from "zlib";
import { describe, expect, it } from "vitest";

import { crc32, encodePng } from "../src/png";

interface Chunk {
  type: string;
  data: Buffer;
  crc: number;
}

function readChunks(buf: Buffer): Chunk[] {
  const chunks: Chunk[] = [];
  let off = 8;
  while (off < buf.length) {
    const len = buf.readUInt32BE(off);
    const type = buf.toString("latin1", off + 4, off + 8);
    const data = buf.subarray(off + 8, off + 8 + len);
    const crc = buf.readUInt32BE(off + 8 + len);
    chunks.push({ type, data, crc });
    off += 12 + len;
  }
  return chunks;
}

describe("encodePng", () => {
  const w = 5;
  const h = 3;
  const rgba = new Uint8Array(w * h * 4);
  for (let i = 0; i < rgba.length; i += 4) {
    rgba[i] = i % 256;
    rgba[i + 1] = 128;
    rgba[i + 2] = 7;
    rgba[i + 3] = 255;
  }

  it("starts with the PNG signature", () => {
    const png = encodePng(w, h, rgba);
    expect([...png.subarray(0, 8)]).toEqual([137, 80, 78, 71, 13, 10, 26, 10]);
  });

  it("writes IHDR, IDAT, IEND with valid CRCs", () => {
    const png = encodePng(w, h, rgba);
    const chunks = readChunks(png);
    expect(chunks.map((c) => c.type)).toEqual(["IHDR", "IDAT", "IEND"]);
    for (const c of chunks) {
      const body = Buffer.concat([Buffer.from(c.type, "latin1"), c.data]);
      expect(c.crc).toBe(crc32(body));
    }
    const ihdr = chunks[0].data;
    expect(ihdr.readUInt32BE(0)).toBe(w);
    expect(ihdr.readUInt32BE(4)).toBe(h);
    expect(ihdr[8]).toBe(8); // bit depth
    expect(ihdr[9]).toBe(6); // RGBA
  });

  it("round-trips the pixel bytes through the scanline stream", () => {
    const png = encodePng(w, h, rgba);
    const idat = readChunks(png).find((c) => c.type === "IDAT")!;
    const raw = zlib.inflateSync(idat.data);
    expect(raw.length).toBe(h * (1 + w * 4));
    for (let y = 0; y < h; y += 1) {
      expect(raw[y * (1 + w * 4)]).toBe(0); // filter byte
      const row = raw.subarray(y * (1 + w * 4) + 1, (y + 1) * (1 + w * 4));
      expect(Buffer.compare(row, rgba.subarray(y * w * 4, (y + 1) * w * 4))).toBe(0);
    }
  });

  it("is deterministic for identical pixels", () => {
    const a = encodePng(w, h, rgba);
    const b = encodePng(w, h, Uint8Array.from(rgba));
    expect(Buffer.compare(a, b)).toBe(0);
  });

  it("rejects a mis-sized buffer", () => {
    expect(() => encodePng(4, 4, new Uint8Array(3))).toThrow(/expected/);
  });

  it("matches the reference crc32 check value", () => {
    // standard check: crc32 of ascii "123456789"
    expect(crc32(Buffer.from("123456789", "ascii"))).toBe(0xcbf43926);
  });
});
