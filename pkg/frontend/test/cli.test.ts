import * as fs from "fs";
import * as os from "os";
import * as path from "path";
import { afterAll, afterEach, describe, expect, it, vi } from "vitest";

import { main } from "../src/cli";

const FIXTURES = path.join(__dirname, "..", "fixtures");
const tmp = fs.mkdtempSync(path.join(os.tmpdir(), "figures-cli-"));
afterAll(() => fs.rmSync(tmp, { recursive: true, force: true }));
afterEach(() => vi.restoreAllMocks());

function quiet(): { read: () => string } {
  let buf = "";
  vi.spyOn(process.stderr, "write").mockImplementation((s) => {
    buf += String(s);
    return true;
  });
  return { read: () => buf };
}

describe("main", () => {
  it("renders a fixture end to end", () => {
    const out = path.join(tmp, "ok.png");
    const rc = main([
      "render",
      "--kind",
      "levels",
      "--in",
      path.join(FIXTURES, "levels_n3.csv"),
      "--out",
      out,
    ]);
    expect(rc).toBe(0);
    expect(fs.existsSync(out)).toBe(true);
  });

  it("fails usage without a subcommand", () => {
    const err = quiet();
    expect(main([])).toBe(2);
    expect(err.read()).toContain("usage:");
  });

  it("fails usage on an unknown kind", () => {
    const err = quiet();
    const rc = main([
      "render",
      "--kind",
      "pie",
      "--in",
      path.join(FIXTURES, "levels_n3.csv"),
      "--out",
      path.join(tmp, "x.png"),
    ]);
    expect(rc).toBe(2);
    expect(err.read()).toContain("unknown kind");
  });

  it("fails usage on a missing required option and an unknown flag", () => {
    const err = quiet();
    expect(main(["render", "--kind", "levels"])).toBe(2);
    expect(err.read()).toContain("--in");
    expect(main(["render", "--frobnicate", "1"])).toBe(2);
  });

  it("returns the io code when the input file is missing", () => {
    const err = quiet();
    const rc = main([
      "render",
      "--kind",
      "levels",
      "--in",
      path.join(tmp, "does-not-exist.csv"),
      "--out",
      path.join(tmp, "y.png"),
    ]);
    expect(rc).toBe(4);
    expect(err.read()).toContain("error: io:");
  });

  it("rejects a kind/schema mismatch without guessing", () => {
    const err = quiet();
    const out = path.join(tmp, "mismatch.png");
    const rc = main([
      "render",
      "--kind",
      "scalar-curve",
      "--in",
      path.join(FIXTURES, "flow_dist_n30_weak.csv"),
      "--out",
      out,
    ]);
    expect(rc).toBe(2);
    expect(err.read()).toContain("header mismatch");
    expect(fs.existsSync(out)).toBe(false);
  });

  it("rejects an empty grid and writes no image", () => {
    const empty = path.join(tmp, "empty.csv");
    fs.writeFileSync(empty, "# ringcat 0.1.0\nn_beta,n_gamma,probability\n");
    const out = path.join(tmp, "empty.png");
    const err = quiet();
    const rc = main(["render", "--kind", "flow-surface", "--in", empty, "--out", out]);
    expect(rc).toBe(2);
    expect(err.read()).toContain("no data rows");
    expect(fs.existsSync(out)).toBe(false);
  });

  it("returns the io code when the output directory does not exist", () => {
    const err = quiet();
    const rc = main([
      "render",
      "--kind",
      "levels",
      "--in",
      path.join(FIXTURES, "levels_n3.csv"),
      "--out",
      path.join(tmp, "missing-dir", "z.png"),
    ]);
    expect(rc).toBe(4);
    expect(err.read()).toContain("error: io:");
  });
});
