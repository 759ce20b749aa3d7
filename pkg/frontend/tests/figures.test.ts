import { mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { describe, expect, it } from "vitest";

import { run } from "../src/cli.js";
import { CsvContractError, numericColumn, readTable } from "../src/csv.js";
import { costFigure, costSeries, errorFigure, statesFigure, transitionFigure } from "../src/figures.js";
import { lineChart } from "../src/svg.js";

const FIXTURES = join(__dirname, "fixtures");
const SUMMARY = join(FIXTURES, "summary.csv");
const EPISODES = [
  join(FIXTURES, "episode_sliding_window.csv"),
  join(FIXTURES, "episode_round_robin.csv"),
];

function tmp(): string {
  return mkdtempSync(join(tmpdir(), "figures-"));
}

describe("csv contracts", () => {
  it("reads the summary with its published header", () => {
    const t = readTable(SUMMARY);
    expect(t.columns).toEqual([
      "k",
      "method",
      "mean_cum_cost",
      "mean_est_err",
      "mean_abs_x1",
      "mean_abs_x2",
      "mean_abs_x3",
    ]);
    expect(t.rows.length).toBe(80); // 40 slots x 2 methods
  });

  it("names the missing column", () => {
    const dir = tmp();
    const text = readFileSync(SUMMARY, "utf-8")
      .split("\n")
      .map((line) => line.split(",").filter((_, i) => i !== 2).join(","))
      .join("\n");
    const path = join(dir, "broken.csv");
    writeFileSync(path, text);
    expect(() => costFigure(readTable(path))).toThrowError(/missing column "mean_cum_cost"/);
  });

  it("reports the row count of an empty CSV", () => {
    const dir = tmp();
    const path = join(dir, "empty.csv");
    writeFileSync(path, "k,method,mean_cum_cost,mean_est_err\n");
    expect(() => readTable(path)).toThrowError(/0 data rows/);
  });

  it("rejects non-numeric cells", () => {
    const dir = tmp();
    const path = join(dir, "bad.csv");
    writeFileSync(path, "k,v\n1,oops\n");
    expect(() => numericColumn(readTable(path), "v")).toThrowError(CsvContractError);
  });
});

describe("svg builder", () => {
  it("emits one polyline per series with a legend", () => {
    const svg = lineChart(
      [
        { label: "a", x: [1, 2, 3], y: [0, 1, 4], color: "#111" },
        { label: "b", x: [1, 2, 3], y: [4, 1, 0], color: "#222", dashed: true },
      ],
      { title: "t", xLabel: "x", yLabel: "y" },
    );
    expect(svg.match(/<polyline/g)?.length).toBe(2);
    expect(svg).toContain('data-label="a"');
    expect(svg).toContain("stroke-dasharray");
  });

  it("is deterministic for the same data", () => {
    const make = () =>
      lineChart([{ label: "a", x: [0, 1], y: [2, 3], color: "#111" }], {
        title: "t",
        xLabel: "x",
        yLabel: "y",
      });
    expect(make()).toBe(make());
  });
});

describe("figure acceptance", () => {
  it("renders all four figure kinds without error", () => {
    const dir = tmp();
    const jobs: Array<[string, string[]]> = [
      ["states", EPISODES],
      ["cost", [SUMMARY]],
      ["error", [SUMMARY]],
      ["transition", EPISODES],
    ];
    for (const [kind, inputs] of jobs) {
      const out = join(dir, `${kind}.svg`);
      const code = run([kind, ...inputs.flatMap((p) => ["--in", p]), "--out", out]);
      expect(code).toBe(0);
      const svg = readFileSync(out, "utf-8");
      expect(svg.startsWith("<svg")).toBe(true);
      expect(svg).toContain("<polyline");
    }
  });

  it("cost series are monotone nondecreasing and the window curve ends lower", () => {
    const series = costSeries(readTable(SUMMARY));
    expect(series.length).toBe(2);
    for (const s of series) {
      for (let i = 1; i < s.y.length; i++) {
        expect(s.y[i]).toBeGreaterThanOrEqual(s.y[i - 1]);
      }
    }
    const window = series.find((s) => s.label === "sliding window")!;
    const rr = series.find((s) => s.label === "round robin")!;
    expect(window.y[window.y.length - 1]).toBeLessThan(rr.y[rr.y.length - 1]);
  });

  it("states figure stacks one panel per component for both methods", () => {
    const svg = statesFigure(EPISODES.map(readTable));
    expect(svg.match(/Voltage deviation, bus/g)?.length).toBe(3);
    expect(svg.match(/<polyline/g)?.length).toBe(6); // 3 components x 2 methods
  });

  it("transition figure plots the chosen component for both methods", () => {
    const svg = transitionFigure(EPISODES.map(readTable), 2);
    expect(svg).toContain("bus 2");
    expect(svg.match(/<polyline/g)?.length).toBe(2);
  });

  it("error figure carries both methods", () => {
    const svg = errorFigure(readTable(SUMMARY));
    expect(svg).toContain("sliding window");
    expect(svg).toContain("round robin");
  });
});

describe("cli", () => {
  it("rejects an unknown kind", () => {
    expect(run(["pie", "--in", SUMMARY, "--out", "/dev/null"])).toBe(1);
  });

  it("requires --in and --out", () => {
    expect(run(["cost"])).toBe(1);
  });

  it("fails cleanly on a missing input file", () => {
    expect(run(["cost", "--in", "/nope/missing.csv", "--out", "/dev/null"])).toBe(1);
  });
});
