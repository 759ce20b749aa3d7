/**
 * The four result figures, each built from the simulator's CSV contracts.
 *
 * states     - per-component voltage deviations, both methods, stacked panels
 * cost       - mean cumulative cost per slot, both methods overlaid
 * error      - mean estimation-error norm per slot, both methods overlaid
 * transition - one chosen state component for both methods on a single axis
 */

import { byMethod, indexedColumns, numericColumn, requireColumns, Table } from "./csv.js";
import { lineChart, stackCharts, Series } from "./svg.js";

export type FigureKind = "states" | "cost" | "error" | "transition";

export const FIGURE_KINDS: FigureKind[] = ["states", "cost", "error", "transition"];

const COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];

const EPISODE_COLUMNS = ["k", "sensor", "stage_cost", "cum_cost", "traceP", "est_err"];

function methodLabel(table: Table, fallback: string): string {
  const m = table.path.match(/episode_([a-z_]+)\.csv/);
  return (m ? m[1] : fallback).replace(/_/g, " ");
}

/** Two episode tables (one per method), deviations x1..xn stacked per component. */
export function statesFigure(episodes: Table[]): string {
  if (episodes.length < 2) throw new Error(`states figure needs 2 episode CSVs, got ${episodes.length}`);
  for (const t of episodes) requireColumns(t, EPISODE_COLUMNS);
  const components = indexedColumns(episodes[0], "x");
  const charts = components.map((col, ci) =>
    lineChart(
      episodes.map((t, i) => ({
        label: methodLabel(t, `method ${i + 1}`),
        x: numericColumn(t, "k"),
        y: numericColumn(t, col),
        color: COLORS[i % COLORS.length],
        dashed: i > 0,
      })),
      {
        title: `Voltage deviation, bus ${ci + 1}`,
        xLabel: "time slot k",
        yLabel: col,
        height: 300,
      },
    ),
  );
  return stackCharts(charts);
}

/** Summary table: mean cumulative cost for each method on one axis. */
export function costFigure(summary: Table): string {
  requireColumns(summary, ["k", "method", "mean_cum_cost"]);
  const series = costSeries(summary);
  return lineChart(series, {
    title: "Mean cumulative cost",
    xLabel: "time slot k",
    yLabel: "cumulative cost",
  });
}

export function costSeries(summary: Table): Series[] {
  requireColumns(summary, ["k", "method", "mean_cum_cost"]);
  const groups = byMethod(summary);
  return [...groups.entries()].map(([method, t], i) => ({
    label: method.replace(/_/g, " "),
    x: numericColumn(t, "k"),
    y: numericColumn(t, "mean_cum_cost"),
    color: COLORS[i % COLORS.length],
    dashed: i > 0,
  }));
}

/** Summary table: mean estimation-error norm per slot for each method. */
export function errorFigure(summary: Table): string {
  requireColumns(summary, ["k", "method", "mean_est_err"]);
  const groups = byMethod(summary);
  const series = [...groups.entries()].map(([method, t], i) => ({
    label: method.replace(/_/g, " "),
    x: numericColumn(t, "k"),
    y: numericColumn(t, "mean_est_err"),
    color: COLORS[i % COLORS.length],
    dashed: i > 0,
  }));
  return lineChart(series, {
    title: "Mean state estimation error",
    xLabel: "time slot k",
    yLabel: "error norm",
  });
}

/** Two episode tables: one state component for both methods on a single axis. */
export function transitionFigure(episodes: Table[], component = 1): string {
  if (episodes.length < 2) throw new Error(`transition figure needs 2 episode CSVs, got ${episodes.length}`);
  const col = `x${component}`;
  for (const t of episodes) requireColumns(t, [...EPISODE_COLUMNS, col]);
  const series = episodes.map((t, i) => ({
    label: methodLabel(t, `method ${i + 1}`),
    x: numericColumn(t, "k"),
    y: numericColumn(t, col),
    color: COLORS[i % COLORS.length],
    dashed: i > 0,
  }));
  return lineChart(series, {
    title: `Voltage state transition, bus ${component}`,
    xLabel: "time slot k",
    yLabel: col,
  });
}

export function renderFigure(kind: FigureKind, tables: Table[], component = 1): string {
  switch (kind) {
    case "states":
      return statesFigure(tables);
    case "cost":
      return costFigure(tables[0]);
    case "error":
      return errorFigure(tables[0]);
    case "transition":
      return transitionFigure(tables, component);
  }
}
