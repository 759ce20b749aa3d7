/**
 * Typed access to the simulator's CSV outputs.
 *
 * Two file shapes exist: per-episode files (one row per time slot) and the
 * Monte Carlo summary (one row per slot per method). Both are validated
 * against their published headers before any figure touches them.
 */

import { readFileSync } from "node:fs";
import Papa from "papaparse";

export class CsvContractError extends Error {}

export type Row = Record<string, string>;

export interface Table {
  path: string;
  columns: string[];
  rows: Row[];
}

export function readTable(path: string): Table {
  const text = readFileSync(path, "utf-8");
  const parsed = Papa.parse<Row>(text.trim(), { header: true, skipEmptyLines: true });
  if (parsed.errors.length > 0) {
    throw new CsvContractError(`${path}: ${parsed.errors[0].message}`);
  }
  const columns = parsed.meta.fields ?? [];
  if (parsed.data.length === 0) {
    throw new CsvContractError(`${path}: empty CSV, 0 data rows`);
  }
  return { path, columns, rows: parsed.data };
}

export function requireColumns(table: Table, needed: string[]): void {
  for (const col of needed) {
    if (!table.columns.includes(col)) {
      throw new CsvContractError(`${table.path}: missing column "${col}"`);
    }
  }
}

export function numericColumn(table: Table, column: string): number[] {
  requireColumns(table, [column]);
  return table.rows.map((row, i) => {
    const v = Number(row[column]);
    if (!Number.isFinite(v)) {
      throw new CsvContractError(`${table.path}: row ${i + 1} column "${column}" is not numeric`);
    }
    return v;
  });
}

/** Columns matching a prefix followed by a 1-based index, e.g. x1, x2, x3. */
export function indexedColumns(table: Table, prefix: string): string[] {
  const out: string[] = [];
  for (let i = 1; table.columns.includes(`${prefix}${i}`); i++) {
    out.push(`${prefix}${i}`);
  }
  if (out.length === 0) {
    throw new CsvContractError(`${table.path}: missing column "${prefix}1"`);
  }
  return out;
}

/** Split a summary table into one sub-table per method, preserving slot order. */
export function byMethod(table: Table): Map<string, Table> {
  requireColumns(table, ["method"]);
  const groups = new Map<string, Row[]>();
  for (const row of table.rows) {
    const rows = groups.get(row.method) ?? [];
    rows.push(row);
    groups.set(row.method, rows);
  }
  const out = new Map<string, Table>();
  for (const [method, rows] of groups) {
    out.set(method, { path: `${table.path}[${method}]`, columns: table.columns, rows });
  }
  return out;
}
