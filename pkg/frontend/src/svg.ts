/**
 * Minimal SVG line-chart builder. No canvas binding is assumed; charts are
 * plain markup so rendering is deterministic and diffable.
 */

export interface Series {
  label: string;
  x: number[];
  y: number[];
  color: string;
  dashed?: boolean;
}

export interface ChartOptions {
  title: string;
  xLabel: string;
  yLabel: string;
  width?: number;
  height?: number;
}

const MARGIN = { top: 40, right: 24, bottom: 44, left: 64 };

function extent(values: number[]): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const v of values) {
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  if (lo === hi) {
    lo -= 1;
    hi += 1;
  }
  return [lo, hi];
}

function ticks(lo: number, hi: number, count = 5): number[] {
  const span = hi - lo;
  const step = Math.pow(10, Math.floor(Math.log10(span / count)));
  const err = (span / count) / step;
  const mult = err >= 7.5 ? 10 : err >= 3.5 ? 5 : err >= 1.5 ? 2 : 1;
  const s = step * mult;
  const out: number[] = [];
  for (let t = Math.ceil(lo / s) * s; t <= hi + 1e-12; t += s) {
    out.push(Number(t.toPrecision(12)));
  }
  return out;
}

function esc(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

export function lineChart(series: Series[], opts: ChartOptions): string {
  if (series.length === 0) throw new Error("no series to plot");
  const width = opts.width ?? 640;
  const height = opts.height ?? 400;
  const plotW = width - MARGIN.left - MARGIN.right;
  const plotH = height - MARGIN.top - MARGIN.bottom;

  const [xLo, xHi] = extent(series.flatMap((s) => s.x));
  const [yLoRaw, yHiRaw] = extent(series.flatMap((s) => s.y));
  const pad = 0.05 * (yHiRaw - yLoRaw);
  const yLo = yLoRaw - pad;
  const yHi = yHiRaw + pad;

  const sx = (v: number) => MARGIN.left + ((v - xLo) / (xHi - xLo)) * plotW;
  const sy = (v: number) => MARGIN.top + plotH - ((v - yLo) / (yHi - yLo)) * plotH;

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
      `viewBox="0 0 ${width} ${height}" font-family="sans-serif" font-size="12">`,
  );
  parts.push(`<rect width="${width}" height="${height}" fill="white"/>`);
  parts.push(
    `<text x="${width / 2}" y="20" text-anchor="middle" font-size="15">${esc(opts.title)}</text>`,
  );

  for (const t of ticks(yLo, yHi)) {
    const y = sy(t);
    parts.push(
      `<line x1="${MARGIN.left}" y1="${y}" x2="${width - MARGIN.right}" y2="${y}" ` +
        `stroke="#ddd" stroke-width="1"/>`,
      `<text x="${MARGIN.left - 6}" y="${y + 4}" text-anchor="end">${t}</text>`,
    );
  }
  for (const t of ticks(xLo, xHi)) {
    const x = sx(t);
    parts.push(
      `<line x1="${x}" y1="${MARGIN.top + plotH}" x2="${x}" y2="${MARGIN.top + plotH + 4}" stroke="#333"/>`,
      `<text x="${x}" y="${MARGIN.top + plotH + 18}" text-anchor="middle">${t}</text>`,
    );
  }
  parts.push(
    `<line x1="${MARGIN.left}" y1="${MARGIN.top + plotH}" x2="${width - MARGIN.right}" ` +
      `y2="${MARGIN.top + plotH}" stroke="#333"/>`,
    `<line x1="${MARGIN.left}" y1="${MARGIN.top}" x2="${MARGIN.left}" ` +
      `y2="${MARGIN.top + plotH}" stroke="#333"/>`,
    `<text x="${width / 2}" y="${height - 8}" text-anchor="middle">${esc(opts.xLabel)}</text>`,
    `<text x="16" y="${MARGIN.top + plotH / 2}" text-anchor="middle" ` +
      `transform="rotate(-90 16 ${MARGIN.top + plotH / 2})">${esc(opts.yLabel)}</text>`,
  );

  for (const s of series) {
    if (s.x.length !== s.y.length) throw new Error(`series ${s.label}: x/y length mismatch`);
    const points = s.x.map((v, i) => `${sx(v).toFixed(2)},${sy(s.y[i]).toFixed(2)}`).join(" ");
    const dash = s.dashed ? ` stroke-dasharray="6 4"` : "";
    parts.push(
      `<polyline points="${points}" fill="none" stroke="${s.color}" stroke-width="1.8"${dash} ` +
        `data-label="${esc(s.label)}"/>`,
    );
  }

  series.forEach((s, i) => {
    const lx = MARGIN.left + 10;
    const ly = MARGIN.top + 14 + 16 * i;
    const dash = s.dashed ? ` stroke-dasharray="6 4"` : "";
    parts.push(
      `<line x1="${lx}" y1="${ly - 4}" x2="${lx + 22}" y2="${ly - 4}" stroke="${s.color}" stroke-width="1.8"${dash}/>`,
      `<text x="${lx + 28}" y="${ly}">${esc(s.label)}</text>`,
    );
  });

  parts.push("</svg>");
  return parts.join("\n");
}

/** Stack several charts vertically into one SVG document. */
export function stackCharts(charts: string[], width = 640): string {
  const bodies: string[] = [];
  let offset = 0;
  for (const chart of charts) {
    const m = chart.match(/height="(\d+)"/);
    const h = m ? Number(m[1]) : 400;
    const inner = chart.replace(/^<svg[^>]*>/, "").replace(/<\/svg>$/, "");
    bodies.push(`<g transform="translate(0 ${offset})">${inner}</g>`);
    offset += h;
  }
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${offset}" ` +
    `viewBox="0 0 ${width} ${offset}" font-family="sans-serif" font-size="12">\n` +
    bodies.join("\n") +
    "\n</svg>"
  );
}
