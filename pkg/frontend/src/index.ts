export {
  CsvContractError,
  readTable,
  requireColumns,
  numericColumn,
  indexedColumns,
  byMethod,
} from "./csv.js";
export type { Table, Row } from "./csv.js";
export { lineChart, stackCharts } from "./svg.js";
export type { Series, ChartOptions } from "./svg.js";
export {
  FIGURE_KINDS,
  renderFigure,
  statesFigure,
  costFigure,
  costSeries,
  errorFigure,
  transitionFigure,
} from "./figures.js";
export type { FigureKind } from "./figures.js";
