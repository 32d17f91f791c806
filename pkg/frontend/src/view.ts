import { isRawNum, JsonObject, JsonValue, parseRawJson, RawNum } from './rawJson';
import { FrontRow, FrontView, OBJECTIVE_COLUMNS, SortColumn } from './types';

function asObject(v: JsonValue, what: string): JsonObject {
  if (typeof v !== 'object' || v === null || Array.isArray(v) || isRawNum(v)) {
    throw new Error(`response: expected object for ${what}`);
  }
  return v;
}

function asArray(v: JsonValue, what: string): JsonValue[] {
  if (!Array.isArray(v)) throw new Error(`response: expected array for ${what}`);
  return v;
}

function asRawNum(v: JsonValue, what: string): RawNum {
  if (!isRawNum(v)) throw new Error(`response: expected number for ${what}`);
  return v;
}

/**
 * Build the table model straight from the response text. Every displayed
 * figure is the verbatim number token from the payload; row order is the
 * service's selection order.
 */
export function frontViewFromResponse(text: string): FrontView {
  const root = asObject(parseRawJson(text), 'response');
  const status = root['status'];
  if (typeof status !== 'string') throw new Error('response: missing status');
  const rows: FrontRow[] = [];
  for (const entry of asArray(root['recommendations'], 'recommendations')) {
    const rec = asObject(entry, 'recommendation');
    const lotId = rec['lot_id'];
    if (typeof lotId !== 'string') throw new Error('response: missing lot_id');
    const objectives = asObject(rec['objectives'], 'objectives');
    const cells = {} as FrontRow['cells'];
    for (const column of OBJECTIVE_COLUMNS) {
      cells[column] = asRawNum(objectives[column], column);
    }
    const crowding = rec['crowding'];
    rows.push({
      lotId,
      cells,
      crowding: crowding === null || crowding === undefined ? null : asRawNum(crowding, 'crowding'),
      routes: rec['routes'] ?? null,
    });
  }
  return { status, rows };
}

function sortKey(row: FrontRow, column: SortColumn): number {
  if (column === 'crowding') {
    // null encodes +inf (boundary lots are the most isolated).
    return row.crowding === null ? Number.POSITIVE_INFINITY : row.crowding.value;
  }
  return row.cells[column].value;
}

/**
 * Stable ascending sort by one column; returns a new array and leaves the
 * input untouched, so clearing the sort restores the response order.
 */
export function sortRows(rows: readonly FrontRow[], column: SortColumn): FrontRow[] {
  return rows
    .map((row, index) => ({ row, index }))
    .sort((a, b) => {
      const ka = sortKey(a.row, column);
      const kb = sortKey(b.row, column);
      if (ka < kb) return -1;
      if (ka > kb) return 1;
      return a.index - b.index;
    })
    .map((decorated) => decorated.row);
}

export interface SortState {
  column: SortColumn | null;
}

/** Toggle semantics: pick a column to sort by it, pick it again to restore
 * the original response order. */
export function toggleSort(state: SortState, column: SortColumn): SortState {
  return state.column === column ? { column: null } : { column };
}

export function applySort(rows: readonly FrontRow[], state: SortState): FrontRow[] {
  return state.column === null ? [...rows] : sortRows(rows, state.column);
}
