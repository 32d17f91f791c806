import { FrontRow, OBJECTIVE_COLUMNS, SortColumn } from './types';

export const TABLE_HEADERS: { key: SortColumn | 'lot_id'; label: string }[] = [
  { key: 'lot_id', label: 'Lot' },
  { key: 'travel_min', label: 'Travel (min)' },
  { key: 'walk_km', label: 'Walk (km)' },
  { key: 'fare', label: 'Fare ($)' },
  { key: 'likelihood', label: 'Likelihood' },
  { key: 'crowding', label: 'Crowding' },
];

export interface TableCallbacks {
  onSort(column: SortColumn): void;
  onSelect(lotId: string): void;
}

/** Crowding cell text: null on the wire means an infinitely isolated boundary lot. */
export function crowdingText(row: FrontRow): string {
  return row.crowding === null ? '∞' : row.crowding.raw;
}

/**
 * Render rows into a table body. Cell text comes straight from the verbatim
 * response tokens; no arithmetic happens here.
 */
export function renderTable(
  container: HTMLElement,
  rows: readonly FrontRow[],
  selected: string | null,
  callbacks: TableCallbacks,
): void {
  container.textContent = '';
  const table = document.createElement('table');
  table.className = 'front-table';

  const head = document.createElement('thead');
  const headRow = document.createElement('tr');
  for (const header of TABLE_HEADERS) {
    const th = document.createElement('th');
    th.textContent = header.label;
    th.dataset.column = header.key;
    if (header.key !== 'lot_id') {
      th.classList.add('sortable');
      th.addEventListener('click', () => callbacks.onSort(header.key as SortColumn));
    }
    headRow.appendChild(th);
  }
  head.appendChild(headRow);
  table.appendChild(head);

  const body = document.createElement('tbody');
  for (const row of rows) {
    const tr = document.createElement('tr');
    tr.dataset.lotId = row.lotId;
    if (row.lotId === selected) tr.classList.add('selected');
    const cells = [
      row.lotId,
      ...OBJECTIVE_COLUMNS.map((column) => row.cells[column].raw),
      crowdingText(row),
    ];
    for (const text of cells) {
      const td = document.createElement('td');
      td.textContent = text;
      tr.appendChild(td);
    }
    tr.addEventListener('click', () => callbacks.onSelect(row.lotId));
    body.appendChild(tr);
  }
  table.appendChild(body);
  container.appendChild(table);
}
