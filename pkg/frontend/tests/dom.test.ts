// @vitest-environment jsdom
import { readFileSync } from 'node:fs';
import { join } from 'node:path';

import { beforeEach, describe, expect, it } from 'vitest';

import { renderMap } from '../src/mapRender';
import { crowdingText, renderTable } from '../src/table';
import { FrontRow, SortColumn } from '../src/types';
import { frontViewFromResponse, sortRows } from '../src/view';

const PAYLOAD = readFileSync(join(__dirname, 'fixtures', 'table1.json'), 'utf-8');

function rows(): FrontRow[] {
  return frontViewFromResponse(PAYLOAD).rows;
}

const noop = { onSort: () => undefined, onSelect: () => undefined };

describe('renderTable', () => {
  let host: HTMLElement;

  beforeEach(() => {
    document.body.innerHTML = '<div id="host"></div>';
    host = document.getElementById('host')!;
  });

  it('renders the canned response as five rows', () => {
    renderTable(host, rows(), null, noop);
    expect(host.querySelectorAll('tbody tr')).toHaveLength(5);
  });

  it('cell text is byte-identical to the payload tokens', () => {
    renderTable(host, rows(), null, noop);
    const first = host.querySelector('tbody tr')!;
    const texts = Array.from(first.querySelectorAll('td')).map((td) => td.textContent);
    expect(texts).toEqual(['172', '14.0', '0.4', '0.6', '1.0', '∞']);
    // Each numeric token appears verbatim in the raw payload.
    expect(PAYLOAD).toContain('"travel_min": 14.0');
    expect(PAYLOAD).toContain('"walk_km": 0.4');
    expect(PAYLOAD).toContain('"fare": 0.6');
    expect(PAYLOAD).toContain('"likelihood": 1.0');
    // JSON.parse-based rendering would have shown "14" and "1" instead.
    const reparsed = JSON.parse(PAYLOAD).recommendations[0].objectives;
    expect(String(reparsed.travel_min)).toBe('14');
    expect(String(reparsed.likelihood)).toBe('1');
  });

  it('fare-sorted rendering places the two $0.0 lots first', () => {
    renderTable(host, sortRows(rows(), 'fare'), null, noop);
    const fares = Array.from(host.querySelectorAll('tbody tr')).map(
      (tr) => tr.querySelectorAll('td')[3].textContent,
    );
    expect(fares).toEqual(['0.0', '0.0', '0.2', '0.3', '0.6']);
    const lots = Array.from(host.querySelectorAll('tbody tr')).map(
      (tr) => tr.querySelectorAll('td')[0].textContent,
    );
    expect(lots.slice(0, 2)).toEqual(['4716', '5129']);
  });

  it('marks the selected row and reports clicks', () => {
    const clicks: string[] = [];
    renderTable(host, rows(), '4729', { ...noop, onSelect: (id) => clicks.push(id) });
    const selected = host.querySelector('tr.selected')!;
    expect(selected.getAttribute('data-lot-id')).toBe('4729');
    (host.querySelectorAll('tbody tr')[0] as HTMLElement).click();
    expect(clicks).toEqual(['172']);
  });

  it('sortable headers report their column', () => {
    const sorts: SortColumn[] = [];
    renderTable(host, rows(), null, { ...noop, onSort: (c) => sorts.push(c) });
    const fareHeader = Array.from(host.querySelectorAll('th')).find(
      (th) => th.dataset.column === 'fare',
    )!;
    (fareHeader as HTMLElement).click();
    expect(sorts).toEqual(['fare']);
  });

  it('crowdingText renders null as infinity and finite values verbatim', () => {
    const row = rows()[0];
    expect(crowdingText(row)).toBe('∞');
    const finite: FrontRow = {
      ...row,
      crowding: { kind: 'number', raw: '1.50', value: 1.5 },
    };
    expect(crowdingText(finite)).toBe('1.50');
  });
});

describe('renderMap', () => {
  let host: HTMLElement;

  beforeEach(() => {
    document.body.innerHTML = '<div id="map"></div>';
    host = document.getElementById('map')!;
  });

  it('draws five route pairs and five markers', () => {
    renderMap(host, rows(), null, { onSelect: () => undefined });
    expect(host.querySelectorAll('path.drive_leg')).toHaveLength(5);
    expect(host.querySelectorAll('path.walk_leg')).toHaveLength(5);
    expect(host.querySelectorAll('circle.lot-marker')).toHaveLength(5);
  });

  it('highlights the selected lot route pair', () => {
    renderMap(host, rows(), '5129', { onSelect: () => undefined });
    const highlighted = Array.from(host.querySelectorAll('path.selected')).map((p) =>
      p.getAttribute('data-lot-id'),
    );
    expect(highlighted).toEqual(['5129', '5129']);
  });

  it('clicking a route selects its lot', () => {
    const picked: string[] = [];
    renderMap(host, rows(), null, { onSelect: (id) => picked.push(id) });
    const path = host.querySelector('path[data-lot-id="4734"]') as SVGPathElement;
    path.dispatchEvent(new MouseEvent('click', { bubbles: true }));
    expect(picked).toEqual(['4734']);
  });
});
