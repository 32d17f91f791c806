import { TILE_URL } from './config';
import { buildMapView } from './map';
import { FrontRow } from './types';

const SVG_NS = 'http://www.w3.org/2000/svg';

export interface MapCallbacks {
  onSelect(lotId: string): void;
}

/** Draw route legs and lot markers as SVG; the selected lot's pair is highlighted. */
export function renderMap(
  container: HTMLElement,
  rows: readonly FrontRow[],
  selected: string | null,
  callbacks: MapCallbacks,
): void {
  container.textContent = '';
  const model = buildMapView(rows, 640, 420, TILE_URL);
  const svg = document.createElementNS(SVG_NS, 'svg');
  svg.setAttribute('viewBox', `0 0 ${model.width} ${model.height}`);
  svg.setAttribute('class', 'route-map');

  for (const tile of model.tiles) {
    const el = document.createElementNS(SVG_NS, 'image');
    el.setAttribute('href', tile.url);
    el.setAttribute('x', tile.x.toFixed(1));
    el.setAttribute('y', tile.y.toFixed(1));
    el.setAttribute('width', tile.width.toFixed(1));
    el.setAttribute('height', tile.height.toFixed(1));
    el.classList.add('tile-backdrop');
    svg.appendChild(el);
  }

  for (const path of model.paths) {
    const el = document.createElementNS(SVG_NS, 'path');
    el.setAttribute('d', path.d);
    el.setAttribute('fill', 'none');
    el.setAttribute('data-lot-id', path.lotId);
    el.setAttribute('data-kind', path.kind);
    el.classList.add('leg', path.kind);
    if (path.lotId === selected) el.classList.add('selected');
    el.addEventListener('click', () => callbacks.onSelect(path.lotId));
    svg.appendChild(el);
  }
  for (const marker of model.markers) {
    const el = document.createElementNS(SVG_NS, 'circle');
    el.setAttribute('cx', marker.x.toFixed(1));
    el.setAttribute('cy', marker.y.toFixed(1));
    el.setAttribute('r', '5');
    el.setAttribute('data-lot-id', marker.lotId);
    el.classList.add('lot-marker');
    if (marker.lotId === selected) el.classList.add('selected');
    el.addEventListener('click', () => callbacks.onSelect(marker.lotId));
    svg.appendChild(el);
  }
  container.appendChild(svg);
}
