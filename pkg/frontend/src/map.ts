import { isRawNum, JsonObject, JsonValue, num } from './rawJson';
import { FrontRow } from './types';

export interface MapPath {
  lotId: string;
  kind: string; // drive_leg | walk_leg
  d: string; // SVG path data
}

export interface MapMarker {
  lotId: string;
  x: number;
  y: number;
}

export interface MapTile {
  url: string;
  x: number;
  y: number;
  width: number;
  height: number;
}

export interface MapViewModel {
  width: number;
  height: number;
  tiles: MapTile[];
  paths: MapPath[];
  markers: MapMarker[];
}

export const TILE_PIXELS = 256;
export const MAX_TILE_ZOOM = 19;

/** Slippy-map world coordinates in [0, 1]; y grows southward like SVG y. */
export function worldX(lon: number): number {
  return (lon + 180) / 360;
}

export function worldY(lat: number): number {
  const phi = (lat * Math.PI) / 180;
  return (1 - Math.log(Math.tan(phi) + 1 / Math.cos(phi)) / Math.PI) / 2;
}

/** Fill a {z}/{x}/{y} template. */
export function buildTileUrl(template: string, z: number, x: number, y: number): string {
  return template.replace('{z}', String(z)).replace('{x}', String(x)).replace('{y}', String(y));
}

interface Frame {
  minX: number;
  minY: number;
  scale: number; // viewport units per world unit
  padX: number;
  padY: number;
}

function collectWorldPoints(rows: readonly FrontRow[]): [number, number][] {
  const points: [number, number][] = [];
  for (const row of rows) {
    for (const feature of features(row.routes)) {
      const geometry = feature['geometry'] as JsonObject;
      const coords = geometry['coordinates'] as JsonValue[];
      if (geometry['type'] === 'Point') {
        points.push([worldX(num(coords[0])), worldY(num(coords[1]))]);
      } else {
        for (const pair of coords) {
          const p = pair as JsonValue[];
          points.push([worldX(num(p[0])), worldY(num(p[1]))]);
        }
      }
    }
  }
  return points;
}

function features(routes: JsonValue): JsonObject[] {
  if (typeof routes !== 'object' || routes === null || Array.isArray(routes) || isRawNum(routes)) {
    return [];
  }
  const list = (routes as JsonObject)['features'];
  if (!Array.isArray(list)) return [];
  return list.filter(
    (f): f is JsonObject => typeof f === 'object' && f !== null && !Array.isArray(f) && !isRawNum(f),
  );
}

function makeFrame(points: [number, number][], width: number, height: number, pad: number): Frame {
  let minX = Infinity;
  let maxX = -Infinity;
  let minY = Infinity;
  let maxY = -Infinity;
  for (const [x, y] of points) {
    minX = Math.min(minX, x);
    maxX = Math.max(maxX, x);
    minY = Math.min(minY, y);
    maxY = Math.max(maxY, y);
  }
  const spanX = maxX - minX || 1e-12;
  const spanY = maxY - minY || 1e-12;
  const scale = Math.min((width - 2 * pad) / spanX, (height - 2 * pad) / spanY);
  return { minX, minY, scale, padX: pad, padY: pad };
}

function toViewport(frame: Frame, wx: number, wy: number): [number, number] {
  return [frame.padX + (wx - frame.minX) * frame.scale, frame.padY + (wy - frame.minY) * frame.scale];
}

function tileLayer(frame: Frame, width: number, height: number, template: string): MapTile[] {
  if (!template) return [];
  // Zoom so one tile is about TILE_PIXELS viewport units across.
  let zoom = Math.floor(Math.log2(frame.scale / TILE_PIXELS));
  zoom = Math.max(0, Math.min(MAX_TILE_ZOOM, zoom));
  const tiles: MapTile[] = [];
  const tileSpan = 1 / 2 ** zoom;
  const maxIndex = 2 ** zoom - 1;
  const firstX = Math.max(0, Math.floor((frame.minX - frame.padX / frame.scale) / tileSpan));
  const firstY = Math.max(0, Math.floor((frame.minY - frame.padY / frame.scale) / tileSpan));
  const lastX = Math.min(maxIndex, Math.floor((frame.minX + (width - frame.padX) / frame.scale) / tileSpan));
  const lastY = Math.min(maxIndex, Math.floor((frame.minY + (height - frame.padY) / frame.scale) / tileSpan));
  for (let ty = firstY; ty <= lastY; ty++) {
    for (let tx = firstX; tx <= lastX; tx++) {
      const [x, y] = toViewport(frame, tx * tileSpan, ty * tileSpan);
      tiles.push({
        url: buildTileUrl(template, zoom, tx, ty),
        x,
        y,
        width: tileSpan * frame.scale,
        height: tileSpan * frame.scale,
      });
    }
  }
  return tiles;
}

/**
 * Project every route leg and lot marker from the response GeoJSON into a
 * fixed viewport (Web-Mercator world coordinates, so an optional raster tile
 * backdrop lines up exactly). Purely computational; the DOM layer turns the
 * model into SVG elements.
 */
export function buildMapView(
  rows: readonly FrontRow[],
  width = 640,
  height = 420,
  tileTemplate = '',
): MapViewModel {
  const points = collectWorldPoints(rows);
  if (points.length === 0) {
    return { width, height, tiles: [], paths: [], markers: [] };
  }
  const frame = makeFrame(points, width, height, 16);
  const paths: MapPath[] = [];
  const markers: MapMarker[] = [];
  for (const row of rows) {
    for (const feature of features(row.routes)) {
      const geometry = feature['geometry'] as JsonObject;
      const properties = (feature['properties'] ?? {}) as JsonObject;
      const kind = typeof properties['kind'] === 'string' ? (properties['kind'] as string) : '';
      const coords = geometry['coordinates'] as JsonValue[];
      if (geometry['type'] === 'Point') {
        const [x, y] = toViewport(frame, worldX(num(coords[0])), worldY(num(coords[1])));
        markers.push({ lotId: row.lotId, x, y });
      } else if (geometry['type'] === 'LineString') {
        const parts = coords.map((pair, i) => {
          const p = pair as JsonValue[];
          const [x, y] = toViewport(frame, worldX(num(p[0])), worldY(num(p[1])));
          return `${i === 0 ? 'M' : 'L'}${x.toFixed(1)} ${y.toFixed(1)}`;
        });
        paths.push({ lotId: row.lotId, kind, d: parts.join(' ') });
      }
    }
  }
  return { width, height, tiles: tileLayer(frame, width, height, tileTemplate), paths, markers };
}
