/** Build-time configuration with sensible dev defaults. */

declare const __SERVICE_BASE_URL__: string | undefined;
declare const __TILE_URL__: string | undefined;

export const SERVICE_BASE_URL: string =
  typeof __SERVICE_BASE_URL__ === 'string' ? __SERVICE_BASE_URL__ : 'http://127.0.0.1:8000';

/** Raster tile template ({z}/{x}/{y}); empty string renders routes on a plain canvas. */
export const TILE_URL: string = typeof __TILE_URL__ === 'string' ? __TILE_URL__ : '';
