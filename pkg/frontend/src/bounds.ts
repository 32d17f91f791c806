/**
 * Validation bounds, kept identical to the server's request checks:
 * coordinate/shape violations are the server's 400 class, semantic ranges
 * its 422 class. A client-side pass over the same limits means the form
 * accepts exactly what the service accepts.
 */

export const LAT_MIN = -90;
export const LAT_MAX = 90;
export const LON_MIN = -180;
export const LON_MAX = 180;

export const THRESHOLD_MIN = 0;
export const THRESHOLD_MAX = 1;
export const TAU_MIN_EXCLUSIVE = 0; // tau_minutes > 0
export const DURATION_MIN_EXCLUSIVE = 0; // duration_minutes > 0
export const EPSILON_MIN = 0; // epsilon >= 0
export const TOP_K_MIN = 0; // top_k >= 0, integer
