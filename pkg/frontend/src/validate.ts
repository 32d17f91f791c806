import {
  DURATION_MIN_EXCLUSIVE,
  EPSILON_MIN,
  LAT_MAX,
  LAT_MIN,
  LON_MAX,
  LON_MIN,
  TAU_MIN_EXCLUSIVE,
  THRESHOLD_MAX,
  THRESHOLD_MIN,
  TOP_K_MIN,
} from './bounds';
import { FieldError, QueryFormState } from './types';

function checkCoordinate(prefix: 'from' | 'to', c: { lat: number; lon: number }, errors: FieldError[]): void {
  if (!Number.isFinite(c.lat) || c.lat < LAT_MIN || c.lat > LAT_MAX) {
    errors.push({ field: `${prefix}.lat`, message: `must lie in [${LAT_MIN}, ${LAT_MAX}]` });
  }
  if (!Number.isFinite(c.lon) || c.lon < LON_MIN || c.lon > LON_MAX) {
    errors.push({ field: `${prefix}.lon`, message: `must lie in [${LON_MIN}, ${LON_MAX}]` });
  }
}

/** Same checks the server performs; an empty result means it will accept the query. */
export function validateForm(form: QueryFormState): FieldError[] {
  const errors: FieldError[] = [];
  checkCoordinate('from', form.from, errors);
  checkCoordinate('to', form.to, errors);
  if (Number.isNaN(Date.parse(form.arrive))) {
    errors.push({ field: 'arrive', message: 'must be an ISO-8601 timestamp' });
  }
  if (!Number.isFinite(form.tau_minutes) || form.tau_minutes <= TAU_MIN_EXCLUSIVE) {
    errors.push({ field: 'tau_minutes', message: 'must be > 0' });
  }
  if (!Number.isFinite(form.duration_minutes) || form.duration_minutes <= DURATION_MIN_EXCLUSIVE) {
    errors.push({ field: 'duration_minutes', message: 'must be > 0' });
  }
  if (
    !Number.isFinite(form.threshold_likelihood) ||
    form.threshold_likelihood < THRESHOLD_MIN ||
    form.threshold_likelihood > THRESHOLD_MAX
  ) {
    errors.push({ field: 'threshold_likelihood', message: 'must lie in [0, 1]' });
  }
  if (!Number.isFinite(form.epsilon) || form.epsilon < EPSILON_MIN) {
    errors.push({ field: 'epsilon', message: 'must be >= 0' });
  }
  if (!Number.isInteger(form.top_k) || form.top_k < TOP_K_MIN) {
    errors.push({ field: 'top_k', message: 'must be an integer >= 0' });
  }
  return errors;
}
