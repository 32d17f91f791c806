import { JsonValue, RawNum } from './rawJson';

export interface Coordinate {
  lat: number;
  lon: number;
}

/** Mirror of the POST /v1/recommend request body. */
export interface QueryFormState {
  from: Coordinate;
  to: Coordinate;
  arrive: string;
  tau_minutes: number;
  duration_minutes: number;
  threshold_likelihood: number;
  epsilon: number;
  top_k: number;
}

export interface FieldError {
  field: string;
  message: string;
}

export const OBJECTIVE_COLUMNS = ['travel_min', 'walk_km', 'fare', 'likelihood'] as const;
export type ObjectiveColumn = (typeof OBJECTIVE_COLUMNS)[number];
export type SortColumn = ObjectiveColumn | 'crowding';

/** One table row; display cells carry the verbatim response tokens. */
export interface FrontRow {
  lotId: string;
  cells: Record<ObjectiveColumn, RawNum>;
  crowding: RawNum | null;
  routes: JsonValue;
}

export interface FrontView {
  status: string;
  rows: FrontRow[];
}

export type SubmitResult =
  | { kind: 'ok'; view: FrontView }
  | { kind: 'stale' }
  | { kind: 'http_error'; status: number; errors: FieldError[] }
  | { kind: 'network_error'; message: string };
