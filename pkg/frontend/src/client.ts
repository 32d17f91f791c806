import { FieldError, QueryFormState, SubmitResult } from './types';
import { frontViewFromResponse } from './view';

type FetchLike = (url: string, init: RequestInit) => Promise<{
  status: number;
  text(): Promise<string>;
}>;

function errorList(payload: unknown): FieldError[] {
  if (typeof payload !== 'object' || payload === null) return [];
  const errors = (payload as { errors?: unknown }).errors;
  if (!Array.isArray(errors)) return [];
  return errors
    .filter((e): e is FieldError => typeof e === 'object' && e !== null && 'field' in e)
    .map((e) => ({ field: String(e.field), message: String(e.message ?? '') }));
}

/**
 * Client for POST /v1/recommend with single-in-flight semantics: each submit
 * gets a sequence number, and a response that has been superseded by a newer
 * submit is reported as stale so the UI can drop it.
 */
export class RecommendClient {
  private sequence = 0;

  constructor(
    private readonly baseUrl: string,
    private readonly fetchFn: FetchLike = (url, init) => fetch(url, init),
  ) {}

  requestBody(form: QueryFormState): string {
    return JSON.stringify({
      from: form.from,
      to: form.to,
      arrive: form.arrive,
      tau_minutes: form.tau_minutes,
      duration_minutes: form.duration_minutes,
      threshold_likelihood: form.threshold_likelihood,
      epsilon: form.epsilon,
      top_k: form.top_k,
    });
  }

  async submit(form: QueryFormState): Promise<SubmitResult> {
    const ticket = ++this.sequence;
    let status: number;
    let text: string;
    try {
      const response = await this.fetchFn(`${this.baseUrl}/v1/recommend`, {
        method: 'POST',
        headers: { 'content-type': 'application/json' },
        body: this.requestBody(form),
      });
      status = response.status;
      text = await response.text();
    } catch (err) {
      if (ticket !== this.sequence) return { kind: 'stale' };
      return { kind: 'network_error', message: err instanceof Error ? err.message : String(err) };
    }
    if (ticket !== this.sequence) return { kind: 'stale' };
    if (status !== 200) {
      let payload: unknown = null;
      try {
        payload = JSON.parse(text);
      } catch {
        payload = null;
      }
      return { kind: 'http_error', status, errors: errorList(payload) };
    }
    return { kind: 'ok', view: frontViewFromResponse(text) };
  }

  async fetchLots(): Promise<unknown> {
    const response = await this.fetchFn(`${this.baseUrl}/v1/lots`, { method: 'GET' });
    return JSON.parse(await response.text());
  }
}
