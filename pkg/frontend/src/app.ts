import { RecommendClient } from './client';
import { SERVICE_BASE_URL } from './config';
import { renderMap } from './mapRender';
import { renderTable } from './table';
import { FieldError, FrontView, QueryFormState, SortColumn } from './types';
import { validateForm } from './validate';
import { applySort, SortState, toggleSort } from './view';

interface AppState {
  view: FrontView | null;
  sort: SortState;
  selected: string | null;
}

function readNumber(form: HTMLFormElement, name: string): number {
  const input = form.elements.namedItem(name) as HTMLInputElement | null;
  return input ? Number(input.value) : NaN;
}

function readText(form: HTMLFormElement, name: string): string {
  const input = form.elements.namedItem(name) as HTMLInputElement | null;
  return input ? input.value : '';
}

export function formStateFrom(form: HTMLFormElement): QueryFormState {
  return {
    from: { lat: readNumber(form, 'from_lat'), lon: readNumber(form, 'from_lon') },
    to: { lat: readNumber(form, 'to_lat'), lon: readNumber(form, 'to_lon') },
    arrive: readText(form, 'arrive'),
    tau_minutes: readNumber(form, 'tau_minutes'),
    duration_minutes: readNumber(form, 'duration_minutes'),
    threshold_likelihood: readNumber(form, 'threshold_likelihood'),
    epsilon: readNumber(form, 'epsilon'),
    top_k: readNumber(form, 'top_k'),
  };
}

function showErrors(container: HTMLElement, errors: FieldError[]): void {
  container.textContent = '';
  for (const error of errors) {
    const line = document.createElement('div');
    line.className = 'field-error';
    line.dataset.field = error.field;
    line.textContent = `${error.field}: ${error.message}`;
    container.appendChild(line);
  }
}

function showBanner(container: HTMLElement, kind: string, text: string): void {
  container.textContent = text;
  container.dataset.kind = kind;
  container.hidden = text === '';
}

export function startApp(root: Document = document): void {
  const form = root.querySelector<HTMLFormElement>('#query-form');
  const tableHost = root.querySelector<HTMLElement>('#table-host');
  const mapHost = root.querySelector<HTMLElement>('#map-host');
  const errorHost = root.querySelector<HTMLElement>('#error-host');
  const banner = root.querySelector<HTMLElement>('#status-banner');
  const retry = root.querySelector<HTMLButtonElement>('#retry');
  if (!form || !tableHost || !mapHost || !errorHost || !banner || !retry) {
    throw new Error('missing application scaffolding in the page');
  }

  const client = new RecommendClient(SERVICE_BASE_URL);
  const state: AppState = { view: null, sort: { column: null }, selected: null };

  const redraw = () => {
    if (!state.view) return;
    const rows = applySort(state.view.rows, state.sort);
    renderTable(tableHost, rows, state.selected, {
      onSort: (column: SortColumn) => {
        state.sort = toggleSort(state.sort, column);
        redraw();
      },
      onSelect: (lotId: string) => {
        state.selected = state.selected === lotId ? null : lotId;
        redraw();
      },
    });
    renderMap(mapHost, state.view.rows, state.selected, {
      onSelect: (lotId: string) => {
        state.selected = lotId;
        redraw();
      },
    });
  };

  const submit = async () => {
    const formState = formStateFrom(form);
    const problems = validateForm(formState);
    showErrors(errorHost, problems);
    if (problems.length > 0) return;

    retry.hidden = true;
    showBanner(banner, 'pending', 'Loading…');
    const result = await client.submit(formState);
    if (result.kind === 'stale') return;
    if (result.kind === 'network_error') {
      showBanner(banner, 'error', `Network failure: ${result.message}`);
      retry.hidden = false;
      return;
    }
    if (result.kind === 'http_error') {
      showBanner(banner, 'error', `Request rejected (${result.status})`);
      showErrors(errorHost, result.errors);
      return;
    }
    state.view = result.view;
    state.sort = { column: null };
    state.selected = null;
    if (result.view.status !== 'ok' || result.view.rows.length === 0) {
      showBanner(
        banner,
        'empty',
        result.view.status === 'no_feasible_lot'
          ? 'No parking lot satisfies the thresholds.'
          : 'No recommendations.',
      );
    } else {
      showBanner(banner, 'ok', '');
    }
    redraw();
  };

  form.addEventListener('submit', (event) => {
    event.preventDefault();
    void submit();
  });
  retry.addEventListener('click', () => void submit());

  void client
    .fetchLots()
    .then((payload) => {
      const lots = (payload as { lots?: unknown[] }).lots;
      if (Array.isArray(lots)) {
        showBanner(banner, 'info', `${lots.length} parking lots loaded.`);
      }
    })
    .catch(() => showBanner(banner, 'error', 'Service unreachable.'));
}
