/** Instance view: upload or paste, inline validation, capacity and
 * staff-group summary, neighborhood applicability with reasons. */

import { api, ApiError, InstanceInfo } from '../api.js';
import { clear, el } from '../dom.js';
import { plural } from '../format.js';

export interface InstanceCtx {
  onUploaded: (inst: InstanceInfo) => void;
  current: InstanceInfo | null;
}

function errorBox(): HTMLElement {
  return el('div', { class: 'error hidden', 'data-role': 'error' });
}

function showError(root: HTMLElement, message: string): void {
  const box = root.querySelector('[data-role="error"]') as HTMLElement;
  box.textContent = message;
  box.classList.remove('hidden');
}

function hideError(root: HTMLElement): void {
  const box = root.querySelector('[data-role="error"]') as HTMLElement;
  box.classList.add('hidden');
}

export function summaryCard(inst: InstanceInfo): HTMLElement {
  const capRows = inst.labels.topics.map((topic, j) => {
    const group = inst.groups.findIndex((g) => g.includes(j + 1));
    return el(
      'tr',
      {},
      el('td', {}, topic),
      el('td', {}, inst.labels.staff[group] ?? ''),
      el('td', { class: 'num' }, `${inst.a[j]}..${inst.b[j]}`),
    );
  });
  const applicability = el('ul', { class: 'applicability' });
  for (const kind of inst.applicable) {
    applicability.append(el('li', { class: 'ok' }, `${kind}: applicable`));
  }
  for (const entry of inst.inapplicable) {
    applicability.append(
      el('li', { class: 'blocked' }, `${entry.kind}: ${entry.reason}`),
    );
  }
  return el(
    'div',
    { class: 'card', 'data-role': 'summary' },
    el(
      'p',
      {},
      `${plural(inst.n, 'student')}, ${plural(inst.m, 'topic')}, ` +
        `${plural(inst.groups.length, 'staff group')}, ` +
        `preference budget ${inst.w_max} per student`,
    ),
    el(
      'table',
      { class: 'capacities' },
      el(
        'thead',
        {},
        el('tr', {}, el('th', {}, 'topic'), el('th', {}, 'staff'), el('th', {}, 'seats')),
      ),
      el('tbody', {}, ...capRows),
    ),
    el('h3', {}, 'move kinds for this instance'),
    applicability,
  );
}

export function renderInstanceView(root: HTMLElement, ctx: InstanceCtx): void {
  clear(root);
  const jsonArea = el('textarea', {
    rows: '8',
    placeholder: 'paste an instance JSON file here',
    'data-role': 'json-input',
  }) as HTMLTextAreaElement;
  const matrixArea = el('textarea', {
    rows: '8',
    placeholder:
      'or paste a weight matrix (one student per line, values separated by ; , or spaces)',
    'data-role': 'matrix-input',
  }) as HTMLTextAreaElement;
  const normalize = el('input', { type: 'checkbox', 'data-role': 'normalize' }) as HTMLInputElement;
  const file = el('input', { type: 'file', accept: '.json,.txt,.csv' }) as HTMLInputElement;
  file.addEventListener('change', async () => {
    const chosen = file.files?.[0];
    if (!chosen) return;
    const text = await chosen.text();
    if (chosen.name.endsWith('.json')) jsonArea.value = text;
    else matrixArea.value = text;
  });

  const upload = async () => {
    hideError(root);
    try {
      let info: InstanceInfo;
      if (jsonArea.value.trim()) {
        let payload: object;
        try {
          payload = JSON.parse(jsonArea.value);
        } catch (e) {
          showError(root, `not valid JSON: ${(e as Error).message}`);
          return;
        }
        info = await api.uploadInstance(payload);
      } else if (matrixArea.value.trim()) {
        info = await api.uploadMatrix(matrixArea.value, undefined, normalize.checked);
      } else {
        showError(root, 'paste an instance file or a weight matrix first');
        return;
      }
      ctx.onUploaded(info);
      renderInstanceView(root, { ...ctx, current: info });
    } catch (e) {
      showError(root, e instanceof ApiError ? e.message : String(e));
    }
  };

  root.append(
    el('h2', {}, 'Instance'),
    errorBox(),
    el('div', { class: 'upload-grid' }, jsonArea, matrixArea),
    el(
      'div',
      { class: 'controls' },
      file,
      el('label', {}, normalize, ' rescale rows whose totals drift'),
      el('button', { 'data-role': 'upload', onclick: () => void upload() }, 'Upload'),
    ),
    ctx.current
      ? summaryCard(ctx.current)
      : el('p', { class: 'hint' }, 'no instance loaded yet'),
  );
}
