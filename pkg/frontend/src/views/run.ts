/** Run view: search configuration, neighborhood checkboxes with
 * disabled-with-reason entries, live progress while the job runs. */

import { api, ApiError, InstanceInfo, JobInfo } from '../api.js';
import { clear, el } from '../dom.js';
import { outcomeText, percent } from '../format.js';
import { pollJob } from '../poll.js';

export interface RunCtx {
  instance: InstanceInfo;
  onJobFinished: (job: JobInfo) => void;
}

function reportCard(job: JobInfo): HTMLElement {
  const report = job.report;
  if (!report) return el('div', {});
  const bestList = el('ul', {});
  for (const row of report.best) {
    bestList.append(
      el(
        'li',
        {},
        `${outcomeText(row.outcome.utility, row.outcome.imbalance)}: ` +
          `${row.count} alternative${row.count === 1 ? '' : 's'}` +
          (row.capped ? ' (cap reached, more exist)' : ''),
      ),
    );
  }
  return el(
    'div',
    { class: 'card', 'data-role': 'report' },
    el('h3', {}, `job ${job.id} finished`),
    el(
      'p',
      {},
      `${report.evaluations} evaluations, ${report.accepted} accepted, ` +
        `${report.no_move} dead ends, ${report.wall_time_s.toFixed(2)}s`,
    ),
    el('p', {}, `neighborhoods used: ${report.neighborhoods.join(', ')}`),
    bestList,
  );
}

export function renderRunView(root: HTMLElement, ctx: RunCtx): void {
  clear(root);
  const inst = ctx.instance;
  const mode = el('select', { 'data-role': 'mode' }) as HTMLSelectElement;
  mode.append(
    el('option', { value: 'single' }, 'best utility (single objective)'),
    el('option', { value: 'bi' }, 'utility vs. staff balance (bi-objective)'),
  );
  const evals = el('input', {
    type: 'number', value: '100000', min: '1', 'data-role': 'evals',
  }) as HTMLInputElement;
  const seed = el('input', {
    type: 'number', value: '0', 'data-role': 'seed',
  }) as HTMLInputElement;
  const cap = el('input', {
    type: 'number', value: '1000', min: '1', 'data-role': 'cap',
  }) as HTMLInputElement;

  const reasons = new Map(inst.inapplicable.map((e) => [e.kind, e.reason]));
  const kindBoxes: HTMLInputElement[] = [];
  const kindList = el('div', { class: 'kinds', 'data-role': 'kinds' });
  for (const kind of [...inst.applicable, ...inst.inapplicable.map((e) => e.kind)]) {
    const blocked = reasons.get(kind);
    const box = el('input', {
      type: 'checkbox', value: kind, 'data-role': `kind-${kind}`,
    }) as HTMLInputElement;
    box.checked = !blocked;
    box.disabled = blocked !== undefined;
    kindBoxes.push(box);
    const label = el(
      'label',
      { class: blocked ? 'kind blocked' : 'kind' },
      box,
      ` ${kind}`,
      blocked ? el('span', { class: 'reason' }, ` ${blocked}`) : null,
    );
    if (blocked) label.title = blocked;
    kindList.append(label);
  }

  const progressBar = el('progress', {
    max: '100', value: '0', 'data-role': 'progress',
  }) as HTMLProgressElement;
  const statusLine = el('p', { 'data-role': 'status' }, 'idle');
  const errorBox = el('div', { class: 'error hidden', 'data-role': 'error' });
  const resultSlot = el('div', { 'data-role': 'result' });
  const startBtn = el('button', { 'data-role': 'start' }, 'Start search') as HTMLButtonElement;
  const cancelBtn = el('button', { 'data-role': 'cancel' }, 'Cancel') as HTMLButtonElement;
  cancelBtn.disabled = true;

  let currentJobId: string | null = null;

  const start = async () => {
    errorBox.classList.add('hidden');
    clear(resultSlot);
    const chosen = kindBoxes.filter((b) => b.checked && !b.disabled).map((b) => b.value);
    try {
      const job = await api.createJob(inst.id, {
        mode: mode.value as 'single' | 'bi',
        neighborhoods: chosen.length ? chosen : null,
        max_evaluations: Number(evals.value),
        seed: Number(seed.value),
        archive_cap: Number(cap.value),
      });
      currentJobId = job.id;
      startBtn.disabled = true;
      cancelBtn.disabled = false;
      statusLine.textContent = `job ${job.id}: ${job.state}`;
      const final = await pollJob(job.id, {
        getJob: (id) => api.getJob(id),
        onUpdate: (j) => {
          const pct = percent(j.progress, j.config.max_evaluations);
          progressBar.value = pct;
          statusLine.textContent = `job ${j.id}: ${j.state}, ${pct}%`;
        },
      });
      startBtn.disabled = false;
      cancelBtn.disabled = true;
      if (final.state === 'done') {
        statusLine.textContent = `job ${final.id}: done`;
        resultSlot.append(reportCard(final));
        ctx.onJobFinished(final);
      } else {
        showError(final.error ?? 'job failed');
      }
    } catch (e) {
      startBtn.disabled = false;
      cancelBtn.disabled = true;
      showError(e instanceof ApiError ? e.message : String(e));
    }
  };

  const showError = (message: string) => {
    errorBox.textContent = message;
    errorBox.classList.remove('hidden');
    statusLine.textContent = 'idle';
  };

  cancelBtn.addEventListener('click', () => {
    if (currentJobId) void api.cancelJob(currentJobId);
  });
  startBtn.addEventListener('click', () => void start());

  root.append(
    el('h2', {}, 'Search'),
    errorBox,
    el(
      'div',
      { class: 'config-grid' },
      el('label', {}, 'mode ', mode),
      el('label', {}, 'evaluations ', evals),
      el('label', {}, 'seed ', seed),
      el('label', {}, 'stored per outcome ', cap),
    ),
    el('h3', {}, 'neighborhoods'),
    kindList,
    el('div', { class: 'controls' }, startBtn, cancelBtn),
    progressBar,
    statusLine,
    resultSlot,
  );
}
