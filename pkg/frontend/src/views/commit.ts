/** Commit view: exports the chosen alternative as a CSV file on the
 * server. Anonymization is on by default so exported lists can be
 * posted without student names. */

import { api, ApiError, JobInfo } from '../api.js';
import { clear, el } from '../dom.js';
import { outcomeText } from '../format.js';
import { Chosen } from './alternatives.js';

export interface CommitCtx {
  job: JobInfo;
  chosen: Chosen | null;
  confirm?: (message: string) => boolean;
}

export function commitMessage(chosen: Chosen): string {
  return (
    `Export alternative #${chosen.index} ` +
    `(${outcomeText(chosen.utility, chosen.imbalance)}) as the final assignment?`
  );
}

export function renderCommitView(root: HTMLElement, ctx: CommitCtx): void {
  clear(root);
  root.append(el('h2', {}, 'Commit'));

  if (ctx.chosen === null) {
    root.append(
      el('p', { 'data-role': 'nothing-chosen' },
         'Nothing chosen yet. Pick an alternative from the alternatives or frontier tab.'),
    );
    return;
  }
  const chosen = ctx.chosen;
  const ask = ctx.confirm ?? ((msg: string) => window.confirm(msg));

  const anonBox = el('input', {
    type: 'checkbox', 'data-role': 'anonymize', checked: true,
  }) as HTMLInputElement;
  const errorBox = el('div', { class: 'error hidden', 'data-role': 'error' });
  const resultBox = el('div', { 'data-role': 'result' });

  const commitBtn = el(
    'button',
    {
      'data-role': 'commit',
      onclick: async () => {
        errorBox.classList.add('hidden');
        if (!ask(commitMessage(chosen))) {
          return;
        }
        try {
          const res = await api.commit(ctx.job.id, chosen.index, anonBox.checked);
          clear(resultBox);
          resultBox.append(
            el('p', { 'data-role': 'filename' }, `Written on the server: ${res.filename}`),
            el('pre', { class: 'csv', 'data-role': 'csv' }, res.content),
          );
        } catch (e) {
          errorBox.textContent = e instanceof ApiError ? e.message : String(e);
          errorBox.classList.remove('hidden');
        }
      },
    },
    'commit this assignment',
  );

  root.append(
    el(
      'p',
      { 'data-role': 'chosen' },
      `Alternative #${chosen.index}, ${outcomeText(chosen.utility, chosen.imbalance)}.`,
    ),
    el('label', {}, anonBox, ' replace student names with numbered placeholders'),
    errorBox,
    commitBtn,
    resultBox,
  );
}
