/** Alternatives view: paged archive table plus the team-wish filter.
 * Rows expand to the full per-student assignment; a row's choose
 * button hands the alternative to the commit view. */

import {
  AlternativeItem, api, ApiError, ArchivePage, FilterResult, JobInfo, WishStatus,
} from '../api.js';
import { clear, el } from '../dom.js';
import { outcomeText, plural } from '../format.js';
import { hasNext, hasPrev, nextOffset, Page, pageLabel, prevOffset } from '../paging.js';
import { addWish, describeWish, Wish, wishesPayload, wishProblem } from '../wishes.js';

export interface Chosen {
  index: number;
  utility: number;
  imbalance: string;
}

export interface AlternativesCtx {
  job: JobInfo;
  onChoose: (chosen: Chosen) => void;
}

const PAGE_SIZE = 25;

function assignmentDetail(
  item: AlternativeItem,
  page: ArchivePage,
): HTMLElement {
  const rows = item.topics.map((topicId, i) =>
    el(
      'tr',
      {},
      el('td', {}, page.labels.students[i] ?? `#${i + 1}`),
      el('td', {}, page.labels.topics[topicId - 1] ?? `t${topicId}`),
      el('td', {}, page.staff_of_topic[topicId - 1] ?? ''),
    ),
  );
  return el(
    'table',
    { class: 'assignment' },
    el(
      'thead',
      {},
      el('tr', {}, el('th', {}, 'student'), el('th', {}, 'topic'), el('th', {}, 'staff')),
    ),
    el('tbody', {}, ...rows),
  );
}

export function alternativesTable(
  items: AlternativeItem[],
  page: ArchivePage,
  onChoose: (chosen: Chosen) => void,
): HTMLElement {
  const table = el('table', { class: 'alternatives', 'data-role': 'alternatives' });
  table.append(
    el(
      'thead',
      {},
      el(
        'tr',
        {},
        el('th', {}, '#'),
        el('th', {}, 'outcome'),
        el('th', {}, 'assignment'),
        el('th', {}, ''),
      ),
    ),
  );
  const body = el('tbody', {});
  for (const item of items) {
    const detailRow = el(
      'tr',
      { class: 'detail hidden' },
      el('td', { colspan: '4' }, assignmentDetail(item, page)),
    );
    const toggle = el(
      'button',
      {
        'data-role': 'toggle',
        onclick: () => detailRow.classList.toggle('hidden'),
      },
      'show students',
    );
    const choose = el(
      'button',
      {
        'data-role': 'choose',
        onclick: () =>
          onChoose({ index: item.index, utility: item.utility, imbalance: item.imbalance }),
      },
      'choose',
    );
    body.append(
      el(
        'tr',
        { 'data-index': String(item.index) },
        el('td', { class: 'num' }, String(item.index)),
        el('td', {}, outcomeText(item.utility, item.imbalance)),
        el('td', {}, toggle),
        el('td', {}, choose),
      ),
      detailRow,
    );
  }
  table.append(body);
  return table;
}

export function wishList(
  wishes: Wish[],
  statuses: WishStatus[] | null,
  names: string[],
  onRemove: (index: number) => void,
): HTMLElement {
  const list = el('ul', { class: 'wishes', 'data-role': 'wishes' });
  wishes.forEach((wish, i) => {
    const status = statuses?.find(
      (s) => s.students.join(',') === wish.students.join(','),
    );
    const flagged = status !== undefined && !status.satisfiable;
    list.append(
      el(
        'li',
        { class: flagged ? 'wish unsatisfiable' : 'wish' },
        describeWish(wish.students, names),
        flagged
          ? el('span', { class: 'flag', 'data-role': 'unsatisfiable' },
               ' not satisfiable by any stored alternative')
          : null,
        el('button', { 'data-role': 'remove', onclick: () => onRemove(i) }, 'x'),
      ),
    );
  });
  return list;
}

export function renderAlternativesView(root: HTMLElement, ctx: AlternativesCtx): void {
  let wishes: Wish[] = [];
  let offset = 0;

  const render = async () => {
    clear(root);
    const errorBox = el('div', { class: 'error hidden', 'data-role': 'error' });
    try {
      const filtered = wishes.length > 0;
      let page: ArchivePage;
      let result: FilterResult | null = null;
      page = await api.archivePage(ctx.job.id, filtered ? 0 : offset, PAGE_SIZE);
      if (filtered) {
        result = await api.filter(ctx.job.id, wishesPayload(wishes), offset, PAGE_SIZE);
      }
      const items = result ? result.items : page.items;
      const total = result ? result.total : page.total;
      const pageState: Page = { offset, limit: PAGE_SIZE, total };

      const names = page.labels.students;
      const picker = el('select', { multiple: true, 'data-role': 'students' }) as HTMLSelectElement;
      names.forEach((name, i) => {
        picker.append(el('option', { value: String(i + 1) }, name));
      });
      const addBtn = el(
        'button',
        {
          'data-role': 'add-wish',
          onclick: () => {
            const chosen = Array.from(picker.selectedOptions, (o) => Number(o.value));
            const problem = wishProblem(chosen, names.length);
            if (problem) {
              errorBox.textContent = problem;
              errorBox.classList.remove('hidden');
              return;
            }
            wishes = addWish(wishes, chosen, names.length);
            offset = 0;
            void render();
          },
        },
        'same topic please',
      );

      const prevBtn = el('button', {
        'data-role': 'prev',
        onclick: () => { offset = prevOffset(pageState); void render(); },
      }, 'prev') as HTMLButtonElement;
      const nextBtn = el('button', {
        'data-role': 'next',
        onclick: () => { offset = nextOffset(pageState); void render(); },
      }, 'next') as HTMLButtonElement;
      prevBtn.disabled = !hasPrev(pageState);
      nextBtn.disabled = !hasNext(pageState);

      root.append(
        el('h2', {}, 'Alternatives'),
        errorBox,
        el(
          'p',
          { 'data-role': 'total' },
          filtered
            ? `${total} of ${page.total} stored alternatives satisfy every wish`
            : `${plural(total, 'stored alternative')}, equal in quality`,
        ),
        el('div', { class: 'wish-builder' }, picker, addBtn),
        wishList(wishes, result?.wishes ?? null, names, (i) => {
          wishes = wishes.filter((_, k) => k !== i);
          offset = 0;
          void render();
        }),
        alternativesTable(items, page, ctx.onChoose),
        el('div', { class: 'pager' }, prevBtn,
           el('span', { 'data-role': 'page-label' }, pageLabel(pageState)), nextBtn),
      );
    } catch (e) {
      clear(root);
      root.append(
        el('h2', {}, 'Alternatives'),
        el('div', { class: 'error' },
           e instanceof ApiError ? e.message : String(e)),
      );
    }
  };

  void render();
}
