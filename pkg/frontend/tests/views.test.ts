// @vitest-environment jsdom
import { describe, expect, it } from 'vitest';

import type { AlternativeItem, ArchivePage, FrontierPoint, WishStatus } from '../src/api.js';
import { alternativesTable, Chosen, wishList } from '../src/views/alternatives.js';
import { commitMessage } from '../src/views/commit.js';
import { frontierChart } from '../src/views/frontier.js';
import { summaryCard } from '../src/views/instance.js';

const PAGE: ArchivePage = {
  total: 2,
  offset: 0,
  limit: 25,
  items: [],
  labels: {
    students: ['s1', 's2', 's3', 's4'],
    topics: ['t1', 't2'],
    staff: ['staff1', 'staff2'],
  },
  staff_of_topic: ['staff1', 'staff2'],
};

function item(index: number, topics: number[]): AlternativeItem {
  return { index, utility: 40, imbalance: '0/1', imbalance_value: 0, topics };
}

describe('alternativesTable', () => {
  it('renders one data row per item and reports the chosen one', () => {
    const chosen: Chosen[] = [];
    const table = alternativesTable(
      [item(0, [1, 1, 2, 2]), item(1, [1, 2, 1, 2])],
      PAGE,
      (c) => chosen.push(c),
    );
    const rows = table.querySelectorAll('tr[data-index]');
    expect(rows.length).toBe(2);

    const buttons = table.querySelectorAll<HTMLButtonElement>('[data-role="choose"]');
    buttons[1].click();
    expect(chosen).toEqual([{ index: 1, utility: 40, imbalance: '0/1' }]);
  });

  it('expands to the per-student assignment with staff names', () => {
    const table = alternativesTable([item(0, [1, 1, 2, 2])], PAGE, () => {});
    const detail = table.querySelector('tr.detail') as HTMLElement;
    expect(detail.classList.contains('hidden')).toBe(true);

    (table.querySelector('[data-role="toggle"]') as HTMLButtonElement).click();
    expect(detail.classList.contains('hidden')).toBe(false);
    const cells = [...detail.querySelectorAll('table.assignment tbody td')]
      .map((c) => c.textContent);
    expect(cells).toEqual([
      's1', 't1', 'staff1',
      's2', 't1', 'staff1',
      's3', 't2', 'staff2',
      's4', 't2', 'staff2',
    ]);
  });
});

describe('wishList', () => {
  it('flags exactly the unsatisfiable wishes', () => {
    const statuses: WishStatus[] = [
      { students: [1, 2], satisfiable: true },
      { students: [1, 3], satisfiable: false },
    ];
    const list = wishList(
      [{ students: [1, 2] }, { students: [1, 3] }],
      statuses,
      PAGE.labels.students,
      () => {},
    );
    const entries = list.querySelectorAll('li');
    expect(entries.length).toBe(2);
    expect(entries[0].querySelector('[data-role="unsatisfiable"]')).toBeNull();
    expect(entries[1].querySelector('[data-role="unsatisfiable"]')).not.toBeNull();
    expect(entries[1].textContent).toContain('not satisfiable');
  });

  it('reports removals by index', () => {
    const removed: number[] = [];
    const list = wishList(
      [{ students: [1, 2] }, { students: [3, 4] }],
      null,
      PAGE.labels.students,
      (i) => removed.push(i),
    );
    const buttons = list.querySelectorAll<HTMLButtonElement>('[data-role="remove"]');
    buttons[1].click();
    expect(removed).toEqual([1]);
  });
});

describe('frontierChart', () => {
  const points: FrontierPoint[] = [
    { utility: 24, imbalance: '1/1', imbalance_value: 1, alternatives: 1, cap_reached: false },
    { utility: 16, imbalance: '1/8', imbalance_value: 0.125, alternatives: 2, cap_reached: false },
    { utility: 20, imbalance: '1/4', imbalance_value: 0.25, alternatives: 9, cap_reached: true },
  ];

  it('draws one marker per point with its count', () => {
    const svg = frontierChart(points, () => {});
    const markers = svg.querySelectorAll('[data-role="point"]');
    expect(markers.length).toBe(3);
    const counts = [...markers].map((m) => m.querySelector('text.count')?.textContent);
    expect(counts).toEqual(['1', '2', '9+']);
  });

  it('marks capped points', () => {
    const svg = frontierChart(points, () => {});
    const capped = svg.querySelectorAll('circle.capped');
    expect(capped.length).toBe(1);
  });

  it('reports the clicked point', () => {
    const picked: FrontierPoint[] = [];
    const svg = frontierChart(points, (p) => picked.push(p));
    const markers = svg.querySelectorAll('[data-role="point"]');
    (markers[1] as SVGElement).dispatchEvent(new MouseEvent('click', { bubbles: true }));
    expect(picked).toEqual([points[1]]);
  });
});

describe('commitMessage', () => {
  it('echoes index and outcome so the confirm dialog is specific', () => {
    expect(commitMessage({ index: 3, utility: 40, imbalance: '0/1' })).toBe(
      'Export alternative #3 (utility 40, perfectly balanced) as the final assignment?',
    );
  });
});

describe('summaryCard', () => {
  it('shows capacities and blocked moves with reasons', () => {
    const card = summaryCard({
      id: 'abc',
      n: 4,
      m: 2,
      w_max: 10,
      groups: [[1], [2]],
      a: [2, 2],
      b: [2, 2],
      labels: PAGE.labels,
      applicable: ['swap2'],
      inapplicable: [
        { kind: 'shift', reason: 'every topic is at its exact capacity (a_j = b_j)' },
        { kind: 'shift+swap2', reason: 'every topic is at its exact capacity (a_j = b_j)' },
        { kind: 'swap3', reason: 'needs at least 3 topics' },
      ],
    });
    expect(card.textContent).toContain('swap2');
    expect(card.textContent).toContain('needs at least 3 topics');
    expect(card.querySelectorAll('li.blocked').length).toBe(3);
  });
});
