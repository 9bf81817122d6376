import { describe, expect, it } from 'vitest';

import type { AlternativeItem, FrontierPoint } from '../src/api.js';
import {
  itemKey, itemsAtPoint, outcomeKey, outcomeText, percent, plural, pointKey,
} from '../src/format.js';

function item(index: number, utility: number, imbalance: string): AlternativeItem {
  return { index, utility, imbalance, imbalance_value: 0, topics: [] };
}

function point(utility: number, imbalance: string): FrontierPoint {
  return { utility, imbalance, imbalance_value: 0, alternatives: 1, cap_reached: false };
}

describe('outcomeText', () => {
  it('spells out a zero imbalance', () => {
    expect(outcomeText(40, '0/1')).toBe('utility 40, perfectly balanced');
  });

  it('shows the exact fraction otherwise', () => {
    expect(outcomeText(23, '5/8')).toBe('utility 23, imbalance 5/8');
  });
});

describe('outcome keys', () => {
  it('treats equal fractions with different text as different keys', () => {
    // The service always reduces fractions, so text identity is outcome
    // identity; 2/4 would be a different (never produced) key.
    expect(outcomeKey(10, '1/2')).not.toBe(outcomeKey(10, '2/4'));
  });

  it('agrees between item and point forms', () => {
    expect(itemKey(item(0, 23, '5/8'))).toBe(pointKey(point(23, '5/8')));
  });
});

describe('itemsAtPoint', () => {
  it('keeps exactly the items whose outcome matches', () => {
    const items = [
      item(0, 16, '1/8'),
      item(1, 20, '1/4'),
      item(2, 16, '1/8'),
      item(3, 16, '1/2'),
    ];
    const got = itemsAtPoint(items, point(16, '1/8'));
    expect(got.map((it) => it.index)).toEqual([0, 2]);
  });
});

describe('percent', () => {
  it('rounds and clamps', () => {
    expect(percent(0, 100)).toBe(0);
    expect(percent(333, 1000)).toBe(33);
    expect(percent(999, 1000)).toBe(100);
    expect(percent(5, 0)).toBe(0);
    expect(percent(200, 100)).toBe(100);
  });
});

describe('plural', () => {
  it('drops the s only for exactly one', () => {
    expect(plural(1, 'alternative')).toBe('1 alternative');
    expect(plural(0, 'alternative')).toBe('0 alternatives');
    expect(plural(6, 'alternative')).toBe('6 alternatives');
  });
});
