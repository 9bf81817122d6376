import { describe, expect, it } from 'vitest';

import {
  hasNext, hasPrev, nextOffset, Page, pageCount, pageLabel, pageNumber, prevOffset,
} from '../src/paging.js';

function page(offset: number, limit: number, total: number): Page {
  return { offset, limit, total };
}

describe('paging math', () => {
  it('covers an exact multiple of the page size', () => {
    const p = page(4, 4, 8);
    expect(pageCount(p)).toBe(2);
    expect(pageNumber(p)).toBe(2);
    expect(hasPrev(p)).toBe(true);
    expect(hasNext(p)).toBe(false);
    expect(prevOffset(p)).toBe(0);
    expect(nextOffset(p)).toBe(4);
  });

  it('covers a ragged last page', () => {
    const p = page(0, 4, 6);
    expect(pageCount(p)).toBe(2);
    expect(hasNext(p)).toBe(true);
    expect(nextOffset(p)).toBe(4);
    expect(pageLabel(page(4, 4, 6))).toBe('5-6 of 6');
  });

  it('handles an empty result', () => {
    const p = page(0, 25, 0);
    expect(pageCount(p)).toBe(1);
    expect(hasPrev(p)).toBe(false);
    expect(hasNext(p)).toBe(false);
    expect(pageLabel(p)).toBe('no results');
  });

  it('never steps below zero', () => {
    expect(prevOffset(page(3, 10, 50))).toBe(0);
  });
});
