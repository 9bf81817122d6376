/** Offset/limit paging arithmetic shared by the alternatives views. */

export interface Page {
  offset: number;
  limit: number;
  total: number;
}

export function pageCount(p: Page): number {
  return Math.max(1, Math.ceil(p.total / p.limit));
}

export function pageNumber(p: Page): number {
  return Math.floor(p.offset / p.limit) + 1;
}

export function hasPrev(p: Page): boolean {
  return p.offset > 0;
}

export function hasNext(p: Page): boolean {
  return p.offset + p.limit < p.total;
}

export function prevOffset(p: Page): number {
  return Math.max(0, p.offset - p.limit);
}

export function nextOffset(p: Page): number {
  return hasNext(p) ? p.offset + p.limit : p.offset;
}

export function pageLabel(p: Page): string {
  if (p.total === 0) return 'no results';
  const last = Math.min(p.offset + p.limit, p.total);
  return `${p.offset + 1}-${last} of ${p.total}`;
}
