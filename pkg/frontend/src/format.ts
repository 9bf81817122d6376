/** Display helpers. Values arrive preformatted from the API; these only
 * arrange them for the screen and never do objective arithmetic. */

import type { AlternativeItem, FrontierPoint, OutcomeInfo } from './api.js';

/** "40 / imbalance 1/3" style outcome caption. */
export function outcomeText(utility: number, imbalance: string): string {
  return imbalance === '0/1'
    ? `utility ${utility}, perfectly balanced`
    : `utility ${utility}, imbalance ${imbalance}`;
}

/** Exact outcome identity used to match alternatives to frontier points.
 * Compares the API's exact fraction text, not the float. */
export function outcomeKey(utility: number, imbalance: string): string {
  return `${utility}|${imbalance}`;
}

export function pointKey(p: FrontierPoint): string {
  return outcomeKey(p.utility, p.imbalance);
}

export function itemKey(it: AlternativeItem): string {
  return outcomeKey(it.utility, it.imbalance);
}

export function reportOutcomeKey(o: OutcomeInfo): string {
  return outcomeKey(o.utility, o.imbalance);
}

/** Alternatives whose outcome equals the given frontier point. */
export function itemsAtPoint(
  items: AlternativeItem[],
  point: FrontierPoint,
): AlternativeItem[] {
  const key = pointKey(point);
  return items.filter((it) => itemKey(it) === key);
}

export function percent(done: number, total: number): number {
  if (total <= 0) return 0;
  return Math.max(0, Math.min(100, Math.round((100 * done) / total)));
}

export function plural(count: number, noun: string): string {
  return `${count} ${noun}${count === 1 ? '' : 's'}`;
}
