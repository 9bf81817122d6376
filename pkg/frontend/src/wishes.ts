/**
 * Team-wish builder state: lists of student ids that should end up on
 * the same topic. Validation mirrors the service rules so obviously
 * bad wishes are caught before a request is made; the server remains
 * the authority.
 */

export interface Wish {
  students: number[];
}

export function normalizeWish(students: number[]): number[] {
  return [...new Set(students)].sort((a, b) => a - b);
}

/** Reason the wish cannot be submitted, or null when it is fine. */
export function wishProblem(students: number[], n: number): string | null {
  const ids = normalizeWish(students);
  if (ids.length < 2) return 'a team wish needs at least 2 distinct students';
  const bad = ids.find((s) => !Number.isInteger(s) || s < 1 || s > n);
  if (bad !== undefined) return `unknown student id ${bad} (valid: 1..${n})`;
  return null;
}

export function addWish(wishes: Wish[], students: number[], n: number): Wish[] {
  if (wishProblem(students, n) !== null) return wishes;
  const ids = normalizeWish(students);
  const key = ids.join(',');
  if (wishes.some((w) => w.students.join(',') === key)) return wishes;
  return [...wishes, { students: ids }];
}

export function removeWish(wishes: Wish[], index: number): Wish[] {
  return wishes.filter((_, i) => i !== index);
}

export function wishesPayload(wishes: Wish[]): number[][] {
  return wishes.map((w) => w.students);
}

export function describeWish(students: number[], names: string[]): string {
  return students.map((s) => names[s - 1] ?? `#${s}`).join(' + ');
}
