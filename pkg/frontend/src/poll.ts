/** Job polling: 1 s interval while the job is queued or running. */

import type { JobInfo } from './api.js';

export const POLL_INTERVAL_MS = 1000;

export function isTerminal(job: JobInfo): boolean {
  return job.state === 'done' || job.state === 'failed';
}

export interface PollDeps {
  getJob: (id: string) => Promise<JobInfo>;
  sleep?: (ms: number) => Promise<void>;
  onUpdate?: (job: JobInfo) => void;
}

const realSleep = (ms: number) =>
  new Promise<void>((resolve) => setTimeout(resolve, ms));

/** Poll until the job reaches done or failed; resolves with the final
 * state. onUpdate fires for every observation including the last. */
export async function pollJob(id: string, deps: PollDeps): Promise<JobInfo> {
  const sleep = deps.sleep ?? realSleep;
  for (;;) {
    const job = await deps.getJob(id);
    deps.onUpdate?.(job);
    if (isTerminal(job)) return job;
    await sleep(POLL_INTERVAL_MS);
  }
}
