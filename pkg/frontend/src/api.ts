/**
 * Typed client for the assignment service API.
 *
 * Every value shown in the UI comes from these responses; the client
 * never recomputes utilities or imbalances on its own.
 */

export interface VersionInfo {
  api_version: number;
  package: string;
  backend: string;
}

export interface InapplicableKind {
  kind: string;
  reason: string;
}

export interface InstanceLabels {
  students: string[];
  topics: string[];
  staff: string[];
}

export interface InstanceInfo {
  id: string;
  n: number;
  m: number;
  w_max: number;
  groups: number[][];
  a: number[];
  b: number[];
  labels: InstanceLabels;
  applicable: string[];
  inapplicable: InapplicableKind[];
  weights?: number[][];
}

export interface InstanceRow {
  id: string;
  n: number;
  m: number;
  w_max: number;
  groups: number;
}

export interface SearchConfigBody {
  mode?: 'single' | 'bi';
  neighborhoods?: string[] | null;
  max_evaluations?: number;
  seed?: number;
  archive_cap?: number;
}

export interface OutcomeInfo {
  utility: number;
  imbalance: string;
}

export interface BestRow {
  outcome: OutcomeInfo;
  count: number;
  capped: boolean;
}

export interface RunReport {
  mode: string;
  seed: number;
  max_evaluations: number;
  evaluations: number;
  accepted: number;
  no_move: number;
  neighborhoods: string[];
  excluded: InapplicableKind[];
  archive_cap: number;
  wall_time_s: number;
  best: BestRow[];
  instance: { n: number; m: number };
}

export type JobState = 'queued' | 'running' | 'done' | 'failed';

export interface JobInfo {
  id: string;
  instance_id: string;
  config: Required<SearchConfigBody>;
  state: JobState;
  progress: number;
  error: string | null;
  report?: RunReport;
}

export interface AlternativeItem {
  index: number;
  utility: number;
  imbalance: string;
  imbalance_value: number;
  topics: number[];
}

export interface ArchivePage {
  total: number;
  offset: number;
  limit: number;
  items: AlternativeItem[];
  labels: InstanceLabels;
  staff_of_topic: string[];
}

export interface WishStatus {
  students: number[];
  satisfiable: boolean;
}

export interface FilterResult {
  wishes: WishStatus[];
  total: number;
  offset: number;
  limit: number;
  items: AlternativeItem[];
}

export interface FrontierPoint {
  utility: number;
  imbalance: string;
  imbalance_value: number;
  alternatives: number;
  cap_reached: boolean;
}

export interface CommitResult {
  filename: string;
  path: string;
  content: string;
  index: number;
  utility: number;
  imbalance: string;
  imbalance_value: number;
}

export class ApiError extends Error {
  constructor(public status: number, detail: string) {
    super(detail);
    this.name = 'ApiError';
  }
}

// Empty in the browser (same origin); tests point it at a live server.
let apiBase = '';

export function setApiBase(base: string): void {
  apiBase = base.replace(/\/$/, '');
}

async function request<T>(path: string, init?: RequestInit): Promise<T> {
  const resp = await fetch(apiBase + path, {
    headers: { 'content-type': 'application/json' },
    ...init,
  });
  if (!resp.ok) {
    let detail = `${resp.status} ${resp.statusText}`;
    try {
      const body = await resp.json();
      if (typeof body.detail === 'string') detail = body.detail;
    } catch {
      // non-JSON error body; keep the status line
    }
    throw new ApiError(resp.status, detail);
  }
  return (await resp.json()) as T;
}

export const api = {
  version(): Promise<VersionInfo> {
    return request<VersionInfo>('/api/version');
  },

  uploadInstance(payload: object): Promise<InstanceInfo> {
    return request<InstanceInfo>('/instances', {
      method: 'POST',
      body: JSON.stringify(payload),
    });
  },

  uploadMatrix(matrix: string, wMax?: number, normalize = false): Promise<InstanceInfo> {
    const body: Record<string, unknown> = { matrix, normalize };
    if (wMax !== undefined) body.w_max = wMax;
    return request<InstanceInfo>('/instances', {
      method: 'POST',
      body: JSON.stringify(body),
    });
  },

  listInstances(): Promise<{ instances: InstanceRow[] }> {
    return request('/instances');
  },

  getInstance(id: string): Promise<InstanceInfo> {
    return request(`/instances/${encodeURIComponent(id)}`);
  },

  createJob(instanceId: string, config: SearchConfigBody): Promise<JobInfo> {
    return request<JobInfo>('/jobs', {
      method: 'POST',
      body: JSON.stringify({ instance_id: instanceId, config }),
    });
  },

  getJob(id: string): Promise<JobInfo> {
    return request(`/jobs/${encodeURIComponent(id)}`);
  },

  cancelJob(id: string): Promise<JobInfo> {
    return request(`/jobs/${encodeURIComponent(id)}/cancel`, { method: 'POST' });
  },

  archivePage(jobId: string, offset: number, limit: number): Promise<ArchivePage> {
    return request(
      `/jobs/${encodeURIComponent(jobId)}/archive?offset=${offset}&limit=${limit}`,
    );
  },

  frontier(jobId: string): Promise<{ points: FrontierPoint[] }> {
    return request(`/jobs/${encodeURIComponent(jobId)}/frontier`);
  },

  filter(
    jobId: string,
    wishes: number[][],
    offset: number,
    limit: number,
  ): Promise<FilterResult> {
    return request(
      `/jobs/${encodeURIComponent(jobId)}/filter?offset=${offset}&limit=${limit}`,
      { method: 'POST', body: JSON.stringify({ wishes }) },
    );
  },

  commit(jobId: string, index: number, anonymize: boolean): Promise<CommitResult> {
    return request(`/jobs/${encodeURIComponent(jobId)}/commit`, {
      method: 'POST',
      body: JSON.stringify({ index, anonymize }),
    });
  },
};
