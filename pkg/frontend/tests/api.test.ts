import { afterEach, describe, expect, it, vi } from 'vitest';

import { api, ApiError, setApiBase } from '../src/api.js';

interface Call {
  url: string;
  init?: RequestInit;
}

function stubFetch(status: number, body: unknown): Call[] {
  const calls: Call[] = [];
  vi.stubGlobal('fetch', async (url: string, init?: RequestInit) => {
    calls.push({ url, init });
    return new Response(JSON.stringify(body), {
      status,
      headers: { 'content-type': 'application/json' },
    });
  });
  return calls;
}

afterEach(() => {
  vi.unstubAllGlobals();
  setApiBase('');
});

describe('api client', () => {
  it('hits the version endpoint', async () => {
    const calls = stubFetch(200, { api_version: 1, package: 'x', backend: 'numba' });
    const v = await api.version();
    expect(v.backend).toBe('numba');
    expect(calls[0].url).toBe('/api/version');
  });

  it('prefixes every path with the configured base', async () => {
    const calls = stubFetch(200, { api_version: 1, package: 'x', backend: 'numba' });
    setApiBase('http://127.0.0.1:8111/');
    await api.version();
    expect(calls[0].url).toBe('http://127.0.0.1:8111/api/version');
  });

  it('posts job creation with instance id and config', async () => {
    const calls = stubFetch(200, { id: 'j000001', state: 'queued' });
    await api.createJob('abc', { mode: 'bi', max_evaluations: 500, seed: 3 });
    expect(calls[0].url).toBe('/jobs');
    expect(calls[0].init?.method).toBe('POST');
    const body = JSON.parse(String(calls[0].init?.body));
    expect(body).toEqual({
      instance_id: 'abc',
      config: { mode: 'bi', max_evaluations: 500, seed: 3 },
    });
  });

  it('encodes offset and limit for archive pages', async () => {
    const calls = stubFetch(200, { total: 0, offset: 0, limit: 5, items: [] });
    await api.archivePage('j000001', 10, 5);
    expect(calls[0].url).toBe('/jobs/j000001/archive?offset=10&limit=5');
  });

  it('sends wishes as the filter body', async () => {
    const calls = stubFetch(200, { wishes: [], total: 0, offset: 0, limit: 5, items: [] });
    await api.filter('j000001', [[1, 2], [3, 4]], 0, 5);
    expect(calls[0].url).toBe('/jobs/j000001/filter?offset=0&limit=5');
    expect(JSON.parse(String(calls[0].init?.body))).toEqual({
      wishes: [[1, 2], [3, 4]],
    });
  });

  it('raises ApiError carrying the server detail', async () => {
    stubFetch(400, { detail: 'expected w_max=10, got 9 in row 2' });
    const err = await api.uploadInstance({}).catch((e: unknown) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect((err as ApiError).status).toBe(400);
    expect((err as ApiError).message).toBe('expected w_max=10, got 9 in row 2');
  });

  it('falls back to the status line for non-JSON errors', async () => {
    vi.stubGlobal('fetch', async () =>
      new Response('<html>boom</html>', { status: 502, statusText: 'Bad Gateway' }));
    const err = await api.version().catch((e: unknown) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect((err as ApiError).message).toBe('502 Bad Gateway');
  });
});
