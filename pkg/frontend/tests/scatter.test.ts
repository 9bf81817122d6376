import { describe, expect, it } from 'vitest';

import type { FrontierPoint } from '../src/api.js';
import { layoutFrontier } from '../src/scatter.js';

function point(utility: number, value: number): FrontierPoint {
  return {
    utility,
    imbalance: `${value}`,
    imbalance_value: value,
    alternatives: 1,
    cap_reached: false,
  };
}

describe('layoutFrontier', () => {
  it('maps the extremes onto the padded box', () => {
    const layout = layoutFrontier(
      [point(10, 0), point(30, 1), point(20, 0.5)], 520, 320, 40,
    );
    const [lo, hi, mid] = layout.points;
    expect(lo.x).toBe(40);
    expect(hi.x).toBe(480);
    expect(mid.x).toBeCloseTo(260);
    expect(lo.y).toBe(40);
    expect(hi.y).toBe(280);
    expect(mid.y).toBeCloseTo(160);
  });

  it('keeps the point-to-position pairing', () => {
    const pts = [point(1, 0.2), point(2, 0.1)];
    const layout = layoutFrontier(pts);
    expect(layout.points.map((p) => p.point)).toEqual(pts);
  });

  it('centers degenerate ranges instead of dividing by zero', () => {
    const layout = layoutFrontier([point(5, 0.5)], 520, 320, 40);
    expect(layout.points[0].x).toBeCloseTo(260);
    expect(layout.points[0].y).toBeCloseTo(160);
    expect(Number.isFinite(layout.points[0].x)).toBe(true);
  });
});
