/**
 * Scatter layout for the frontier view: maps outcome points to pixel
 * positions. Pure geometry so the placement is testable; the SVG
 * itself is assembled in the view.
 */

import type { FrontierPoint } from './api.js';

export interface PlacedPoint {
  point: FrontierPoint;
  x: number;
  y: number;
}

export interface ScatterLayout {
  width: number;
  height: number;
  padding: number;
  points: PlacedPoint[];
}

/** Utility on x (right is better), imbalance on y (down is better, so
 * the ideal corner is bottom right). Degenerate ranges center. */
export function layoutFrontier(
  points: FrontierPoint[],
  width = 520,
  height = 320,
  padding = 40,
): ScatterLayout {
  const xs = points.map((p) => p.utility);
  const ys = points.map((p) => p.imbalance_value);
  const xMin = Math.min(...xs);
  const xMax = Math.max(...xs);
  const yMin = Math.min(...ys);
  const yMax = Math.max(...ys);
  const spanX = width - 2 * padding;
  const spanY = height - 2 * padding;
  const placed = points.map((point) => {
    const fx = xMax === xMin ? 0.5 : (point.utility - xMin) / (xMax - xMin);
    const fy = yMax === yMin ? 0.5 : (point.imbalance_value - yMin) / (yMax - yMin);
    return {
      point,
      x: padding + fx * spanX,
      y: padding + fy * spanY,
    };
  });
  return { width, height, padding, points: placed };
}
