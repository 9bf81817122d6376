/** Frontier view: SVG scatter of nondominated outcomes for a bi-objective
 * job. Clicking a point lists exactly the stored alternatives whose
 * outcome equals that point. */

import { AlternativeItem, api, ApiError, ArchivePage, FrontierPoint, JobInfo } from '../api.js';
import { clear, el } from '../dom.js';
import { itemsAtPoint, outcomeText, pointKey } from '../format.js';
import { layoutFrontier, PlacedPoint } from '../scatter.js';
import { alternativesTable, Chosen } from './alternatives.js';

export interface FrontierCtx {
  job: JobInfo;
  onChoose: (chosen: Chosen) => void;
}

const SVG_NS = 'http://www.w3.org/2000/svg';

function svgEl(tag: string, attrs: Record<string, string>): SVGElement {
  const node = document.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) {
    node.setAttribute(key, value);
  }
  return node;
}

/** Every archive item, across all pages. */
export async function fetchAllItems(jobId: string): Promise<{
  items: AlternativeItem[];
  page: ArchivePage;
}> {
  const first = await api.archivePage(jobId, 0, 500);
  const items = [...first.items];
  while (items.length < first.total) {
    const next = await api.archivePage(jobId, items.length, 500);
    if (next.items.length === 0) {
      break;
    }
    items.push(...next.items);
  }
  return { items, page: first };
}

export function frontierChart(
  points: FrontierPoint[],
  onPick: (point: FrontierPoint) => void,
): SVGElement {
  const layout = layoutFrontier(points);
  const svg = svgEl('svg', {
    viewBox: `0 0 ${layout.width} ${layout.height}`,
    width: String(layout.width),
    height: String(layout.height),
    class: 'frontier-chart',
    'data-role': 'chart',
  });

  const axisY = layout.height - layout.padding;
  svg.append(
    svgEl('line', {
      x1: String(layout.padding), y1: String(axisY),
      x2: String(layout.width - layout.padding), y2: String(axisY),
      class: 'axis',
    }),
    svgEl('line', {
      x1: String(layout.padding), y1: String(layout.padding),
      x2: String(layout.padding), y2: String(axisY),
      class: 'axis',
    }),
  );
  const xLabel = svgEl('text', {
    x: String(layout.width / 2), y: String(layout.height - 8), class: 'axis-label',
  });
  xLabel.textContent = 'total preference value';
  const yLabel = svgEl('text', {
    x: '14', y: String(layout.height / 2), class: 'axis-label',
    transform: `rotate(-90 14 ${layout.height / 2})`,
  });
  yLabel.textContent = 'staff imbalance';
  svg.append(xLabel, yLabel);

  for (const placed of layout.points) {
    svg.append(markerFor(placed, onPick));
  }
  return svg;
}

function markerFor(
  placed: PlacedPoint,
  onPick: (point: FrontierPoint) => void,
): SVGElement {
  const group = svgEl('g', {
    class: 'point',
    'data-role': 'point',
    'data-key': pointKey(placed.point),
  });
  const dot = svgEl('circle', {
    cx: String(placed.x), cy: String(placed.y), r: '7',
    class: placed.point.cap_reached ? 'dot capped' : 'dot',
  });
  const label = svgEl('text', {
    x: String(placed.x), y: String(placed.y - 12), class: 'count',
  });
  label.textContent = placed.point.cap_reached
    ? `${placed.point.alternatives}+`
    : String(placed.point.alternatives);
  const title = svgEl('title', {});
  title.textContent =
    `${outcomeText(placed.point.utility, placed.point.imbalance)}, ` +
    `${placed.point.alternatives} stored`;
  group.append(dot, label, title);
  group.addEventListener('click', () => onPick(placed.point));
  return group;
}

export function renderFrontierView(root: HTMLElement, ctx: FrontierCtx): void {
  const run = async () => {
    clear(root);
    try {
      const { points } = await api.frontier(ctx.job.id);
      const { items, page } = await fetchAllItems(ctx.job.id);
      const detail = el('div', { 'data-role': 'point-detail' });

      const onPick = (point: FrontierPoint) => {
        clear(detail);
        const matching = itemsAtPoint(items, point);
        detail.append(
          el(
            'h3',
            { 'data-role': 'picked' },
            `${outcomeText(point.utility, point.imbalance)}: ` +
              `${matching.length} alternative${matching.length === 1 ? '' : 's'}` +
              (point.cap_reached ? ' (storage cap reached, more exist)' : ''),
          ),
          alternativesTable(matching, page, ctx.onChoose),
        );
      };

      root.append(
        el('h2', {}, 'Tradeoff frontier'),
        el(
          'p',
          {},
          `${points.length} nondominated outcome${points.length === 1 ? '' : 's'}. ` +
            'Click a point to list its alternatives.',
        ),
        frontierChart(points, onPick),
        detail,
      );
    } catch (e) {
      clear(root);
      root.append(
        el('h2', {}, 'Tradeoff frontier'),
        el('div', { class: 'error' },
           e instanceof ApiError ? e.message : String(e)),
      );
    }
  };
  void run();
}
