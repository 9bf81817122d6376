/** Tabbed single-page shell over the assignment service. */

import { api, InstanceInfo, JobInfo } from './api.js';
import { clear, el } from './dom.js';
import { Chosen } from './views/alternatives.js';
import { renderAlternativesView } from './views/alternatives.js';
import { renderCommitView } from './views/commit.js';
import { renderFrontierView } from './views/frontier.js';
import { renderInstanceView } from './views/instance.js';
import { renderRunView } from './views/run.js';

type TabName = 'instance' | 'run' | 'alternatives' | 'frontier' | 'commit';

interface AppState {
  instance: InstanceInfo | null;
  job: JobInfo | null;
  chosen: Chosen | null;
}

interface TabSpec {
  name: TabName;
  label: string;
  enabled: (state: AppState) => boolean;
}

const TABS: TabSpec[] = [
  { name: 'instance', label: 'Instance', enabled: () => true },
  { name: 'run', label: 'Run', enabled: (s) => s.instance !== null },
  {
    name: 'alternatives', label: 'Alternatives',
    enabled: (s) => s.job?.state === 'done',
  },
  {
    name: 'frontier', label: 'Frontier',
    enabled: (s) => s.job?.state === 'done' && s.job.config.mode === 'bi',
  },
  { name: 'commit', label: 'Commit', enabled: (s) => s.job?.state === 'done' },
];

export function startApp(root: HTMLElement): void {
  const state: AppState = { instance: null, job: null, chosen: null };
  let active: TabName = 'instance';

  const status = el('div', { class: 'status', 'data-role': 'status' });
  const tabBar = el('nav', { class: 'tabs', 'data-role': 'tabs' });
  const panel = el('main', { class: 'panel', 'data-role': 'panel' });
  root.append(
    el('header', {}, el('h1', {}, 'Seminar assignment'), status),
    tabBar,
    panel,
  );

  const show = (tab: TabName) => {
    active = tab;
    renderTabs();
    clear(panel);
    if (tab === 'instance') {
      renderInstanceView(panel, {
        current: state.instance,
        onUploaded: (inst) => {
          state.instance = inst;
          state.job = null;
          state.chosen = null;
          show('run');
        },
      });
    } else if (tab === 'run' && state.instance) {
      renderRunView(panel, {
        instance: state.instance,
        onJobFinished: (job) => {
          state.job = job;
          state.chosen = null;
          renderTabs();
        },
      });
    } else if (tab === 'alternatives' && state.job) {
      renderAlternativesView(panel, {
        job: state.job,
        onChoose: (chosen) => {
          state.chosen = chosen;
          show('commit');
        },
      });
    } else if (tab === 'frontier' && state.job) {
      renderFrontierView(panel, {
        job: state.job,
        onChoose: (chosen) => {
          state.chosen = chosen;
          show('commit');
        },
      });
    } else if (tab === 'commit' && state.job) {
      renderCommitView(panel, { job: state.job, chosen: state.chosen });
    }
  };

  const renderTabs = () => {
    clear(tabBar);
    for (const spec of TABS) {
      const button = el(
        'button',
        {
          class: spec.name === active ? 'tab active' : 'tab',
          'data-tab': spec.name,
          onclick: () => show(spec.name),
        },
        spec.label,
      ) as HTMLButtonElement;
      button.disabled = !spec.enabled(state);
      tabBar.append(button);
    }
  };

  void api
    .version()
    .then((v) => {
      status.textContent = `${v.package}, ${v.backend} backend`;
    })
    .catch(() => {
      status.textContent = 'service unreachable';
    });

  show('instance');
}

const rootEl = typeof document !== 'undefined' ? document.getElementById('app') : null;
if (rootEl) {
  startApp(rootEl);
}
