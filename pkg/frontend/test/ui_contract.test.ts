/** UI contract: a scripted browser (jsdom) session against the live
 * service — no mocked endpoints. Opens a report, receives action cards
 * after a terminator, accepts one by click, sees it validate green,
 * submits, and reopens the identical report through the browser view.
 */

import { execFileSync, spawn, ChildProcess } from 'node:child_process';
import { mkdtempSync, rmSync, cpSync, mkdirSync } from 'node:fs';
import { tmpdir } from 'node:os';
import { join } from 'node:path';
import { afterAll, beforeAll, describe, expect, it } from 'vitest';

import { ApiClient } from '../dist/api.js';
import { mountBrowserView, mountReportingView } from '../dist/app.js';

const PORT = 8123 + Math.floor(Math.random() * 500);
const BASE = `http://127.0.0.1:${PORT}`;

let serverProcess: ChildProcess | null = null;
let workDir = '';

function cli(args: string[]): void {
  execFileSync('python3', ['-m', 's2r_engine.cli', ...args], { stdio: 'pipe' });
}

async function waitForHealth(): Promise<void> {
  for (let attempt = 0; attempt < 100; attempt += 1) {
    try {
      const response = await fetch(`${BASE}/healthz`);
      if (response.ok) return;
    } catch {
      // server not up yet
    }
    await new Promise((resolve) => setTimeout(resolve, 150));
  }
  throw new Error('service did not become healthy');
}

beforeAll(async () => {
  workDir = mkdtempSync(join(tmpdir(), 's2r-ui-'));
  const fixture = execFileSync(
    'python3',
    [
      '-c',
      "from importlib import resources; print(resources.files('s2r_engine.data').joinpath('fixture_app'))",
    ],
    { encoding: 'utf-8' },
  ).trim();
  const apps = join(workDir, 'apps');
  const models = join(workDir, 'models', 'gnucash-like');
  mkdirSync(apps, { recursive: true });
  mkdirSync(models, { recursive: true });
  cpSync(join(fixture, 'gnucash_like.json'), join(apps, 'gnucash-like.json'));
  const spec = join(apps, 'gnucash-like.json');
  const traces = join(fixture, 'traces');
  cli(['static', '--spec', spec, '--out', join(workDir, 'gm_s.json')]);
  cli(['explore', '--spec', spec, '--out', join(workDir, 'gm_d.json')]);
  cli([
    'union',
    '--left',
    join(workDir, 'gm_s.json'),
    '--right',
    join(workDir, 'gm_d.json'),
    '--out',
    join(models, 'gm.json'),
  ]);
  cli(['refine', '--model', join(models, 'gm.json'), '--traces', traces, '--out', join(models, 'gm.json')]);
  cli(['build-models', '--traces', traces, '--out-dir', models]);

  serverProcess = spawn(
    'python3',
    [
      '-m',
      's2r_engine.cli',
      'serve',
      '--apps-dir',
      apps,
      '--models-dir',
      join(workDir, 'models'),
      '--reports-dir',
      join(workDir, 'reports'),
      '--port',
      String(PORT),
    ],
    { stdio: 'ignore' },
  );
  await waitForHealth();
});

afterAll(() => {
  serverProcess?.kill();
  if (workDir) rmSync(workDir, { recursive: true, force: true });
});

async function until<T>(probe: () => T | null | undefined, what: string): Promise<T> {
  for (let attempt = 0; attempt < 200; attempt += 1) {
    const value = probe();
    if (value) return value;
    await new Promise((resolve) => setTimeout(resolve, 25));
  }
  throw new Error(`timed out waiting for ${what}`);
}

describe('reporting UI against the live service', () => {
  it('runs the full report-accept-submit-reopen loop', async () => {
    const client = new ApiClient(BASE);
    const root = document.createElement('main');
    document.body.append(root);

    const view = await mountReportingView(root, client, 'gnucash-like');
    const editorBox = root.querySelector<HTMLTextAreaElement>('.steps-editor')!;
    expect(root.querySelector('.screen-name')?.textContent).toBe('AccountsActivity');

    // type one complete step (terminator flushes immediately)
    editorBox.value = 'Click the "Create Account" button.';
    editorBox.dispatchEvent(new Event('input', { bubbles: true }));
    await view.editor.settled();

    const cards = await until(
      () => {
        const found = root.querySelectorAll<HTMLButtonElement>('.suggestion.card');
        return found.length ? found : null;
      },
      'suggestion cards',
    );
    expect(cards[0].dataset.kind).toBe('GUI_ACTION');
    const acceptedText = cards[0].querySelector('.card-text')!.textContent!;

    // accept the card by click: inserted at the end + synthetic terminator
    cards[0].click();
    await view.editor.settled();
    expect(view.editor.fullText.endsWith(acceptedText)).toBe(true);

    const steps = await until(
      () => {
        const rows = root.querySelectorAll('.steps-panel .step');
        return rows.length === 2 ? rows : null;
      },
      'two steps in the validation panel',
    );
    // the accepted suggestion validates green (server-decided)
    expect(steps[1].classList.contains('validated')).toBe(true);
    expect(steps[1].textContent).toBe(acceptedText);

    // submit is blocked without a title
    const submit = root.querySelector<HTMLButtonElement>('.submit-button')!;
    submit.click();
    expect(root.querySelector('.confirmation')!.classList.contains('error')).toBe(true);

    // fill metadata and submit for real
    root.querySelector<HTMLInputElement>('.meta-title')!.value = 'Entry not saved';
    root.querySelector<HTMLTextAreaElement>('.meta-observed')!.value = 'The entry reverts.';
    submit.click();
    const reportLine = await until(
      () => root.querySelector('.report-id')?.textContent,
      'submit confirmation',
    );
    const reportId = reportLine!.match(/Report (\w+) submitted/)![1];
    const frozen = root.querySelectorAll('.confirmation .frozen-steps .step');
    expect(frozen.length).toBe(2);

    // reopen the identical report through the browser view
    const browserRoot = document.createElement('main');
    document.body.append(browserRoot);
    await mountBrowserView(browserRoot, client);
    const link = await until(
      () =>
        browserRoot.querySelector<HTMLButtonElement>(
          `.report-link[data-report-id="${reportId}"]`,
        ),
      'report link in the browser',
    );
    link.click();
    const reopened = await until(
      () => {
        const rows = browserRoot.querySelectorAll('.report-detail .step');
        return rows.length ? rows : null;
      },
      'reopened step list',
    );
    expect(reopened.length).toBe(2);
    expect([...reopened].map((r) => r.textContent)).toEqual(
      [...steps].map((r) => r.textContent),
    );
    expect(reopened[1].classList.contains('validated')).toBe(true);
  });

  it('shows ghost text for a partial step and accepts it with tab', async () => {
    const client = new ApiClient(BASE);
    const root = document.createElement('main');
    document.body.append(root);
    const view = await mountReportingView(root, client, 'gnucash-like');
    const editorBox = root.querySelector<HTMLTextAreaElement>('.steps-editor')!;

    editorBox.value = 'Click ';
    editorBox.dispatchEvent(new Event('input', { bubbles: true }));
    await view.editor.settled();
    const ghost = await until(
      () => root.querySelector('.ghost-text')?.textContent,
      'particle ghost text',
    );
    expect(ghost).toBe('the');

    editorBox.dispatchEvent(new KeyboardEvent('keydown', { key: 'Tab', bubbles: true, cancelable: true }));
    expect(view.editor.fullText).toBe('Click the ');
    await view.editor.settled();
  });
});
