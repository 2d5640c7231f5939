/** Reporting surface: metadata fields, the smart step editor, the
 * validated-steps panel, the suggestion area, and the current-screen
 * display, plus a minimal report browser for reproducers.
 *
 * Validation markers always come from the server response; the client
 * renders them and never re-derives them locally.
 */

import { ApiClient, EntityView, ReportDetail, SuggestionView, UpdateResult } from './api.js';
import { SmartEditor } from './editor.js';

export interface ReportingView {
  root: HTMLElement;
  editor: SmartEditor;
  sessionId: string;
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function renderSteps(panel: HTMLElement, entities: EntityView[]): void {
  panel.replaceChildren();
  for (const entity of entities) {
    const row = el('li', entity.validated ? 'step validated' : 'step');
    row.textContent = entity.text;
    if (entity.action) {
      row.title = `${entity.action.a_type} on ${entity.action.e_id} (${entity.action.screen})`;
    }
    panel.append(row);
  }
}

function renderScreen(panel: HTMLElement, screen: string | null): void {
  panel.replaceChildren();
  panel.append(el('h3', undefined, 'Current screen'));
  if (screen === null) {
    panel.append(el('p', 'screen-unmatched', 'Last step not matched; screen unknown.'));
  } else {
    panel.append(el('p', 'screen-name', screen));
  }
}

function renderSuggestions(
  panel: HTMLElement,
  suggestions: SuggestionView[],
  onAccept: (s: SuggestionView) => void,
): void {
  panel.replaceChildren();
  for (const suggestion of suggestions) {
    if (suggestion.kind === 'PARAM' || suggestion.kind === 'STRUCTURE') continue; // ghost text
    const card = el('button', `suggestion card kind-${suggestion.kind.toLowerCase()}`);
    card.type = 'button';
    card.dataset.kind = suggestion.kind;
    card.dataset.token = suggestion.token ?? '';
    card.append(el('span', 'card-text', suggestion.text));
    if (suggestion.screenshot) {
      const img = el('img', 'card-shot');
      img.src = suggestion.screenshot;
      card.append(img);
    }
    card.addEventListener('click', () => onAccept(suggestion));
    panel.append(card);
  }
}

export async function mountReportingView(
  root: HTMLElement,
  client: ApiClient,
  appId: string,
): Promise<ReportingView> {
  const session = await client.openSession(appId);

  const title = el('input', 'meta-title');
  title.placeholder = 'Title';
  const description = el('textarea', 'meta-description');
  description.placeholder = 'Description';
  const expected = el('textarea', 'meta-expected');
  expected.placeholder = 'Expected behavior';
  const observed = el('textarea', 'meta-observed');
  observed.placeholder = 'Observed behavior';

  const editorBox = el('textarea', 'steps-editor');
  editorBox.placeholder = 'Describe the steps to reproduce, one sentence per step.';
  const ghostBar = el('div', 'ghost-bar');
  const staleBadge = el('span', 'stale-badge', 'offline, retrying');
  staleBadge.hidden = true;

  const stepsPanel = el('ul', 'steps-panel');
  const screenPanel = el('div', 'screen-panel');
  const suggestionPanel = el('div', 'suggestion-panel');
  const submitButton = el('button', 'submit-button', 'Submit bug report');
  submitButton.type = 'button';
  const confirmation = el('div', 'confirmation');

  renderScreen(screenPanel, session.initial_screen);

  const editor = new SmartEditor(client, session.session_id, {
    onResult(result: UpdateResult) {
      staleBadge.hidden = true;
      renderSteps(stepsPanel, result.entities);
      renderScreen(screenPanel, result.current_screen);
      renderSuggestions(suggestionPanel, result.suggestions, (suggestion) => {
        editor.acceptSuggestion(suggestion);
        editorBox.value = editor.fullText;
      });
    },
    onGhost(ghost) {
      ghostBar.replaceChildren();
      if (ghost) {
        ghostBar.append(el('span', 'ghost-text', ghost.text));
        ghostBar.append(el('span', 'ghost-hint', 'tab to accept'));
      }
    },
    onError() {
      staleBadge.hidden = false;
    },
  });

  editorBox.addEventListener('input', () =>
    editor.setText(editorBox.value, editorBox.selectionStart ?? editorBox.value.length),
  );
  editorBox.addEventListener('keydown', (event) => {
    if (event.key === 'Tab' && editor.ghostText) {
      event.preventDefault();
      editor.acceptGhost();
      editorBox.value = editor.fullText;
    }
  });

  submitButton.addEventListener('click', () => {
    if (!title.value.trim() || !editor.fullText.trim()) {
      confirmation.textContent = 'A title and at least one step are required.';
      confirmation.className = 'confirmation error';
      return;
    }
    void (async () => {
      await editor.settled();
      const submitted = await client.submit(session.session_id, {
        title: title.value,
        description: description.value,
        expected: expected.value,
        observed: observed.value,
      });
      const report = await client.getReport(submitted.report_id);
      confirmation.className = 'confirmation ok';
      confirmation.replaceChildren(
        el('p', 'report-id', `Report ${report.report_id} submitted.`),
      );
      const frozen = el('ul', 'frozen-steps');
      renderSteps(frozen, report.entities);
      confirmation.append(frozen);
    })();
  });

  const meta = el('div', 'meta-panel');
  meta.append(title, description, expected, observed);
  const editorWrap = el('div', 'editor-panel');
  editorWrap.append(editorBox, ghostBar, staleBadge);
  const side = el('div', 'side-panel');
  side.append(stepsPanel, screenPanel);
  root.replaceChildren(meta, editorWrap, suggestionPanel, side, submitButton, confirmation);
  return { root, editor, sessionId: session.session_id };
}

export async function mountBrowserView(root: HTMLElement, client: ApiClient): Promise<void> {
  const list = el('ul', 'report-list');
  const detail = el('div', 'report-detail');
  const summaries = await client.listReports();
  for (const summary of summaries) {
    const row = el('li', 'report-row');
    const link = el('button', 'report-link', `${summary.title} (${summary.steps} steps)`);
    link.type = 'button';
    link.dataset.reportId = summary.report_id;
    link.addEventListener('click', () => {
      void client.getReport(summary.report_id).then((report) => renderReport(detail, report));
    });
    row.append(link);
    list.append(row);
  }
  root.replaceChildren(list, detail);
}

function renderReport(panel: HTMLElement, report: ReportDetail): void {
  panel.replaceChildren();
  panel.append(el('h2', 'report-title', report.title));
  panel.append(el('p', 'report-meta', `${report.app_id} - ${report.created_at}`));
  const steps = el('ul', 'frozen-steps');
  renderSteps(steps, report.entities);
  panel.append(steps);
}

export async function main(): Promise<void> {
  const base = (window as { S2R_API_BASE?: string }).S2R_API_BASE ?? '';
  const client = new ApiClient(base);
  const root = document.getElementById('app');
  if (!root) return;
  if (window.location.hash === '#browse') {
    await mountBrowserView(root, client);
    return;
  }
  const apps = await client.listApps();
  if (apps.length === 0) {
    root.textContent = 'No apps configured.';
    return;
  }
  await mountReportingView(root, client, apps[0].app_id);
}

if (typeof document !== 'undefined' && document.getElementById('app')) {
  void main();
}
