/** Editor state machine for the smart description field.
 *
 * Every keystroke batch becomes one {full_text, edit} event. A
 * terminator or space flushes immediately, anything else debounces;
 * while a request is in flight later edits coalesce into a single
 * pending event so at most one request per session is outstanding.
 * Ghost text exists only for inline PARAM/STRUCTURE suggestions: tab
 * accepts it, any other key dismisses it.
 */

import type { ApiClient, EditDescriptor, SuggestionView, UpdateResult } from './api.js';

export interface GhostText {
  text: string;
  kind: 'PARAM' | 'STRUCTURE';
}

export interface EditorCallbacks {
  onResult(result: UpdateResult): void;
  onGhost(ghost: GhostText | null): void;
  onError?(error: unknown): void;
}

const FLUSH_NOW = /[.!?\s]$/;

export class SmartEditor {
  fullText = '';
  caret = 0;
  private ghost: GhostText | null = null;
  private pending: EditDescriptor | null = null;
  private inFlight = false;
  private timer: ReturnType<typeof setTimeout> | null = null;
  private stale = false;

  constructor(
    private readonly client: ApiClient,
    private readonly sessionId: string,
    private readonly callbacks: EditorCallbacks,
    private readonly debounceMs = 150,
  ) {}

  get isStale(): boolean {
    return this.stale;
  }

  get ghostText(): GhostText | null {
    return this.ghost;
  }

  /** Replace the document text, queueing the matching edit descriptor. */
  setText(next: string, caret?: number): void {
    if (next === this.fullText) return;
    const op: EditDescriptor['op'] = next.length >= this.fullText.length ? 'INSERT' : 'DELETE';
    let newText = '';
    if (op === 'INSERT') {
      let prefix = 0;
      while (prefix < this.fullText.length && this.fullText[prefix] === next[prefix]) prefix += 1;
      newText = next.slice(prefix, prefix + (next.length - this.fullText.length));
    }
    if (this.ghost) this.setGhost(null); // any key but tab dismisses
    this.fullText = next;
    this.caret = caret ?? next.length;
    this.queue({ op, new_text: newText });
  }

  /** Insert a suggestion card's rendered step at the caret and fire the
   * synthetic terminator event immediately. */
  acceptSuggestion(suggestion: SuggestionView): void {
    this.spliceAtCaret(suggestion.text);
  }

  /** Tab pressed: splice the ghost text in and send the event. */
  acceptGhost(): void {
    if (!this.ghost) return;
    const ghost = this.ghost;
    this.setGhost(null);
    this.spliceAtCaret(`${ghost.text} `);
  }

  private spliceAtCaret(text: string): void {
    const head = this.fullText.slice(0, this.caret);
    const tail = this.fullText.slice(this.caret);
    const separator = head && !head.endsWith(' ') ? ' ' : '';
    this.fullText = `${head}${separator}${text}${tail}`;
    this.caret = head.length + separator.length + text.length;
    this.queue({ op: 'INSERT', new_text: text });
  }

  dismissGhost(): void {
    this.setGhost(null);
  }

  private setGhost(ghost: GhostText | null): void {
    this.ghost = ghost;
    this.callbacks.onGhost(ghost);
  }

  private queue(edit: EditDescriptor): void {
    if (this.pending && this.pending.op === edit.op && edit.op === 'INSERT') {
      this.pending = { op: 'INSERT', new_text: this.pending.new_text + edit.new_text };
    } else {
      this.pending = edit;
    }
    if (this.timer) {
      clearTimeout(this.timer);
      this.timer = null;
    }
    if (edit.op === 'DELETE' || FLUSH_NOW.test(edit.new_text)) {
      void this.flush();
    } else {
      this.timer = setTimeout(() => {
        this.timer = null;
        void this.flush();
      }, this.debounceMs);
    }
  }

  /** Send the coalesced pending edit; chains while edits keep arriving. */
  async flush(): Promise<void> {
    if (this.inFlight || !this.pending) return;
    const edit = this.pending;
    this.pending = null;
    this.inFlight = true;
    try {
      const result = await this.client.sendEvent(this.sessionId, this.fullText, edit);
      this.stale = false;
      this.callbacks.onResult(result);
      const inline = result.suggestions.find(
        (s) => s.kind === 'PARAM' || s.kind === 'STRUCTURE',
      );
      this.setGhost(
        inline ? { text: inline.text, kind: inline.kind as GhostText['kind'] } : null,
      );
    } catch (error) {
      this.stale = true; // editor stays editable, caller shows a stale badge
      this.callbacks.onError?.(error);
    } finally {
      this.inFlight = false;
      if (this.pending) void this.flush();
    }
  }

  /** Resolve once no request is running and nothing is queued. */
  async settled(): Promise<void> {
    for (;;) {
      if (this.timer !== null && !this.inFlight) {
        clearTimeout(this.timer);
        this.timer = null;
        await this.flush();
      }
      if (!this.inFlight && !this.pending && this.timer === null) return;
      await new Promise((resolve) => setTimeout(resolve, 5));
    }
  }
}
