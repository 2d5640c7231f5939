/** Typed client for the reporting service endpoints. */

export interface ActionView {
  a_type: string;
  screen: string;
  e_type: string;
  e_id: string;
  e_text: string;
  params: string[];
}

export interface EntityView {
  text: string;
  validated: boolean;
  action?: ActionView;
}

export interface SuggestionView {
  kind: 'GUI_ACTION' | 'GUI_ELEMENT' | 'PARAM' | 'STRUCTURE';
  text: string;
  rank: number;
  token: string | null;
  screenshot: string | null;
}

export interface UpdateResult {
  entities: EntityView[];
  current_screen: string | null;
  suggestions: SuggestionView[];
}

export interface AppInfo {
  app_id: string;
  initial_screen: string;
  screens: number;
  elements: number;
}

export interface ReportSummary {
  report_id: string;
  app_id: string;
  title: string;
  created_at: string;
  steps: number;
}

export interface ReportDetail {
  report_id: string;
  app_id: string;
  title: string;
  description: string;
  expected: string;
  observed: string;
  s2r_text: string;
  entities: EntityView[];
  created_at: string;
}

export interface EditDescriptor {
  op: 'INSERT' | 'DELETE';
  new_text: string;
}

export class ApiError extends Error {
  constructor(
    public readonly code: string,
    message: string,
    public readonly status: number,
  ) {
    super(message);
  }
}

export class ApiClient {
  constructor(private readonly base: string) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await fetch(`${this.base}${path}`, {
      headers: { 'content-type': 'application/json' },
      ...init,
    });
    const body = await response.json();
    if (!response.ok) {
      throw new ApiError(body.code ?? 'internal', body.message ?? 'request failed', response.status);
    }
    return body as T;
  }

  listApps(): Promise<AppInfo[]> {
    return this.request('/apps');
  }

  openSession(appId: string): Promise<{ session_id: string; initial_screen: string }> {
    return this.request(`/apps/${encodeURIComponent(appId)}/sessions`, { method: 'POST', body: '{}' });
  }

  sendEvent(sessionId: string, fullText: string, edit: EditDescriptor): Promise<UpdateResult> {
    return this.request(`/sessions/${sessionId}/events`, {
      method: 'POST',
      body: JSON.stringify({ full_text: fullText, edit }),
    });
  }

  submit(
    sessionId: string,
    meta: { title: string; description: string; expected: string; observed: string },
  ): Promise<{ report_id: string }> {
    return this.request(`/sessions/${sessionId}/submit`, {
      method: 'POST',
      body: JSON.stringify(meta),
    });
  }

  listReports(appId?: string): Promise<ReportSummary[]> {
    const query = appId ? `?app_id=${encodeURIComponent(appId)}` : '';
    return this.request(`/reports${query}`);
  }

  getReport(reportId: string): Promise<ReportDetail> {
    return this.request(`/reports/${encodeURIComponent(reportId)}`);
  }
}
