// Payload shapes of the trainer service endpoints.

export interface TimelinePayload {
  intervals: Record<string, Array<[number, number]>>;
  span_ms: number;
}

export interface SchedulePayload {
  events: Array<{ node: number; start: number; duration: number }>;
  chars: Array<{ label: string; start: number; end: number }>;
  total_ms: number;
}

export interface SessionView {
  session_id: string;
  subject: string;
  char_gap: number;
  seed: number;
  status: string;
  rating: number | null;
  accuracy_pct: number | null;
  records: RecordView[];
}

export interface RecordView {
  record_id: string;
  word: string;
  schedule: SchedulePayload;
  timeline: TimelinePayload;
  guess: string | null;
  per_char_correct: boolean[] | null;
}

export interface GuessResponse extends RecordView {
  session_id: string;
  session_accuracy_pct: number;
}

export interface TimelineResponse {
  record_id: string;
  timeline: TimelinePayload;
  schedule: SchedulePayload;
}

export interface ReportView {
  gaps: Array<{ gap_ms: number; n: number; mean: number; sd: number | null }>;
  anova: {
    ss_treatment: number;
    ss_error: number;
    ss_total: number;
    df_treatment: number;
    df_error: number;
    ms_treatment: number;
    ms_error: number;
    f_stat: number;
    p_value: number;
  } | null;
  anova_note: string | null;
  reference: number | null;
  pairwise: Array<{
    pair: [number, number];
    t_stat: number;
    raw_p: number;
    bonferroni: string;
    holm: string;
    family_size: number;
  }>;
  usability: number | null;
}
