/** Wire types, mirroring the game service JSON schema exactly. */

export interface AlphabetInfo {
  size: number;
  entropy_bits: number;
  expected_questions: number;
}

export interface SessionView {
  id: string;
  asked: number;
  finished: boolean;
  transcript: number[];
  answer_label?: string;
}

export interface QuestionView {
  no_labels_sample: string[];
  yes_labels_sample: string[];
  no_count: number;
  yes_count: number;
  p_no: number;
  p_yes: number;
  pending_bits: number;
}

export interface ApiErrorBody {
  error: string;
  message: string;
}

/** Minimal structural fetch so the client runs in browsers and tests alike. */
export type FetchLike = (
  url: string,
  init?: {
    method?: string;
    headers?: Record<string, string>;
    body?: string;
  },
) => Promise<{
  ok: boolean;
  status: number;
  json(): Promise<unknown>;
}>;
