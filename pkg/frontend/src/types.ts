/** Payload shapes from the evaluation service (see docs/api.md). */

export interface StatusFrame {
  t: number;
  blocked: string[];
  knocked: string[];
  aligned: boolean;
  misaligned: string[];
  message: string;
  alignment_banner: string;
  banner: string;
  gate_count: number;
  session_id: string | null;
  session_status: string | null;
}

export interface FieldError {
  field: ApplicationField;
  reason: string;
}

export interface ValidationResult {
  valid: boolean;
  field_errors: FieldError[];
}

export interface SessionPayload {
  id: string;
  status: string;
  application: Record<string, string> | null;
  fail_reason: string | null;
  warnings: string[];
  created_at: string;
  verdict_at: string;
  verdict_t: number | null;
  gate_count: number;
  event_log: string | null;
  verdict_banner: string | null;
  reason_banner: string | null;
}

export interface RejectedSubmission {
  rejected: string;
  field_errors?: FieldError[];
}

export const APPLICATION_FIELDS = [
  "first_name",
  "middle_name",
  "last_name",
  "address",
  "pin_code",
  "date_of_birth",
  "gender",
] as const;

export type ApplicationField = (typeof APPLICATION_FIELDS)[number];

export type ApplicationValues = Record<ApplicationField, string>;

export function emptyApplication(): ApplicationValues {
  return {
    first_name: "",
    middle_name: "",
    last_name: "",
    address: "",
    pin_code: "",
    date_of_birth: "",
    gender: "",
  };
}
