/** Candidate registration form with the START / OK / SUBMIT / CANCEL flow.
 *
 * The console adjudicates nothing: START echoes the service's validation
 * report in a pop-up, OK blanks exactly the fields the service flagged,
 * SUBMIT registers through the service, CANCEL clears every field.
 */

import { ServiceClient, SubmissionRejected } from "./api.js";
import { PopupHost } from "./popup.js";
import {
  APPLICATION_FIELDS,
  type ApplicationField,
  type ApplicationValues,
  type FieldError,
  type SessionPayload,
  emptyApplication,
} from "./types.js";

const FIELD_LABELS: Record<ApplicationField, string> = {
  first_name: "First name",
  middle_name: "Middle name",
  last_name: "Last name",
  address: "Address",
  pin_code: "PIN code",
  date_of_birth: "Date of birth",
  gender: "Gender",
};

const REASON_TEXT: Record<string, string> = {
  blank_mandatory: "mandatory field left blank",
  bad_gender: "incorrect gender",
  bad_dob: "incorrect date of birth",
  bad_pin: "incorrect pin code",
};

export function errorLine(error: FieldError): string {
  const label = FIELD_LABELS[error.field] ?? error.field;
  return `${label}: ${REASON_TEXT[error.reason] ?? error.reason}`;
}

export class RegistrationForm {
  onRegistered: ((session: SessionPayload) => void) | null = null;

  private inputs = new Map<ApplicationField, HTMLInputElement>();
  private submitButton: HTMLButtonElement;
  private confirmed = false;

  constructor(
    root: HTMLElement,
    private client: ServiceClient,
    private popups: PopupHost,
  ) {
    root.classList.add("registration-form");
    const grid = document.createElement("div");
    grid.className = "form-grid";
    for (const field of APPLICATION_FIELDS) {
      const label = document.createElement("label");
      label.textContent = FIELD_LABELS[field];
      const input = document.createElement("input");
      input.id = `field-${field}`;
      input.name = field;
      input.addEventListener("input", () => this.invalidateConfirmation());
      label.appendChild(input);
      grid.appendChild(label);
      this.inputs.set(field, input);
    }
    root.appendChild(grid);

    const row = document.createElement("div");
    row.className = "button-row";
    const start = document.createElement("button");
    start.id = "btn-form-start";
    start.textContent = "START";
    start.addEventListener("click", () => void this.startPressed());
    const submit = document.createElement("button");
    submit.id = "btn-form-submit";
    submit.textContent = "SUBMIT";
    submit.disabled = true;
    submit.addEventListener("click", () => void this.submitPressed());
    const cancel = document.createElement("button");
    cancel.id = "btn-form-cancel";
    cancel.textContent = "CANCEL";
    cancel.addEventListener("click", () => this.cancelPressed());
    row.append(start, submit, cancel);
    root.appendChild(row);
    this.submitButton = submit;
  }

  values(): ApplicationValues {
    const values = emptyApplication();
    for (const [field, input] of this.inputs) values[field] = input.value;
    return values;
  }

  setValues(values: Partial<ApplicationValues>): void {
    for (const [field, input] of this.inputs) {
      if (field in values) input.value = values[field] ?? "";
    }
    this.invalidateConfirmation();
  }

  clearAll(): void {
    for (const input of this.inputs.values()) input.value = "";
    this.invalidateConfirmation();
  }

  /** START: ask the service to check the form; echo the outcome. */
  async startPressed(): Promise<void> {
    const report = await this.client.validateApplication(this.values());
    if (!report.valid) {
      await this.popups.show({
        title: "Errors in submitted e-application",
        lines: report.field_errors.map(errorLine),
        buttons: ["OK"],
      });
      this.clearFlagged(report.field_errors);
      return;
    }
    await this.popups.show({
      title: "e-application completed successfully",
      lines: ["Press SUBMIT to continue with the test or CANCEL to clear."],
      buttons: ["OK"],
    });
    this.confirmed = true;
    this.submitButton.disabled = false;
  }

  async submitPressed(): Promise<void> {
    try {
      const session = await this.client.submitApplication(this.values());
      this.onRegistered?.(session);
    } catch (err) {
      if (err instanceof SubmissionRejected) {
        const lines = (err.detail.field_errors ?? []).map(errorLine);
        await this.popups.show({
          title: err.detail.rejected,
          lines,
          buttons: ["OK"],
        });
        return;
      }
      throw err;
    }
  }

  cancelPressed(): void {
    this.clearAll();
  }

  private clearFlagged(errors: FieldError[]): void {
    for (const error of errors) {
      const input = this.inputs.get(error.field);
      if (input) input.value = "";
    }
    this.invalidateConfirmation();
  }

  private invalidateConfirmation(): void {
    this.confirmed = false;
    this.submitButton.disabled = true;
  }

  get canSubmit(): boolean {
    return this.confirmed;
  }
}
