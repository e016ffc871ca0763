import { beforeEach, describe, expect, it, vi } from "vitest";

import { SubmissionRejected, type ServiceClient } from "../../src/api.js";
import { RegistrationForm } from "../../src/form.js";
import { PopupHost } from "../../src/popup.js";
import type { ApplicationValues } from "../../src/types.js";
import { clickPopup, popupLines, settle } from "./helpers.js";

const FILLED: ApplicationValues = {
  first_name: "Asha",
  middle_name: "K",
  last_name: "Nair",
  address: "12 Beach Road",
  pin_code: "686574",
  date_of_birth: "1995-04-03",
  gender: "female",
};

function makeForm(client: Partial<ServiceClient>) {
  document.body.innerHTML = '<div id="root"></div>';
  const root = document.getElementById("root")!;
  const popups = new PopupHost(root);
  const form = new RegistrationForm(root, client as ServiceClient, popups);
  return { form, popups };
}

describe("RegistrationForm START flow", () => {
  let form: RegistrationForm;

  describe("with a bad pin", () => {
    beforeEach(() => {
      ({ form } = makeForm({
        validateApplication: vi.fn().mockResolvedValue({
          valid: false,
          field_errors: [{ field: "pin_code", reason: "bad_pin" }],
        }),
      }));
      form.setValues({ ...FILLED, pin_code: "12" });
    });

    it("lists the error in a pop-up and clears only the pin on OK", async () => {
      const pressed = form.startPressed();
      await settle();
      expect(popupLines()).toEqual(["PIN code: incorrect pin code"]);
      clickPopup("OK");
      await pressed;
      expect(form.values().pin_code).toBe("");
      expect(form.values().first_name).toBe("Asha");
      expect(form.values().address).toBe("12 Beach Road");
      expect(form.canSubmit).toBe(false);
    });
  });

  it("lists every error, not only the first", async () => {
    ({ form } = makeForm({
      validateApplication: vi.fn().mockResolvedValue({
        valid: false,
        field_errors: [
          { field: "last_name", reason: "blank_mandatory" },
          { field: "date_of_birth", reason: "bad_dob" },
          { field: "gender", reason: "bad_gender" },
        ],
      }),
    }));
    form.setValues({ ...FILLED, last_name: "", date_of_birth: "2035-01-01", gender: "?" });
    const pressed = form.startPressed();
    await settle();
    expect(popupLines()).toEqual([
      "Last name: mandatory field left blank",
      "Date of birth: incorrect date of birth",
      "Gender: incorrect gender",
    ]);
    clickPopup("OK");
    await pressed;
    const values = form.values();
    expect(values.last_name).toBe("");
    expect(values.date_of_birth).toBe("");
    expect(values.gender).toBe("");
    expect(values.first_name).toBe("Asha");
  });

  it("confirms an error-free application and arms SUBMIT", async () => {
    ({ form } = makeForm({
      validateApplication: vi.fn().mockResolvedValue({ valid: true, field_errors: [] }),
    }));
    form.setValues(FILLED);
    const pressed = form.startPressed();
    await settle();
    expect(popupLines().join(" ")).toContain("SUBMIT");
    clickPopup("OK");
    await pressed;
    expect(form.canSubmit).toBe(true);
    const submit = document.getElementById("btn-form-submit") as HTMLButtonElement;
    expect(submit.disabled).toBe(false);
  });

  it("editing a field after confirmation disarms SUBMIT", async () => {
    ({ form } = makeForm({
      validateApplication: vi.fn().mockResolvedValue({ valid: true, field_errors: [] }),
    }));
    form.setValues(FILLED);
    const pressed = form.startPressed();
    await settle();
    clickPopup("OK");
    await pressed;
    const input = document.getElementById("field-pin_code") as HTMLInputElement;
    input.value = "1";
    input.dispatchEvent(new Event("input"));
    expect(form.canSubmit).toBe(false);
  });
});

describe("RegistrationForm SUBMIT and CANCEL", () => {
  it("reports the registered session upward", async () => {
    const session = { id: "s0002", status: "registered" };
    const submitApplication = vi.fn().mockResolvedValue(session);
    const { form } = makeForm({ submitApplication });
    form.setValues(FILLED);
    const seen: string[] = [];
    form.onRegistered = (s) => seen.push(s.id);
    await form.submitPressed();
    expect(submitApplication).toHaveBeenCalledWith(FILLED);
    expect(seen).toEqual(["s0002"]);
  });

  it("surfaces a service rejection banner verbatim", async () => {
    const { form } = makeForm({
      submitApplication: vi.fn().mockRejectedValue(
        new SubmissionRejected({ rejected: "SYSTEM READY – SENSORS MISALIGNED" }),
      ),
    });
    form.setValues(FILLED);
    const pressed = form.submitPressed();
    await settle();
    const popup = document.getElementById("popup")!;
    expect(popup.querySelector("h3")!.textContent).toBe(
      "SYSTEM READY – SENSORS MISALIGNED",
    );
    clickPopup("OK");
    await pressed;
  });

  it("CANCEL clears every field", () => {
    const { form } = makeForm({});
    form.setValues(FILLED);
    form.cancelPressed();
    expect(Object.values(form.values()).every((v) => v === "")).toBe(true);
  });
});
