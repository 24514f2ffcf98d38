import { describe, expect, it } from "vitest";
import { canSubmit, emptyForm, renderExamine, toggleSymptom } from "../src/examine";
import { stubConfig } from "./stub";

describe("examine form state", () => {
  it("blocks submission until an image is attached", () => {
    const form = emptyForm();
    expect(canSubmit(form)).toBe(false);
    form.image = new Blob([new Uint8Array([1, 2, 3])], { type: "image/png" });
    expect(canSubmit(form)).toBe(true);
  });

  it("tracks symptom toggles without duplicates", () => {
    const form = emptyForm();
    toggleSymptom(form, "fever", true);
    toggleSymptom(form, "rash", true);
    toggleSymptom(form, "fever", true);
    expect(form.symptoms).toEqual(["fever", "rash"]);
    toggleSymptom(form, "fever", false);
    expect(form.symptoms).toEqual(["rash"]);
    toggleSymptom(form, "fever", false);
    expect(form.symptoms).toEqual(["rash"]);
  });
});

describe("examine screen markup", () => {
  it("offers a camera-capable file input and one checkbox per catalog symptom", () => {
    const html = renderExamine(stubConfig);
    expect(html).toContain('accept="image/*"');
    expect(html).toContain('capture="environment"');
    for (const symptom of stubConfig.symptom_catalog) {
      expect(html).toContain(`data-symptom="${symptom}"`);
    }
    expect(html).toContain("swollen lymph nodes"); // underscores become spaces
    expect(html).toContain('id="submit-btn" disabled');
  });
});
