import { escapeHtml } from "./format";
import type { ServiceConfig } from "./types";

export interface ExamineFormState {
  image: Blob | null;
  symptoms: string[];
  age: number | null;
  gender: string | null;
  shareLocation: boolean;
  location: { lat: number; lon: number } | null;
}

export function emptyForm(): ExamineFormState {
  return { image: null, symptoms: [], age: null, gender: null, shareLocation: false, location: null };
}

/** Submit stays disabled until an image is attached. */
export function canSubmit(state: ExamineFormState): boolean {
  return state.image !== null;
}

export function toggleSymptom(state: ExamineFormState, symptom: string, on: boolean): void {
  const present = state.symptoms.includes(symptom);
  if (on && !present) state.symptoms.push(symptom);
  if (!on && present) state.symptoms = state.symptoms.filter((s) => s !== symptom);
}

export function renderExamine(cfg: ServiceConfig): string {
  const boxes = cfg.symptom_catalog
    .map(
      (s) => `
      <label class="symptom"><input type="checkbox" data-symptom="${escapeHtml(s)}">
        ${escapeHtml(s.replace(/_/g, " "))}</label>`,
    )
    .join("");
  return `
    <section class="examine">
      <h2>Examine a skin lesion</h2>
      <form id="examine-form">
        <label class="field">Lesion photo
          <input type="file" id="image-input" accept="image/*" capture="environment">
        </label>
        <fieldset><legend>Symptoms (optional)</legend>${boxes}</fieldset>
        <label class="field">Age
          <input type="number" id="age-input" min="0" max="120" inputmode="numeric">
        </label>
        <label class="field">Gender
          <select id="gender-input">
            <option value="">Prefer not to say</option>
            <option value="female">Female</option>
            <option value="male">Male</option>
            <option value="other">Other</option>
          </select>
        </label>
        <label class="symptom"><input type="checkbox" id="share-location">
          Share my location with health authorities</label>
        <div id="form-error" class="error" role="alert" hidden></div>
        <button type="submit" id="submit-btn" disabled>Check image</button>
      </form>
    </section>`;
}

/** Inline message for the file-validation failures the service reports. */
export function uploadErrorMessage(status: number): string | null {
  if (status === 413) return "That image is too large. Please choose a smaller file.";
  if (status === 415) return "That file could not be read as an image. Try a JPEG or PNG photo.";
  return null;
}
