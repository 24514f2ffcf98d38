import { ApiError, createApi } from "./api";
import { renderCenterList, renderCentersScreen, requestPosition } from "./centers";
import { renderDashboard, renderCaseTable } from "./dashboard";
import {
  ExamineFormState,
  canSubmit,
  emptyForm,
  renderExamine,
  toggleSymptom,
  uploadErrorMessage,
} from "./examine";
import { escapeHtml } from "./format";
import { createPoller, Poller } from "./poll";
import { renderResult, resultViewModel } from "./result";
import { navigate, resolveRoute } from "./router";
import { createTokenStore, session } from "./state";

const api = createApi("");
const tokens = createTokenStore();
const view = () => document.getElementById("view")!;

let form: ExamineFormState = emptyForm();
let poller: Poller | null = null;
let caseOffset = 0;
const PAGE_SIZE = 10;

function setError(message: string | null) {
  const box = document.getElementById("form-error");
  if (!box) return;
  box.hidden = message === null;
  box.textContent = message ?? "";
}

// ------------------------------------------------------------------ screens

function showHome() {
  view().innerHTML = `
    <section class="home">
      <h2>Skin lesion self-check</h2>
      <p>Take or upload a photo of a suspicious skin lesion and this tool will
        screen it with a trained model. It is a triage aid, not a diagnosis:
        always consult a clinician about symptoms that worry you.</p>
      <p>Your photo is analyzed and an anonymous case record helps health
        authorities track the outbreak. You can opt out of the shared
        dashboard when submitting.</p>
      <p><a class="button" href="#/examine">Start examination</a></p>
      <p><a href="#/login">Health authority sign-in</a></p>
    </section>`;
}

async function showExamine() {
  if (!session.config) session.config = await api.config();
  form = emptyForm();
  view().innerHTML = renderExamine(session.config);

  const imageInput = document.getElementById("image-input") as HTMLInputElement;
  const submit = document.getElementById("submit-btn") as HTMLButtonElement;
  imageInput.addEventListener("change", () => {
    form.image = imageInput.files && imageInput.files[0] ? imageInput.files[0] : null;
    submit.disabled = !canSubmit(form);
  });
  view()
    .querySelectorAll<HTMLInputElement>("input[data-symptom]")
    .forEach((box) =>
      box.addEventListener("change", () => toggleSymptom(form, box.dataset.symptom!, box.checked)),
    );

  document.getElementById("examine-form")!.addEventListener("submit", async (ev) => {
    ev.preventDefault();
    if (!canSubmit(form)) return;
    const age = (document.getElementById("age-input") as HTMLInputElement).value;
    const gender = (document.getElementById("gender-input") as HTMLSelectElement).value;
    form.age = age === "" ? null : Number(age);
    form.gender = gender === "" ? null : gender;
    form.shareLocation = (document.getElementById("share-location") as HTMLInputElement).checked;
    if (form.shareLocation) {
      try {
        form.location = await requestPosition();
      } catch {
        form.location = null; // submission proceeds without coordinates
      }
    }
    submit.disabled = true;
    setError(null);
    try {
      const result = await api.classify(form.image!, form.symptoms);
      session.lastResult = result;
      session.lastLocation = form.location;
      await api.submitCase({
        prediction: result.prediction,
        confidence: result.confidence,
        symptoms: form.symptoms,
        age: form.age,
        gender: form.gender,
        location: form.location,
      });
      navigate("result");
    } catch (err) {
      submit.disabled = false;
      if (err instanceof ApiError) {
        setError(uploadErrorMessage(err.status) ?? `The service rejected the request: ${err.message}`);
      } else {
        setError("Could not reach the service. Check your connection and try again.");
      }
    }
  });
}

function showResult() {
  if (!session.lastResult || !session.config) {
    navigate("examine");
    return;
  }
  view().innerHTML = renderResult(resultViewModel(session.lastResult, session.config));
}

async function showCenters() {
  view().innerHTML = renderCentersScreen();
  const status = document.getElementById("center-status")!;
  const list = document.getElementById("center-list")!;
  const manual = document.getElementById("manual-coords") as HTMLFormElement;

  async function load(lat: number, lon: number) {
    status.textContent = "Finding centers…";
    try {
      const entries = await api.healthCenters(lat, lon);
      status.textContent = "";
      list.innerHTML = renderCenterList(entries);
    } catch (err) {
      status.textContent =
        err instanceof ApiError ? `Lookup failed: ${err.message}` : "Could not reach the service.";
    }
  }

  manual.addEventListener("submit", (ev) => {
    ev.preventDefault();
    const lat = Number((document.getElementById("lat-input") as HTMLInputElement).value);
    const lon = Number((document.getElementById("lon-input") as HTMLInputElement).value);
    void load(lat, lon);
  });

  if (session.lastLocation) {
    void load(session.lastLocation.lat, session.lastLocation.lon);
    return;
  }
  try {
    const pos = await requestPosition();
    void load(pos.lat, pos.lon);
  } catch {
    status.textContent = "";
    manual.hidden = false;
  }
}

function showLogin() {
  view().innerHTML = `
    <section class="login">
      <h2>Health authority sign-in</h2>
      <p>Enter the access token issued to your organization.</p>
      <form id="login-form">
        <label class="field">Access token
          <input type="password" id="token-input" autocomplete="current-password">
        </label>
        <div id="form-error" class="error" role="alert" hidden></div>
        <button type="submit">Sign in</button>
      </form>
    </section>`;
  document.getElementById("login-form")!.addEventListener("submit", async (ev) => {
    ev.preventDefault();
    const token = (document.getElementById("token-input") as HTMLInputElement).value.trim();
    if (!token) return;
    try {
      await api.listCases(token, { limit: 1 }); // validates the token
      tokens.set(token);
      navigate("dashboard");
    } catch (err) {
      setError(
        err instanceof ApiError && err.status === 401
          ? "That token was not accepted."
          : "Could not reach the service.",
      );
    }
  });
}

async function refreshTable(token: string) {
  const listing = await api.listCases(token, { limit: PAGE_SIZE, offset: caseOffset });
  const holder = document.getElementById("case-table");
  if (holder) holder.innerHTML = renderCaseTable(listing);
  wirePager(token, listing.total);
}

function wirePager(token: string, total: number) {
  document.getElementById("page-prev")?.addEventListener("click", () => {
    caseOffset = Math.max(0, caseOffset - PAGE_SIZE);
    void refreshTable(token);
  });
  document.getElementById("page-next")?.addEventListener("click", () => {
    if (caseOffset + PAGE_SIZE < total) caseOffset += PAGE_SIZE;
    void refreshTable(token);
  });
}

function handleAuthLoss() {
  tokens.clear();
  poller?.stop();
  poller = null;
  navigate("login");
}

async function showDashboard() {
  const token = tokens.get();
  if (!token) {
    navigate("login");
    return;
  }
  caseOffset = 0;

  async function fetchBoth() {
    const [summary, listing] = await Promise.all([
      api.dashboard(token!),
      api.listCases(token!, { limit: PAGE_SIZE, offset: caseOffset }),
    ]);
    return { summary, listing };
  }

  poller?.stop();
  poller = createPoller(
    fetchBoth,
    ({ summary, listing }) => {
      view().innerHTML = renderDashboard(summary, listing);
      document.getElementById("logout")?.addEventListener("click", () => {
        tokens.clear();
        poller?.stop();
        navigate("home");
      });
      wirePager(token!, listing.total);
    },
    {
      intervalMs: 30_000,
      onError: (err) => {
        if (err instanceof ApiError && err.status === 401) handleAuthLoss();
      },
    },
  );
  view().innerHTML = `<p class="zero-state">Loading dashboard…</p>`;
  poller.start();
}

// ---------------------------------------------------------------- bootstrap

const screens = {
  home: showHome,
  examine: showExamine,
  result: showResult,
  centers: showCenters,
  login: showLogin,
  dashboard: showDashboard,
};

function render() {
  if (poller && resolveRoute(window.location.hash, tokens.has()) !== "dashboard") {
    poller.stop();
    poller = null;
  }
  const route = resolveRoute(window.location.hash, tokens.has());
  const result = screens[route]();
  if (result instanceof Promise) {
    result.catch((err) => {
      view().innerHTML = `<p class="error">Something went wrong: ${escapeHtml(String(err))}</p>`;
    });
  }
}

window.addEventListener("hashchange", render);
document.addEventListener("DOMContentLoaded", render);
