import { describe, expect, it } from "vitest";
import { renderResult, resultViewModel } from "../src/result";
import { resolveRoute, verdictRoute } from "../src/router";
import { createTokenStore, memoryStore } from "../src/state";
import { infectedClassify, stubConfig, uninfectedClassify } from "./stub";

describe("route resolution", () => {
  it("maps hashes to screens", () => {
    expect(resolveRoute("", false)).toBe("home");
    expect(resolveRoute("#/", false)).toBe("home");
    expect(resolveRoute("#/examine", false)).toBe("examine");
    expect(resolveRoute("#/result", false)).toBe("result");
    expect(resolveRoute("#/centers", false)).toBe("centers");
    expect(resolveRoute("#/login", false)).toBe("login");
  });

  it("guards the dashboard behind a stored token", () => {
    expect(resolveRoute("#/dashboard", false)).toBe("login");
    expect(resolveRoute("#/dashboard", true)).toBe("dashboard");
  });

  it("falls back to home on unknown hashes", () => {
    expect(resolveRoute("#/no-such-screen", true)).toBe("home");
  });
});

describe("verdict routing", () => {
  it("routes the positive class to the infected screen", () => {
    expect(verdictRoute("Monkeypox", "Monkeypox")).toBe("infected");
    expect(verdictRoute("Other", "Monkeypox")).toBe("uninfected");
    expect(verdictRoute("Measles", "Monkeypox")).toBe("uninfected");
  });
});

describe("result view", () => {
  it("shows isolation guidance and the centers link for an infected verdict", () => {
    const vm = resultViewModel(infectedClassify, stubConfig);
    expect(vm.verdict).toBe("infected");
    expect(vm.guidance).toBe(stubConfig.guidance.infected);
    expect(vm.confidenceText).toBe("93.0%");
    const html = renderResult(vm);
    expect(html).toContain('id="show-centers"');
    expect(html).toContain("#/centers");
  });

  it("shows reassurance without the centers link for an uninfected verdict", () => {
    const vm = resultViewModel(uninfectedClassify, stubConfig);
    expect(vm.verdict).toBe("uninfected");
    expect(vm.guidance).toBe(stubConfig.guidance.uninfected);
    const html = renderResult(vm);
    expect(html).not.toContain('id="show-centers"');
    expect(html).toContain(stubConfig.guidance.uninfected);
  });
});

describe("token store", () => {
  it("persists, reports, and clears the token", () => {
    const store = createTokenStore(memoryStore());
    expect(store.has()).toBe(false);
    expect(store.get()).toBeNull();
    store.set("secret");
    expect(store.has()).toBe(true);
    expect(store.get()).toBe("secret");
    store.clear();
    expect(store.has()).toBe(false);
  });

  it("loses dashboard access once the token is cleared", () => {
    const store = createTokenStore(memoryStore());
    store.set("secret");
    expect(resolveRoute("#/dashboard", store.has())).toBe("dashboard");
    store.clear(); // what the 401 handler does
    expect(resolveRoute("#/dashboard", store.has())).toBe("login");
  });
});
