import type { ClassifyResponse, ServiceConfig } from "./types";

/** Minimal storage contract so tests can run without a browser. */
export interface KeyValueStore {
  getItem(key: string): string | null;
  setItem(key: string, value: string): void;
  removeItem(key: string): void;
}

const TOKEN_KEY = "itmainn.token";

export function memoryStore(): KeyValueStore {
  const data = new Map<string, string>();
  return {
    getItem: (k) => (data.has(k) ? data.get(k)! : null),
    setItem: (k, v) => void data.set(k, v),
    removeItem: (k) => void data.delete(k),
  };
}

export function createTokenStore(storage?: KeyValueStore) {
  const back =
    storage ?? (typeof localStorage !== "undefined" ? localStorage : memoryStore());
  return {
    get: () => back.getItem(TOKEN_KEY),
    set: (token: string) => back.setItem(TOKEN_KEY, token),
    clear: () => back.removeItem(TOKEN_KEY),
    has: () => back.getItem(TOKEN_KEY) !== null,
  };
}

export type TokenStore = ReturnType<typeof createTokenStore>;

/** What the examine screen carries over to the result screen. */
export interface SessionState {
  config: ServiceConfig | null;
  lastResult: ClassifyResponse | null;
  lastLocation: { lat: number; lon: number } | null;
}

export const session: SessionState = {
  config: null,
  lastResult: null,
  lastLocation: null,
};
