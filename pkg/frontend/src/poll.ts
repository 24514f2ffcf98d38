export interface Poller {
  /** Run one fetch now; resolves when its result has been applied or discarded. */
  tick(): Promise<void>;
  start(): void;
  stop(): void;
}

/**
 * Repeating fetch with stale-response discard: every tick gets a sequence
 * number, and a response is applied only if no later-numbered response has
 * already landed. Errors keep the previous data and go to `onError`.
 */
export function createPoller<T>(
  fetchFn: () => Promise<T>,
  apply: (value: T) => void,
  options: { intervalMs?: number; onError?: (err: unknown) => void } = {},
): Poller {
  const intervalMs = options.intervalMs ?? 30_000;
  let issued = 0;
  let applied = 0;
  let timer: ReturnType<typeof setInterval> | null = null;

  async function tick(): Promise<void> {
    const seq = ++issued;
    try {
      const value = await fetchFn();
      if (seq <= applied) return; // a newer response already rendered
      applied = seq;
      apply(value);
    } catch (err) {
      if (options.onError) options.onError(err);
    }
  }

  return {
    tick,
    start() {
      this.stop();
      void tick();
      timer = setInterval(() => void tick(), intervalMs);
    },
    stop() {
      if (timer !== null) clearInterval(timer);
      timer = null;
    },
  };
}
