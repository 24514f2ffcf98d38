import { afterEach, describe, expect, it, vi } from "vitest";
import { createPoller } from "../src/poll";

function deferred<T>() {
  let resolve!: (v: T) => void;
  let reject!: (e: unknown) => void;
  const promise = new Promise<T>((res, rej) => {
    resolve = res;
    reject = rej;
  });
  return { promise, resolve, reject };
}

afterEach(() => {
  vi.useRealTimers();
});

describe("dashboard poller", () => {
  it("applies responses in order under normal conditions", async () => {
    const applied: number[] = [];
    let n = 0;
    const poller = createPoller(async () => ++n, (v) => applied.push(v));
    await poller.tick();
    await poller.tick();
    expect(applied).toEqual([1, 2]);
  });

  it("discards a stale response that resolves after a newer one", async () => {
    const slow = deferred<string>();
    const fast = deferred<string>();
    const queue = [slow.promise, fast.promise];
    const applied: string[] = [];
    const poller = createPoller(() => queue.shift()!, (v) => applied.push(v));

    const first = poller.tick();
    const second = poller.tick();
    fast.resolve("new");
    await second;
    slow.resolve("old"); // late arrival from the earlier request
    await first;

    expect(applied).toEqual(["new"]);
  });

  it("keeps previous data and reports fetch errors", async () => {
    const applied: number[] = [];
    const errors: unknown[] = [];
    let call = 0;
    const poller = createPoller(
      async () => {
        call += 1;
        if (call === 2) throw new Error("service unreachable");
        return call;
      },
      (v) => applied.push(v),
      { onError: (e) => errors.push(e) },
    );
    await poller.tick();
    await poller.tick();
    await poller.tick();
    expect(applied).toEqual([1, 3]);
    expect(errors).toHaveLength(1);
    expect(String(errors[0])).toContain("service unreachable");
  });

  it("polls on the configured interval and stops cleanly", async () => {
    vi.useFakeTimers();
    const applied: number[] = [];
    let n = 0;
    const poller = createPoller(async () => ++n, (v) => applied.push(v), { intervalMs: 30_000 });

    poller.start();
    await vi.advanceTimersByTimeAsync(0); // the immediate tick
    expect(applied).toEqual([1]);

    await vi.advanceTimersByTimeAsync(30_000);
    await vi.advanceTimersByTimeAsync(30_000);
    expect(applied).toEqual([1, 2, 3]);

    poller.stop();
    await vi.advanceTimersByTimeAsync(120_000);
    expect(applied).toEqual([1, 2, 3]);
  });
});
