import { describe, expect, it } from "vitest";

import { ApiClient, ApiError, FetchLike, pollRun } from "../src/api.js";
import { homTemplate } from "../src/template.js";

function jsonResponse(status: number, body: unknown): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "content-type": "application/json" },
  });
}

/** Scripted fetch: route string -> list of responses consumed in order. */
function scriptedFetch(script: Record<string, unknown[]>): { fetch: FetchLike; calls: string[] } {
  const calls: string[] = [];
  const remaining = new Map(Object.entries(script).map(([k, v]) => [k, [...v]]));
  const fetch: FetchLike = async (url, init) => {
    const key = `${init?.method ?? "GET"} ${new URL(url).pathname}`;
    calls.push(key);
    const queue = remaining.get(key);
    if (!queue || queue.length === 0) throw new Error(`unscripted request ${key}`);
    const next = queue.shift();
    if (next instanceof Error) throw next;
    return next as Response;
  };
  return { fetch, calls };
}

describe("ApiClient", () => {
  it("validates and returns the error list", async () => {
    const { fetch } = scriptedFetch({
      "POST /validate": [jsonResponse(200, { errors: [{ error: "bad", pointer: "/devices/0" }] })],
    });
    const client = new ApiClient("http://engine:8000", fetch);
    const errors = await client.validate(homTemplate());
    expect(errors).toEqual([{ error: "bad", pointer: "/devices/0" }]);
  });

  it("surfaces 400 bodies as ApiError with pointer", async () => {
    const { fetch } = scriptedFetch({
      "POST /experiments": [
        jsonResponse(400, { error: "unknown device type", pointer: "/devices/1/type" }),
      ],
    });
    const client = new ApiClient("http://engine:8000", fetch);
    const err = await client.submit(homTemplate()).catch((e) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect(err.status).toBe(400);
    expect(err.message).toBe("unknown device type");
    expect(err.pointer).toBe("/devices/1/type");
  });

  it("tolerates non-JSON error bodies", async () => {
    const { fetch } = scriptedFetch({
      "GET /runs/x": [new Response("boom", { status: 502, statusText: "Bad Gateway" })],
    });
    const client = new ApiClient("http://engine:8000", fetch);
    const err = await client.status("x").catch((e) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect(err.message).toMatch(/502/);
  });
});

describe("pollRun", () => {
  it("polls until done with one request in flight, then fetches results", async () => {
    const { fetch, calls } = scriptedFetch({
      "GET /runs/r1": [
        jsonResponse(200, { run_id: "r1", status: "queued", error: null }),
        jsonResponse(200, { run_id: "r1", status: "running", error: null }),
        jsonResponse(200, { run_id: "r1", status: "done", error: null }),
      ],
      "GET /runs/r1/results": [
        jsonResponse(200, { run_id: "r1", traces: {}, tables: {}, grids: {}, metadata: {} }),
      ],
    });
    const client = new ApiClient("http://engine:8000", fetch);
    const seen: string[] = [];
    let sleeps = 0;
    const results = await pollRun(client, "r1", {
      intervalMs: 1000,
      onStatus: (s) => seen.push(s.status),
      sleep: async () => {
        sleeps += 1;
      },
    });
    expect(results.run_id).toBe("r1");
    expect(seen).toEqual(["queued", "running", "done"]);
    expect(sleeps).toBe(2); // no sleep after the terminal status
    expect(calls.filter((c) => c.endsWith("/runs/r1"))).toHaveLength(3);
  });

  it("rejects when the run errors, carrying the engine message", async () => {
    const { fetch } = scriptedFetch({
      "GET /runs/r2": [
        jsonResponse(200, { run_id: "r2", status: "error", error: "cutoff too small" }),
      ],
    });
    const client = new ApiClient("http://engine:8000", fetch);
    const err = await pollRun(client, "r2", { sleep: async () => {} }).catch((e) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect(err.message).toBe("cutoff too small");
  });

  it("propagates network failures so the caller can offer a retry", async () => {
    const { fetch } = scriptedFetch({
      "GET /runs/r3": [new TypeError("fetch failed")],
    });
    const client = new ApiClient("http://engine:8000", fetch);
    await expect(pollRun(client, "r3", { sleep: async () => {} })).rejects.toThrow(/fetch failed/);
  });
});
