import type { Server } from "node:http";
import path from "node:path";

import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { createServer } from "../src/server";
import { DIMENSION, embedText } from "../src/embedder";

const RECORDED_PATH = path.resolve(__dirname, "..", "fixtures", "recorded.json");

function listen(app: ReturnType<typeof createServer>): Promise<{ server: Server; url: string }> {
  return new Promise((resolve) => {
    const server = app.listen(0, "127.0.0.1", () => {
      const address = server.address();
      if (address === null || typeof address === "string") {
        throw new Error("no address");
      }
      resolve({ server, url: `http://127.0.0.1:${address.port}` });
    });
  });
}

describe("stub-echo server", () => {
  let server: Server;
  let url: string;

  beforeAll(async () => {
    const started = await listen(
      createServer({ host: "127.0.0.1", port: 0, mode: "stub-echo", batchLimit: 4 })
    );
    server = started.server;
    url = started.url;
  });

  afterAll(() => {
    server.close();
  });

  it("answers /health with status and mode", async () => {
    const response = await fetch(`${url}/health`);
    expect(response.status).toBe(200);
    expect(await response.json()).toEqual({ status: "ok", mode: "stub-echo" });
  });

  it("embeds batches, preserving order and dimension", async () => {
    const response = await fetch(`${url}/embed`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ texts: ["abc", "", "abc"] }),
    });
    expect(response.status).toBe(200);
    const payload = await response.json();
    expect(payload.dimension).toBe(DIMENSION);
    expect(payload.vectors.length).toBe(3);
    expect(payload.vectors[0]).toEqual(embedText("abc"));
    expect(payload.vectors[1].every((v: number) => v === 0)).toBe(true);
    expect(payload.vectors[2]).toEqual(payload.vectors[0]);
  });

  it("embeds the empty batch to an empty vector list", async () => {
    const response = await fetch(`${url}/embed`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ texts: [] }),
    });
    expect(await response.json()).toEqual({ dimension: DIMENSION, vectors: [] });
  });

  it("keeps response vector norms within 1e-6 of 1", async () => {
    const response = await fetch(`${url}/embed`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ texts: ["one", "two words", ""] }),
    });
    const payload = await response.json();
    for (const vector of payload.vectors) {
      const norm = Math.sqrt(vector.reduce((acc: number, v: number) => acc + v * v, 0));
      expect(norm === 0 || Math.abs(norm - 1) <= 1e-6).toBe(true);
    }
  });

  it("rejects over-limit batches, stating the limit", async () => {
    const response = await fetch(`${url}/embed`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ texts: ["a", "b", "c", "d", "e"] }),
    });
    expect(response.status).toBe(400);
    const payload = await response.json();
    expect(payload.error.category).toBe("protocol-error");
    expect(payload.error.detail).toContain("limit 4");
  });

  it("rejects malformed bodies", async () => {
    const response = await fetch(`${url}/embed`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ texts: "not a list" }),
    });
    expect(response.status).toBe(400);
    expect((await response.json()).error.category).toBe("protocol-error");
  });

  it("echoes generation inputs", async () => {
    const response = await fetch(`${url}/generate`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ inputs: ["Mary <p> gave </p> it", "x"], prefix: null }),
    });
    expect(await response.json()).toEqual({ outputs: ["Mary <p> gave </p> it", "x"] });
  });

  it("generates nothing from nothing", async () => {
    const response = await fetch(`${url}/generate`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ inputs: [], prefix: null }),
    });
    expect(await response.json()).toEqual({ outputs: [] });
  });
});

describe("stub-recorded server", () => {
  let server: Server;
  let url: string;

  beforeAll(async () => {
    const started = await listen(
      createServer({
        host: "127.0.0.1",
        port: 0,
        mode: "stub-recorded",
        fixturePath: RECORDED_PATH,
        batchLimit: 64,
      })
    );
    server = started.server;
    url = started.url;
  });

  afterAll(() => {
    server.close();
  });

  it("replays recorded outputs keyed by input text", async () => {
    const key = "Mary <p> gave </p> the book to John";
    const response = await fetch(`${url}/generate`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ inputs: [key], prefix: null }),
    });
    const payload = await response.json();
    expect(payload.outputs[0]).toContain("give: transfer.");
    expect(payload.outputs[0]).toContain("[Mary]{giver}");
  });

  it("names the missing key on fixture misses", async () => {
    const response = await fetch(`${url}/generate`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ inputs: ["unknown input"], prefix: null }),
    });
    expect(response.status).toBe(400);
    const payload = await response.json();
    expect(payload.error.category).toBe("protocol-error");
    expect(payload.error.detail).toContain("unknown input");
  });

  it("still serves trigram embeddings", async () => {
    const response = await fetch(`${url}/embed`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ texts: ["giver"] }),
    });
    expect((await response.json()).vectors[0]).toEqual(embedText("giver"));
  });
});

describe("neural mode", () => {
  it("is accepted as configuration but answers 501 without a runtime", async () => {
    const { server, url } = await listen(
      createServer({
        host: "127.0.0.1",
        port: 0,
        mode: "neural",
        modelId: "some-seq2seq",
        batchLimit: 8,
      })
    );
    try {
      const response = await fetch(`${url}/generate`, {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify({ inputs: ["x"], prefix: null }),
      });
      expect(response.status).toBe(501);
      const payload = await response.json();
      expect(payload.error.detail).toContain("some-seq2seq");
    } finally {
      server.close();
    }
  });
});
