import { readFileSync } from "node:fs";

import express from "express";

import { ServiceConfig } from "./config";
import { DIMENSION, embedText } from "./embedder";

/**
 * The wire protocol, shared with the main toolkit:
 *   POST /embed    {"texts": [str]} -> {"dimension": int, "vectors": [[num]]}
 *   POST /generate {"inputs": [str], "prefix": {...}|null} -> {"outputs": [str]}
 *   GET  /health   -> {"status": "ok", "mode": ...}
 *
 * Errors answer {"error": {"category": ..., "detail": ...}}. Neural mode is
 * accepted as configuration but this build ships no model runtime, so its
 * endpoints answer 501.
 */
export function createServer(config: ServiceConfig): express.Express {
  let recorded: Record<string, string> = {};
  if (config.mode === "stub-recorded" && config.fixturePath) {
    recorded = JSON.parse(readFileSync(config.fixturePath, "utf-8"));
  }

  const app = express();
  app.use(express.json({ limit: "16mb" }));

  const protocolError = (res: express.Response, detail: string) =>
    res.status(400).json({ error: { category: "protocol-error", detail } });

  const neuralUnavailable = (res: express.Response) =>
    res.status(501).json({
      error: {
        category: "backend-error",
        detail: `neural mode (${config.modelId}) has no model runtime in this build; use a stub mode`,
      },
    });

  const stringList = (value: unknown): string[] | null =>
    Array.isArray(value) && value.every((item) => typeof item === "string")
      ? (value as string[])
      : null;

  app.get("/health", (_req, res) => {
    res.json({ status: "ok", mode: config.mode });
  });

  app.post("/embed", (req, res) => {
    if (config.mode === "neural") {
      neuralUnavailable(res);
      return;
    }
    const texts = stringList(req.body?.texts);
    if (texts === null) {
      protocolError(res, 'body must be {"texts": [string, ...]}');
      return;
    }
    if (texts.length > config.batchLimit) {
      protocolError(res, `batch of ${texts.length} exceeds limit ${config.batchLimit}`);
      return;
    }
    res.json({ dimension: DIMENSION, vectors: texts.map(embedText) });
  });

  app.post("/generate", (req, res) => {
    if (config.mode === "neural") {
      neuralUnavailable(res);
      return;
    }
    const inputs = stringList(req.body?.inputs);
    if (inputs === null) {
      protocolError(res, 'body must be {"inputs": [string, ...], "prefix": object|null}');
      return;
    }
    if (inputs.length > config.batchLimit) {
      protocolError(res, `batch of ${inputs.length} exceeds limit ${config.batchLimit}`);
      return;
    }
    if (config.mode === "stub-echo") {
      res.json({ outputs: inputs });
      return;
    }
    const outputs: string[] = [];
    for (const input of inputs) {
      const output = recorded[input];
      if (output === undefined) {
        protocolError(res, `no recorded output for input: ${input}`);
        return;
      }
      outputs.push(output);
    }
    res.json({ outputs });
  });

  return app;
}
