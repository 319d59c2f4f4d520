export type Mode = "stub-echo" | "stub-recorded" | "neural";

export interface ServiceConfig {
  host: string;
  port: number;
  mode: Mode;
  fixturePath?: string;
  modelId?: string;
  batchLimit: number;
}

const MODES: Mode[] = ["stub-echo", "stub-recorded", "neural"];

export function parseConfig(argv: string[]): ServiceConfig {
  const config: ServiceConfig = {
    host: "127.0.0.1",
    port: 8400,
    mode: "stub-echo",
    batchLimit: 256,
  };
  for (let i = 0; i < argv.length; i++) {
    const flag = argv[i];
    const value = () => {
      const next = argv[++i];
      if (next === undefined) {
        throw new Error(`${flag} needs a value`);
      }
      return next;
    };
    switch (flag) {
      case "--host":
        config.host = value();
        break;
      case "--port":
        config.port = Number(value());
        break;
      case "--mode": {
        const mode = value();
        if (!MODES.includes(mode as Mode)) {
          throw new Error(`unknown mode ${mode}; expected one of ${MODES.join(", ")}`);
        }
        config.mode = mode as Mode;
        break;
      }
      case "--fixture":
        config.fixturePath = value();
        break;
      case "--model":
        config.modelId = value();
        break;
      case "--batch-limit":
        config.batchLimit = Number(value());
        break;
      default:
        throw new Error(`unknown flag ${flag}`);
    }
  }
  if (!Number.isInteger(config.batchLimit) || config.batchLimit < 1) {
    throw new Error("--batch-limit must be an integer >= 1");
  }
  if (!Number.isInteger(config.port) || config.port < 0) {
    throw new Error("--port must be a non-negative integer");
  }
  if (config.mode === "stub-recorded" && !config.fixturePath) {
    throw new Error("--mode stub-recorded needs --fixture <recorded.json>");
  }
  if (config.mode === "neural" && !config.modelId) {
    throw new Error("--mode neural needs --model <identifier>");
  }
  return config;
}
