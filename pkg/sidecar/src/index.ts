import { parseConfig } from "./config";
import { createServer } from "./server";

const config = parseConfig(process.argv.slice(2));
const app = createServer(config);
app.listen(config.port, config.host, () => {
  console.log(
    `sidecar listening on http://${config.host}:${config.port} (mode=${config.mode})`
  );
});
