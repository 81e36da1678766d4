/** Spawns a real mlogs service for end-to-end tests. */

import { type ChildProcess, spawn } from "node:child_process";
import { mkdtempSync, readFileSync, rmSync } from "node:fs";
import { createServer } from "node:net";
import { tmpdir } from "node:os";
import path from "node:path";
import { fileURLToPath } from "node:url";

const HERE = path.dirname(fileURLToPath(import.meta.url));
export const REPO_ROOT = path.resolve(HERE, "..", "..");
export const FIXTURES = path.join(REPO_ROOT, "tests", "fixtures", "las");

function freePort(): Promise<number> {
  return new Promise((resolve, reject) => {
    const probe = createServer();
    probe.once("error", reject);
    probe.listen(0, "127.0.0.1", () => {
      const addr = probe.address();
      if (addr && typeof addr === "object") {
        const port = addr.port;
        probe.close(() => resolve(port));
      } else {
        reject(new Error("no address"));
      }
    });
  });
}

const sleep = (ms: number) => new Promise((resolve) => setTimeout(resolve, ms));

export interface TestService {
  base: string;
  stop: () => Promise<void>;
}

export async function startService(): Promise<TestService> {
  const port = await freePort();
  const dataDir = mkdtempSync(path.join(tmpdir(), "mlogs-ui-"));
  const proc: ChildProcess = spawn(
    "python3",
    ["-m", "mlogs", "--quiet", "serve", "--port", String(port), "--data-dir", dataDir],
    { cwd: REPO_ROOT, stdio: "ignore" },
  );
  const base = `http://127.0.0.1:${port}`;
  for (let i = 0; i < 150; i++) {
    if (proc.exitCode !== null) break;
    try {
      const resp = await fetch(`${base}/healthz`);
      if (resp.ok) {
        return {
          base,
          stop: async () => {
            proc.kill("SIGTERM");
            await sleep(200);
            if (proc.exitCode === null) proc.kill("SIGKILL");
            rmSync(dataDir, { recursive: true, force: true });
          },
        };
      }
    } catch {
      // not up yet
    }
    await sleep(100);
  }
  proc.kill("SIGKILL");
  throw new Error("mlogs service did not come up");
}

export function fixtureFile(name: string): File {
  const bytes = readFileSync(path.join(FIXTURES, name));
  return new File([new Uint8Array(bytes)], name, { type: "text/plain" });
}
